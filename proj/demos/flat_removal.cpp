// Point-count to structure for 2-flats in R^4: a seeded arrangement runs
// the exact removal chain, and a hyperplane-plus-outliers arrangement shows
// the survivors collapsing onto a single hyperplane.

#include <iostream>

#include "nss/flats.hpp"

using namespace nss;

int main() {
    std::cout << "removal chain on a seeded arrangement (n=20, d=2):\n";
    SplitMix64 rng(7);
    RemovalReport r = removal_experiment(random_removal_arrangement(rng, 20, 2, 4));
    std::cout << "  single-point pairs: " << r.zero_dim_pairs << "  (delta = " << r.delta.str()
              << ")\n"
              << "  empty pairs: " << r.empty_pairs << "   positive-dimension pairs: "
              << r.positive_dim_pairs << "\n"
              << "  greedy matching M = " << r.greedy_matching << ", cover m = " << r.cover_m
              << "\n"
              << "  chain: delta n^2 >= M^2/4^d " << (r.chain_first ? "ok" : "FAIL")
              << ", m = 2M " << (r.chain_second ? "ok" : "FAIL")
              << ", m^2 <= delta 4^{d+1} n^2 " << (r.chain_third ? "ok" : "FAIL") << "\n";
    if (!r.holds) return 1;

    std::cout << "\nhyperplane cover (12 in-plane flats + 2 outliers):\n";
    SplitMix64 rng2(9);
    HyperplaneCoverReport h = hyperplane_cover_check(hyperplane_family(rng2, 12, 2));
    std::cout << "  spanning pairs: " << h.span4_pairs << "  (delta = " << h.delta.str() << ")\n"
              << "  removed by greedy cover: " << h.removed_count << ", survivors: "
              << h.survivor_count << "\n"
              << "  hyperplane normal (";
    for (std::size_t i = 0; i < h.hyperplane.normal.size(); ++i)
        std::cout << (i ? ", " : "") << h.hyperplane.normal[i].get_str();
    std::cout << "), constant " << h.hyperplane.constant.str() << "\n"
              << "  flats on it: " << h.contained_count << " of " << h.n
              << (h.all_survivors_contained ? " (every survivor)" : "") << "\n";
    return h.holds ? 0 : 1;
}

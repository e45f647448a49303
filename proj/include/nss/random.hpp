#pragma once

#include <cstdint>
#include <vector>

#include "nss/linalg.hpp"
#include "nss/matrix.hpp"

namespace nss {

/// SplitMix64. Fixed numerically so that every seeded instance is
/// reconstructible from (seed, parameters) in any implementation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) by rejection sampling. bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw InvalidParameterError("uniform bound must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform integer in [lo, hi], inclusive.
    long int_in(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

/// Random matrix over Q with integer entries in [-9, 9].
inline Matrix<Rational> random_rational_matrix(SplitMix64& rng, int rows, int cols) {
    Matrix<Rational> m(rows, cols, RationalField{});
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Rational(rng.int_in(-9, 9));
    return m;
}

/// Random matrix over F_p with entries uniform in [0, p).
inline Matrix<Fp> random_fp_matrix(SplitMix64& rng, int rows, int cols, const PrimeField& f) {
    Matrix<Fp> m(rows, cols, f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = f.element(static_cast<long>(rng.below(static_cast<std::uint64_t>(f.modulus()))));
    return m;
}

template <FieldScalar T, class Gen>
Matrix<T> random_nonsingular(SplitMix64& rng, int k, Gen&& gen) {
    for (;;) {
        Matrix<T> m = gen(rng, k, k);
        if (!det(m).is_zero()) return m;
    }
}

inline Matrix<Rational> random_nonsingular_rational(SplitMix64& rng, int k) {
    return random_nonsingular<Rational>(rng, k,
        [](SplitMix64& r, int a, int b) { return random_rational_matrix(r, a, b); });
}

inline Matrix<Fp> random_nonsingular_fp(SplitMix64& rng, int k, const PrimeField& f) {
    return random_nonsingular<Fp>(rng, k,
        [&](SplitMix64& r, int a, int b) { return random_fp_matrix(r, a, b, f); });
}

/// n nonsingular k x k matrices over Q.
inline std::vector<Matrix<Rational>> random_rational_family(SplitMix64& rng, int n, int k) {
    std::vector<Matrix<Rational>> fam;
    fam.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) fam.push_back(random_nonsingular_rational(rng, k));
    return fam;
}

inline std::vector<Matrix<Fp>> random_fp_family(SplitMix64& rng, int n, int k, const PrimeField& f) {
    std::vector<Matrix<Fp>> fam;
    fam.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) fam.push_back(random_nonsingular_fp(rng, k, f));
    return fam;
}

/// Families (A_i), (B_i) with B_i = -A_i + E_i for a nonsingular perturbation
/// kept nonsingular itself, so A_i + B_i = E_i is nonsingular: guarantees a
/// perfect matching on the diagonal of the sum graph.
inline std::pair<std::vector<Matrix<Rational>>, std::vector<Matrix<Rational>>>
random_diagonal_matched_family(SplitMix64& rng, int n, int k) {
    std::vector<Matrix<Rational>> as, bs;
    as.reserve(static_cast<std::size_t>(n));
    bs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Matrix<Rational> a = random_nonsingular_rational(rng, k);
        for (;;) {
            Matrix<Rational> e = random_nonsingular_rational(rng, k);
            Matrix<Rational> b = e - a;
            if (!det(b).is_zero()) {
                as.push_back(a);
                bs.push_back(std::move(b));
                break;
            }
        }
    }
    return {std::move(as), std::move(bs)};
}

}  // namespace nss

#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "nss/flats.hpp"

namespace nss {

using Json = nlohmann::ordered_json;

inline Json entry_to_json(const Rational& r) { return r.str(); }
inline Json entry_to_json(const Fp& x) { return x.value(); }

template <FieldScalar T>
Json matrix_to_json(const Matrix<T>& m) {
    Json j;
    j["field"] = m.field().name();
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json entries = Json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) entries.push_back(entry_to_json(m.at(r, c)));
    j["entries"] = entries;
    return j;
}

namespace detail {

inline void require_matrix_object(const Json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("entries"))
        throw InputError("matrix object needs \"field\", \"rows\", \"cols\", \"entries\"");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer() || !j["entries"].is_array())
        throw InputError("malformed matrix object");
    const long r = j["rows"].get<long>(), c = j["cols"].get<long>();
    if (r < 0 || c < 0 || static_cast<long>(j["entries"].size()) != r * c)
        throw InputError("matrix entries do not match rows x cols");
}

inline Rational rational_entry(const Json& e) {
    if (e.is_string()) return Rational::parse(e.get<std::string>());
    if (e.is_number_integer()) return Rational(e.get<long>());
    throw InputError("rational entry must be a \"num/den\" string or an integer");
}

}  // namespace detail

inline Matrix<Rational> rational_matrix_from_json(const Json& j) {
    detail::require_matrix_object(j);
    if (j["field"].get<std::string>() != "Q")
        throw FieldMismatchError("expected a matrix over Q, got field '" + j["field"].get<std::string>() + "'");
    const int r = j["rows"].get<int>(), c = j["cols"].get<int>();
    Matrix<Rational> m(r, c, RationalField{});
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k)
            m.at(i, k) = detail::rational_entry(j["entries"][static_cast<std::size_t>(i * c + k)]);
    return m;
}

inline Matrix<Fp> fp_matrix_from_json(const Json& j) {
    detail::require_matrix_object(j);
    const std::string tag = j["field"].get<std::string>();
    if (tag.rfind("Fp:", 0) != 0) throw FieldMismatchError("expected a prime-field matrix, got '" + tag + "'");
    PrimeField f(std::stoull(tag.substr(3)));
    const int r = j["rows"].get<int>(), c = j["cols"].get<int>();
    Matrix<Fp> m(r, c, f);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) {
            const Json& e = j["entries"][static_cast<std::size_t>(i * c + k)];
            if (!e.is_number_integer() || e.get<long long>() < 0 ||
                e.get<unsigned long long>() >= f.modulus())
                throw InputError("prime-field entry must be an integer in [0, p)");
            m.at(i, k) = f.element(e.get<long>());
        }
    return m;
}

inline Json index_set_to_json(const IndexSet& s) { return Json(s.members()); }

template <FieldScalar T>
Json term_to_json(const MinorTerm<T>& t) {
    Json j;
    j["I"] = index_set_to_json(t.i);
    j["J"] = index_set_to_json(t.j);
    j["parity"] = t.parity;
    j["minorA"] = entry_to_json(t.minor_a);
    j["minorB"] = entry_to_json(t.minor_b);
    j["product"] = entry_to_json(t.signed_product);
    return j;
}

template <FieldScalar T>
Json expansion_to_json(const SumExpansion<T>& e, const std::string& field_name) {
    Json j;
    j["k"] = e.k;
    j["field"] = field_name;
    j["term_count"] = e.terms.size();
    Json terms = Json::array();
    for (const auto& t : e.terms) terms.push_back(term_to_json(t));
    j["terms"] = terms;
    j["total"] = entry_to_json(e.total);
    return j;
}

inline Json rank_bound_to_json(const RankBoundReport& r) {
    Json j;
    j["rank"] = r.rank;
    j["bound"] = r.bound.get_str();
    j["holds"] = r.holds;
    return j;
}

inline Json theorem2_to_json(const Theorem2Report& r) {
    Json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["matching_size"] = r.matching_size;
    j["perfect_matching"] = r.perfect_matching;
    j["restricted"] = r.restricted;
    j["edge_count"] = r.edge_count;
    j["lower_bound_num"] = r.lower_bound_num;
    j["pow4k"] = r.pow4k;
    j["holds"] = r.holds;
    j["clique_rank_link_ok"] = r.clique_rank_link_ok;
    j["turan_consistent"] = r.turan_consistent;
    j["aux_clique_size"] = r.aux_clique_size;
    j["h_rank"] = r.h_rank;
    j["aux_edge_count"] = r.aux_edge_count;
    return j;
}

inline Json theorem1_to_json(const Theorem1Report& r) {
    Json j;
    j["diagonal_is_matching"] = r.diagonal_is_matching;
    j["theorem2"] = theorem2_to_json(r.t2);
    return j;
}

inline Json clique_side_to_json(const CliqueExperimentSide& s) {
    Json j;
    j["omega"] = s.omega;
    j["best_found"] = s.best_found;
    j["upper_bound"] = s.upper_bound;
    j["certificate"] = s.certificate;
    j["nodes_bnb"] = s.nodes_bnb;
    j["nodes_mis"] = s.nodes_mis;
    j["agree"] = s.agree;
    j["budget_exceeded"] = s.budget_exceeded;
    j["certificate_ok"] = s.certificate_ok;
    return j;
}

inline Json clique_report_to_json(const CliqueExperimentReport& r) {
    Json j;
    j["q"] = r.q;
    j["group_size"] = r.group_size;
    j["nonsingular_sum"] = clique_side_to_json(r.nonsingular_sum);
    j["singular_sum"] = clique_side_to_json(r.singular_sum);
    return j;
}

inline Json example1_count_to_json(const Example1CountReport& r) {
    Json j;
    j["size"] = r.size;
    j["nonsingular_ordered_pairs"] = r.nonsingular_ordered_pairs;
    j["expected"] = r.expected;
    j["holds"] = r.holds;
    return j;
}

inline Json example2_count_to_json(const Example2CountReport& r) {
    Json j;
    j["n"] = r.n;
    j["per_vertex_partners"] = r.per_vertex_partners;
    j["expected"] = r.expected;
    j["edges"] = r.edges;
    j["diagonal_pattern_holds"] = r.diagonal_pattern_holds;
    j["holds"] = r.holds;
    return j;
}

inline Json example1_to_json(const Example1Family& f) {
    Json j;
    j["k"] = f.k;
    j["s"] = f.s;
    j["size"] = f.members.size();
    Json members = Json::array();
    for (const auto& m : f.members) members.push_back(matrix_to_json(m));
    j["members"] = members;
    return j;
}

inline Json example2_to_json(const Example2Family& f) {
    Json j;
    j["k"] = f.k;
    j["s"] = f.s;
    j["variant"] = f.identity_only ? "identity_only" : "full";
    j["size"] = f.left.size();
    Json pairing = Json::array();
    for (const auto& p : f.pairing) {
        Json e;
        e["i"] = index_set_to_json(p.i);
        e["j"] = index_set_to_json(p.j);
        e["t"] = p.t;
        pairing.push_back(e);
    }
    j["pairing"] = pairing;
    Json left = Json::array(), right = Json::array();
    for (const auto& m : f.left) left.push_back(matrix_to_json(m));
    for (const auto& m : f.right) right.push_back(matrix_to_json(m));
    j["left"] = left;
    j["right"] = right;
    return j;
}

inline Json flat_to_json(const GraphFlat& f) {
    Json j;
    j["A"] = matrix_to_json(f.a);
    Json v = Json::array();
    for (int r = 0; r < f.d; ++r) v.push_back(f.v.at(r, 0).str());
    j["v"] = v;
    return j;
}

inline GraphFlat flat_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("A") || !j.contains("v"))
        throw InputError("flat object needs \"A\" and \"v\"");
    Matrix<Rational> a = rational_matrix_from_json(j["A"]);
    if (!j["v"].is_array() || static_cast<int>(j["v"].size()) != a.rows())
        throw InputError("flat offset \"v\" must be an array of length matching \"A\"");
    Matrix<Rational> v(a.rows(), 1, RationalField{});
    for (int r = 0; r < a.rows(); ++r)
        v.at(r, 0) = detail::rational_entry(j["v"][static_cast<std::size_t>(r)]);
    return make_flat(std::move(a), std::move(v));
}

inline Json arrangement_to_json(const FlatArrangement& arr) {
    Json j = Json::array();
    for (const auto& f : arr.flats) j.push_back(flat_to_json(f));
    return j;
}

inline FlatArrangement arrangement_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("arrangement file must be a JSON list of flats");
    std::vector<GraphFlat> flats;
    for (const auto& e : j) flats.push_back(flat_from_json(e));
    return make_arrangement(std::move(flats));
}

inline Json pair_family_to_json(const FlatPairFamily& fam) {
    Json j = Json::array();
    for (const auto& [f, e] : fam.pairs) {
        Json p;
        p["F"] = flat_to_json(f);
        p["E"] = flat_to_json(e);
        j.push_back(p);
    }
    return j;
}

inline FlatPairFamily pair_family_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("pair family file must be a JSON list of {\"F\", \"E\"}");
    std::vector<std::pair<GraphFlat, GraphFlat>> pairs;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("F") || !e.contains("E"))
            throw InputError("pair entry needs \"F\" and \"E\"");
        pairs.emplace_back(flat_from_json(e["F"]), flat_from_json(e["E"]));
    }
    return make_flat_pair_family(std::move(pairs));
}

inline Json lemma_report_to_json(const FlatPairsLemmaReport& r) {
    Json j;
    j["n"] = r.n;
    j["single_point_cross_pairs"] = r.single_point_cross_pairs;
    j["pow4d"] = r.pow4d;
    j["holds"] = r.holds;
    return j;
}

inline Json removal_report_to_json(const RemovalReport& r) {
    Json j;
    j["n"] = r.n;
    j["delta"] = r.delta.str();
    j["zero_dim_pairs"] = r.zero_dim_pairs;
    j["empty_pairs"] = r.empty_pairs;
    j["positive_dim_pairs"] = r.positive_dim_pairs;
    j["greedy_matching"] = r.greedy_matching;
    j["cover_m"] = r.cover_m;
    j["pow4d"] = r.pow4d;
    j["chain_first"] = r.chain_first;
    j["chain_second"] = r.chain_second;
    j["chain_third"] = r.chain_third;
    j["holds"] = r.holds;
    return j;
}

inline Json hyperplane_report_to_json(const HyperplaneCoverReport& r) {
    Json j;
    j["n"] = r.n;
    j["span4_pairs"] = r.span4_pairs;
    j["delta"] = r.delta.str();
    j["removed_count"] = r.removed_count;
    j["survivor_count"] = r.survivor_count;
    Json normal = Json::array();
    for (const auto& z : r.hyperplane.normal) normal.push_back(z.get_str());
    j["normal"] = normal;
    j["constant"] = r.hyperplane.constant.str();
    j["contained_count"] = r.contained_count;
    j["all_survivors_contained"] = r.all_survivors_contained;
    j["holds"] = r.holds;
    return j;
}

}  // namespace nss

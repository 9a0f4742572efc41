#pragma once

#include "solenoid/homology.hpp"
#include "solenoid/parse.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace solenoid {

// All machine output goes through these helpers. Integers are serialized as
// decimal strings since entries routinely exceed 64 bits; key order is
// insertion order, which makes repeated runs byte-identical.
using Json = nlohmann::ordered_json;

inline Json json_int(const BigInt& x) { return x.str(); }

inline Json json_vector(const std::vector<BigInt>& v) {
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(json_int(x));
    return a;
}

inline Json json_matrix(const IntMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(json_int(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline Json json_limit(const StationaryLimitGroup& g) {
    Json j;
    j["ambient"] = g.ambient;
    j["matrix"] = json_matrix(g.matrix);
    j["rank"] = g.rank;
    j["basis"] = json_matrix(g.basis);
    j["reduced"] = json_matrix(g.reduced);
    j["charpoly"] = json_vector(g.char_poly);
    j["abs_det"] = json_int(g.abs_det);
    return j;
}

inline Json json_group(const GroupDescription& g) {
    Json j;
    switch (g.kind) {
        case GroupDescription::Kind::Zero:
            j["kind"] = "zero";
            break;
        case GroupDescription::Kind::FreeCyclic:
            j["kind"] = "free_cyclic";
            break;
        case GroupDescription::Kind::FiniteCyclic:
            j["kind"] = "finite_cyclic";
            j["order"] = json_int(g.order);
            break;
        case GroupDescription::Kind::StationaryLimit:
            j["kind"] = "stationary_limit";
            j["rank"] = g.limit->rank;
            j["charpoly"] = json_vector(g.limit->char_poly);
            j["abs_det"] = json_int(g.limit->abs_det);
            j["limit"] = json_limit(*g.limit);
            break;
        case GroupDescription::Kind::Composite:
            j["kind"] = "composite";
            j["torsion"] = json_vector(g.torsion);
            j["quotient"] = json_group(*g.torsion_free_quotient);
            j["extension_note"] = g.extension_note;
            break;
    }
    j["label"] = group_label(g);
    return j;
}

inline Json json_edge_names(const WrappingRule& rule, const std::set<int>& edges) {
    Json a = Json::array();
    for (int e : edges)
        a.push_back(rule.edge_names[size_t(e)]);
    return a;
}

inline Json json_validation(const WrappingRule& rule, const ValidationReport& rep) {
    Json j;
    j["valid"] = rep.valid();
    Json mixing;
    mixing["pass"] = rep.mixing.pass;
    if (rep.mixing.witness)
        mixing["witness"] = *rep.mixing.witness;
    j["mixing"] = mixing;
    Json nonfolding;
    nonfolding["pass"] = rep.nonfolding.pass;
    Json violations = Json::array();
    for (const auto& v : rep.nonfolding.violations) {
        Json vi;
        vi["edge"] = rule.edge_names[size_t(v.edge)];
        vi["position"] = v.position;
        vi["merge_depth"] = v.merge_depth;
        violations.push_back(vi);
    }
    nonfolding["violations"] = violations;
    if (rep.nonfolding.skipped_empty_words)
        nonfolding["reason"] = "empty words";
    j["nonfolding"] = nonfolding;
    Json flattening;
    flattening["pass"] = rep.flattening.pass;
    if (rep.flattening.number)
        flattening["number"] = *rep.flattening.number;
    if (rep.flattening.stable_image_size)
        flattening["stable_image_size"] = *rep.flattening.stable_image_size;
    if (rep.flattening.skipped_empty_words)
        flattening["reason"] = "empty words";
    j["flattening"] = flattening;
    Json expansion;
    expansion["pass"] = rep.expansion_surrogate.pass;
    if (rep.expansion_surrogate.witness)
        expansion["witness"] = *rep.expansion_surrogate.witness;
    j["expansion_surrogate"] = expansion;
    j["markov"] = Json{{"pass", rep.markov}};
    Json empties = Json::array();
    for (int e : rep.empty_word_edges)
        empties.push_back(rule.edge_names[size_t(e)]);
    j["empty_word_edges"] = empties;
    return j;
}

inline Json json_orientation(const WrappingRule& rule, const OrientationSolve& o) {
    auto side = [&](const OrientationAssignment& a) {
        Json j;
        j["achievable"] = a.achievable;
        if (a.achievable)
            j["flips"] = json_edge_names(rule, a.flips);
        return j;
    };
    Json j;
    j["positive"] = side(o.positive);
    j["negative"] = side(o.negative);
    std::string summary = "none";
    if (o.positive.achievable)
        summary = "positive";
    else if (o.negative.achievable)
        summary = "negative";
    j["summary"] = summary;
    return j;
}

inline Json json_normalized(const HomologyResult& r) {
    const NormalizedRule& n = r.norm;
    Json j;
    j["power_used"] = n.power_used;
    j["flips"] = json_edge_names(n.input, n.flips);
    j["a_edge"] = n.input.edge_names[size_t(n.a_edge)];
    j["b_edge"] = n.input.edge_names[size_t(n.b_edge)];
    Json cls;
    for (int e = 0; e < n.input.edge_count(); ++e) {
        const char* name = n.classification[size_t(e)] == EdgeClass::Ea   ? "Ea"
                           : n.classification[size_t(e)] == EdgeClass::Eb ? "Eb"
                                                                          : "E0";
        cls[n.input.edge_names[size_t(e)]] = name;
    }
    j["classification"] = cls;
    j["rule"] = format_rule(n.rule);
    j["gamma_s"] = json_matrix(unsigned_matrix(n.rule));
    j["gamma_u"] = json_matrix(unsigned_matrix(n.rule).transpose());
    return j;
}

inline Json json_homology(const HomologyResult& r) {
    Json j;
    j["input"] = Json{{"edges", r.input.edge_names}, {"rule", format_rule(r.input)}};
    j["orientable"] = r.orientable;
    j["orientation"] = json_orientation(r.input, r.orientation);
    j["normalized"] = json_normalized(r);
    j["w"] = json_vector(r.obstruction_data.w);
    j["sft"] = Json{{"vertices", r.sft.vertex_count},
                    {"edges", json_int(r.sft.edge_count)},
                    {"subintervals", json_vector(r.sft.subinterval_counts)},
                    {"gamma_s", json_matrix(r.sft.gamma_s)},
                    {"gamma_u", json_matrix(r.sft.gamma_u)}};
    j["dim_s"] = json_group(r.dim_s);
    j["dim_u"] = json_group(r.dim_u);
    j["h_s"] = Json{{"0", json_group(r.h_s.degree0)},
                    {"1", json_group(r.h_s.degree1)},
                    {"other", json_group(zero_group())}};
    j["h_u"] = Json{{"0", json_group(r.h_u.degree0)},
                    {"1", json_group(r.h_u.degree1)},
                    {"other", json_group(zero_group())}};
    j["torsion"] = Json{{"orientable", r.torsion.orientable},
                        {"h_s_0", json_vector(r.torsion.h_s0)},
                        {"h_u_1", json_vector(r.torsion.h_u1)},
                        {"all_other_torsion_free", r.torsion.all_other_torsion_free}};
    Json cech_j;
    cech_j["h0"] = json_group(r.cech_groups.h0);
    cech_j["h1"] = json_group(r.cech_groups.h1);
    Json cmp;
    cmp["orientable"] = r.cech_comparison.orientable;
    if (r.cech_comparison.orientable) {
        cmp["at_power"] = r.cech_comparison.at_power;
        cmp["signed_equals_unsigned"] = r.cech_comparison.signed_equals_unsigned;
        cmp["data_equal"] = r.cech_comparison.data_equal;
    } else {
        cmp["cech_rank"] = r.cech_comparison.cech_rank;
        cmp["cech_abs_det"] = json_int(r.cech_comparison.cech_abs_det);
        cmp["hu0_rank"] = r.cech_comparison.hu0_rank;
        cmp["hu0_abs_det"] = json_int(r.cech_comparison.hu0_abs_det);
        cmp["note"] = "no relation asserted between the two sides";
    }
    cech_j["comparison"] = cmp;
    j["cech"] = cech_j;
    j["conventions"] =
        Json{{"vectors", "columns indexed by declared edge order"},
             {"unsigned_matrix", "M[i][k] = occurrences of edge k in the word of edge i"},
             {"gamma_s", "equals M"},
             {"gamma_u", "equals M transposed"},
             {"cech_h1", "stationary limit of the transposed signed matrix"},
             {"charpoly", "ascending coefficients, constant term first"},
             {"integers", "decimal strings"},
             {"w", "coordinates in the flipped basis recorded under normalized.flips"}};
    return j;
}

}  // namespace solenoid

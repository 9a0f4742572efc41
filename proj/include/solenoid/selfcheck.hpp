#pragma once

#include "solenoid/homology.hpp"
#include "solenoid/json_io.hpp"
#include "solenoid/parse.hpp"

#include <functional>
#include <string>
#include <vector>

namespace solenoid {

struct SelfCheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfCheckResult {
    std::vector<SelfCheckItem> items;
    bool all_pass() const {
        for (const auto& i : items)
            if (!i.pass)
                return false;
        return true;
    }
};

namespace detail {

inline void run_check(SelfCheckResult& out, const std::string& name,
                      const std::function<bool()>& fn) {
    SelfCheckItem item;
    item.name = name;
    try {
        item.pass = fn();
        if (!item.pass)
            item.detail = "property violated";
    } catch (const std::exception& e) {
        item.pass = false;
        item.detail = e.what();
    }
    out.items.push_back(item);
}

inline std::vector<std::vector<BigRat>> membership_samples(int rank) {
    std::vector<std::vector<BigRat>> samples;
    auto unit = [&](int i, const BigRat& v) {
        std::vector<BigRat> x(size_t(rank), 0);
        x[size_t(i)] = v;
        return x;
    };
    samples.push_back(std::vector<BigRat>(size_t(rank), 0));
    samples.push_back(unit(0, BigRat(1, 2)));
    samples.push_back(unit(0, BigRat(1, 3)));
    samples.push_back(unit(0, BigRat(1, 6)));
    samples.push_back(std::vector<BigRat>(size_t(rank), BigRat(1, 3)));
    samples.push_back(std::vector<BigRat>(size_t(rank), BigRat(1, 2)));
    if (rank > 1)
        samples.push_back(unit(rank - 1, BigRat(2, 9)));
    return samples;
}

inline bool same_invariants(const GroupDescription& a, const GroupDescription& b) {
    if (a.kind != b.kind || a.order != b.order || a.torsion_orders() != b.torsion_orders())
        return false;
    if (bool(a.limit) != bool(b.limit))
        return false;
    if (a.limit && a.limit->rank != b.limit->rank)
        return false;
    if (a.torsion_free_quotient && b.torsion_free_quotient)
        return same_invariants(*a.torsion_free_quotient, *b.torsion_free_quotient);
    return bool(a.torsion_free_quotient) == bool(b.torsion_free_quotient);
}

inline BigInt abs_det_of(const GroupDescription& g) {
    if (g.limit)
        return g.limit->abs_det;
    if (g.torsion_free_quotient)
        return abs_det_of(*g.torsion_free_quotient);
    return 1;
}

}  // namespace detail

// Runs the identity, powering, transpose and torsion properties against one
// validated rule and reports each by name.
inline SelfCheckResult run_selfcheck(const WrappingRule& rule) {
    using detail::run_check;
    SelfCheckResult out;

    run_check(out, "parse_format_roundtrip",
              [&] { return parse_rule(format_rule(rule)) == rule; });

    run_check(out, "invert_word_involution", [&] {
        for (const auto& w : rule.words)
            if (invert_word(invert_word(w)) != w)
                return false;
        return true;
    });

    run_check(out, "reverse_edge_involution", [&] {
        for (int e = 0; e < rule.edge_count(); ++e)
            if (reverse_edge(reverse_edge(rule, e), e) != rule)
                return false;
        return true;
    });

    run_check(out, "substitute_distributes_over_concat", [&] {
        for (const auto& w : rule.words)
            for (int cut = 0; cut <= w.size(); ++cut) {
                SignedWord u, v;
                u.letters.assign(w.letters.begin(), w.letters.begin() + cut);
                v.letters.assign(w.letters.begin() + cut, w.letters.end());
                if (substitute(rule, concat(u, v)) !=
                    concat(substitute(rule, u), substitute(rule, v)))
                    return false;
            }
        return true;
    });

    run_check(out, "matrix_power_homomorphism", [&] {
        IntMatrix M = unsigned_matrix(rule);
        IntMatrix S = signed_matrix(rule);
        for (int n = 1; n <= 3; ++n) {
            WrappingRule p = power_rule(rule, n);
            if (unsigned_matrix(p) != M.pow(n) || signed_matrix(p) != S.pow(n))
                return false;
        }
        return true;
    });

    run_check(out, "unsigned_matrix_reverse_invariance", [&] {
        for (int e = 0; e < rule.edge_count(); ++e)
            if (unsigned_matrix(reverse_edge(rule, e)) != unsigned_matrix(rule))
                return false;
        return true;
    });

    run_check(out, "validator_power_invariance", [&] {
        for (int n = 2; n <= 3; ++n)
            if (!validate(power_rule(rule, n)).valid())
                return false;
        return true;
    });

    run_check(out, "flattening_of_powered_rule_is_one", [&] {
        FlatteningCheck f = flattening_number(rule);
        if (!f.pass)
            return false;
        FlatteningCheck fp = flattening_number(power_rule(rule, *f.number));
        return fp.pass && *fp.number == 1;
    });

    run_check(out, "nonfolding_reverse_and_rename_invariance", [&] {
        for (int e = 0; e < rule.edge_count(); ++e)
            if (!check_nonfolding(reverse_edge(rule, e)).pass)
                return false;
        WrappingRule renamed = rule;
        for (auto& n : renamed.edge_names)
            n = "x_" + n;
        return check_nonfolding(renamed).pass;
    });

    run_check(out, "orientability_deciders_agree", [&] {
        return orientability_by_germs(normalize(rule)) ==
               orientability_by_solver(rule).oriented();
    });

    run_check(out, "oriented_square_is_positively_oriented", [&] {
        OrientationSolve o = orientability_by_solver(rule);
        if (!o.oriented())
            return true;
        return orientability_by_solver(power_rule(rule, 2)).positive.achievable;
    });

    run_check(out, "obstruction_identities", [&] {
        NormalizedRule norm = normalize(rule);
        ObstructionData obs = obstruction(norm);  // throws on identity failure
        return int(obs.w.size()) == rule.edge_count();
    });

    run_check(out, "classification_power_stability", [&] {
        NormalizedRule base = normalize(rule);
        for (int n = 1; n <= 2; ++n) {
            NormalizedRule again = normalize(power_rule(rule, n * base.power_used));
            if (again.classification != base.classification || again.a_edge != base.a_edge ||
                again.b_edge != base.b_edge || again.flips != base.flips)
                return false;
        }
        return true;
    });

    HomologyResult result = analyze(rule);

    run_check(out, "transpose_relation", [&] {
        return result.sft.gamma_u == result.sft.gamma_s.transpose() &&
               result.sft.gamma_s == unsigned_matrix(rule);
    });

    run_check(out, "degree_support", [&] {
        return result.h_s.at(2).kind == GroupDescription::Kind::Zero &&
               result.h_u.at(2).kind == GroupDescription::Kind::Zero &&
               result.h_s.at(-1).kind == GroupDescription::Kind::Zero;
    });

    run_check(out, "torsion_dichotomy", [&] {
        if (result.orientable)
            return result.torsion.h_s0.empty() && result.torsion.h_u1.empty() &&
                   result.torsion.all_other_torsion_free;
        return result.torsion.h_s0 == std::vector<BigInt>{BigInt(2)} &&
               result.torsion.h_u1 == std::vector<BigInt>{BigInt(2)} &&
               result.torsion.all_other_torsion_free;
    });

    run_check(out, "orientability_trichotomy", [&] {
        if (result.orientable)
            return result.h_s.degree1.kind == GroupDescription::Kind::FreeCyclic &&
                   result.h_u.degree1.kind == GroupDescription::Kind::FreeCyclic;
        return result.h_s.degree1.kind == GroupDescription::Kind::Zero &&
               result.h_u.degree1 == finite_cyclic_group(2);
    });

    run_check(out, "obstruction_class_is_stationary", [&] {
        if (result.orientable)
            return true;
        StationaryLimitGroup G = stationary_limit(unsigned_matrix(result.norm.rule));
        LimitElement w1{result.obstruction_data.w, 1};
        if (limit_element_is_zero(G, w1))
            return false;
        for (int n = 2; n <= 3; ++n)
            if (!limit_elements_equal(G, w1, LimitElement{result.obstruction_data.w, n}))
                return false;
        return true;
    });

    run_check(out, "powering_invariance_of_homology", [&] {
        for (int n = 2; n <= 3; ++n) {
            HomologyResult rp = analyze(power_rule(rule, n));
            if (rp.orientable != result.orientable)
                return false;
            if (!detail::same_invariants(rp.h_s.degree0, result.h_s.degree0) ||
                !detail::same_invariants(rp.h_s.degree1, result.h_s.degree1) ||
                !detail::same_invariants(rp.h_u.degree0, result.h_u.degree0) ||
                !detail::same_invariants(rp.h_u.degree1, result.h_u.degree1))
                return false;
            BigInt d = detail::abs_det_of(result.dim_s);
            BigInt dp = detail::abs_det_of(rp.dim_s);
            BigInt expected = 1;
            for (int k = 0; k < n; ++k)
                expected *= d;
            if (dp != expected)
                return false;
            StationaryLimitGroup g1 = stationary_limit(result.sft.gamma_s);
            StationaryLimitGroup g2 = stationary_limit(rp.sft.gamma_s);
            if (!limits_agree_on_samples(g1, g2, detail::membership_samples(g1.rank)))
                return false;
        }
        return true;
    });

    run_check(out, "limit_membership_stage_shift", [&] {
        StationaryLimitGroup G = stationary_limit(result.sft.gamma_s);
        for (const auto& v : detail::membership_samples(G.rank)) {
            auto pulled = solve_rational(G.reduced, v);
            if (!pulled)
                return false;
            if (limit_contains(G, *pulled) != limit_contains(G, v))
                return false;
        }
        return true;
    });

    return out;
}

// Re-verifies the identities recorded in an analysis JSON document. Catches
// hand-edited or corrupted replays: a tampered w fails the invariance check.
inline SelfCheckResult replay_selfcheck(const Json& doc) {
    using detail::run_check;
    SelfCheckResult out;

    auto parse_matrix = [](const Json& j) {
        IntMatrix m(int(j.size()), j.empty() ? 0 : int(j[0].size()));
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                m.at(r, c) = BigInt(j[size_t(r)][size_t(c)].get<std::string>());
        return m;
    };
    auto parse_vector = [](const Json& j) {
        std::vector<BigInt> v;
        for (const auto& x : j)
            v.push_back(BigInt(x.get<std::string>()));
        return v;
    };

    IntMatrix gamma_s_norm = parse_matrix(doc.at("normalized").at("gamma_s"));
    IntMatrix gamma_u_norm = parse_matrix(doc.at("normalized").at("gamma_u"));
    IntMatrix gamma_s = parse_matrix(doc.at("sft").at("gamma_s"));
    IntMatrix gamma_u = parse_matrix(doc.at("sft").at("gamma_u"));
    std::vector<BigInt> w = parse_vector(doc.at("w"));
    bool orientable = doc.at("orientable").get<bool>();

    run_check(out, "replay_gamma_s_fixes_w",
              [&] { return gamma_s_norm.apply(w) == w; });
    run_check(out, "replay_w_star_fixes_gamma_u",
              [&] { return gamma_u_norm.apply_left(w) == w; });
    run_check(out, "replay_w_zero_or_primitive",
              [&] { return is_zero_vector(w) || vector_gcd(w) == 1; });
    run_check(out, "replay_w_matches_orientability",
              [&] { return is_zero_vector(w) == orientable; });
    run_check(out, "replay_transpose_relation",
              [&] { return gamma_u == gamma_s.transpose(); });
    run_check(out, "replay_torsion_dichotomy", [&] {
        const Json& t = doc.at("torsion");
        size_t s0 = t.at("h_s_0").size(), u1 = t.at("h_u_1").size();
        if (orientable)
            return s0 == 0 && u1 == 0 && t.at("all_other_torsion_free").get<bool>();
        return s0 == 1 && u1 == 1 && t.at("h_s_0")[0] == "2" && t.at("h_u_1")[0] == "2" &&
               t.at("all_other_torsion_free").get<bool>();
    });
    return out;
}

}  // namespace solenoid

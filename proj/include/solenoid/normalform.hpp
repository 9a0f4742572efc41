#pragma once

#include "solenoid/germ.hpp"
#include "solenoid/matrix.hpp"
#include "solenoid/rule.hpp"
#include "solenoid/validate.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace solenoid {

enum class EdgeClass { Ea, Eb, E0 };

struct NormalizeError : SolenoidError {
    explicit NormalizeError(const std::string& msg) : SolenoidError(msg) {}
};

// A power of the input rule, with edges reversed so that the two surviving
// germ directions are the initial end of a_edge and the terminal end of
// b_edge (possibly the same edge), both fixed by the germ map, and every
// remaining edge is oriented to run from the a-germ side to the b-germ side.
struct NormalizedRule {
    WrappingRule input;  // the rule as analyzed, orientation as declared
    WrappingRule rule;   // power of the input with some edges reversed
    int power_used = 1;
    std::set<int> flips;  // edges reversed relative to the input
    int a_edge = 0;
    int b_edge = 0;
    std::vector<EdgeClass> classification;
    GermMap germs;  // germ map of `rule`

    Germ germ_a() const { return initial_germ(a_edge); }
    Germ germ_b() const { return terminal_germ(b_edge); }
};

// An edge whose two end germs both land on the a-germ is in Ea, both on the
// b-germ in Eb, one on each side in E0.
inline std::vector<EdgeClass> classify_edges(const GermMap& gamma, const Germ& germ_a,
                                             const Germ& germ_b, int edge_count) {
    std::vector<EdgeClass> cls(size_t(edge_count), EdgeClass::E0);
    for (int e = 0; e < edge_count; ++e) {
        Germ gi = gamma(initial_germ(e));
        Germ gt = gamma(terminal_germ(e));
        if (gi != germ_a && gi != germ_b)
            throw InternalInconsistency("germ image escapes the normalized pair");
        if (gt != germ_a && gt != germ_b)
            throw InternalInconsistency("germ image escapes the normalized pair");
        if (gi == germ_a && gt == germ_a)
            cls[size_t(e)] = EdgeClass::Ea;
        else if (gi == germ_b && gt == germ_b)
            cls[size_t(e)] = EdgeClass::Eb;
        else
            cls[size_t(e)] = EdgeClass::E0;
    }
    return cls;
}

namespace detail {

constexpr int kNormalizePowerCap = 64;

// Least n such that the n-th power has exactly two germ directions, both
// fixed, and all word lengths >= 3. Checked on the germ map and the counting
// matrix so nothing large is materialized during the search.
inline int normalization_power(const WrappingRule& rule) {
    GermMap gamma = germ_map(rule);
    IntMatrix M = unsigned_matrix(rule);
    GermMap gpow = gamma;
    IntMatrix mpow = M;
    for (int n = 1; n <= kNormalizePowerCap; ++n) {
        std::set<Germ> image = gpow.image();
        bool germ_ok = image.size() == 2;
        if (germ_ok)
            for (const Germ& g : image)
                germ_ok = germ_ok && gpow.fixes(g);
        bool length_ok = true;
        for (const BigInt& s : mpow.row_sums())
            if (s < 3) {
                length_ok = false;
                break;
            }
        if (germ_ok && length_ok)
            return n;
        if (n < kNormalizePowerCap) {
            gpow = gamma.compose(gpow);
            mpow = mpow * M;
        }
    }
    throw NormalizeError("no admissible power up to " + std::to_string(kNormalizePowerCap) +
                         "; the rule should have failed validation");
}

}  // namespace detail

inline NormalizedRule normalize(const WrappingRule& input) {
    NormalizedRule out;
    out.input = input;
    out.power_used = detail::normalization_power(input);

    WrappingRule powered = power_rule(input, out.power_used);
    GermMap gamma = germ_map(powered);
    std::set<Germ> image = gamma.image();
    std::vector<Germ> pair(image.begin(), image.end());  // sorted by encoding

    // Reverse edges so the fixed pair becomes {initial of a_edge, terminal of
    // b_edge}. When both germs sit on the wrong ends the smallest flip set is
    // taken; relabeling a/b costs nothing.
    std::set<int> flips;
    if (pair[0].edge == pair[1].edge) {
        out.a_edge = out.b_edge = pair[0].edge;  // the a = b case: {init, term}
    } else {
        const Germ& u = pair[0];
        const Germ& v = pair[1];
        if (!u.term && v.term) {
            out.a_edge = u.edge;
            out.b_edge = v.edge;
        } else if (u.term && !v.term) {
            out.a_edge = v.edge;
            out.b_edge = u.edge;
        } else if (!u.term && !v.term) {  // two initial germs: flip the lower index
            flips.insert(u.edge);
            out.a_edge = v.edge;
            out.b_edge = u.edge;
        } else {  // two terminal germs: flip the lower index
            flips.insert(u.edge);
            out.a_edge = u.edge;
            out.b_edge = v.edge;
        }
    }

    WrappingRule flipped = apply_flips(powered, flips);
    GermMap gflip = germ_map(flipped);
    Germ germ_a = initial_germ(out.a_edge);
    Germ germ_b = terminal_germ(out.b_edge);
    if (!gflip.fixes(germ_a) || !gflip.fixes(germ_b))
        throw InternalInconsistency("normalized germs not fixed");

    // Orient the E0 edges to run from the a side to the b side.
    std::vector<EdgeClass> cls =
        classify_edges(gflip, germ_a, germ_b, input.edge_count());
    for (int e = 0; e < input.edge_count(); ++e)
        if (cls[size_t(e)] == EdgeClass::E0 && gflip(initial_germ(e)) != germ_a) {
            flips.insert(e);
            flipped = reverse_edge(flipped, e);
        }
    gflip = germ_map(flipped);
    cls = classify_edges(gflip, germ_a, germ_b, input.edge_count());
    for (int e = 0; e < input.edge_count(); ++e)
        if (cls[size_t(e)] == EdgeClass::E0 && gflip(initial_germ(e)) != germ_a)
            throw InternalInconsistency("E0 orientation fix did not settle");

    out.rule = std::move(flipped);
    out.flips = std::move(flips);
    out.classification = std::move(cls);
    out.germs = gflip;
    std::set<Germ> final_image = out.germs.image();
    if (final_image != std::set<Germ>{germ_a, germ_b})
        throw InternalInconsistency("normalized germ image is not the fixed pair");
    return out;
}

// The orientability obstruction: +1 on Ea, -1 on Eb, 0 on E0, together with
// the same entries read as a functional. Coordinates refer to the flipped
// basis recorded in the normalization.
struct ObstructionData {
    std::vector<BigInt> w;
    std::vector<BigInt> w_star;
};

inline ObstructionData obstruction(const NormalizedRule& norm) {
    ObstructionData out;
    const int m = norm.input.edge_count();
    out.w.assign(size_t(m), 0);
    for (int e = 0; e < m; ++e) {
        if (norm.classification[size_t(e)] == EdgeClass::Ea)
            out.w[size_t(e)] = 1;
        else if (norm.classification[size_t(e)] == EdgeClass::Eb)
            out.w[size_t(e)] = -1;
    }
    out.w_star = out.w;

    // Invariance and primitivity hold for every valid input; a failure here
    // is a bug, not bad data.
    IntMatrix gamma_s = unsigned_matrix(norm.rule);
    IntMatrix gamma_u = gamma_s.transpose();
    if (gamma_s.apply(out.w) != out.w)
        throw InternalInconsistency("gamma_s(w) != w");
    if (gamma_u.apply_left(out.w_star) != out.w_star)
        throw InternalInconsistency("w* o gamma_u != w*");
    if (!is_zero_vector(out.w) && vector_gcd(out.w) != 1)
        throw InternalInconsistency("nonzero w is not primitive");
    return out;
}

inline bool orientability_by_germs(const NormalizedRule& norm) {
    for (EdgeClass c : norm.classification)
        if (c != EdgeClass::E0)
            return false;
    return true;
}

// Independent decider: solve the +-1 flip assignment making every letter
// positive (or every letter negative) after reorientation.
struct OrientationAssignment {
    bool achievable = false;
    std::set<int> flips;
};

struct OrientationSolve {
    OrientationAssignment positive;
    OrientationAssignment negative;

    bool oriented() const { return positive.achievable || negative.achievable; }
};

namespace detail {

inline OrientationAssignment solve_orientation(const WrappingRule& rule, int target) {
    const int m = rule.edge_count();
    // Constraint per occurrence of letter (k,s) in the word of i:
    // sign(i)*sign(k) = target * s.
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        for (const Letter& l : rule.word(i).letters) {
            int req = target * l.sign;
            if (i == l.edge) {
                if (req != 1)
                    return {};
            } else {
                adj[size_t(i)].push_back({l.edge, req});
                adj[size_t(l.edge)].push_back({i, req});
            }
        }
    std::vector<int> color(size_t(m), 0);
    for (int root = 0; root < m; ++root) {
        if (color[size_t(root)] != 0)
            continue;
        color[size_t(root)] = 1;
        std::vector<int> queue{root};
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (auto [u, req] : adj[size_t(v)]) {
                int want = color[size_t(v)] * req;
                if (color[size_t(u)] == 0) {
                    color[size_t(u)] = want;
                    queue.push_back(u);
                } else if (color[size_t(u)] != want) {
                    return {};
                }
            }
        }
    }
    OrientationAssignment out;
    out.achievable = true;
    for (int e = 0; e < m; ++e)
        if (color[size_t(e)] < 0)
            out.flips.insert(e);
    return out;
}

}  // namespace detail

inline OrientationSolve orientability_by_solver(const WrappingRule& rule) {
    OrientationSolve out;
    out.positive = detail::solve_orientation(rule, +1);
    out.negative = detail::solve_orientation(rule, -1);
    return out;
}

}  // namespace solenoid

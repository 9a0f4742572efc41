#pragma once

#include "solenoid/abelian.hpp"
#include "solenoid/normalform.hpp"
#include "solenoid/rule.hpp"
#include "solenoid/validate.hpp"

#include <map>
#include <optional>
#include <vector>

namespace solenoid {

// The covering shift of finite type: vertices are the edges of the wedge,
// edges are the subintervals cut out by the vertex preimages. The incidence
// data is exactly the unsigned counting matrix, so gamma_s acts as M and
// gamma_u as M^T on column vectors indexed by the edge set.
struct SftPresentation {
    int vertex_count = 0;
    BigInt edge_count = 0;
    std::vector<BigInt> subinterval_counts;  // j(i) per edge
    IntMatrix gamma_s;
    IntMatrix gamma_u;
};

inline SftPresentation build_sft(const WrappingRule& rule) {
    SftPresentation sft;
    sft.vertex_count = rule.edge_count();
    sft.gamma_s = unsigned_matrix(rule);
    sft.gamma_u = sft.gamma_s.transpose();
    sft.subinterval_counts = sft.gamma_s.row_sums();
    for (const BigInt& c : sft.subinterval_counts)
        sft.edge_count += c;
    return sft;
}

// The homology presentations are taken from the rule as analyzed; the
// normalization power enters only through the obstruction classes.
inline SftPresentation build_sft(const NormalizedRule& norm) { return build_sft(norm.input); }

inline std::pair<GroupDescription, GroupDescription> dimension_groups(const SftPresentation& sft) {
    return {limit_group(stationary_limit(sft.gamma_s)),
            limit_group(stationary_limit(sft.gamma_u))};
}

// Degrees 0 and 1 are the only ones that can be nonzero.
struct GradedGroups {
    GroupDescription degree0;
    GroupDescription degree1;

    const GroupDescription& at(int n) const {
        static const GroupDescription zero{};
        if (n == 0)
            return degree0;
        if (n == 1)
            return degree1;
        return zero;
    }
};

inline GradedGroups homology_s(const NormalizedRule& norm, const SftPresentation& sft,
                               const ObstructionData& obs) {
    GradedGroups h;
    if (orientability_by_germs(norm)) {
        h.degree0 = limit_group(stationary_limit(sft.gamma_s));
        h.degree1 = free_cyclic_group();
    } else {
        h.degree0 = quotient_by_invariant_vector(sft.gamma_s, obs.w, 2);
        h.degree1 = zero_group();
    }
    return h;
}

inline GradedGroups homology_u(const NormalizedRule& norm, const SftPresentation& sft,
                               const ObstructionData& obs) {
    GradedGroups h;
    if (orientability_by_germs(norm)) {
        h.degree0 = limit_group(stationary_limit(sft.gamma_u));
        h.degree1 = free_cyclic_group();
    } else {
        h.degree0 = kernel_of_invariant_functional(sft.gamma_u, obs.w_star);
        h.degree1 = finite_cyclic_group(2);
    }
    return h;
}

struct TorsionReport {
    bool orientable = false;
    std::vector<BigInt> h_s0;  // torsion orders found in the degree-0 stable group
    std::vector<BigInt> h_u1;  // torsion orders found in the degree-1 unstable group
    bool all_other_torsion_free = false;
};

// Cross-checks the computed descriptions against the orientability dichotomy:
// orientable means everything torsion free, non-orientable means exactly one
// Z/2 in stable degree 0 and one in unstable degree 1.
inline TorsionReport torsion_report(bool orientable, const GradedGroups& hs,
                                    const GradedGroups& hu) {
    TorsionReport t;
    t.orientable = orientable;
    t.h_s0 = hs.degree0.torsion_orders();
    t.h_u1 = hu.degree1.torsion_orders();
    t.all_other_torsion_free = hs.degree1.is_torsion_free() && hu.degree0.is_torsion_free();
    const std::vector<BigInt> z2{BigInt(2)};
    if (orientable) {
        if (!t.h_s0.empty() || !t.h_u1.empty() || !t.all_other_torsion_free)
            throw InternalInconsistency("orientable input produced torsion");
    } else {
        if (t.h_s0 != z2 || t.h_u1 != z2 || !t.all_other_torsion_free)
            throw InternalInconsistency("non-orientable input did not produce the Z/2 pair");
    }
    return t;
}

// Cech cohomology of the inverse-limit space: degree zero is Z, degree one is
// the stationary limit of the transposed signed matrix.
struct CechResult {
    GroupDescription h0;
    GroupDescription h1;
};

inline CechResult cech(const WrappingRule& rule) {
    CechResult c;
    c.h0 = free_cyclic_group();
    c.h1 = limit_group(stationary_limit(signed_matrix(rule).transpose()));
    return c;
}

// In the orientable case the comparison is made at the normalized rule, where
// the flips have made every letter positive: the signed and unsigned matrices
// agree literally and the degree-one Cech data equals the unstable degree-zero
// data entry for entry. In the non-orientable case both sides are reported
// with no relation asserted.
struct CechComparison {
    bool orientable = false;
    int at_power = 1;
    bool signed_equals_unsigned = false;    // orientable case only
    bool data_equal = false;                // orientable case only
    BigInt cech_abs_det = 0;
    int cech_rank = 0;
    BigInt hu0_abs_det = 0;
    int hu0_rank = 0;
};

struct HomologyResult {
    WrappingRule input;
    ValidationReport validation;
    NormalizedRule norm;
    ObstructionData obstruction_data;
    bool orientable = false;
    OrientationSolve orientation;
    SftPresentation sft;
    GroupDescription dim_s;
    GroupDescription dim_u;
    GradedGroups h_s;
    GradedGroups h_u;
    TorsionReport torsion;
    CechResult cech_groups;
    CechComparison cech_comparison;
};

inline HomologyResult analyze(const WrappingRule& rule) {
    HomologyResult r;
    r.input = rule;
    r.validation = validate(rule);
    if (!r.validation.valid())
        throw ValidationFailure(r.validation);

    r.norm = normalize(rule);
    r.obstruction_data = obstruction(r.norm);
    r.orientable = orientability_by_germs(r.norm);
    r.orientation = orientability_by_solver(rule);
    if (r.orientable != r.orientation.oriented())
        throw InternalInconsistency("orientability deciders disagree");

    r.sft = build_sft(r.norm);
    auto dims = dimension_groups(r.sft);
    r.dim_s = dims.first;
    r.dim_u = dims.second;
    r.h_s = homology_s(r.norm, r.sft, r.obstruction_data);
    r.h_u = homology_u(r.norm, r.sft, r.obstruction_data);
    r.torsion = torsion_report(r.orientable, r.h_s, r.h_u);
    r.cech_groups = cech(rule);

    CechComparison& cc = r.cech_comparison;
    cc.orientable = r.orientable;
    if (r.cech_groups.h1.limit) {
        cc.cech_abs_det = r.cech_groups.h1.limit->abs_det;
        cc.cech_rank = r.cech_groups.h1.limit->rank;
    }
    const GroupDescription& hu0 = r.h_u.degree0;
    if (hu0.limit) {
        cc.hu0_abs_det = hu0.limit->abs_det;
        cc.hu0_rank = hu0.limit->rank;
    }
    if (r.orientable) {
        cc.at_power = r.norm.power_used;
        IntMatrix s_norm = signed_matrix(r.norm.rule);
        IntMatrix m_norm = unsigned_matrix(r.norm.rule);
        cc.signed_equals_unsigned = s_norm == m_norm;
        StationaryLimitGroup cech_norm = stationary_limit(s_norm.transpose());
        StationaryLimitGroup hu0_norm = stationary_limit(m_norm.transpose());
        cc.data_equal = cech_norm == hu0_norm;
        if (!cc.signed_equals_unsigned || !cc.data_equal)
            throw InternalInconsistency("orientable Cech comparison failed");
    }
    return r;
}

}  // namespace solenoid

#pragma once

#include "solenoid/matrix.hpp"

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace solenoid {

// The stationary inductive limit lim(Z^m -A-> Z^m -A-> ...). After killing the
// eventual kernel the action becomes injective; the group is the increasing
// union of A_r^{-n} Z^r inside Q^r. `basis` is the canonical (column-HNF)
// basis of the saturation of the column space of A^m, and `reduced` the action
// of A in that basis.
struct StationaryLimitGroup {
    int ambient = 0;
    IntMatrix matrix;
    int rank = 0;
    IntMatrix basis;    // ambient x rank
    IntMatrix reduced;  // rank x rank, nonzero determinant
    std::vector<BigInt> char_poly;  // ascending coefficients, monic
    BigInt abs_det = 1;

    friend bool operator==(const StationaryLimitGroup& a, const StationaryLimitGroup& b) {
        return a.ambient == b.ambient && a.matrix == b.matrix && a.rank == b.rank &&
               a.basis == b.basis && a.reduced == b.reduced && a.char_poly == b.char_poly &&
               a.abs_det == b.abs_det;
    }
    friend bool operator!=(const StationaryLimitGroup& a, const StationaryLimitGroup& b) {
        return !(a == b);
    }
};

inline StationaryLimitGroup stationary_limit(const IntMatrix& A) {
    if (!A.square())
        throw SolenoidError("stationary limit needs a square matrix");
    StationaryLimitGroup g;
    g.ambient = A.rows();
    g.matrix = A;
    IntMatrix P = A.pow(g.ambient);
    g.basis = hnf_column_basis(saturation_of_column_space(P));
    g.rank = g.basis.cols();
    if (rank(A.pow(g.ambient + 1)) != g.rank)
        throw InternalInconsistency("rank of A^m not stable at m");
    if (g.rank == 0) {
        g.reduced = IntMatrix(0, 0);
        g.char_poly = {BigInt(1)};
        g.abs_det = 1;
        return g;
    }
    g.reduced = restrict_to_basis(g.basis, A * g.basis);
    g.char_poly = charpoly(g.reduced);
    g.abs_det = boost::multiprecision::abs(determinant(g.reduced));
    if (g.abs_det == 0)
        throw InternalInconsistency("reduced stationary matrix is singular");
    return g;
}

// Membership of a rational vector (in reduced coordinates) in the union of
// A_r^{-n} Z^r. The predicate "A_r^n v integral" is monotone in n. A prime in
// the denominator that does not divide det(A_r) never clears. For the rest,
// A_r acting on (Z/D)^r reaches its eventual image within length((Z/D)^r)
// steps, and a vanishing orbit vanishes by then; r * bitlength(D) is a safe
// upper bound for that length.
inline bool limit_contains(const StationaryLimitGroup& g, const std::vector<BigRat>& v) {
    if (int(v.size()) != g.rank)
        throw SolenoidError("limit_contains: vector length must equal the rank");
    if (g.rank == 0)
        return true;  // only the zero vector exists, with empty coordinates
    BigInt den = denominator_lcm(v);
    if (den == 1)
        return true;
    if (g.abs_det == 1)
        return false;  // unimodular action: the group is Z^r itself
    // Strip prime factors shared with det; anything left never clears.
    BigInt residue = den;
    while (true) {
        BigInt c = boost::multiprecision::gcd(residue, g.abs_det);
        if (c == 1)
            break;
        while (residue % c == 0)
            residue /= c;
    }
    if (residue != 1)
        return false;
    long bits = long(boost::multiprecision::msb(den)) + 1;
    long bound = long(g.rank) * bits + 1;
    std::vector<BigRat> x = v;
    for (long n = 0; n <= bound; ++n) {
        if (denominator_lcm(x) == 1)
            return true;
        x = g.reduced.apply(x);
    }
    return false;
}

// A class [v, n] of the inductive limit; [v, n] = [A v, n+1].
struct LimitElement {
    std::vector<BigInt> v;
    int stage = 1;
};

// Rational representative in reduced coordinates: push v forward m steps to
// land in the saturation, then divide by the stage shift.
inline std::vector<BigRat> limit_element_rep(const StationaryLimitGroup& g,
                                             const LimitElement& e) {
    if (int(e.v.size()) != g.ambient)
        throw SolenoidError("limit element has wrong ambient dimension");
    if (e.stage < 1)
        throw SolenoidError("limit element stage must be >= 1");
    std::vector<BigInt> pushed = g.matrix.pow(g.ambient).apply(e.v);
    if (g.rank == 0)
        return {};
    std::vector<BigInt> coords = solve_integral(g.basis, pushed);
    std::vector<BigRat> x(coords.begin(), coords.end());
    for (int k = 0; k < e.stage - 1 + g.ambient; ++k) {
        auto solved = solve_rational(g.reduced, x);
        if (!solved)
            throw InternalInconsistency("reduced matrix not invertible over Q");
        x = *solved;
    }
    return x;
}

inline bool limit_elements_equal(const StationaryLimitGroup& g, const LimitElement& a,
                                 const LimitElement& b) {
    return limit_element_rep(g, a) == limit_element_rep(g, b);
}

inline bool limit_element_is_zero(const StationaryLimitGroup& g, const LimitElement& e) {
    for (const BigRat& x : limit_element_rep(g, e))
        if (x != 0)
            return false;
    return true;
}

// Closed vocabulary for every group this library reports.
struct GroupDescription {
    enum class Kind { Zero, FreeCyclic, FiniteCyclic, StationaryLimit, Composite };

    Kind kind = Kind::Zero;
    BigInt order = 0;                            // FiniteCyclic
    std::optional<StationaryLimitGroup> limit;   // StationaryLimit
    std::vector<BigInt> torsion;                 // Composite, cyclic orders >= 2
    std::shared_ptr<const GroupDescription> torsion_free_quotient;  // Composite
    std::string extension_note;

    bool is_torsion_free() const {
        switch (kind) {
            case Kind::FiniteCyclic:
                return false;
            case Kind::Composite:
                return torsion.empty();
            default:
                return true;
        }
    }

    std::vector<BigInt> torsion_orders() const {
        if (kind == Kind::FiniteCyclic)
            return {order};
        if (kind == Kind::Composite)
            return torsion;
        return {};
    }

    friend bool operator==(const GroupDescription& a, const GroupDescription& b) {
        if (a.kind != b.kind || a.order != b.order || a.limit != b.limit ||
            a.torsion != b.torsion)
            return false;
        if (bool(a.torsion_free_quotient) != bool(b.torsion_free_quotient))
            return false;
        if (a.torsion_free_quotient && !(*a.torsion_free_quotient == *b.torsion_free_quotient))
            return false;
        return true;
    }
    friend bool operator!=(const GroupDescription& a, const GroupDescription& b) {
        return !(a == b);
    }
};

inline GroupDescription zero_group() { return {}; }

inline GroupDescription free_cyclic_group() {
    GroupDescription g;
    g.kind = GroupDescription::Kind::FreeCyclic;
    return g;
}

inline GroupDescription finite_cyclic_group(const BigInt& q) {
    if (q < 2)
        throw SolenoidError("finite cyclic order must be >= 2");
    GroupDescription g;
    g.kind = GroupDescription::Kind::FiniteCyclic;
    g.order = q;
    return g;
}

inline GroupDescription limit_group(StationaryLimitGroup limit) {
    if (limit.rank == 0)
        return zero_group();
    GroupDescription g;
    g.kind = GroupDescription::Kind::StationaryLimit;
    g.limit = std::move(limit);
    return g;
}

inline GroupDescription composite_group(std::vector<BigInt> torsion, GroupDescription quotient,
                                        std::string note) {
    GroupDescription g;
    g.kind = GroupDescription::Kind::Composite;
    g.torsion = std::move(torsion);
    g.torsion_free_quotient = std::make_shared<const GroupDescription>(std::move(quotient));
    g.extension_note = std::move(note);
    return g;
}

// Quotient of lim(Z^m, A) by the cyclic subgroup generated by c.[w, 1].
// Requires A w = +-w and w primitive (or zero). The torsion subgroup of the
// quotient is exactly Z/c: the class of [w,1] has order c since Z^m/<w> is
// torsion free and [w,1] has infinite order in the limit.
inline GroupDescription quotient_by_invariant_vector(const IntMatrix& A,
                                                     const std::vector<BigInt>& w, const BigInt& c) {
    if (!A.square() || int(w.size()) != A.rows())
        throw SolenoidError("quotient: shape mismatch");
    if (c < 1)
        throw SolenoidError("quotient: c must be a positive integer");
    if (is_zero_vector(w))
        return limit_group(stationary_limit(A));
    if (vector_gcd(w) != 1)
        throw SolenoidError("quotient: nonzero w must be primitive");
    std::vector<BigInt> Aw = A.apply(w);
    std::vector<BigInt> neg(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        neg[i] = -w[i];
    if (Aw != w && Aw != neg)
        throw SolenoidError("quotient: w is not invariant under A up to sign");

    const int m = A.rows();
    IntMatrix wcol(m, 1);
    for (int i = 0; i < m; ++i)
        wcol.at(i, 0) = w[size_t(i)];
    SmithResult s = smith_normal_form(wcol);
    if (s.rank != 1 || s.divisors[0] != 1)
        throw InternalInconsistency("primitive vector has non-unit Smith divisor");
    // First column of U spans <w>; the induced action on Z^m/<w> is the lower
    // right block of U^-1 A U.
    IntMatrix C = s.Uinv * A * s.U;
    for (int r = 1; r < m; ++r)
        if (C.at(r, 0) != 0)
            throw InternalInconsistency("quotient action is not block triangular");
    GroupDescription quotient = limit_group(stationary_limit(C.block(1, 1, m - 1, m - 1)));
    if (c == 1)
        return quotient;
    return composite_group({c}, std::move(quotient),
                           "torsion and torsion-free quotient listed separately; the extension "
                           "class is not asserted");
}

// Kernel of an invariant functional inside lim(Z^m, A): restrict A to the
// pure sublattice ker(w*) and take the stationary limit there. The sublattice
// is A-invariant exactly when w* o A is a rational multiple of w*.
inline GroupDescription kernel_of_invariant_functional(const IntMatrix& A,
                                                       const std::vector<BigInt>& w_star) {
    if (!A.square() || int(w_star.size()) != A.rows())
        throw SolenoidError("kernel: shape mismatch");
    if (is_zero_vector(w_star))
        return limit_group(stationary_limit(A));
    std::vector<BigInt> wA = A.apply_left(w_star);
    size_t lead = 0;
    while (w_star[lead] == 0)
        ++lead;
    BigRat lambda = BigRat(wA[lead]) / BigRat(w_star[lead]);
    for (size_t i = 0; i < w_star.size(); ++i)
        if (BigRat(wA[i]) != lambda * BigRat(w_star[i]))
            throw SolenoidError("kernel: functional is not proportional under A");

    const int m = A.rows();
    IntMatrix wrow(1, m);
    for (int i = 0; i < m; ++i)
        wrow.at(0, i) = w_star[size_t(i)];
    IntMatrix K = kernel_basis(wrow);
    IntMatrix restricted = restrict_to_basis(K, A * K);  // integrality asserts A(K) <= K
    return limit_group(stationary_limit(restricted));
}

// Literal agreement of two stationary-limit presentations on sample vectors.
// Meaningful when both live in the same reduced coordinates, as for A vs A^n.
inline bool limits_agree_on_samples(const StationaryLimitGroup& g1,
                                    const StationaryLimitGroup& g2,
                                    const std::vector<std::vector<BigRat>>& samples) {
    if (g1.rank != g2.rank)
        throw SolenoidError("limits_agree_on_samples: rank mismatch");
    if (g1.ambient != g2.ambient || g1.basis != g2.basis)
        throw SolenoidError("limits_agree_on_samples: ambient identification differs");
    for (const auto& v : samples)
        if (limit_contains(g1, v) != limit_contains(g2, v))
            return false;
    return true;
}

// Human-readable name. Rank-one limits with determinant d are the d-adic
// rationals Z[1/d]; unimodular actions give Z^r on the nose.
inline std::string group_label(const GroupDescription& g) {
    switch (g.kind) {
        case GroupDescription::Kind::Zero:
            return "0";
        case GroupDescription::Kind::FreeCyclic:
            return "Z";
        case GroupDescription::Kind::FiniteCyclic:
            return "Z/" + g.order.str();
        case GroupDescription::Kind::StationaryLimit: {
            const StationaryLimitGroup& L = *g.limit;
            if (L.abs_det == 1)
                return L.rank == 1 ? "Z" : "Z^" + std::to_string(L.rank);
            if (L.rank == 1)
                return "Z[1/" + L.abs_det.str() + "]";
            return "lim(Z^" + std::to_string(L.rank) + ", " + L.reduced.str() + ")";
        }
        case GroupDescription::Kind::Composite: {
            std::string t;
            for (size_t i = 0; i < g.torsion.size(); ++i)
                t += (i ? " x " : "") + ("Z/" + g.torsion[i].str());
            return "extension of " + group_label(*g.torsion_free_quotient) + " by " + t;
        }
    }
    return "?";
}

}  // namespace solenoid

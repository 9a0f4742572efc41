#pragma once

#include "solenoid/germ.hpp"
#include "solenoid/matrix.hpp"
#include "solenoid/rule.hpp"

#include <optional>
#include <set>
#include <vector>

namespace solenoid {

struct MixingCheck {
    bool pass = false;
    std::optional<int> witness;  // least k with M^k strictly positive
};

struct NonfoldingViolation {
    int edge = 0;
    int position = 0;     // 1-based index of the letter pair within the word
    int merge_depth = 0;  // germ orbits collide after this many steps
};

struct NonfoldingCheck {
    bool pass = false;
    std::vector<NonfoldingViolation> violations;
    bool skipped_empty_words = false;
};

struct FlatteningCheck {
    bool pass = false;
    std::optional<int> number;             // least d with exactly two germ directions
    std::optional<int> stable_image_size;  // on failure
    bool skipped_empty_words = false;
};

struct ExpansionCheck {
    bool pass = false;
    std::optional<int> witness;  // least n with every row sum of M^n >= 2
};

struct ValidationReport {
    MixingCheck mixing;
    NonfoldingCheck nonfolding;
    FlatteningCheck flattening;
    ExpansionCheck expansion_surrogate;
    bool markov = true;  // single vertex by construction of the DSL
    std::vector<int> empty_word_edges;

    bool valid() const {
        return mixing.pass && nonfolding.pass && flattening.pass && expansion_surrogate.pass &&
               markov && empty_word_edges.empty();
    }
};

inline int wielandt_bound(int m) { return (m - 1) * (m - 1) + 1; }

// Primitivity test: some power of the nonnegative matrix is strictly positive.
// The search is capped at the Wielandt bound, which is sharp.
inline MixingCheck check_mixing(const IntMatrix& M) {
    MixingCheck out;
    if (!M.square() || M.rows() == 0)
        return out;
    const int cap = wielandt_bound(M.rows());
    IntMatrix P = M;
    for (int k = 1; k <= cap; ++k) {
        if (P.all_positive()) {
            out.pass = true;
            out.witness = k;
            return out;
        }
        if (k < cap)
            P = P * M;
    }
    return out;
}

// Local injectivity of all iterates. Every interior point that ever lands on
// the vertex traces back to a consecutive letter pair, so it is enough that
// the two side germs of each pair never merge under the germ map. The pair
// orbit lives in a set of (2m)^2 states and must repeat within that many
// steps, so any merge shows up by then.
inline NonfoldingCheck check_nonfolding(const WrappingRule& rule) {
    NonfoldingCheck out;
    const int m = rule.edge_count();
    for (int i = 0; i < m; ++i)
        if (rule.word(i).empty()) {
            out.skipped_empty_words = true;
            return out;
        }
    GermMap gamma = germ_map(rule);
    const int cap = (2 * m) * (2 * m);
    for (int i = 0; i < m; ++i) {
        const auto& letters = rule.word(i).letters;
        for (size_t j = 0; j + 1 < letters.size(); ++j) {
            Germ g1 = end_germ(letters[j]);
            Germ g2 = start_germ(letters[j + 1]);
            std::set<std::pair<int, int>> seen;
            for (int n = 0; n <= cap; ++n) {
                if (g1 == g2) {
                    out.violations.push_back({i, int(j) + 1, n});
                    break;
                }
                if (!seen.insert({g1.encode(), g2.encode()}).second)
                    break;  // orbit cycled without merging
                g1 = gamma(g1);
                g2 = gamma(g2);
            }
        }
    }
    out.pass = out.violations.empty();
    return out;
}

// Least d such that the d-th iterate flattens the star at the vertex to
// exactly two directions. The image sizes of the germ map iterates are
// non-increasing and stabilize within 2m steps.
inline FlatteningCheck flattening_number(const WrappingRule& rule) {
    FlatteningCheck out;
    const int m = rule.edge_count();
    for (int i = 0; i < m; ++i)
        if (rule.word(i).empty()) {
            out.skipped_empty_words = true;
            return out;
        }
    GermMap gamma = germ_map(rule);
    GermMap power = gamma;
    std::optional<int> first_two;
    int final_size = 2 * m;
    const int cap = std::max(2, 2 * m);
    for (int d = 1; d <= cap; ++d) {
        final_size = int(power.image().size());
        if (final_size == 2 && !first_two)
            first_two = d;
        if (d < cap)
            power = gamma.compose(power);
    }
    if (final_size == 2 && first_two) {
        out.pass = true;
        out.number = *first_two;
    } else {
        out.stable_image_size = final_size;
    }
    return out;
}

// Combinatorial surrogate for metric expansion: the transition matrix is
// primitive and some bounded power subdivides every edge.
inline ExpansionCheck check_expansion_surrogate(const WrappingRule& rule) {
    ExpansionCheck out;
    IntMatrix M = unsigned_matrix(rule);
    if (!check_mixing(M).pass)
        return out;
    const int cap = wielandt_bound(rule.edge_count());
    IntMatrix P = M;
    for (int n = 1; n <= cap; ++n) {
        bool all_ge2 = true;
        for (const BigInt& s : P.row_sums())
            if (s < 2) {
                all_ge2 = false;
                break;
            }
        if (all_ge2) {
            out.pass = true;
            out.witness = n;
            return out;
        }
        if (n < cap)
            P = P * M;
    }
    return out;
}

inline ValidationReport validate(const WrappingRule& rule) {
    ValidationReport report;
    for (int i = 0; i < rule.edge_count(); ++i)
        if (rule.word(i).empty())
            report.empty_word_edges.push_back(i);
    report.mixing = check_mixing(unsigned_matrix(rule));
    report.nonfolding = check_nonfolding(rule);
    report.flattening = flattening_number(rule);
    report.expansion_surrogate = check_expansion_surrogate(rule);
    return report;
}

struct ValidationFailure : SolenoidError {
    ValidationReport report;
    explicit ValidationFailure(ValidationReport r)
        : SolenoidError("rule is not a pre-solenoid"), report(std::move(r)) {}
};

}  // namespace solenoid

#pragma once

#include "solenoid/matrix.hpp"

#include <set>
#include <string>
#include <vector>

namespace solenoid {

// One symbol of a wrapping word: an oriented pass over an edge.
struct Letter {
    int edge = 0;
    int sign = +1;  // +1 or -1

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.edge == b.edge && a.sign == b.sign;
    }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
};

// A word over the edge alphabet and its formal inverses. Wrapping words are
// itineraries, never freely reduced.
struct SignedWord {
    std::vector<Letter> letters;

    int size() const { return int(letters.size()); }
    bool empty() const { return letters.empty(); }

    friend bool operator==(const SignedWord& a, const SignedWord& b) {
        return a.letters == b.letters;
    }
    friend bool operator!=(const SignedWord& a, const SignedWord& b) { return !(a == b); }
};

// A single-vertex presentation: m oriented circle edges and one wrapping word
// per edge describing how the map wraps that edge around the wedge.
struct WrappingRule {
    std::vector<std::string> edge_names;
    std::vector<SignedWord> words;

    int edge_count() const { return int(edge_names.size()); }

    const SignedWord& word(int edge) const { return words[size_t(edge)]; }

    friend bool operator==(const WrappingRule& a, const WrappingRule& b) {
        return a.edge_names == b.edge_names && a.words == b.words;
    }
    friend bool operator!=(const WrappingRule& a, const WrappingRule& b) { return !(a == b); }
};

inline SignedWord invert_word(const SignedWord& w) {
    SignedWord out;
    out.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back({it->edge, -it->sign});
    return out;
}

inline SignedWord concat(const SignedWord& u, const SignedWord& v) {
    SignedWord out = u;
    out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
    return out;
}

// One substitution step: a positive letter contributes the edge's word, a
// negative letter its inverse. This composes wrapping rules.
inline SignedWord substitute(const WrappingRule& rule, const SignedWord& w) {
    SignedWord out;
    for (const Letter& l : w.letters) {
        const SignedWord& piece = rule.word(l.edge);
        if (l.sign > 0) {
            out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
        } else {
            for (auto it = piece.letters.rbegin(); it != piece.letters.rend(); ++it)
                out.letters.push_back({it->edge, -it->sign});
        }
    }
    return out;
}

inline WrappingRule power_rule(const WrappingRule& rule, int n) {
    if (n < 1)
        throw SolenoidError("rule power must be >= 1");
    WrappingRule out = rule;
    for (int k = 1; k < n; ++k)
        for (auto& w : out.words)
            w = substitute(rule, w);
    return out;
}

// Replace the oriented edge e by its reversal. The edge keeps its name and
// index; orientation is an attribute of the presentation, not identity.
inline WrappingRule reverse_edge(const WrappingRule& rule, int e) {
    WrappingRule out = rule;
    for (auto& w : out.words)
        for (auto& l : w.letters)
            if (l.edge == e)
                l.sign = -l.sign;
    // Reversing the domain reverses the subinterval order.
    out.words[size_t(e)] = invert_word(out.words[size_t(e)]);
    return out;
}

inline WrappingRule apply_flips(const WrappingRule& rule, const std::set<int>& flips) {
    WrappingRule out = rule;
    for (int e : flips)
        out = reverse_edge(out, e);
    return out;
}

// M[i][k] = occurrences of edge k (either sign) in the word of edge i.
inline IntMatrix unsigned_matrix(const WrappingRule& rule) {
    const int m = rule.edge_count();
    IntMatrix M(m, m);
    for (int i = 0; i < m; ++i)
        for (const Letter& l : rule.word(i).letters)
            M.at(i, l.edge) += 1;
    return M;
}

// S[i][k] = signed occurrence count; the induced map on first cohomology of
// the wedge when edges are identified with the dual basis.
inline IntMatrix signed_matrix(const WrappingRule& rule) {
    const int m = rule.edge_count();
    IntMatrix S(m, m);
    for (int i = 0; i < m; ++i)
        for (const Letter& l : rule.word(i).letters)
            S.at(i, l.edge) += l.sign;
    return S;
}

}  // namespace solenoid

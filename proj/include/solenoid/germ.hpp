#pragma once

#include "solenoid/rule.hpp"

#include <set>
#include <string>
#include <vector>

namespace solenoid {

// One-sided end of an edge at the wedge vertex. Encoded as 2*edge + (term?1:0);
// a rule on m edges has exactly 2m germs.
struct Germ {
    int edge = 0;
    bool term = false;

    int encode() const { return edge * 2 + (term ? 1 : 0); }
    static Germ decode(int g) { return {g / 2, (g % 2) != 0}; }

    friend bool operator==(const Germ& a, const Germ& b) {
        return a.edge == b.edge && a.term == b.term;
    }
    friend bool operator!=(const Germ& a, const Germ& b) { return !(a == b); }
    friend bool operator<(const Germ& a, const Germ& b) { return a.encode() < b.encode(); }
};

inline Germ initial_germ(int edge) { return {edge, false}; }
inline Germ terminal_germ(int edge) { return {edge, true}; }

// Germ the start of a letter's image sits in: a positive pass enters at the
// edge's initial end, a negative pass at its terminal end.
inline Germ start_germ(const Letter& l) { return {l.edge, l.sign < 0}; }
inline Germ end_germ(const Letter& l) { return {l.edge, l.sign > 0}; }

// Action of the map on the 2m germs, read off the first and last letters of
// the wrapping words.
class GermMap {
public:
    GermMap() = default;
    explicit GermMap(std::vector<int> image) : image_(std::move(image)) {}

    int size() const { return int(image_.size()); }
    Germ operator()(const Germ& g) const { return Germ::decode(image_[size_t(g.encode())]); }

    Germ iterate(Germ g, int n) const {
        for (int i = 0; i < n; ++i)
            g = (*this)(g);
        return g;
    }

    GermMap compose(const GermMap& inner) const {
        std::vector<int> out(image_.size());
        for (size_t g = 0; g < image_.size(); ++g)
            out[g] = image_[size_t(inner.image_[g])];
        return GermMap(std::move(out));
    }

    GermMap power(int n) const {
        GermMap result = identity(size() / 2);
        for (int i = 0; i < n; ++i)
            result = compose(result);
        return result;
    }

    static GermMap identity(int edge_count) {
        std::vector<int> img(size_t(edge_count) * 2);
        for (size_t g = 0; g < img.size(); ++g)
            img[g] = int(g);
        return GermMap(std::move(img));
    }

    std::set<Germ> image() const {
        std::set<Germ> s;
        for (int v : image_)
            s.insert(Germ::decode(v));
        return s;
    }

    bool fixes(const Germ& g) const { return (*this)(g) == g; }

private:
    std::vector<int> image_;
};

// Requires every word nonempty.
inline GermMap germ_map(const WrappingRule& rule) {
    const int m = rule.edge_count();
    std::vector<int> img(size_t(m) * 2);
    for (int i = 0; i < m; ++i) {
        const SignedWord& w = rule.word(i);
        if (w.empty())
            throw SolenoidError("germ map undefined for empty word of edge '" +
                                rule.edge_names[size_t(i)] + "'");
        img[size_t(initial_germ(i).encode())] = start_germ(w.letters.front()).encode();
        img[size_t(terminal_germ(i).encode())] = end_germ(w.letters.back()).encode();
    }
    return GermMap(std::move(img));
}

inline std::string germ_name(const WrappingRule& rule, const Germ& g) {
    return rule.edge_names[size_t(g.edge)] + (g.term ? "-" : "+");
}

}  // namespace solenoid

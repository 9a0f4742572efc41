#include "solenoid/parse.hpp"
#include "solenoid/validate.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace solenoid;

namespace {

IntMatrix make(int n, std::initializer_list<long> vals) {
    IntMatrix m(n, n);
    auto it = vals.begin();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m.at(r, c) = *it++;
    return m;
}

const char* kF = "edges: a b\na -> a a b\nb -> a b b\n";
const char* kH = "edges: a b\na -> a^-1 b a\nb -> b^-1 a b\n";
const char* kK = "edges: a b\na -> b^-1 a a\nb -> a^-1 b b\n";
const char* kG = "edges: a b\na -> a^-1 a^-1 b^-1\nb -> a^-1 b^-1 b^-1\n";

}  // namespace

TEST_CASE("mixing is primitivity with the least witness") {
    MixingCheck c = check_mixing(make(2, {2, 1, 1, 2}));
    CHECK(c.pass);
    CHECK(c.witness == 1);

    CHECK_FALSE(check_mixing(make(2, {1, 0, 0, 1})).pass);
    CHECK_FALSE(check_mixing(make(2, {0, 1, 1, 0})).pass);

    MixingCheck fib = check_mixing(make(2, {1, 1, 1, 0}));
    CHECK(fib.pass);
    CHECK(fib.witness == 2);

    // witness can reach the cap but not exceed it
    MixingCheck one = check_mixing(make(1, {1}));
    CHECK(one.pass);
    CHECK(one.witness == 1);
}

TEST_CASE("non-folding catches immediate and delayed merges") {
    NonfoldingCheck fold = check_nonfolding(parse_rule("edges: a b\na -> a a^-1 b\nb -> a b b\n"));
    REQUIRE_FALSE(fold.pass);
    REQUIRE(fold.violations.size() == 2);
    CHECK(fold.violations[0].edge == 0);
    CHECK(fold.violations[0].position == 1);
    CHECK(fold.violations[0].merge_depth == 0);
    // the pair (a^-1, b) merges one step later: both germs map to init(a)
    CHECK(fold.violations[1].position == 2);
    CHECK(fold.violations[1].merge_depth == 1);

    CHECK(check_nonfolding(parse_rule(kF)).pass);
    CHECK(check_nonfolding(parse_rule(kH)).pass);
}

TEST_CASE("germ map tables for the worked rules") {
    WrappingRule f = parse_rule(kF);
    GermMap gf = germ_map(f);
    CHECK(gf(initial_germ(0)) == initial_germ(0));
    CHECK(gf(terminal_germ(0)) == terminal_germ(1));
    CHECK(gf(initial_germ(1)) == initial_germ(0));
    CHECK(gf(terminal_germ(1)) == terminal_germ(1));

    GermMap gh = germ_map(parse_rule(kH));
    CHECK(gh(initial_germ(0)) == terminal_germ(0));
    CHECK(gh(terminal_germ(0)) == terminal_germ(0));
    CHECK(gh(initial_germ(1)) == terminal_germ(1));
    CHECK(gh(terminal_germ(1)) == terminal_germ(1));

    GermMap gg = germ_map(parse_rule(kG));
    CHECK(gg(initial_germ(0)) == terminal_germ(0));
    CHECK(gg(terminal_germ(0)) == initial_germ(1));
    CHECK(gg(initial_germ(1)) == terminal_germ(0));
    CHECK(gg(terminal_germ(1)) == initial_germ(1));
}

TEST_CASE("flattening number") {
    FlatteningCheck f = flattening_number(parse_rule(kF));
    CHECK(f.pass);
    CHECK(f.number == 1);

    FlatteningCheck h = flattening_number(parse_rule(kH));
    CHECK(h.pass);
    CHECK(h.number == 1);

    FlatteningCheck two = flattening_number(parse_rule("edges: a b\na -> a a\nb -> b b\n"));
    CHECK_FALSE(two.pass);
    CHECK(two.stable_image_size == 4);
}

TEST_CASE("flattening number of the powered rule is one") {
    for (const char* text : {kF, kH, kK, kG}) {
        WrappingRule r = parse_rule(text);
        FlatteningCheck d = flattening_number(r);
        REQUIRE(d.pass);
        FlatteningCheck dp = flattening_number(power_rule(r, *d.number));
        CHECK(dp.pass);
        CHECK(dp.number == 1);
    }
}

TEST_CASE("expansion surrogate") {
    ExpansionCheck f = check_expansion_surrogate(parse_rule(kF));
    CHECK(f.pass);
    CHECK(f.witness == 1);

    CHECK_FALSE(check_expansion_surrogate(parse_rule("edges: a\na -> a\n")).pass);
    CHECK(check_expansion_surrogate(parse_rule(kK)).pass);

    // doubling a single circle: primitive and already subdivided
    ExpansionCheck aa = check_expansion_surrogate(parse_rule("edges: a\na -> a a\n"));
    CHECK(aa.pass);
}

TEST_CASE("full validation of the fixtures") {
    for (const char* text : {kF, kH, kK, kG})
        CHECK(validate(parse_rule(text)).valid());

    ValidationReport fold = validate(parse_rule("edges: a b\na -> a a^-1 b\nb -> a b b\n"));
    CHECK_FALSE(fold.valid());
    CHECK_FALSE(fold.nonfolding.pass);
    CHECK(fold.mixing.pass);

    ValidationReport rot = validate(parse_rule("edges: a\na -> a\n"));
    CHECK_FALSE(rot.valid());
    CHECK(rot.mixing.pass);
    CHECK(rot.nonfolding.pass);
    CHECK(rot.flattening.pass);
    CHECK_FALSE(rot.expansion_surrogate.pass);

    ValidationReport two = validate(parse_rule("edges: a b\na -> a a\nb -> b b\n"));
    CHECK_FALSE(two.valid());
    CHECK_FALSE(two.mixing.pass);
    CHECK_FALSE(two.flattening.pass);
    CHECK_FALSE(two.expansion_surrogate.pass);
    CHECK(two.nonfolding.pass);
}

TEST_CASE("validation survives powering") {
    for (const char* text : {kF, kH, kK, kG}) {
        WrappingRule r = parse_rule(text);
        for (int n = 2; n <= 3; ++n)
            CHECK(validate(power_rule(r, n)).valid());
    }
}

TEST_CASE("non-folding is invariant under reversal and renaming") {
    for (const char* text : {kF, kH, kK, kG}) {
        WrappingRule r = parse_rule(text);
        for (int e = 0; e < r.edge_count(); ++e)
            CHECK(check_nonfolding(reverse_edge(r, e)).pass);
        WrappingRule renamed = r;
        renamed.edge_names = {"left", "right"};
        CHECK(check_nonfolding(renamed).pass);
    }
}

TEST_CASE("empty words are reported structurally and fail validation") {
    WrappingRule r = parse_rule("edges: a b\na ->\nb -> a b\n");
    ValidationReport rep = validate(r);
    CHECK_FALSE(rep.valid());
    CHECK(rep.empty_word_edges == std::vector<int>{0});
    CHECK_FALSE(rep.mixing.pass);  // zero row is never primitive
    CHECK(rep.nonfolding.skipped_empty_words);
    CHECK(rep.flattening.skipped_empty_words);
}

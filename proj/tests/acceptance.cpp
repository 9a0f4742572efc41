// Acceptance suite: every release-gating property, one pass/fail line each.
// Usage: acceptance_tests <fixtures-dir>

#include "solenoid/solenoid.hpp"
#include "support/rule_gen.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace solenoid;

namespace {

std::string g_fixtures;
int g_failures = 0;

WrappingRule load(const std::string& name) {
    std::ifstream in(g_fixtures + "/" + name);
    if (!in)
        throw SolenoidError("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_rule(ss.str());
}

void criterion(int number, const std::string& title, const std::function<bool()>& fn) {
    bool pass = false;
    std::string note;
    try {
        pass = fn();
    } catch (const std::exception& e) {
        note = std::string(" [exception: ") + e.what() + "]";
    }
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << note
              << "\n";
    if (!pass)
        ++g_failures;
}

std::vector<BigInt> vec(std::initializer_list<long> vals) {
    return std::vector<BigInt>(vals.begin(), vals.end());
}

bool limit_data_is(const GroupDescription& g, int rank, std::vector<BigInt> cp, long absdet) {
    return g.limit && g.limit->rank == rank && g.limit->char_poly == cp &&
           g.limit->abs_det == absdet;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance_tests <fixtures-dir>\n";
        return 2;
    }
    g_fixtures = argv[1];
    auto t0 = std::chrono::steady_clock::now();

    criterion(1, "orientability table and decider agreement for f, g, k, h", [] {
        WrappingRule f = load("f.sol"), g = load("g.sol"), k = load("k.sol"), h = load("h.sol");
        OrientationSolve of = orientability_by_solver(f);
        bool ok = of.positive.achievable && of.positive.flips.empty();
        OrientationSolve og = orientability_by_solver(g);
        ok = ok && !og.positive.achievable && og.negative.achievable;
        OrientationSolve ok_ = orientability_by_solver(k);
        ok = ok && ok_.positive.achievable && ok_.positive.flips == std::set<int>{1};
        OrientationSolve oh = orientability_by_solver(h);
        ok = ok && !oh.positive.achievable && !oh.negative.achievable;
        for (const WrappingRule& r : {f, g, k, h})
            ok = ok && orientability_by_germs(normalize(r)) ==
                           orientability_by_solver(r).oriented();
        return ok;
    });

    criterion(2, "covering shift dimension groups: rank 2, x^2-4x+3, |det| 3", [] {
        for (const char* name : {"f.sol", "g.sol", "k.sol", "h.sol"}) {
            auto dims = dimension_groups(build_sft(load(name)));
            if (!limit_data_is(dims.first, 2, vec({3, -4, 1}), 3))
                return false;
            if (!limit_data_is(dims.second, 2, vec({3, -4, 1}), 3))
                return false;
        }
        return true;
    });

    criterion(3, "stable homology goldens", [] {
        HomologyResult f = analyze(load("f.sol"));
        HomologyResult g = analyze(load("g.sol"));
        HomologyResult k = analyze(load("k.sol"));
        bool ok = limit_data_is(f.h_s.degree0, 2, vec({3, -4, 1}), 3) &&
                  f.h_s.degree1.kind == GroupDescription::Kind::FreeCyclic &&
                  f.h_s.at(2).kind == GroupDescription::Kind::Zero;
        ok = ok && g.h_s.degree0 == f.h_s.degree0 && g.h_s.degree1 == f.h_s.degree1;
        ok = ok && k.h_s.degree0 == f.h_s.degree0 && k.h_s.degree1 == f.h_s.degree1;

        HomologyResult h = analyze(load("h.sol"));
        const GroupDescription& h0 = h.h_s.degree0;
        ok = ok && h0.kind == GroupDescription::Kind::Composite &&
             h0.torsion == std::vector<BigInt>{BigInt(2)};
        ok = ok && h0.torsion_free_quotient->limit &&
             h0.torsion_free_quotient->limit->reduced.at(0, 0) == 3 &&
             h0.torsion_free_quotient->limit->rank == 1;
        ok = ok && h.h_s.degree1.kind == GroupDescription::Kind::Zero &&
             h.h_s.at(2).kind == GroupDescription::Kind::Zero;
        return ok;
    });

    criterion(4, "unstable homology goldens", [] {
        HomologyResult h = analyze(load("h.sol"));
        bool ok = limit_data_is(h.h_u.degree0, 1, vec({-3, 1}), 3) &&
                  group_label(h.h_u.degree0) == "Z[1/3]" &&
                  h.h_u.degree1 == finite_cyclic_group(2);
        for (const char* name : {"f.sol", "g.sol", "k.sol"}) {
            HomologyResult r = analyze(load(name));
            ok = ok && limit_data_is(r.h_u.degree0, 2, vec({3, -4, 1}), 3) &&
                 r.h_u.degree1.kind == GroupDescription::Kind::FreeCyclic &&
                 r.h_u.at(2).kind == GroupDescription::Kind::Zero;
        }
        return ok;
    });

    criterion(5, "torsion dichotomy over a family of 50+ random valid rules", [] {
        testgen::RuleGen gen(96321);
        int orientable_seen = 0, nonorientable_seen = 0;
        for (int i = 0; i < 50; ++i) {
            HomologyResult r = analyze(gen.next_valid(4, 6));
            if (r.orientable) {
                ++orientable_seen;
                if (!r.torsion.h_s0.empty() || !r.torsion.h_u1.empty() ||
                    !r.torsion.all_other_torsion_free)
                    return false;
                if (!r.h_s.degree0.is_torsion_free() || !r.h_s.degree1.is_torsion_free() ||
                    !r.h_u.degree0.is_torsion_free() || !r.h_u.degree1.is_torsion_free())
                    return false;
            } else {
                ++nonorientable_seen;
                if (r.torsion.h_s0 != std::vector<BigInt>{BigInt(2)} ||
                    r.torsion.h_u1 != std::vector<BigInt>{BigInt(2)} ||
                    !r.torsion.all_other_torsion_free)
                    return false;
                if (!r.h_s.degree1.is_torsion_free() || !r.h_u.degree0.is_torsion_free())
                    return false;
            }
        }
        std::cout << "      family: " << orientable_seen << " orientable, "
                  << nonorientable_seen << " non-orientable\n";
        return orientable_seen > 0 && nonorientable_seen > 0;
    });

    criterion(6, "obstruction identities over the same family", [] {
        testgen::RuleGen gen(96321);
        for (int i = 0; i < 50; ++i) {
            WrappingRule rule = gen.next_valid(4, 6);
            NormalizedRule norm = normalize(rule);
            ObstructionData obs = obstruction(norm);
            IntMatrix gs = unsigned_matrix(norm.rule);
            IntMatrix gu = gs.transpose();
            if (gs.apply(obs.w) != obs.w)
                return false;
            if (gu.apply_left(obs.w_star) != obs.w_star)
                return false;
            if (!is_zero_vector(obs.w) && vector_gcd(obs.w) != 1)
                return false;
        }
        return true;
    });

    criterion(7, "powering invariance for every fixture, n in {2,3}", [] {
        for (const char* name : {"f.sol", "g.sol", "k.sol", "h.sol"}) {
            WrappingRule rule = load(name);
            HomologyResult base = analyze(rule);
            BigInt d = base.dim_s.limit->abs_det;
            for (int n = 2; n <= 3; ++n) {
                HomologyResult p = analyze(power_rule(rule, n));
                if (p.orientable != base.orientable)
                    return false;
                if (p.torsion.h_s0 != base.torsion.h_s0 || p.torsion.h_u1 != base.torsion.h_u1)
                    return false;
                if (p.h_s.at(2).kind != GroupDescription::Kind::Zero)
                    return false;
                if (!p.dim_s.limit || p.dim_s.limit->rank != base.dim_s.limit->rank)
                    return false;
                BigInt expect = 1;
                for (int i = 0; i < n; ++i)
                    expect *= d;
                if (p.dim_s.limit->abs_det != expect)
                    return false;
                StationaryLimitGroup g1 = stationary_limit(base.sft.gamma_s);
                StationaryLimitGroup g2 = stationary_limit(p.sft.gamma_s);
                std::vector<std::vector<BigRat>> samples = {
                    {BigRat(1, 3), BigRat(0)},    {BigRat(1, 2), BigRat(0)},
                    {BigRat(1, 3), BigRat(1, 3)}, {BigRat(2, 9), BigRat(1, 9)},
                    {BigRat(0), BigRat(0)}};
                if (!limits_agree_on_samples(g1, g2, samples))
                    return false;
            }
        }
        return true;
    });

    criterion(8, "Cech comparison: equality when orientable, h differs", [] {
        for (const char* name : {"f.sol", "g.sol", "k.sol"}) {
            HomologyResult r = analyze(load(name));
            if (!r.cech_comparison.signed_equals_unsigned || !r.cech_comparison.data_equal)
                return false;
            // with no flips and no powering the reported blocks agree literally
            if (r.norm.power_used == 1 && r.norm.flips.empty() &&
                !(r.cech_groups.h1 == r.h_u.degree0))
                return false;
        }
        HomologyResult h = analyze(load("h.sol"));
        bool ok = h.cech_groups.h1.limit && h.cech_groups.h1.limit->rank == 2 &&
                  h.cech_groups.h1.limit->abs_det == 1 &&
                  group_label(h.cech_groups.h1) == "Z^2";
        ok = ok && group_label(h.h_u.degree0) == "Z[1/3]" &&
             h.cech_comparison.cech_abs_det != h.cech_comparison.hu0_abs_det;
        return ok;
    });

    criterion(9, "validator negative controls", [] {
        ValidationReport fold = validate(load("fold.sol"));
        bool ok = !fold.valid() && !fold.nonfolding.pass && !fold.nonfolding.violations.empty() &&
                  fold.nonfolding.violations[0].edge == 0 &&
                  fold.nonfolding.violations[0].position == 1;
        ValidationReport rot = validate(load("identity.sol"));
        ok = ok && !rot.valid() && rot.mixing.pass && rot.nonfolding.pass && rot.flattening.pass &&
             !rot.expansion_surrogate.pass;
        ValidationReport two = validate(load("twocomp.sol"));
        ok = ok && !two.valid() && !two.mixing.pass && !two.flattening.pass &&
             two.flattening.stable_image_size == 4;
        return ok;
    });

    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cout << (g_failures == 0 ? "all criteria passed" : "criteria FAILED") << " (" << dt
              << " ms)\n";
    return g_failures == 0 ? 0 : 1;
}

// Command-line front end: validate wrapping rules, compute the homology
// invariants of the associated solenoid, and run the self-check property
// suite. Exit codes: 0 success, 1 failed validation or failed checks,
// 2 usage, parse or I/O errors.

#include "solenoid/solenoid.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace solenoid;

struct Options {
    std::vector<std::string> paths;
    std::string format = "json";
    int power = 1;
    bool quiet = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SolenoidError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WrappingRule load_rule(const Options& opt, const std::string& path) {
    WrappingRule rule = parse_rule(read_file(path));
    if (opt.power > 1)
        rule = power_rule(rule, opt.power);
    return rule;
}

void emit(const Options& opt, const std::string& text) {
    if (!opt.quiet)
        std::cout << text;
}

std::string render_validation_text(const WrappingRule& rule, const ValidationReport& rep) {
    std::ostringstream os;
    auto line = [&](const std::string& name, bool pass, const std::string& extra) {
        os << (pass ? "pass" : "FAIL") << "  " << name;
        if (!extra.empty())
            os << "  (" << extra << ")";
        os << '\n';
    };
    line("mixing", rep.mixing.pass,
         rep.mixing.witness ? "witness " + std::to_string(*rep.mixing.witness) : "");
    std::string nf;
    for (const auto& v : rep.nonfolding.violations)
        nf += (nf.empty() ? "" : ", ") + rule.edge_names[size_t(v.edge)] + " at position " +
              std::to_string(v.position) + ", depth " + std::to_string(v.merge_depth);
    line("non-folding", rep.nonfolding.pass, nf);
    std::string fl;
    if (rep.flattening.number)
        fl = "number " + std::to_string(*rep.flattening.number);
    else if (rep.flattening.stable_image_size)
        fl = "stable germ image size " + std::to_string(*rep.flattening.stable_image_size);
    line("flattening", rep.flattening.pass, fl);
    line("expansion (surrogate)", rep.expansion_surrogate.pass,
         rep.expansion_surrogate.witness ? "witness " + std::to_string(*rep.expansion_surrogate.witness)
                                         : "");
    line("markov", rep.markov, "single vertex by construction");
    if (!rep.empty_word_edges.empty()) {
        std::string names;
        for (int e : rep.empty_word_edges)
            names += (names.empty() ? "" : ", ") + rule.edge_names[size_t(e)];
        os << "FAIL  empty words  (" << names << ")\n";
    }
    os << (rep.valid() ? "pre-solenoid: yes" : "pre-solenoid: no") << '\n';
    return os.str();
}

std::string render_homology_text(const HomologyResult& r) {
    std::ostringstream os;
    os << "orientable: " << (r.orientable ? "yes" : "no") << '\n';
    auto flips_of = [&](const OrientationAssignment& a) {
        std::string s = "{";
        bool first = true;
        for (int e : a.flips) {
            s += (first ? "" : ", ") + r.input.edge_names[size_t(e)];
            first = false;
        }
        return s + "}";
    };
    if (r.orientation.positive.achievable)
        os << "orientation: positive with flips " << flips_of(r.orientation.positive) << '\n';
    else if (r.orientation.negative.achievable)
        os << "orientation: negative with flips " << flips_of(r.orientation.negative) << '\n';
    else
        os << "orientation: none\n";
    os << "dim group D^s: " << group_label(r.dim_s) << '\n';
    os << "dim group D^u: " << group_label(r.dim_u) << '\n';
    os << "H^s: 0 -> " << group_label(r.h_s.degree0) << ", 1 -> " << group_label(r.h_s.degree1)
       << ", else 0\n";
    os << "H^u: 0 -> " << group_label(r.h_u.degree0) << ", 1 -> " << group_label(r.h_u.degree1)
       << ", else 0\n";
    os << "Cech: H^0 = " << group_label(r.cech_groups.h0)
       << ", H^1 = " << group_label(r.cech_groups.h1) << '\n';
    return os.str();
}

int cmd_validate(const Options& opt) {
    int exit_code = 0;
    for (const auto& path : opt.paths) {
        WrappingRule rule = load_rule(opt, path);
        ValidationReport rep = validate(rule);
        if (opt.format == "json") {
            Json j = json_validation(rule, rep);
            j["input"] = path;
            emit(opt, j.dump(2) + "\n");
        } else {
            emit(opt, "== " + path + "\n" + render_validation_text(rule, rep));
        }
        if (!rep.valid())
            exit_code = 1;
    }
    return exit_code;
}

int cmd_analyze(const Options& opt) {
    for (const auto& path : opt.paths) {
        WrappingRule rule = load_rule(opt, path);
        HomologyResult r;
        try {
            r = analyze(rule);
        } catch (const ValidationFailure& vf) {
            std::ostringstream buf;
            if (opt.format == "json") {
                Json j = json_validation(rule, vf.report);
                j["input"] = path;
                buf << j.dump(2) << "\n";
            } else {
                buf << "== " << path << "\n" << render_validation_text(rule, vf.report);
            }
            std::cout << buf.str();
            return 1;
        }
        if (opt.format == "json") {
            emit(opt, json_homology(r).dump(2) + "\n");
        } else {
            emit(opt, "== " + path + "\n" + render_homology_text(r));
        }
    }
    return 0;
}

int cmd_selfcheck(const Options& opt) {
    int exit_code = 0;
    for (const auto& path : opt.paths) {
        std::string text = read_file(path);
        SelfCheckResult res;
        if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
            res = replay_selfcheck(Json::parse(text));
        } else {
            WrappingRule rule = parse_rule(text);
            if (opt.power > 1)
                rule = power_rule(rule, opt.power);
            ValidationReport rep = validate(rule);
            if (!rep.valid()) {
                std::cout << "input " << path << " failed validation\n";
                return 1;
            }
            res = run_selfcheck(rule);
        }
        std::ostringstream os;
        os << "== " << path << '\n';
        for (const auto& item : res.items) {
            os << (item.pass ? "pass" : "FAIL") << "  " << item.name;
            if (!item.detail.empty())
                os << "  (" << item.detail << ")";
            os << '\n';
        }
        emit(opt, os.str());
        for (const auto& item : res.items)
            if (!item.pass) {
                std::cerr << "selfcheck failed: " << item.name << "\n";
                exit_code = 1;
            }
    }
    return exit_code;
}

int cmd_cech(const Options& opt) {
    for (const auto& path : opt.paths) {
        WrappingRule rule = load_rule(opt, path);
        ValidationReport rep = validate(rule);
        if (!rep.valid()) {
            std::cout << "input " << path << " failed validation\n";
            return 1;
        }
        CechResult c = cech(rule);
        if (opt.format == "json") {
            Json j;
            j["input"] = path;
            j["h0"] = json_group(c.h0);
            j["h1"] = json_group(c.h1);
            emit(opt, j.dump(2) + "\n");
        } else {
            emit(opt, "== " + path + "\nCech: H^0 = " + group_label(c.h0) +
                          ", H^1 = " + group_label(c.h1) + "\n");
        }
    }
    return 0;
}

int cmd_dimgroup(const Options& opt) {
    for (const auto& path : opt.paths) {
        WrappingRule rule = load_rule(opt, path);
        ValidationReport rep = validate(rule);
        if (!rep.valid()) {
            std::cout << "input " << path << " failed validation\n";
            return 1;
        }
        SftPresentation sft = build_sft(rule);
        auto dims = dimension_groups(sft);
        if (opt.format == "json") {
            Json j;
            j["input"] = path;
            j["sft"] = Json{{"vertices", sft.vertex_count},
                            {"edges", json_int(sft.edge_count)},
                            {"gamma_s", json_matrix(sft.gamma_s)},
                            {"gamma_u", json_matrix(sft.gamma_u)}};
            j["dim_s"] = json_group(dims.first);
            j["dim_u"] = json_group(dims.second);
            emit(opt, j.dump(2) + "\n");
        } else {
            emit(opt, "== " + path + "\nD^s = " + group_label(dims.first) +
                          "\nD^u = " + group_label(dims.second) + "\n");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants of one-dimensional generalized solenoids given by wrapping rules"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_power) {
        sub->add_option("paths", opt.paths, "input files")->required()->expected(-1);
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        if (with_power)
            sub->add_option("--power,-p", opt.power, "analyze the n-th iterate of the rule")
                ->check(CLI::PositiveNumber);
        sub->add_flag("--quiet,-q", opt.quiet, "suppress normal output");
    };

    add_common(app.add_subcommand("validate", "check the pre-solenoid axioms"), true);
    add_common(app.add_subcommand("analyze", "compute the full invariant set"), true);
    add_common(app.add_subcommand("selfcheck", "run the property suite on an input"), true);
    add_common(app.add_subcommand("cech", "Cech cohomology of the solenoid"), true);
    add_common(app.add_subcommand("dimgroup", "dimension groups of the covering shift"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("validate"))
            return cmd_validate(opt);
        if (app.got_subcommand("analyze"))
            return cmd_analyze(opt);
        if (app.got_subcommand("selfcheck"))
            return cmd_selfcheck(opt);
        if (app.got_subcommand("cech"))
            return cmd_cech(opt);
        if (app.got_subcommand("dimgroup"))
            return cmd_dimgroup(opt);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const SolenoidError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

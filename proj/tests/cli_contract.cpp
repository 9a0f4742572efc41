// Exercises the installed command-line surface: exit codes, golden JSON
// output, determinism, and the replay negative control.
// Usage: cli_contract_tests <cli-path> <fixtures-dir> <golden-dir>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli, g_fixtures, g_golden;
int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

RunResult run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult res;
    if (!pipe)
        return res;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe))
        res.output.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check(const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "pass" : "FAIL") << "  " << name;
    if (!pass && !detail.empty())
        std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!pass)
        ++g_failures;
}

std::string fixture(const std::string& name) { return g_fixtures + "/" + name; }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 4) {
        std::cerr << "usage: cli_contract_tests <cli> <fixtures-dir> <golden-dir>\n";
        return 2;
    }
    g_cli = argv[1];
    g_fixtures = argv[2];
    g_golden = argv[3];

    // exit-code contract
    check("validate pass exits 0", run("validate " + fixture("f.sol")).exit_code == 0);
    check("validate fail exits 1", run("validate " + fixture("fold.sol")).exit_code == 1);
    check("missing file exits 2", run("validate " + fixture("no_such_file.sol")).exit_code == 2);
    check("usage error exits 2", run("frobnicate").exit_code == 2);
    check("analyze invalid input exits 1", run("analyze " + fixture("twocomp.sol")).exit_code == 1);

    {
        RunResult bad = run("validate " + g_golden + "/bad_syntax.sol");
        check("parse error exits 2 with position", bad.exit_code == 2 &&
                  bad.output.find("line 2") != std::string::npos &&
                  bad.output.find("column") != std::string::npos,
              bad.output);
    }

    // validation details surface in JSON
    {
        RunResult fold = run("validate " + fixture("fold.sol"));
        check("fold violation reported at position 1",
              fold.output.find("\"position\": 1") != std::string::npos &&
                  fold.output.find("\"edge\": \"a\"") != std::string::npos,
              fold.output.substr(0, 200));
    }

    // golden outputs, byte for byte
    for (const std::string name : {"f", "g", "k", "h", "swap", "aaa"}) {
        RunResult r = run("analyze " + fixture(name + ".sol"));
        std::string want = slurp(g_golden + "/" + name + ".json");
        check("golden analyze " + name,
              r.exit_code == 0 && !want.empty() && r.output == want,
              "size " + std::to_string(r.output.size()) + " vs " + std::to_string(want.size()));
    }

    // determinism: two runs are byte-identical
    {
        RunResult a = run("analyze " + fixture("h.sol"));
        RunResult b = run("analyze " + fixture("h.sol"));
        check("analyze output is deterministic", a.output == b.output);
    }

    check("power flag works", run("analyze --power 2 " + fixture("f.sol")).exit_code == 0);
    check("power must be positive", run("analyze --power 0 " + fixture("f.sol")).exit_code == 2);
    check("quiet suppresses output", run("analyze -q " + fixture("f.sol")).output.empty());

    // selfcheck over rules and over stored JSON, with a corrupted negative control
    check("selfcheck f exits 0", run("selfcheck " + fixture("f.sol")).exit_code == 0);
    check("selfcheck h exits 0", run("selfcheck " + fixture("h.sol")).exit_code == 0);
    check("selfcheck swap exits 0", run("selfcheck " + fixture("swap.sol")).exit_code == 0);
    {
        std::string tmpdir = "/tmp/solenoid_cli_contract";
        std::system(("mkdir -p " + tmpdir).c_str());
        RunResult analysis = run("analyze " + fixture("h.sol"));
        std::string good = tmpdir + "/replay.json";
        std::ofstream(good) << analysis.output;
        check("selfcheck replays stored JSON", run("selfcheck " + good).exit_code == 0);

        std::string doc = analysis.output;
        auto pos = doc.find("\"w\": [\n    \"1\",");
        check("replay fixture has the expected w", pos != std::string::npos);
        if (pos != std::string::npos) {
            doc.replace(pos, 15, "\"w\": [\n    \"5\",");
            std::string bad = tmpdir + "/replay_bad.json";
            std::ofstream(bad) << doc;
            RunResult r = run("selfcheck " + bad);
            check("corrupted w fails the replay identity check",
                  r.exit_code == 1 && r.output.find("replay_gamma_s_fixes_w") != std::string::npos,
                  r.output);
        }
    }

    // the other subcommands exist and answer
    {
        RunResult c = run("cech " + fixture("h.sol"));
        check("cech reports the unimodular degree-one data",
              c.exit_code == 0 && c.output.find("\"abs_det\": \"1\"") != std::string::npos);
        RunResult d = run("dimgroup " + fixture("f.sol") + " --format text");
        check("dimgroup text output", d.exit_code == 0 &&
                  d.output.find("D^s") != std::string::npos);
    }

    std::cout << (g_failures == 0 ? "cli contract: all checks passed\n"
                                  : "cli contract: FAILURES\n");
    return g_failures == 0 ? 0 : 1;
}

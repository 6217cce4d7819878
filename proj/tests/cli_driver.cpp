// End-to-end CLI exercise: lift a sampled path, verify it, translate it,
// solve the translation back, and check the recovered family. Also checks
// that identical invocations produce byte-identical output files.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "roughforge/serialize.hpp"

namespace rf = roughforge;

namespace {

int failures = 0;

void check(bool ok, const char* what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what);
    if (!ok) ++failures;
}

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::printf("usage: cli_driver <cli> <workdir>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const std::string work = argv[2];
    run("mkdir -p " + work);
    auto p = [&](const std::string& f) { return work + "/" + f; };

    // sampled path CSV, depth 5
    {
        rf::SampledPath sp;
        sp.depth = 5;
        sp.alphabet = rf::Alphabet::integers(2, rf::Rational(2, 5));
        sp.values.assign(2, std::vector<double>(sp.points()));
        for (int t = 0; t < sp.points(); ++t) {
            double u = static_cast<double>(t) / (sp.points() - 1);
            sp.values[0][t] = std::sin(3 * u) + 0.3 * u;
            sp.values[1][t] = std::cos(2 * u) - 1.0;
        }
        std::ofstream out(p("path.csv"));
        rf::sampled_path_to_csv(sp, out);
    }

    check(run(cli + " trees --n 3 --d 1 > " + p("trees.json")) == 0, "trees exits 0");
    {
        rf::Json j;
        std::ifstream in(p("trees.json"));
        in >> j;
        check(j.is_array() && j.size() == 4, "trees --n 3 --d 1 lists 4 trees");
    }

    check(run(cli + " bch --k 2 > " + p("bch2.csv")) == 0, "bch table exits 0");
    {
        std::string table = slurp(p("bch2.csv"));
        check(table.find("2,12,0,1/2") != std::string::npos &&
                  table.find("2,21,1,-1/2") != std::string::npos,
              "order-2 descent table rows");
    }

    check(run(cli + " psi --tree \"[1[2]]\" > " + p("psi.json")) == 0, "psi exits 0");
    {
        rf::Json j;
        std::ifstream in(p("psi.json"));
        in >> j;
        check(j.contains("[1[2]]") && j.contains("[2].[1]") && j.size() == 2,
              "psi expansion of the ladder");
    }

    check(run(cli + " lift --input " + p("path.csv") +
                  " --gamma 2/5 --algebra bck --out " + p("X.json") + " --report " +
                  p("rep.json")) == 0,
          "lift exits 0");
    check(run(cli + " lift --input " + p("path.csv") +
                  " --gamma 2/5 --algebra bck --out " + p("X2.json")) == 0,
          "second lift exits 0");
    check(slurp(p("X.json")) == slurp(p("X2.json")), "identical inputs give identical bytes");

    check(run(cli + " verify --rp " + p("X.json") + " --full-triples > " + p("verify.txt")) == 0,
          "verify passes on a fresh lift");
    {
        std::string v = slurp(p("verify.txt"));
        check(v.find("FAIL") == std::string::npos, "verify prints no failures");
    }

    // a family supported on one tree
    rf::DyadicGroupPath x = rf::path_from_json([&] {
        rf::Json j;
        std::ifstream in(p("X.json"));
        in >> j;
        return j;
    }());
    {
        rf::Json g;
        g["depth"] = 5;
        rf::Json values = rf::Json::object();
        for (const char* name : {"[1]", "[2]", "[1[1]]", "[1[2]]", "[2[1]]", "[2[2]]"}) {
            rf::Json col = rf::Json::array();
            for (int t = 0; t < x.points(); ++t) {
                double u = static_cast<double>(t) / (x.points() - 1);
                double v = name == std::string("[1[2]]") ? 0.2 * std::sin(4 * u) : 0.0;
                col.push_back(rf::double_str(v));
            }
            values[name] = col;
        }
        g["values"] = values;
        std::ofstream out(p("g.json"));
        out << g.dump(1) << "\n";
    }

    check(run(cli + " act --rp " + p("X.json") + " --g " + p("g.json") + " --out " +
                  p("Y.json")) == 0,
          "act exits 0");
    check(run(cli + " verify --rp " + p("Y.json") + " --full-triples > /dev/null") == 0,
          "translated path verifies");
    check(run(cli + " solve --rp " + p("X.json") + " --rp2 " + p("Y.json") + " --out " +
                  p("gsol.json")) == 0,
          "solve exits 0");
    {
        rf::Json gj, sj;
        std::ifstream gin(p("g.json")), sin(p("gsol.json"));
        gin >> gj;
        sin >> sj;
        rf::HolderFamily g = rf::family_from_json(gj);
        rf::HolderFamily s = rf::family_from_json(sj);
        check(s.sup_difference(g) <= 1e-8, "solve recovers the acting family to 1e-8");
    }

    // error path: malformed gamma must fail with a machine-readable error
    check(run(cli + " lift --input " + p("path.csv") +
                  " --gamma 1/2 --algebra bck --out " + p("bad.json") + " 2> " +
                  p("err.json")) != 0,
          "integer 1/gamma is rejected");
    {
        rf::Json j;
        std::ifstream in(p("err.json"));
        in >> j;
        check(j.contains("error"), "error output is machine readable");
    }

    std::printf("%s\n", failures == 0 ? "cli round-trip: all checks passed"
                                      : "cli round-trip: FAILURES");
    return failures == 0 ? 0 : 1;
}

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "teichlab/json_io.hpp"

using namespace teichlab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int exit = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Sandbox {
public:
    Sandbox() : dir_(fs::temp_directory_path() / ("teichlab_cli_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(dir_);
    }
    ~Sandbox() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    const fs::path& dir() const { return dir_; }
    fs::path write(const std::string& name, const std::string& text) const {
        fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }
    Run run(const std::string& args, const std::string& env = "") const {
        fs::path o = dir_ / "stdout.txt", e = dir_ / "stderr.txt";
        std::string cmd = env + " '" + std::string(TEICHLAB_CLI_PATH) + "' " + args + " > '" + o.string() + "' 2> '" +
                          e.string() + "'";
        int status = std::system(cmd.c_str());
        Run r;
        r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(o);
        r.err = slurp(e);
        return r;
    }

private:
    fs::path dir_;
};

std::string config(const std::string& name) { return std::string(TEICHLAB_SOURCE_DIR) + "/configs/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("selftest passes") {
    Sandbox sb;
    Run r = sb.run("selftest --config '" + config("selftest.json") + "'");
    CHECK(r.exit == 0);
    Json j = parseJsonText(r.out);
    CHECK(j["schemaVersion"] == kSchemaVersion);
    CHECK(j["command"] == "selftest");
    CHECK(j["result"]["passed"] == true);
    CHECK(j["result"]["properties"].size() >= 10);
    for (const auto& p : j["result"]["properties"]) {
        CHECK(p.contains("residual"));
        CHECK(p.contains("tolerance"));
    }
}

TEST_CASE("validation errors exit 2 with a diagnostic on stderr") {
    Sandbox sb;
    fs::path bad = sb.write("bad.json", "{\n  \"lengths\": [1, 2, 3],\n}\n");
    Run r = sb.run("pants-solve --config '" + bad.string() + "'");
    CHECK(r.exit == 2);
    CHECK(r.out.empty());
    Json e = parseJsonText(r.err);
    CHECK(e["error"]["type"] == "configuration-error");
    CHECK(e["error"]["message"].get<std::string>().find("line 3, column 1") != std::string::npos);

    fs::path unk = sb.write("unk.json", R"({"lengths": [1, 2, 3], "lenghts": 1})");
    r = sb.run("pants-solve --config '" + unk.string() + "'");
    CHECK(r.exit == 2);
    CHECK(r.err.find("unknown field 'lenghts'") != std::string::npos);

    fs::path wrong = sb.write("wrong.json", R"({"command": "density", "lengths": [1, 2, 3]})");
    CHECK(sb.run("pants-solve --config '" + wrong.string() + "'").exit == 2);
    fs::path ver = sb.write("ver.json", R"({"schemaVersion": 7, "lengths": [1, 2, 3]})");
    CHECK(sb.run("pants-solve --config '" + ver.string() + "'").exit == 2);
    CHECK(sb.run("pants-solve --config '" + (sb.dir() / "missing.json").string() + "'").exit == 2);
    CHECK(sb.run("no-such-command --config x.json").exit == 2);
    CHECK(sb.run("pants-solve").exit == 2);
}

TEST_CASE("numeric assumption failures exit 3 naming the check") {
    Sandbox sb;
    fs::path p = sb.write("nonmono.json", R"({
        "engine": "disintegration", "pivot": 0, "samples": 1000,
        "length": {"loop": {"catalog": "torus-dual"},
                   "base": {"interior": {"a": [1.0, 0.0]}, "boundary": {"d": 0.5}},
                   "coordinates": ["t:a", "l:a"]},
        "domain": {"lower": [-3, 0.5], "upper": [3, 2]},
        "grid": {"min": 0, "max": 10, "binWidth": 0.1}})");
    Run r = sb.run("density --config '" + p.string() + "'");
    CHECK(r.exit == 3);
    Json e = parseJsonText(r.err);
    CHECK(e["error"]["type"] == "assumption-violated");
    CHECK(e["error"]["message"].get<std::string>().find("monotone in pivot coordinate 0") != std::string::npos);

    // margin too small for the orbit enumeration
    fs::path m = sb.write("margin.json", R"({
        "word": "b1", "point": {"interior": {"a": [1.0, 4.0]}, "boundary": {"d": 0.0}},
        "cutoff": 8, "margin": 0.3})");
    r = sb.run("count --config '" + m.string() + "'");
    CHECK(r.exit == 3);
    CHECK(r.err.find("margin-too-small") != std::string::npos);
}

TEST_CASE("bundled figure-eight density starts at the minimal length") {
    Sandbox sb;
    Run r = sb.run("density --config '" + config("figure_eight_density.json") + "'");
    REQUIRE(r.exit == 0);
    DensityGrid g = densityFromCsv(r.out);
    long first = -1;
    for (std::size_t i = 0; i < g.bins(); ++i)
        if (g.mass[i] != 0) {
            first = static_cast<long>(i);
            break;
        }
    REQUIRE(first >= 0);
    // the shortest figure-eight has all three boundaries collapsed: cosh(l/2) = 3
    double lmin = 2 * std::acosh(3.0);
    CHECK(g.lo(static_cast<std::size_t>(first)) <= lmin);
    CHECK(lmin < g.hi(static_cast<std::size_t>(first)));
}

TEST_CASE("identical config and seed give identical bytes") {
    Sandbox sb;
    std::string cfg = "density --config '" + config("figure_eight_density.json") + "' --samples 20000";
    CHECK(sb.run(cfg + " --out '" + (sb.dir() / "a.csv").string() + "'").exit == 0);
    CHECK(sb.run(cfg + " --out '" + (sb.dir() / "b.csv").string() + "'").exit == 0);
    std::string a = slurp(sb.dir() / "a.csv"), b = slurp(sb.dir() / "b.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(sb.run(cfg + " --seed 1 --out '" + (sb.dir() / "c.csv").string() + "'").exit == 0);
    CHECK(slurp(sb.dir() / "c.csv") != a);

    // relative --out lands in the override directory
    fs::path outDir = sb.dir() / "outdir";
    Run r = sb.run(cfg + " --out rel.csv", "TEICHLAB_OUT_DIR='" + outDir.string() + "'");
    CHECK(r.exit == 0);
    CHECK(slurp(outDir / "rel.csv") == a);

    std::string e1 = sb.run("expect --config '" + config("expect_figure_eight.json") + "'").out;
    std::string e2 = sb.run("expect --config '" + config("expect_figure_eight.json") + "'").out;
    CHECK(e1 == e2);
}

TEST_CASE("emitted JSON re-parses with its schema version") {
    Sandbox sb;
    for (const char* c : {"pants_solve.json", "loop_length_figure_eight.json", "resolve_figure_eight.json",
                          "okai_check.json", "ray_figure_eight.json", "fr_fit_figure_eight.json",
                          "expect_figure_eight.json"}) {
        Json cfg = readJsonFile(config(c));
        Run r = sb.run(cfg["command"].get<std::string>() + " --config '" + config(c) + "'");
        CHECK_MESSAGE(r.exit == 0, c);
        Json j = parseJsonText(r.out);
        CHECK(j["schemaVersion"] == kSchemaVersion);
        CHECK(j["command"] == cfg["command"]);
    }
    // density JSON output feeds back into fr-fit
    fs::path dj = sb.dir() / "d.json";
    fs::path cfg = sb.write("d.json.cfg", R"({"engine": "pushforward", "samples": 200000, "format": "json",
        "length": {"analytic": "linear-sum"}, "weights": {"degrees": [0, 0]},
        "domain": {"lower": [0, 0], "upper": [10, 10]}, "grid": {"min": 0, "max": 10, "binWidth": 0.25}})");
    REQUIRE(sb.run("density --config '" + cfg.string() + "' --out '" + dj.string() + "'").exit == 0);
    DensityGrid g = densityFromJson(readJsonFile(dj.string()));
    CHECK(g.bins() == 40);
    fs::path fit = sb.write("fit.json", R"({"inputPaths": ["d.json"], "maxDegree": 1, "window": [2, 9]})");
    Run r = sb.run("fr-fit --config '" + fit.string() + "'");
    REQUIRE(r.exit == 0);
    Json rep = parseJsonText(r.out)["result"];
    // 1 * 1 (l) = l on [0, 10]
    CHECK(rep["polyCoeffs"][1].get<double>() == doctest::Approx(1).epsilon(0.05));
}

TEST_CASE("orbit counts as a, N rows") {
    Sandbox sb;
    Run r = sb.run("count --config '" + config("count_square_torus.json") + "'");
    REQUIRE(r.exit == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,N");
    double prevA = 0;
    long prevN = 0, rows = 0, lastN = 0;
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        double a = std::stod(line.substr(0, comma));
        long n = std::stol(line.substr(comma + 1));
        CHECK(a >= prevA);
        CHECK(n > prevN);
        prevA = a;
        prevN = n;
        lastN = n;
        ++rows;
    }
    CHECK(rows > 5);
    // counts frozen from the orbit module's brute-force oracle run at a = 16
    CHECK(lastN == 68);
}

}

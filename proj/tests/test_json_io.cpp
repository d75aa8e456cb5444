#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "teichlab/catalog.hpp"
#include "teichlab/errors.hpp"
#include "teichlab/json_io.hpp"

using namespace teichlab;

namespace {

std::string messageOf(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("json_io") {

TEST_CASE("malformed JSON reports line and column") {
    std::string text = "{\n  \"a\": 1,\n}\n";
    CHECK_THROWS_AS(parseJsonText(text, "cfg.json"), ConfigurationError);
    std::string msg = messageOf([&] { parseJsonText(text, "cfg.json"); });
    CHECK(msg.find("cfg.json") != std::string::npos);
    CHECK(msg.find("line 3, column 1") != std::string::npos);
    CHECK_THROWS_AS(readJsonFile("/nonexistent/teichlab.json"), ConfigurationError);
}

TEST_CASE("strict fields") {
    Json j = {{"min", 0}, {"max", 5}, {"binWidth", 0.5}, {"typo", 1}};
    std::string msg = messageOf([&] { gridFromJson(j); });
    CHECK(msg.find("unknown field 'typo'") != std::string::npos);
    CHECK_THROWS_AS(gridFromJson({{"min", 3}, {"max", 1}}), ConfigurationError);
    CHECK_THROWS_AS(pointFromJson({{"interior", {{"a", {1.0}}}}}), ConfigurationError);
    CHECK_THROWS_AS(loopFromJson({{"catalog", "no-such-loop"}}), ConfigurationError);
    CHECK_THROWS_AS(loopFromJson({{"pantsWord", "a1c2"}}), ConfigurationError);
    CHECK_THROWS_AS(expectationFromJson({{"analytic", "figure-eight"}, {"extra", true}}), ConfigurationError);
    CHECK_THROWS_AS(testFunctionFromJson({{"kind", "gaussian"}}), ConfigurationError);
    CHECK_THROWS_AS(getNumber(Json{{"x", "1"}}, "x", "here"), ConfigurationError);
    CHECK_THROWS_AS(getInt(Json{{"x", 1.5}}, "x", "here", 0), ConfigurationError);
}

TEST_CASE("round trips") {
    GridParams g{0.5, 7.25, 0.125};
    GridParams g2 = gridFromJson(gridToJson(g));
    CHECK(g2.ellMin == g.ellMin);
    CHECK(g2.ellMax == g.ellMax);
    CHECK(g2.binWidth == g.binWidth);

    for (const auto& c : loopCatalog()) {
        CHECK(loopFromJson(loopToJson(c.loop)) == c.loop);
        CHECK(pointFromJson(pointToJson(c.base)) == c.base);
        // through text as well
        CHECK(loopFromJson(parseJsonText(loopToJson(c.loop).dump())) == c.loop);
    }

    DensityGrid d = DensityGrid::make(1, 2, 0.25);
    d.mass = {0.1, 1.0 / 3, 2e-17, 7};
    d.variance = {0, 1e-4, 0.25, 2};
    d.totalSamples = 12345;
    DensityGrid d2 = densityFromJson(parseJsonText(densityToJson(d).dump()));
    CHECK(sameLayout(d, d2));
    CHECK(d2.mass == d.mass);
    CHECK(d2.totalSamples == d.totalSamples);
    for (std::size_t i = 0; i < d.bins(); ++i) CHECK(d2.stderrAt(i) == doctest::Approx(d.stderrAt(i)).epsilon(1e-15));

    std::ostringstream os;
    writeCsv(os, d);
    DensityGrid d3 = densityFromCsv(os.str());
    CHECK(sameLayout(d, d3));
    CHECK(d3.mass == d.mass);
    CHECK_THROWS_AS(densityFromCsv("a,b\n1,2\n"), ConfigurationError);
    CHECK_THROWS_AS(densityFromCsv("ell_lo,ell_hi,density,stderr\n0,1,x,0\n"), ConfigurationError);

    ExpectationConfig e = expectationFromJson(parseJsonText(R"({
        "analytic": "figure-eight", "mGamma": 2, "normalization": 3.5,
        "testFunction": {"kind": "spline", "knot0": 1, "spacing": 0.5, "coeffs": [0.2, 1, 0.3]}})"));
    CHECK(e.analytic == AnalyticLength::figureEight);
    CHECK(e.curveCount == 3);
    CHECK(e.mGamma == 2);
    CHECK(*e.normalization == 3.5);
    CHECK(e.F.kind == TestFunction::Kind::spline);
    CHECK(e.F.coeffs.size() == 3);
}

TEST_CASE("number formatting round-trips") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-300, 300);
    for (int k = 0; k < 2000; ++k) {
        double v = std::pow(10.0, u(gen) / 10) * (k % 2 ? -1 : 1);
        std::string s = formatDouble(v);
        double back = 0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("atomic output and the output directory override") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("teichlab_json_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    std::string target = (dir / "sub" / "out.txt").string();
    writeFileAtomic(target, "first");
    writeFileAtomic(target, "second");
    std::ifstream in(target);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second");
    int files = 0;
    for (const auto& e : fs::directory_iterator(dir / "sub")) {
        (void)e;
        ++files;
    }
    CHECK(files == 1);  // no temporary left behind

    ::setenv("TEICHLAB_OUT_DIR", dir.string().c_str(), 1);
    CHECK(resolveOutputPath("x.csv") == (dir / "x.csv").string());
    CHECK(resolveOutputPath("/abs/x.csv") == "/abs/x.csv");
    ::unsetenv("TEICHLAB_OUT_DIR");
    CHECK(resolveOutputPath("x.csv") == "x.csv");
    fs::remove_all(dir);
}

}

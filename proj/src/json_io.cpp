#include "teichlab/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

#include "teichlab/catalog.hpp"
#include "teichlab/errors.hpp"

namespace teichlab {

namespace {

std::string lineColumn(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ConfigurationError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ConfigurationError(where + ": missing field '" + key + "'");
    return *it;
}

IncursionForm formFromString(const std::string& s, const std::string& where) {
    if (s == "throughDistinct") return IncursionForm::throughDistinct;
    if (s == "sameCurveReturn") return IncursionForm::sameCurveReturn;
    if (s == "internal") return IncursionForm::internal;
    throw ConfigurationError(where + ": unknown incursion form '" + s + "'");
}

const char* formName(IncursionForm f) {
    switch (f) {
        case IncursionForm::throughDistinct: return "throughDistinct";
        case IncursionForm::sameCurveReturn: return "sameCurveReturn";
        case IncursionForm::internal: return "internal";
    }
    return "?";
}

SurfaceGraph surfaceByName(const std::string& s, const std::string& where) {
    if (s == "pants") return pantsSurface();
    if (s == "onceHoledTorus") return onceHoledTorus();
    if (s == "fourHoledSphere") return fourHoledSphere();
    if (s == "twoHoledTorus") return twoHoledTorus();
    throw ConfigurationError(where + ": unknown surface '" + s + "'");
}

std::string surfaceName(const SurfaceGraph& s) {
    if (s == pantsSurface()) return "pants";
    if (s == onceHoledTorus()) return "onceHoledTorus";
    if (s == fourHoledSphere()) return "fourHoledSphere";
    if (s == twoHoledTorus()) return "twoHoledTorus";
    return "custom";
}

PantsWord wordFrom(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigurationError(where + ": word must be a string");
    try {
        return PantsWord::parse(j.get<std::string>());
    } catch (const InvalidArgument& e) {
        throw ConfigurationError(where + ": " + e.what());
    }
}

}  // namespace

Json parseJsonText(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        std::string msg = e.what();
        // keep the parser's reason, drop its byte offset prefix
        auto pos = msg.find(": ");
        std::string reason = pos == std::string::npos ? msg : msg.substr(pos + 2);
        throw ConfigurationError(source + ": malformed JSON at " + lineColumn(text, byte) + ": " + reason);
    }
}

Json readJsonFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigurationError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parseJsonText(ss.str(), path);
}

void requireKnownFields(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigurationError(where + ": expected an object");
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok |= k == a;
        if (!ok) throw ConfigurationError(where + ": unknown field '" + k + "'");
    }
}

double getNumber(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number()) throw ConfigurationError(where + "." + key + ": expected a number");
    return v.get<double>();
}

double getNumber(const Json& j, const char* key, const std::string& where, double fallback) {
    if (!j.contains(key)) return fallback;
    return getNumber(j, key, where);
}

int getInt(const Json& j, const char* key, const std::string& where, int fallback) {
    if (!j.contains(key)) return fallback;
    const Json& v = j[key];
    if (!v.is_number_integer()) throw ConfigurationError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string getString(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_string()) throw ConfigurationError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::vector<double> getNumbers(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_array()) throw ConfigurationError(where + "." + key + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigurationError(where + "." + key + ": expected an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

GridParams gridFromJson(const Json& j, const std::string& where) {
    requireKnownFields(j, {"min", "max", "binWidth"}, where);
    GridParams g;
    g.ellMin = getNumber(j, "min", where, g.ellMin);
    g.ellMax = getNumber(j, "max", where, g.ellMax);
    g.binWidth = getNumber(j, "binWidth", where, g.binWidth);
    if (!(g.binWidth > 0) || !(g.ellMax > g.ellMin)) throw ConfigurationError(where + ": need min < max and binWidth > 0");
    return g;
}

Json gridToJson(const GridParams& g) { return {{"min", g.ellMin}, {"max", g.ellMax}, {"binWidth", g.binWidth}}; }

FNPoint pointFromJson(const Json& j, const std::string& where) {
    requireKnownFields(j, {"interior", "boundary"}, where);
    FNPoint p;
    if (j.contains("interior")) {
        if (!j["interior"].is_object()) throw ConfigurationError(where + ".interior: expected an object");
        for (const auto& [id, v] : j["interior"].items()) {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                throw ConfigurationError(where + ".interior." + id + ": expected [length, twist]");
            p.interior[id] = {v[0].get<double>(), v[1].get<double>()};
        }
    }
    if (j.contains("boundary")) {
        if (!j["boundary"].is_object()) throw ConfigurationError(where + ".boundary: expected an object");
        for (const auto& [id, v] : j["boundary"].items()) {
            if (!v.is_number()) throw ConfigurationError(where + ".boundary." + id + ": expected a number");
            p.boundary[id] = v.get<double>();
        }
    }
    return p;
}

Json pointToJson(const FNPoint& p) {
    Json in = Json::object(), bd = Json::object();
    for (const auto& [id, v] : p.interior) in[id] = {v.first, v.second};
    for (const auto& [id, v] : p.boundary) bd[id] = v;
    return {{"interior", in}, {"boundary", bd}};
}

LoopSpec loopFromJson(const Json& j, const std::string& where) {
    requireKnownFields(j, {"catalog", "pantsWord", "surface", "incursions"}, where);
    if (j.contains("catalog")) {
        std::string name = getString(j, "catalog", where);
        for (const auto& c : loopCatalog())
            if (c.name == name) return c.loop;
        throw ConfigurationError(where + ".catalog: unknown loop '" + name + "'");
    }
    if (j.contains("pantsWord")) return pantsWordLoop(wordFrom(j["pantsWord"], where + ".pantsWord"));
    LoopSpec loop;
    loop.surface = surfaceByName(getString(j, "surface", where), where + ".surface");
    const Json& incs = field(j, "incursions", where);
    if (!incs.is_array()) throw ConfigurationError(where + ".incursions: expected an array");
    for (std::size_t i = 0; i < incs.size(); ++i) {
        std::string w = where + ".incursions[" + std::to_string(i) + "]";
        const Json& e = incs[i];
        requireKnownFields(e, {"pants", "entry", "exit", "word", "m", "twistSign", "form", "beta0"}, w);
        Incursion inc;
        inc.pantsId = getString(e, "pants", w);
        inc.entry = getInt(e, "entry", w, 0);
        inc.exit = getInt(e, "exit", w, 1);
        if (e.contains("word")) inc.word = wordFrom(e["word"], w + ".word");
        inc.m = getInt(e, "m", w, 0);
        inc.twistSign = getInt(e, "twistSign", w, 1);
        if (e.contains("form")) inc.form = formFromString(getString(e, "form", w), w + ".form");
        inc.beta0 = getInt(e, "beta0", w, -1);
        loop.incursions.push_back(inc);
    }
    try {
        loop.validate();
    } catch (const Error& e) {
        throw ConfigurationError(where + ": " + e.what());
    }
    return loop;
}

Json loopToJson(const LoopSpec& loop) {
    Json incs = Json::array();
    for (const auto& inc : loop.incursions) {
        Json e = {{"pants", inc.pantsId}, {"entry", inc.entry}, {"exit", inc.exit}, {"word", inc.word.str()},
                  {"m", inc.m}, {"twistSign", inc.twistSign}, {"form", formName(inc.form)}};
        if (inc.beta0 >= 0) e["beta0"] = inc.beta0;
        incs.push_back(e);
    }
    return {{"surface", surfaceName(loop.surface)}, {"incursions", incs}};
}

TestFunction testFunctionFromJson(const Json& j, const std::string& where) {
    requireKnownFields(j, {"kind", "a", "knot0", "spacing", "coeffs"}, where);
    std::string kind = getString(j, "kind", where);
    if (kind == "zero") return TestFunction::zero();
    if (kind == "indicator") return TestFunction::indicator(getNumber(j, "a", where));
    if (kind == "spline")
        return TestFunction::spline(getNumber(j, "knot0", where, 0.0), getNumber(j, "spacing", where),
                                    getNumbers(j, "coeffs", where));
    throw ConfigurationError(where + ".kind: unknown test function '" + kind + "'");
}

ExpectationConfig expectationFromJson(const Json& j, const std::string& where) {
    requireKnownFields(j,
                       {"loop", "analytic", "analyticDim", "multicurve", "fixedBoundary", "mGamma", "testFunction",
                        "complementVolume", "teichHalfDim", "curveCount", "normalization", "radius"},
                       where);
    ExpectationConfig c;
    if (j.contains("loop")) c.loop = loopFromJson(j["loop"], where + ".loop");
    if (j.contains("analytic")) {
        std::string a = getString(j, "analytic", where);
        if (a == "figure-eight")
            c.analytic = AnalyticLength::figureEight;
        else if (a == "linear-sum")
            c.analytic = AnalyticLength::linearSum;
        else
            throw ConfigurationError(where + ".analytic: unknown length '" + a + "'");
    }
    c.analyticDim = getInt(j, "analyticDim", where, 3);
    if (j.contains("multicurve")) {
        const Json& m = j["multicurve"];
        if (!m.is_array()) throw ConfigurationError(where + ".multicurve: expected an array of curve ids");
        for (const auto& x : m) {
            if (!x.is_string()) throw ConfigurationError(where + ".multicurve: expected an array of curve ids");
            c.multicurve.push_back(x.get<std::string>());
        }
    }
    if (j.contains("fixedBoundary")) {
        const Json& f = j["fixedBoundary"];
        if (!f.is_object()) throw ConfigurationError(where + ".fixedBoundary: expected an object");
        for (const auto& [id, v] : f.items()) {
            if (!v.is_number()) throw ConfigurationError(where + ".fixedBoundary." + id + ": expected a number");
            c.fixedBoundary[id] = v.get<double>();
        }
    }
    c.mGamma = getInt(j, "mGamma", where, 1);
    if (j.contains("testFunction")) c.F = testFunctionFromJson(j["testFunction"], where + ".testFunction");
    if (j.contains("complementVolume")) c.complementVolume = polynomialFromJson(j["complementVolume"]);
    c.teichHalfDim = getInt(j, "teichHalfDim", where, 0);
    c.curveCount = getInt(j, "curveCount", where, static_cast<int>(c.multicurve.size()));
    if (j.contains("normalization")) {
        const Json& n = j["normalization"];
        if (n.is_string() && n.get<std::string>() == "unnormalized")
            c.normalization.reset();
        else if (n.is_number())
            c.normalization = n.get<double>();
        else
            throw ConfigurationError(where + ".normalization: expected a number or \"unnormalized\"");
    }
    c.radius = getNumber(j, "radius", where, 0.0);
    if (c.analytic != AnalyticLength::none && !j.contains("curveCount"))
        c.curveCount = c.analytic == AnalyticLength::figureEight ? 3 : c.analyticDim;
    try {
        c.validate();
    } catch (const ConfigurationError& e) {
        throw ConfigurationError(where + ": " + e.what());
    }
    return c;
}

Json densityToJson(const DensityGrid& g) {
    Json bins = Json::array();
    for (std::size_t i = 0; i < g.bins(); ++i) bins.push_back({g.lo(i), g.hi(i), g.mass[i], g.stderrAt(i)});
    return {{"ellMin", g.ellMin},       {"ellMax", g.ellMax}, {"binWidth", g.binWidth},
            {"totalSamples", g.totalSamples}, {"columns", {"ell_lo", "ell_hi", "density", "stderr"}},
            {"bins", bins}};
}

DensityGrid densityFromJson(const Json& j) {
    requireKnownFields(j, {"schemaVersion", "ellMin", "ellMax", "binWidth", "totalSamples", "columns", "bins"},
                       "density");
    DensityGrid g = DensityGrid::make(getNumber(j, "ellMin", "density"), getNumber(j, "ellMax", "density"),
                                      getNumber(j, "binWidth", "density"));
    g.totalSamples = j.value("totalSamples", 0LL);
    const Json& bins = field(j, "bins", "density");
    if (!bins.is_array() || bins.size() != g.bins()) throw ConfigurationError("density.bins: wrong number of bins");
    for (std::size_t i = 0; i < g.bins(); ++i) {
        const Json& b = bins[i];
        if (!b.is_array() || b.size() != 4) throw ConfigurationError("density.bins: expected 4 columns");
        g.mass[i] = b[2].get<double>();
        double s = b[3].get<double>();
        g.variance[i] = s * s;
    }
    return g;
}

DensityGrid densityFromCsv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("ell_lo,ell_hi,density,stderr", 0) != 0)
        throw ConfigurationError("density CSV: expected header ell_lo,ell_hi,density,stderr");
    std::vector<std::array<double, 4>> rows;
    int lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::array<double, 4> r{};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int k = 0; k < 4; ++k) {
            auto res = std::from_chars(p, end, r[static_cast<std::size_t>(k)]);
            if (res.ec != std::errc()) throw ConfigurationError("density CSV: bad number on line " + std::to_string(lineNo));
            p = res.ptr;
            if (k < 3) {
                if (p == end || *p != ',') throw ConfigurationError("density CSV: expected 4 columns on line " + std::to_string(lineNo));
                ++p;
            }
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw ConfigurationError("density CSV: no rows");
    double bw = rows[0][1] - rows[0][0];
    DensityGrid g = DensityGrid::make(rows.front()[0], rows.back()[1], bw);
    if (g.bins() != rows.size()) throw ConfigurationError("density CSV: rows are not an equally spaced grid");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        g.mass[i] = rows[i][2];
        g.variance[i] = rows[i][3] * rows[i][3];
    }
    return g;
}

Json frReportToJson(const FRReport& r) {
    auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    return {{"polyCoeffs", r.polyCoeffs},  {"polyStderr", r.polyStderr},
            {"effectiveDegree", r.effectiveDegree}, {"lambdaHat", r.lambdaHat},
            {"c0", num(r.c0)},             {"c", r.c},
            {"fitWindow", {r.w0, r.w1}},   {"decayWindow", {r.decayLo, r.decayHi}},
            {"checkMax", num(r.checkMax)}, {"condition", num(r.condition)},
            {"boundCheck", frBoundCheck(r)}, {"residual", densityToJson(r.residual)}};
}

Json orbitToJson(const std::vector<OrbitEntry>& entries) {
    Json a = Json::array();
    for (const auto& e : entries) a.push_back({{"word", e.word.str()}, {"length", e.length}, {"generation", e.generation}});
    return a;
}

std::string formatDouble(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void writeFileAtomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigurationError(path + ": cannot write output");
        out << content;
        out.flush();
        if (!out) throw ConfigurationError(path + ": write failed");
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigurationError(path + ": cannot move output into place");
    }
}

std::string resolveOutputPath(const std::string& path) {
    namespace fs = std::filesystem;
    const char* dir = std::getenv("TEICHLAB_OUT_DIR");
    fs::path p(path);
    if (dir && *dir && p.is_relative()) return (fs::path(dir) / p).string();
    return path;
}

}  // namespace teichlab

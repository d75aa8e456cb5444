#include "teichlab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "teichlab/catalog.hpp"
#include "teichlab/errors.hpp"
#include "teichlab/lengths.hpp"
#include "teichlab/measure.hpp"
#include "teichlab/pants.hpp"
#include "teichlab/selftest.hpp"

namespace teichlab {

namespace {

constexpr std::int64_t kDefaultSamples = 100000;

// fields every command accepts
const std::vector<std::string> kCommonFields = {"schemaVersion", "command", "seed",       "samples",
                                                "grid",          "format",  "inputPaths", "outputPath"};

const std::map<std::string, std::vector<std::string>>& commandFields() {
    static const std::map<std::string, std::vector<std::string>> m = {
        {"pants-solve", {"lengths"}},
        {"loop-length", {"loop", "point", "points"}},
        {"resolve", {"word", "cuts", "lengths"}},
        {"okai-check", {"ellA", "tau", "L", "tolerance"}},
        {"ray", {"loop", "base", "direction", "tMax"}},
        {"density", {"engine", "length", "weights", "domain", "pivot", "transform"}},
        {"fr-fit", {"density", "maxDegree", "window"}},
        {"expect", {"setup", "mode"}},
        {"count", {"word", "point", "cutoff", "margin", "slopeWindow"}},
        {"selftest", {}},
    };
    return m;
}

std::string defaultFormat(const std::string& cmd) {
    return cmd == "density" || cmd == "count" ? "csv" : "json";
}

struct Ctx {
    Ctx(std::string c, const Json& j) : cmd(std::move(c)), cfg(j) {}
    std::string cmd;
    const Json& cfg;
    std::uint64_t seed = 0;
    std::int64_t samples = kDefaultSamples;
    bool samplesGiven = false;
    std::string format;
    std::string baseDir;

    std::string where(const std::string& key) const { return cmd + "." + key; }
};

double nullableNumber(const Json& v, const std::string& where) {
    if (v.is_null()) return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw ConfigurationError(where + ": expected a number or null");
    return v.get<double>();
}

Json finiteOrNull(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csvNumber(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return formatDouble(v);
}

std::vector<std::array<double, 3>> triples(const Json& v, const std::string& where) {
    auto one = [&](const Json& t) {
        if (!t.is_array() || t.size() != 3) throw ConfigurationError(where + ": expected [x, y, z]");
        std::array<double, 3> r{};
        for (std::size_t i = 0; i < 3; ++i) {
            if (!t[i].is_number()) throw ConfigurationError(where + ": expected [x, y, z]");
            r[i] = t[i].get<double>();
        }
        return r;
    };
    std::vector<std::array<double, 3>> out;
    if (v.is_array() && !v.empty() && v[0].is_array()) {
        for (const auto& t : v) out.push_back(one(t));
    } else {
        out.push_back(one(v));
    }
    return out;
}

const Json& require(const Ctx& c, const char* key) {
    if (!c.cfg.contains(key)) throw ConfigurationError(c.cmd + ": missing field '" + key + "'");
    return c.cfg[key];
}

std::string densityText(const DensityGrid& g, const std::string& format) {
    if (format == "json") {
        Json j = densityToJson(g);
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    writeCsv(os, g);
    return os.str();
}

Json envelope(const Ctx& c, Json result) {
    return {{"schemaVersion", kSchemaVersion}, {"command", c.cmd}, {"seed", c.seed}, {"result", std::move(result)}};
}

std::string jsonText(const Json& j) { return j.dump(2) + "\n"; }

void requireJson(const Ctx& c) {
    if (c.format != "json") throw ConfigurationError(c.cmd + ": only format \"json\" is supported");
}

// ---- commands ----

CommandResult pantsSolveCmd(const Ctx& c) {
    auto ts = triples(require(c, "lengths"), c.where("lengths"));
    CommandResult r;
    if (c.format == "csv") {
        std::string s = "x,y,z,t,tStar,ellStar,hexagon,pentagonX,pentagonY\n";
        for (const auto& t : ts) {
            PantsTrig p = solvePants(t[0], t[1], t[2]);
            PantsResiduals q = pantsResiduals(p);
            for (double v : {p.x, p.y, p.z, p.t, p.tStar, p.ellStar, q.hexagon, q.pentagonX})
                s += csvNumber(v) + ",";
            s += csvNumber(q.pentagonY) + "\n";
        }
        r.content = s;
        return r;
    }
    Json rows = Json::array();
    for (const auto& t : ts) {
        PantsTrig p = solvePants(t[0], t[1], t[2]);
        PantsResiduals q = pantsResiduals(p);
        rows.push_back({{"x", p.x},
                        {"y", p.y},
                        {"z", p.z},
                        {"t", p.t},
                        {"tStar", p.tStar},
                        {"ellStar", finiteOrNull(p.ellStar)},
                        {"residuals", {{"hexagon", q.hexagon}, {"pentagonX", q.pentagonX}, {"pentagonY", q.pentagonY}}}});
    }
    r.content = jsonText(envelope(c, rows));
    return r;
}

CommandResult loopLengthCmd(const Ctx& c) {
    LoopSpec loop = loopFromJson(require(c, "loop"), c.where("loop"));
    std::vector<FNPoint> pts;
    if (c.cfg.contains("point")) pts.push_back(pointFromJson(c.cfg["point"], c.where("point")));
    if (c.cfg.contains("points")) {
        const Json& a = c.cfg["points"];
        if (!a.is_array()) throw ConfigurationError(c.where("points") + ": expected an array");
        for (std::size_t i = 0; i < a.size(); ++i)
            pts.push_back(pointFromJson(a[i], c.where("points[" + std::to_string(i) + "]")));
    }
    if (pts.empty()) throw ConfigurationError(c.cmd + ": need 'point' or 'points'");
    for (const auto& p : pts) {
        try {
            p.validateFor(loop.surface);
        } catch (const Error& e) {
            throw ConfigurationError(c.cmd + ": " + e.what());
        }
    }
    CommandResult r;
    if (c.format == "csv") {
        std::string s = "index,length,logTrace\n";
        for (std::size_t i = 0; i < pts.size(); ++i)
            s += std::to_string(i) + "," + csvNumber(loopLength(loop, pts[i])) + "," +
                 csvNumber(loopLogTrace(loop, pts[i])) + "\n";
        r.content = s;
        return r;
    }
    Json rows = Json::array();
    for (const auto& p : pts)
        rows.push_back({{"point", pointToJson(p)}, {"length", loopLength(loop, p)}, {"logTrace", loopLogTrace(loop, p)}});
    r.content = jsonText(envelope(c, {{"loop", loopToJson(loop)}, {"lengths", rows}}));
    return r;
}

CommandResult resolveCmd(const Ctx& c) {
    requireJson(c);
    const Json& w = require(c, "word");
    if (!w.is_string()) throw ConfigurationError(c.where("word") + ": expected a string");
    PantsWord word;
    try {
        word = PantsWord::parse(w.get<std::string>());
    } catch (const InvalidArgument& e) {
        throw ConfigurationError(c.where("word") + ": " + e.what());
    }
    const Json& cuts = require(c, "cuts");
    if (!cuts.is_array() || cuts.size() != 2 || !cuts[0].is_number_integer() || !cuts[1].is_number_integer())
        throw ConfigurationError(c.where("cuts") + ": expected [cutA, cutB]");
    auto t = triples(require(c, "lengths"), c.where("lengths"));
    if (t.size() != 1) throw ConfigurationError(c.where("lengths") + ": expected a single [x, y, z]");
    ResolutionReport rep = checkResolution(word, cuts[0].get<int>(), cuts[1].get<int>(), solvePants(t[0][0], t[0][1], t[0][2]));
    Json res = {{"word", normalize(word).str()},
                {"u", rep.split.u.str()},
                {"v", rep.split.v.str()},
                {"nonSep", rep.split.nonSep.str()},
                {"hyperbolic", rep.hyperbolic},
                {"sign", signName(rep.sign)},
                {"residual", finiteOrNull(rep.residual)},
                {"residuals", {finiteOrNull(rep.residuals[0]), finiteOrNull(rep.residuals[1]), finiteOrNull(rep.residuals[2])}},
                {"logTrace", {rep.logTrace[0], rep.logTrace[1], rep.logTrace[2], rep.logTrace[3]}}};
    CommandResult r;
    r.content = jsonText(envelope(c, res));
    return r;
}

CommandResult okaiCheckCmd(const Ctx& c) {
    auto ellA = getNumbers(c.cfg, "ellA", c.cmd), tau = getNumbers(c.cfg, "tau", c.cmd), Ls = getNumbers(c.cfg, "L", c.cmd);
    double tol = getNumber(c.cfg, "tolerance", c.cmd, 1e-6);
    LoopSpec dual = torusDualLoop();
    struct Row {
        double la, t, L, offset, holonomy, formula, rel;
    };
    std::vector<Row> rows;
    double worst = 0;
    for (double L : Ls)
        for (double la : ellA) {
            if (!(la > 0) || !(L >= 0)) throw ConfigurationError(c.cmd + ": need ellA > 0 and L >= 0");
            double offset = calibrateTwistOrigin(dual, "a", torusPoint(la, 0, L));
            for (double t : tau) {
                double hol = loopLength(dual, torusPoint(la, offset + t, L));
                double f = okaiDualLength(la, t, L);
                double rel = std::fabs(hol - f) / std::max(std::fabs(f), 1e-300);
                worst = std::max(worst, rel);
                rows.push_back({la, t, L, offset, hol, f, rel});
            }
        }
    CommandResult r;
    if (!(worst <= tol))
        r.failedCheck = "okai-check: max relative error " + formatDouble(worst) + " exceeds " + formatDouble(tol);
    if (c.format == "csv") {
        std::string s = "ellA,tau,L,offset,holonomy,formula,relError\n";
        for (const auto& x : rows)
            s += csvNumber(x.la) + "," + csvNumber(x.t) + "," + csvNumber(x.L) + "," + csvNumber(x.offset) + "," +
                 csvNumber(x.holonomy) + "," + csvNumber(x.formula) + "," + csvNumber(x.rel) + "\n";
        r.content = s;
        return r;
    }
    Json a = Json::array();
    for (const auto& x : rows)
        a.push_back({{"ellA", x.la}, {"tau", x.t}, {"L", x.L}, {"offset", x.offset}, {"holonomy", x.holonomy},
                     {"formula", x.formula}, {"relError", x.rel}});
    r.content = jsonText(envelope(c, {{"rows", a}, {"maxRelError", worst}, {"tolerance", tol}, {"pass", worst <= tol}}));
    return r;
}

CommandResult rayCmd(const Ctx& c) {
    requireJson(c);
    LoopSpec loop = loopFromJson(require(c, "loop"), c.where("loop"));
    FNPoint base = pointFromJson(require(c, "base"), c.where("base"));
    try {
        base.validateFor(loop.surface);
    } catch (const Error& e) {
        throw ConfigurationError(c.cmd + ": " + e.what());
    }
    std::vector<double> dir = getNumbers(c.cfg, "direction", c.cmd);
    if (dir.size() != base.coordinates().size())
        throw ConfigurationError(c.where("direction") + ": expected " + std::to_string(base.coordinates().size()) +
                                 " components");
    double tMax = getNumber(c.cfg, "tMax", c.cmd, 40.0);
    int n = c.samplesGiven ? static_cast<int>(c.samples) : 64;
    RayReport rep = rayAsymptotics(loop, base, dir, tMax, n);
    Json res = {{"coordinates", base.coordinateNames()},
                {"direction", rep.direction},
                {"slope", rep.slope},
                {"intercept", rep.intercept},
                {"residualSup", rep.residualSup},
                {"slopeDoubled", rep.slopeDoubled},
                {"residualSupDoubled", rep.residualSupDoubled},
                {"stable", rep.stable},
                {"samples", rep.samples},
                {"skipped", rep.skipped}};
    CommandResult r;
    r.content = jsonText(envelope(c, res));
    return r;
}

WeightSpec weightsFromJson(const Json& j, int dim, const std::string& where) {
    requireKnownFields(j, {"degrees", "perCoordinate"}, where);
    WeightSpec w = WeightSpec::constant(dim);
    if (j.contains("degrees")) {
        std::vector<int> deg;
        for (double d : getNumbers(j, "degrees", where)) {
            if (d < 0 || d != std::floor(d)) throw ConfigurationError(where + ".degrees: expected nonnegative integers");
            deg.push_back(static_cast<int>(d));
        }
        w = WeightSpec::monomials(deg);
    } else if (j.contains("perCoordinate")) {
        const Json& pc = j["perCoordinate"];
        if (!pc.is_array()) throw ConfigurationError(where + ".perCoordinate: expected an array of coefficient lists");
        w.perCoordinate.clear();
        for (const auto& f : pc) {
            std::vector<double> co;
            if (!f.is_array()) throw ConfigurationError(where + ".perCoordinate: expected an array of coefficient lists");
            for (const auto& x : f) {
                if (!x.is_number()) throw ConfigurationError(where + ".perCoordinate: coefficients must be numbers");
                co.push_back(x.get<double>());
            }
            w.perCoordinate.push_back(co);
        }
    }
    if (w.dim() != dim)
        throw ConfigurationError(where + ": " + std::to_string(w.dim()) + " factors for " + std::to_string(dim) +
                                 " coordinates");
    return w;
}

CommandResult densityCmd(const Ctx& c) {
    const std::string engine = c.cfg.contains("engine") ? getString(c.cfg, "engine", c.cmd) : "pushforward";
    if (engine != "pushforward" && engine != "disintegration")
        throw ConfigurationError(c.where("engine") + ": expected \"pushforward\" or \"disintegration\"");

    const Json& dj = require(c, "domain");
    requireKnownFields(dj, {"lower", "upper"}, c.where("domain"));
    std::vector<double> lower = getNumbers(dj, "lower", c.where("domain"));
    const Json& up = dj.contains("upper") ? dj["upper"] : throw ConfigurationError(c.where("domain") + ": missing field 'upper'");
    if (!up.is_array() || up.size() != lower.size())
        throw ConfigurationError(c.where("domain.upper") + ": expected one bound per coordinate (null for +infinity)");
    std::vector<double> upper;
    for (std::size_t i = 0; i < up.size(); ++i) upper.push_back(nullableNumber(up[i], c.where("domain.upper")));
    DomainSpec dom = DomainSpec::box(lower, upper);
    const int dim = dom.dim();

    const Json& lj = require(c, "length");
    requireKnownFields(lj, {"analytic", "loop", "base", "coordinates"}, c.where("length"));
    Evaluator h;
    if (lj.contains("analytic")) {
        std::string a = getString(lj, "analytic", c.where("length"));
        if (a == "figure-eight") {
            if (dim != 3) throw ConfigurationError(c.where("length") + ": figure-eight needs 3 coordinates");
            h = [](std::span<const double> x) { return figureEightLength(x[0], x[1], x[2]); };
        } else if (a == "linear-sum") {
            h = [](std::span<const double> x) {
                double s = 0;
                for (double v : x) s += v;
                return s;
            };
        } else {
            throw ConfigurationError(c.where("length.analytic") + ": unknown length '" + a + "'");
        }
    } else {
        LoopSpec loop = loopFromJson(lj.contains("loop") ? lj["loop"] : throw ConfigurationError(c.where("length") + ": need 'analytic' or 'loop'"),
                                     c.where("length.loop"));
        if (!lj.contains("base")) throw ConfigurationError(c.where("length") + ": missing field 'base'");
        FNPoint base = pointFromJson(lj["base"], c.where("length.base"));
        try {
            base.validateFor(loop.surface);
        } catch (const Error& e) {
            throw ConfigurationError(c.where("length") + ": " + e.what());
        }
        const Json& names = lj.contains("coordinates") ? lj["coordinates"] : throw ConfigurationError(c.where("length") + ": missing field 'coordinates'");
        std::vector<std::string> all = base.coordinateNames();
        std::vector<std::size_t> idx;
        if (!names.is_array()) throw ConfigurationError(c.where("length.coordinates") + ": expected an array of names");
        for (const auto& n : names) {
            if (!n.is_string()) throw ConfigurationError(c.where("length.coordinates") + ": expected an array of names");
            auto it = std::find(all.begin(), all.end(), n.get<std::string>());
            if (it == all.end())
                throw ConfigurationError(c.where("length.coordinates") + ": unknown coordinate '" + n.get<std::string>() + "'");
            idx.push_back(static_cast<std::size_t>(it - all.begin()));
        }
        if (static_cast<int>(idx.size()) != dim)
            throw ConfigurationError(c.where("length.coordinates") + ": need one name per domain coordinate");
        std::vector<double> coords = base.coordinates();
        h = [loop, base, coords, idx](std::span<const double> x) {
            std::vector<double> v = coords;
            for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = x[i];
            return loopLength(loop, base.withCoordinates(v));
        };
    }

    WeightSpec w = c.cfg.contains("weights") ? weightsFromJson(c.cfg["weights"], dim, c.where("weights"))
                                             : WeightSpec::constant(dim);
    GridParams grid = c.cfg.contains("grid") ? gridFromJson(c.cfg["grid"], c.where("grid")) : GridParams{};
    std::string transform = c.cfg.contains("transform") ? getString(c.cfg, "transform", c.cmd) : "none";
    if (transform != "none" && transform != "pseudo-length")
        throw ConfigurationError(c.where("transform") + ": expected \"none\" or \"pseudo-length\"");

    DensityGrid g;
    if (engine == "pushforward") {
        if (c.cfg.contains("pivot")) throw ConfigurationError(c.where("pivot") + ": only used by the disintegration engine");
        g = pushforwardDensity(h, w, dom, c.samples, c.seed, grid);
    } else {
        int pivot = -1;
        if (c.cfg.contains("pivot") && !(c.cfg["pivot"].is_string() && c.cfg["pivot"] == "auto")) {
            if (!c.cfg["pivot"].is_number_integer())
                throw ConfigurationError(c.where("pivot") + ": expected a coordinate index or \"auto\"");
            pivot = c.cfg["pivot"].get<int>();
            if (pivot < 0 || pivot >= dim) throw ConfigurationError(c.where("pivot") + ": out of range");
        }
        if (pivot < 0) pivot = choosePivot(h, dom, c.seed);
        g = disintegrateDensity(h, w, dom, pivot, grid, c.samples, c.seed);
    }
    if (transform == "pseudo-length") g = pseudoLengthTransform(g, TransformDirection::forward);
    CommandResult r;
    r.content = densityText(g, c.format);
    return r;
}

DensityGrid readDensityFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigurationError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        Json j = parseJsonText(text, path);
        // accept both a bare density and the density command's JSON output
        return densityFromJson(j);
    }
    return densityFromCsv(text);
}

CommandResult frFitCmd(const Ctx& c) {
    DensityGrid g;
    if (c.cfg.contains("density")) {
        g = densityFromJson(c.cfg["density"]);
    } else if (c.cfg.contains("inputPaths")) {
        const Json& p = c.cfg["inputPaths"];
        if (!p.is_array() || p.size() != 1 || !p[0].is_string())
            throw ConfigurationError(c.where("inputPaths") + ": expected exactly one density file");
        std::filesystem::path path(p[0].get<std::string>());
        if (path.is_relative()) path = std::filesystem::path(c.baseDir) / path;
        g = readDensityFile(path.string());
    } else {
        throw ConfigurationError(c.cmd + ": need 'density' or 'inputPaths'");
    }
    int m = getInt(c.cfg, "maxDegree", c.cmd, 1);
    std::vector<double> win = getNumbers(c.cfg, "window", c.cmd);
    if (win.size() != 2) throw ConfigurationError(c.where("window") + ": expected [w0, w1]");
    FRReport rep = frDecompose(g, m, win[0], win[1]);
    CommandResult r;
    if (c.format == "csv") {
        r.content = densityText(rep.residual, "csv");
        return r;
    }
    r.content = jsonText(envelope(c, frReportToJson(rep)));
    return r;
}

CommandResult expectCmd(const Ctx& c) {
    ExpectationConfig cfg = expectationFromJson(require(c, "setup"), c.where("setup"));
    std::string mode = c.cfg.contains("mode") ? getString(c.cfg, "mode", c.cmd) : "expectation";
    CommandResult r;
    if (mode == "expectation") {
        requireJson(c);
        Estimate e = expectationViaFormula(cfg, c.samples, c.seed);
        r.content = jsonText(envelope(c, {{"value", e.value}, {"error", e.error}, {"samples", c.samples}}));
        return r;
    }
    if (mode != "density" && mode != "counting")
        throw ConfigurationError(c.where("mode") + ": expected \"expectation\", \"density\" or \"counting\"");
    GridParams grid = c.cfg.contains("grid") ? gridFromJson(c.cfg["grid"], c.where("grid")) : GridParams{};
    DensityGrid g = densityViaFormula(cfg, grid, c.samples, c.seed);
    if (mode == "density") {
        r.content = densityText(g, c.format);
        return r;
    }
    DensityGrid q = countingCurve(g);
    if (c.format == "json") {
        Json rows = Json::array();
        for (std::size_t i = 0; i < q.bins(); ++i) rows.push_back({q.hi(i), q.mass[i], q.stderrAt(i)});
        r.content = jsonText(envelope(c, {{"columns", {"a", "Q", "stderr"}}, {"rows", rows}}));
        return r;
    }
    std::string s = "a,Q,stderr\n";
    for (std::size_t i = 0; i < q.bins(); ++i)
        s += csvNumber(q.hi(i)) + "," + csvNumber(q.mass[i]) + "," + csvNumber(q.stderrAt(i)) + "\n";
    r.content = s;
    return r;
}

CommandResult countCmd(const Ctx& c) {
    PantsWord word;
    std::string ws = c.cfg.contains("word") ? getString(c.cfg, "word", c.cmd) : "b1";
    try {
        word = PantsWord::parse(ws);
    } catch (const InvalidArgument& e) {
        throw ConfigurationError(c.where("word") + ": " + e.what());
    }
    FNPoint p = pointFromJson(require(c, "point"), c.where("point"));
    double cutoff = getNumber(c.cfg, "cutoff", c.cmd);
    double margin = getNumber(c.cfg, "margin", c.cmd, 1.0);
    if (!(margin >= 0)) throw ConfigurationError(c.where("margin") + ": must be nonnegative");
    std::vector<OrbitEntry> entries = enumerateOrbit(word, p, cutoff, margin);
    auto steps = countingSteps(entries);
    CommandResult r;
    if (c.format == "csv") {
        std::string s = "a,N\n";
        for (const auto& [a, n] : steps) s += csvNumber(a) + "," + std::to_string(n) + "\n";
        r.content = s;
        return r;
    }
    Json st = Json::array();
    for (const auto& [a, n] : steps) st.push_back({a, n});
    Json res = {{"seedWord", canonicalKey(word)}, {"cutoff", cutoff}, {"margin", margin},
                {"count", countAtMost(entries, cutoff)}, {"steps", st}, {"orbit", orbitToJson(entries)}};
    if (c.cfg.contains("slopeWindow")) {
        std::vector<double> sw = getNumbers(c.cfg, "slopeWindow", c.cmd);
        if (sw.size() != 2) throw ConfigurationError(c.where("slopeWindow") + ": expected [a0, a1]");
        res["slope"] = countingSlope(entries, sw[0], sw[1]);
    }
    r.content = jsonText(envelope(c, res));
    return r;
}

CommandResult selftestCmd(const Ctx& c) {
    requireJson(c);
    Json rep = runSelftest(c.seed);
    CommandResult r;
    for (const auto& p : rep["properties"])
        if (!p["pass"].get<bool>()) {
            r.failedCheck = "selftest: " + p["module"].get<std::string>() + ": " + p["property"].get<std::string>();
            break;
        }
    r.content = jsonText(envelope(c, rep));
    return r;
}

}  // namespace

const std::vector<std::string>& commandNames() {
    static const std::vector<std::string> names = {"pants-solve", "loop-length", "resolve", "okai-check", "ray",
                                                   "density",     "fr-fit",      "expect",  "count",      "selftest"};
    return names;
}

std::string commandSummary(const std::string& command) {
    static const std::map<std::string, std::string> text = {
        {"pants-solve", "solve the pants hexagon for boundary lengths"},
        {"loop-length", "hyperbolic length of a loop at Fenchel-Nielsen points"},
        {"resolve", "trace resolution of a word into pants pieces"},
        {"okai-check", "compare the torus dual length against its closed form"},
        {"ray", "length along a twist or length ray"},
        {"density", "Monte Carlo density of a length function (CSV or JSON)"},
        {"fr-fit", "polynomial fit and remainder bound for a density"},
        {"expect", "integrate a test function against the length pushforward"},
        {"count", "orbit counts N(a) and the growth slope"},
        {"selftest", "run the built-in property checks"}};
    auto it = text.find(command);
    return it == text.end() ? std::string() : it->second;
}

CommandResult runCommand(const std::string& command, const Json& config, const CommandOptions& opt) {
    auto it = commandFields().find(command);
    if (it == commandFields().end()) throw ConfigurationError("unknown command '" + command + "'");
    if (!config.is_object()) throw ConfigurationError(command + ": config must be a JSON object");
    for (const auto& [k, v] : config.items()) {
        bool ok = std::find(kCommonFields.begin(), kCommonFields.end(), k) != kCommonFields.end() ||
                  std::find(it->second.begin(), it->second.end(), k) != it->second.end();
        if (!ok) throw ConfigurationError(command + ": unknown field '" + k + "'");
    }
    if (config.contains("schemaVersion") &&
        (!config["schemaVersion"].is_number_integer() || config["schemaVersion"].get<int>() != kSchemaVersion))
        throw ConfigurationError(command + ".schemaVersion: expected " + std::to_string(kSchemaVersion));
    if (config.contains("command") && config["command"] != command)
        throw ConfigurationError(command + ".command: config is for '" + config["command"].dump() + "'");

    Ctx c(command, config);
    c.baseDir = opt.baseDir;
    if (config.contains("seed")) {
        if (!config["seed"].is_number_unsigned()) throw ConfigurationError(command + ".seed: expected a nonnegative integer");
        c.seed = config["seed"].get<std::uint64_t>();
    }
    if (opt.seed) c.seed = *opt.seed;
    if (config.contains("samples")) {
        if (!config["samples"].is_number_integer() || config["samples"].get<std::int64_t>() < 1)
            throw ConfigurationError(command + ".samples: expected a positive integer");
        c.samples = config["samples"].get<std::int64_t>();
        c.samplesGiven = true;
    }
    if (opt.samples) {
        if (*opt.samples < 1) throw ConfigurationError(command + ": --samples must be positive");
        c.samples = *opt.samples;
        c.samplesGiven = true;
    }
    c.format = config.contains("format") ? getString(config, "format", command) : defaultFormat(command);
    if (c.format != "csv" && c.format != "json") throw ConfigurationError(command + ".format: expected \"csv\" or \"json\"");
    if (config.contains("grid") && command != "density" && command != "expect")
        throw ConfigurationError(command + ".grid: not used by this command");
    if (config.contains("inputPaths") && command != "fr-fit")
        throw ConfigurationError(command + ".inputPaths: not used by this command");

    CommandResult r;
    if (command == "pants-solve") r = pantsSolveCmd(c);
    else if (command == "loop-length") r = loopLengthCmd(c);
    else if (command == "resolve") r = resolveCmd(c);
    else if (command == "okai-check") r = okaiCheckCmd(c);
    else if (command == "ray") r = rayCmd(c);
    else if (command == "density") r = densityCmd(c);
    else if (command == "fr-fit") r = frFitCmd(c);
    else if (command == "expect") r = expectCmd(c);
    else if (command == "count") r = countCmd(c);
    else r = selftestCmd(c);
    r.format = c.format;

    if (opt.out) {
        r.outputPath = resolveOutputPath(*opt.out);
    } else if (config.contains("outputPath")) {
        r.outputPath = resolveOutputPath(getString(config, "outputPath", command));
    }
    return r;
}

std::string errorTypeName(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) return err->code();
    return "internal-error";
}

int exitCodeFor(const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) return isNumericAssumptionError(*err) ? 3 : 2;
    return 1;
}

Json errorJson(const std::exception& e, const std::string& command) {
    return {{"schemaVersion", kSchemaVersion},
            {"command", command},
            {"error", {{"type", errorTypeName(e)}, {"exitCode", exitCodeFor(e)}, {"message", e.what()}}}};
}

}  // namespace teichlab

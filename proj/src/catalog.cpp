#include "teichlab/catalog.hpp"

namespace teichlab {

SurfaceGraph pantsSurface() {
    return {{{"P", {"x", "y", "z"}}}, {{"x", false}, {"y", false}, {"z", false}}};
}

SurfaceGraph onceHoledTorus() {
    return {{{"P", {"a", "a", "d"}}}, {{"a", true}, {"d", false}}};
}

SurfaceGraph fourHoledSphere() {
    return {{{"P1", {"c", "d1", "d2"}}, {"P2", {"c", "d3", "d4"}}},
            {{"c", true}, {"d1", false}, {"d2", false}, {"d3", false}, {"d4", false}}};
}

SurfaceGraph twoHoledTorus() {
    return {{{"P1", {"c1", "c2", "d1"}}, {"P2", {"c1", "c2", "d2"}}},
            {{"c1", true}, {"c2", true}, {"d1", false}, {"d2", false}}};
}

LoopSpec pantsWordLoop(const PantsWord& w) {
    Incursion inc;
    inc.pantsId = "P";
    inc.entry = 0;
    inc.exit = 1;
    inc.word = normalize(w);
    inc.form = IncursionForm::internal;
    return {pantsSurface(), {inc}};
}

LoopSpec figureEightLoop() { return pantsWordLoop(PantsWord::parse("a1b-1")); }
LoopSpec boundaryWordLoop() { return pantsWordLoop(PantsWord::parse("a1b1")); }

namespace {

Incursion through(const std::string& p, int entry, int exit, const std::string& word = "", int m = 0) {
    Incursion i;
    i.pantsId = p;
    i.entry = entry;
    i.exit = exit;
    i.word = PantsWord::parse(word);
    i.m = m;
    i.form = IncursionForm::throughDistinct;
    return i;
}

Incursion around(const std::string& p, int entry, int beta0, const std::string& word) {
    Incursion i;
    i.pantsId = p;
    i.entry = entry;
    i.exit = entry;
    i.beta0 = beta0;
    i.word = PantsWord::parse(word);
    i.form = IncursionForm::sameCurveReturn;
    return i;
}

}  // namespace

LoopSpec torusDualLoop() { return {onceHoledTorus(), {through("P", 0, 1)}}; }

FNPoint pantsPoint(double x, double y, double z) {
    FNPoint p;
    p.boundary = {{"x", x}, {"y", y}, {"z", z}};
    return p;
}

FNPoint torusPoint(double ellA, double tauA, double L) {
    FNPoint p;
    p.interior = {{"a", {ellA, tauA}}};
    p.boundary = {{"d", L}};
    return p;
}

std::vector<CatalogLoop> loopCatalog() {
    std::vector<CatalogLoop> out;
    out.push_back({"figure-eight", figureEightLoop(), pantsPoint(1.2, 0.8, 1.5), {"x", "y", "z"}});
    out.push_back({"pants-boundary-ab", boundaryWordLoop(), pantsPoint(1.2, 0.8, 1.5), {"z"}});
    out.push_back({"pants-a2b-1", pantsWordLoop(PantsWord::parse("a2b-1")), pantsPoint(0.9, 1.1, 0.7),
                   {"x", "y", "z"}});

    FNPoint tp = torusPoint(1.3, 0.4, 0.9);
    out.push_back({"torus-dual", torusDualLoop(), tp, {}});
    out.push_back({"torus-b1a1", {onceHoledTorus(), {through("P", 0, 1, "b1a1")}}, tp, {"d"}});
    out.push_back({"torus-two-crossings",
                   {onceHoledTorus(), {through("P", 0, 1, "", 0), through("P", 0, 1, "", 2)}}, tp, {}});

    FNPoint fp;
    fp.interior = {{"c", {1.1, 0.3}}};
    fp.boundary = {{"d1", 0.6}, {"d2", 0.9}, {"d3", 1.2}, {"d4", 0.5}};
    out.push_back({"sphere4-separating",
                   {fourHoledSphere(), {around("P1", 0, 1, "b1"), around("P2", 0, 1, "b1")}}, fp, {}});
    out.push_back({"sphere4-filling",
                   {fourHoledSphere(),
                    {around("P1", 0, 1, "b1"), around("P2", 0, 1, "b1"), around("P1", 0, 2, "b1"),
                     around("P2", 0, 2, "b1")}},
                   fp,
                   {"d1", "d2", "d3", "d4"}});

    FNPoint gp;
    gp.interior = {{"c1", {1.4, -0.2}}, {"c2", {0.9, 0.5}}};
    gp.boundary = {{"d1", 0.7}, {"d2", 1.0}};
    out.push_back({"torus2-crossing", {twoHoledTorus(), {through("P1", 1, 0), through("P2", 0, 1)}}, gp, {}});
    return out;
}

}  // namespace teichlab

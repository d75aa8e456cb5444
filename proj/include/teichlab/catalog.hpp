#pragma once

#include <string>
#include <vector>

#include "teichlab/loops.hpp"

namespace teichlab {

// Single pants with boundary curves x, y, z (slots 0, 1, 2).
SurfaceGraph pantsSurface();
// One pants with slots 0, 1 glued to interior curve "a"; slot 2 is the boundary "d".
SurfaceGraph onceHoledTorus();
// P1 = (c, d1, d2), P2 = (c, d3, d4).
SurfaceGraph fourHoledSphere();
// P1 = (c1, c2, d1), P2 = (c1, c2, d2).
SurfaceGraph twoHoledTorus();

LoopSpec pantsWordLoop(const PantsWord& w);
LoopSpec figureEightLoop();
LoopSpec boundaryWordLoop();
// Curve crossing "a" once; at twist 0 it is orthogonal to a.
LoopSpec torusDualLoop();

FNPoint pantsPoint(double x, double y, double z);
FNPoint torusPoint(double ellA, double tauA, double L);

struct CatalogLoop {
    std::string name;
    LoopSpec loop;
    FNPoint base;
    // Boundary curves of the filled surface that are coordinates of `base`.
    std::vector<std::string> filledBoundaries;
};

std::vector<CatalogLoop> loopCatalog();

}  // namespace teichlab

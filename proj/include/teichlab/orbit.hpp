#pragma once

#include <string>
#include <utility>
#include <vector>

#include "teichlab/hypmat.hpp"
#include "teichlab/surface.hpp"
#include "teichlab/words.hpp"

namespace teichlab {

// On the once-holed torus the letters a, b are free generators of the fundamental group:
// a is the interior curve and b the dual curve crossing it once.
enum class OrbitSurface { onceHoledTorus, pants };

// Detects the surface from the coordinate names: {"a"} interior plus boundary {"d"},
// or boundary {"x", "y", "z"}. InvalidArgument otherwise.
OrbitSurface orbitSurfaceOf(const FNPoint& fn);

// Cyclic reduction, then the least rotation of the word or its inverse under a < A < b < B.
PantsWord canonicalWord(const PantsWord& w);
std::string canonicalKey(const PantsWord& w);  // canonical word spelled with a, A, b, B

// True if the cyclic reduction is u^k for some k >= 2.
bool isProperPower(const PantsWord& w);

// One-twist images: T_a (b -> ba), T_b (a -> ab) and their inverses, canonicalized and deduplicated.
// The pants has no twists acting on free homotopy classes, so its neighbor set is empty.
std::vector<PantsWord> mcgNeighbors(const PantsWord& w, OrbitSurface s = OrbitSurface::onceHoledTorus);

// rho(b) is the holonomy of the dual loop and rho(a) = w(-l_a) in the same frame, so that
// ab is the dual curve twisted once along a.
struct TorusRepresentation {
    Mat2 a, b;
};
TorusRepresentation torusRepresentation(const FNPoint& fn);
Mat2 evaluateWord(const PantsWord& w, const TorusRepresentation& rho);
double orbitWordLength(const PantsWord& w, const FNPoint& fn);

struct OrbitEntry {
    PantsWord word;  // canonical
    double length = 0;
    int generation = 0;
};

// BFS over one-twist images, not expanding classes longer than cutoff + margin.
// Returns the classes of length <= cutoff sorted by (length, key).
std::vector<OrbitEntry> enumerateOrbitPruned(const PantsWord& seed, const FNPoint& fn, double cutoff, double margin,
                                             std::size_t maxVisited = 4000000);
// Same, certified by a second run with twice the margin; MarginTooSmall if they differ.
std::vector<OrbitEntry> enumerateOrbit(const PantsWord& seed, const FNPoint& fn, double cutoff, double margin);

// N(a) = number of entries with length <= a.
long countAtMost(const std::vector<OrbitEntry>& entries, double a);
// (a, N(a)) at each jump of the step function.
std::vector<std::pair<double, long>> countingSteps(const std::vector<OrbitEntry>& entries);
// Least-squares slope of log N(a) against log a on `points` equally spaced a in [a0, a1].
double countingSlope(const std::vector<OrbitEntry>& entries, double a0, double a1, int points = 25);

}  // namespace teichlab

#pragma once

#include <string>
#include <vector>

#include "teichlab/hypmat.hpp"
#include "teichlab/pants.hpp"
#include "teichlab/surface.hpp"
#include "teichlab/words.hpp"

namespace teichlab {

// throughDistinct: enter through slot `entry`, leave through slot `exit` (entry != exit).
// sameCurveReturn: enter and leave through slot `entry`; the word winds around slot `beta0`.
// internal: the whole loop lives in one pants; `entry` and `exit` mark the curves of letters a, b.
enum class IncursionForm { throughDistinct, sameCurveReturn, internal };

struct Incursion {
    std::string pantsId;
    int entry = 0;
    int exit = 1;
    PantsWord word;
    int m = 0;          // twist half-count
    int twistSign = 1;  // +1 or -1
    IncursionForm form = IncursionForm::throughDistinct;
    int beta0 = -1;  // sameCurveReturn only; -1 means (entry + 1) mod 3

    // Slot of the curve that carries letter b (beta0).
    int betaSlot() const;
    // Slot of the third curve (beta1).
    int otherSlot() const;
    // Slot through which the incursion leaves its pants (-1 for internal).
    int exitSlot() const;
    bool operator==(const Incursion&) const = default;
};

struct LoopSpec {
    SurfaceGraph surface;
    std::vector<Incursion> incursions;

    // Checks word normalization, slot ranges and the chaining across glued slots.
    void validate() const;
    bool operator==(const LoopSpec&) const = default;
};

Mat2 holonomyPants(const PantsWord& word, const PantsTrig& trig);
Mat2 incursionMatrix(const Incursion& inc, const SurfaceGraph& surface, const FNPoint& fn);
Mat2 holonomyLoop(const LoopSpec& loop, const FNPoint& fn);
// Trace of holonomyLoop. A loop inside one pants whose cyclic word alternates between
// a and b is evaluated as a product of the nonnegative sMat factors in log space, which
// keeps |Tr| - 2 accurate when the pants is close to a cusp.
SignedTrace holonomyTrace(const LoopSpec& loop, const FNPoint& fn);

// Id of the curve crossed when the incursion leaves its pants ("" for internal).
std::string crossedCurve(const Incursion& inc, const SurfaceGraph& surface);

LoopSpec dehnTwist(const LoopSpec& loop, const std::string& curve, int power);
// Cyclic rotation of the incursion sequence by k.
LoopSpec rotateIncursions(const LoopSpec& loop, int k);

struct SplitResult {
    PantsWord u, v, nonSep;
};

// Cut positions index the letters of the expanded word (cut before letter k).
// u is the arc from cutA to cutB, v the arc from cutB to cutA (cyclically).
SplitResult splitResolve(const PantsWord& word, int cutA, int cutB);

enum class ResolutionSign { plus, minus, reversed };
const char* signName(ResolutionSign s);

struct ResolutionReport {
    // plus:     |Tr g| = |Tr u||Tr v| + |Tr n|
    // minus:    |Tr g| = |Tr u||Tr v| - |Tr n|
    // reversed: |Tr n| = |Tr u||Tr v| + |Tr g|
    ResolutionSign sign = ResolutionSign::plus;
    double residual = 0;       // residual of the selected case
    double residuals[3] = {};  // all three cases in enum order
    bool hyperbolic = true;    // false if some resolved word is not hyperbolic
    double logTrace[4] = {};   // log |Tr| of gamma, u, v, nonSep
    SplitResult split;
};

ResolutionReport checkResolution(const PantsWord& word, int cutA, int cutB, const PantsTrig& trig);

// Relative residual of Tr(UV) - Tr(U)Tr(V) + Tr(U^-1 V), measured against the size of the terms.
double traceFormulaResidual(const Mat2& U, const Mat2& V);

}  // namespace teichlab

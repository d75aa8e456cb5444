#include "teichlab/errors.hpp"

#include <cstdio>

namespace teichlab {

namespace {
std::string nonHypMessage(NonHyperbolicElement::Kind k, double t) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s element: |trace| = %.17g",
                  k == NonHyperbolicElement::Kind::parabolic ? "parabolic" : "elliptic", t);
    return buf;
}
}  // namespace

NonHyperbolicElement::NonHyperbolicElement(Kind k, double absTrace)
    : Error(k == Kind::parabolic ? "non-hyperbolic-parabolic" : "non-hyperbolic-elliptic",
            nonHypMessage(k, absTrace)),
      kind_(k),
      absTrace_(absTrace) {}

bool isNumericAssumptionError(const Error& e) {
    const auto& c = e.code();
    return c == "numeric-failure" || c == "assumption-violated" || c == "empty-density" ||
           c == "fit-failure" || c == "degree-too-high" || c == "calibration-failure" ||
           c == "margin-too-small" || c.rfind("non-hyperbolic", 0) == 0;
}

}  // namespace teichlab

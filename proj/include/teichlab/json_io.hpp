#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "teichlab/density.hpp"
#include "teichlab/frfit.hpp"
#include "teichlab/integrate.hpp"
#include "teichlab/loops.hpp"
#include "teichlab/orbit.hpp"

namespace teichlab {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

// Parses text; syntax errors become ConfigurationError with "line L, column C".
Json parseJsonText(const std::string& text, const std::string& source = "<input>");
Json readJsonFile(const std::string& path);

// Rejects fields outside `allowed` (strict parsing); `where` prefixes the diagnostic.
void requireKnownFields(const Json& j, std::initializer_list<const char*> allowed, const std::string& where);

double getNumber(const Json& j, const char* key, const std::string& where);
double getNumber(const Json& j, const char* key, const std::string& where, double fallback);
int getInt(const Json& j, const char* key, const std::string& where, int fallback);
std::string getString(const Json& j, const char* key, const std::string& where);
std::vector<double> getNumbers(const Json& j, const char* key, const std::string& where);

GridParams gridFromJson(const Json& j, const std::string& where = "grid");
Json gridToJson(const GridParams& g);
FNPoint pointFromJson(const Json& j, const std::string& where = "point");
Json pointToJson(const FNPoint& p);
// {"catalog": name}, {"pantsWord": "a1b-1"} or {"surface": ..., "incursions": [...]}
LoopSpec loopFromJson(const Json& j, const std::string& where = "loop");
Json loopToJson(const LoopSpec& loop);
TestFunction testFunctionFromJson(const Json& j, const std::string& where = "testFunction");
ExpectationConfig expectationFromJson(const Json& j, const std::string& where = "setup");

Json densityToJson(const DensityGrid& g);
DensityGrid densityFromJson(const Json& j);
// Reads the CSV written by writeCsv (header ell_lo,ell_hi,density,stderr).
DensityGrid densityFromCsv(const std::string& text);
Json frReportToJson(const FRReport& r);
Json orbitToJson(const std::vector<OrbitEntry>& entries);

// Shortest decimal that round-trips, independent of the locale.
std::string formatDouble(double v);

// Writes through a temporary file in the same directory and renames it into place.
void writeFileAtomic(const std::string& path, const std::string& content);
// Relative paths are placed under $TEICHLAB_OUT_DIR when that variable is set.
std::string resolveOutputPath(const std::string& path);

}  // namespace teichlab

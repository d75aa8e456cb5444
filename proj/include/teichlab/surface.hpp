#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace teichlab {

struct CurveDef {
    std::string id;
    bool interior = false;
    bool operator==(const CurveDef&) const = default;
};

struct PantsDef {
    std::string id;
    std::array<std::string, 3> slots;  // curve ids; an interior curve may fill two slots of one pants
    bool operator==(const PantsDef&) const = default;
};

// Slot of a specific pants.
struct SlotRef {
    int pants = -1;
    int slot = -1;
    bool operator==(const SlotRef&) const = default;
};

struct SurfaceGraph {
    std::vector<PantsDef> pants;
    std::vector<CurveDef> curves;

    // Throws ConfigurationError if slot counts, curve references or connectivity are wrong.
    void validate() const;
    int genus() const;
    int boundaryCount() const;
    int interiorCount() const;
    int pantsIndex(const std::string& id) const;  // throws if unknown
    const CurveDef& curve(const std::string& id) const;
    bool hasCurve(const std::string& id) const;
    // The other slot glued along the interior curve in slot s.
    SlotRef partner(SlotRef s) const;
    bool operator==(const SurfaceGraph&) const = default;
};

// Point of Teichmueller space: (length, twist) per interior curve, length per boundary curve.
struct FNPoint {
    std::map<std::string, std::pair<double, double>> interior;
    std::map<std::string, double> boundary;

    double length(const std::string& id) const;
    double twist(const std::string& id) const;
    void setLength(const std::string& id, double v);
    void setTwist(const std::string& id, double v);
    // Checks coverage of the surface's curves and positivity.
    void validateFor(const SurfaceGraph& s) const;

    // Flat coordinates: for each interior curve (ordered by id) length then twist,
    // then boundary lengths ordered by id.
    std::vector<std::string> coordinateNames() const;
    std::vector<double> coordinates() const;
    FNPoint withCoordinates(std::span<const double> c) const;
    bool operator==(const FNPoint&) const = default;
};

}  // namespace teichlab

#include "teichlab/surface.hpp"

#include <cmath>
#include <set>

#include "teichlab/errors.hpp"

namespace teichlab {

void SurfaceGraph::validate() const {
    if (pants.empty()) throw ConfigurationError("surface: no pants");
    std::map<std::string, int> slotCount;
    std::set<std::string> ids;
    for (const auto& c : curves) {
        if (c.id.empty()) throw ConfigurationError("surface: empty curve id");
        if (!ids.insert(c.id).second) throw ConfigurationError("surface: duplicate curve " + c.id);
        slotCount[c.id] = 0;
    }
    std::set<std::string> pids;
    for (const auto& p : pants) {
        if (!pids.insert(p.id).second) throw ConfigurationError("surface: duplicate pants " + p.id);
        for (const auto& s : p.slots) {
            auto it = slotCount.find(s);
            if (it == slotCount.end())
                throw ConfigurationError("surface: pants " + p.id + " references unknown curve " + s);
            ++it->second;
        }
    }
    for (const auto& c : curves) {
        int need = c.interior ? 2 : 1;
        if (slotCount[c.id] != need)
            throw ConfigurationError("surface: curve " + c.id + " fills " +
                                     std::to_string(slotCount[c.id]) + " slots, expected " +
                                     std::to_string(need));
    }
    if (3 * static_cast<int>(pants.size()) != 2 * interiorCount() + boundaryCount())
        throw ConfigurationError("surface: slot count mismatch");
    // connectivity through interior curves
    std::vector<int> seen(pants.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        for (int s = 0; s < 3; ++s) {
            if (!curve(pants[p].slots[s]).interior) continue;
            SlotRef q = partner({p, s});
            if (!seen[q.pants]) {
                seen[q.pants] = 1;
                stack.push_back(q.pants);
            }
        }
    }
    for (int v : seen)
        if (!v) throw ConfigurationError("surface: pants graph is not connected");
}

int SurfaceGraph::interiorCount() const {
    int n = 0;
    for (const auto& c : curves) n += c.interior;
    return n;
}

int SurfaceGraph::boundaryCount() const {
    return static_cast<int>(curves.size()) - interiorCount();
}

int SurfaceGraph::genus() const {
    // Euler characteristic -#pants = 2 - 2g - n
    return (2 + static_cast<int>(pants.size()) - boundaryCount()) / 2;
}

int SurfaceGraph::pantsIndex(const std::string& id) const {
    for (size_t i = 0; i < pants.size(); ++i)
        if (pants[i].id == id) return static_cast<int>(i);
    throw ConfigurationError("surface: unknown pants " + id);
}

bool SurfaceGraph::hasCurve(const std::string& id) const {
    for (const auto& c : curves)
        if (c.id == id) return true;
    return false;
}

const CurveDef& SurfaceGraph::curve(const std::string& id) const {
    for (const auto& c : curves)
        if (c.id == id) return c;
    throw ConfigurationError("surface: unknown curve " + id);
}

SlotRef SurfaceGraph::partner(SlotRef s) const {
    if (s.pants < 0 || s.pants >= static_cast<int>(pants.size()) || s.slot < 0 || s.slot > 2)
        throw InvalidArgument("surface: slot out of range");
    const std::string& id = pants[s.pants].slots[s.slot];
    if (!curve(id).interior) throw InvalidArgument("surface: curve " + id + " is a boundary");
    for (int p = 0; p < static_cast<int>(pants.size()); ++p)
        for (int k = 0; k < 3; ++k)
            if ((p != s.pants || k != s.slot) && pants[p].slots[k] == id) return {p, k};
    throw ConfigurationError("surface: interior curve " + id + " has no partner slot");
}

double FNPoint::length(const std::string& id) const {
    if (auto it = interior.find(id); it != interior.end()) return it->second.first;
    if (auto it = boundary.find(id); it != boundary.end()) return it->second;
    throw ConfigurationError("FN point has no curve " + id);
}

double FNPoint::twist(const std::string& id) const {
    if (auto it = interior.find(id); it != interior.end()) return it->second.second;
    throw ConfigurationError("FN point has no interior curve " + id);
}

void FNPoint::setLength(const std::string& id, double v) {
    if (auto it = interior.find(id); it != interior.end()) {
        it->second.first = v;
        return;
    }
    if (auto it = boundary.find(id); it != boundary.end()) {
        it->second = v;
        return;
    }
    throw ConfigurationError("FN point has no curve " + id);
}

void FNPoint::setTwist(const std::string& id, double v) {
    auto it = interior.find(id);
    if (it == interior.end()) throw ConfigurationError("FN point has no interior curve " + id);
    it->second.second = v;
}

void FNPoint::validateFor(const SurfaceGraph& s) const {
    size_t ni = 0, nb = 0;
    for (const auto& c : s.curves) {
        if (c.interior) {
            auto it = interior.find(c.id);
            if (it == interior.end()) throw ConfigurationError("FN point misses interior curve " + c.id);
            if (!(it->second.first > 0) || !std::isfinite(it->second.first) ||
                !std::isfinite(it->second.second))
                throw ConfigurationError("FN point: interior curve " + c.id + " needs length > 0");
            ++ni;
        } else {
            auto it = boundary.find(c.id);
            if (it == boundary.end()) throw ConfigurationError("FN point misses boundary curve " + c.id);
            if (!(it->second >= 0) || !std::isfinite(it->second))
                throw ConfigurationError("FN point: boundary " + c.id + " needs length >= 0");
            ++nb;
        }
    }
    if (ni != interior.size() || nb != boundary.size())
        throw ConfigurationError("FN point has curves not in the surface");
}

std::vector<std::string> FNPoint::coordinateNames() const {
    std::vector<std::string> out;
    for (const auto& [id, v] : interior) {
        out.push_back("l:" + id);
        out.push_back("t:" + id);
    }
    for (const auto& [id, v] : boundary) out.push_back("L:" + id);
    return out;
}

std::vector<double> FNPoint::coordinates() const {
    std::vector<double> out;
    for (const auto& [id, v] : interior) {
        out.push_back(v.first);
        out.push_back(v.second);
    }
    for (const auto& [id, v] : boundary) out.push_back(v);
    return out;
}

FNPoint FNPoint::withCoordinates(std::span<const double> c) const {
    if (c.size() != 2 * interior.size() + boundary.size())
        throw InvalidArgument("FN point: coordinate vector has wrong size");
    FNPoint r = *this;
    size_t k = 0;
    for (auto& [id, v] : r.interior) {
        v.first = c[k++];
        v.second = c[k++];
    }
    for (auto& [id, v] : r.boundary) v = c[k++];
    return r;
}

}  // namespace teichlab

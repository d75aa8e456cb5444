#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "teichlab/pants.hpp"

namespace teichlab {

struct Syllable {
    Letter letter;
    int exponent;
    bool operator==(const Syllable&) const = default;
};

// Word in the free group <a, b> as a list of syllables.
struct PantsWord {
    std::vector<Syllable> syllables;

    // Accepts "a1b-1", "ab-1a2", "a^1 b^-1" and "aB" (capital = inverse letter).
    static PantsWord parse(std::string_view s);
    std::string str() const;
    bool empty() const { return syllables.empty(); }
    int letterCount() const;
    bool isNormalized() const;
    bool operator==(const PantsWord&) const = default;
};

// Letters as integers: a = 1, a^-1 = -1, b = 2, b^-1 = -2.
std::vector<int> toLetters(const PantsWord& w);
// Freely reduces and groups into syllables.
PantsWord fromLetters(const std::vector<int>& letters);

std::vector<int> freeReduce(const std::vector<int>& letters);
std::vector<int> cyclicReduce(const std::vector<int>& letters);

PantsWord normalize(const PantsWord& w);
PantsWord cyclicReduce(const PantsWord& w);
PantsWord inverse(const PantsWord& w);
PantsWord concat(const PantsWord& u, const PantsWord& v);

}  // namespace teichlab

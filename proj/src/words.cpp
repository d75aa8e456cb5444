#include "teichlab/words.hpp"

#include <cctype>
#include <cstdlib>

#include "teichlab/errors.hpp"

namespace teichlab {

PantsWord PantsWord::parse(std::string_view s) {
    std::vector<int> letters;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
            ++i;
            continue;
        }
        if (c != 'a' && c != 'b' && c != 'A' && c != 'B')
            throw InvalidArgument("word: unexpected character '" + std::string(1, c) + "' in \"" +
                                  std::string(s) + "\"");
        int base = (c == 'a' || c == 'A') ? 1 : 2;
        if (c == 'A' || c == 'B') base = -base;
        ++i;
        if (i < s.size() && s[i] == '^') ++i;
        long e = 1;
        size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        size_t digits = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j > digits) {
            e = std::strtol(std::string(s.substr(i, j - i)).c_str(), nullptr, 10);
            i = j;
        } else if (j != i) {
            throw InvalidArgument("word: sign without exponent in \"" + std::string(s) + "\"");
        }
        if (e > 100000 || e < -100000) throw InvalidArgument("word: exponent too large");
        int sgn = e < 0 ? -1 : 1;
        for (long k = 0; k < std::labs(e); ++k) letters.push_back(sgn * base);
    }
    return fromLetters(letters);
}

std::string PantsWord::str() const {
    std::string out;
    for (const auto& sy : syllables) {
        out += sy.letter == Letter::a ? 'a' : 'b';
        out += std::to_string(sy.exponent);
    }
    return out;
}

int PantsWord::letterCount() const {
    int n = 0;
    for (const auto& sy : syllables) n += std::abs(sy.exponent);
    return n;
}

bool PantsWord::isNormalized() const {
    for (size_t i = 0; i < syllables.size(); ++i) {
        if (syllables[i].exponent == 0) return false;
        if (i > 0 && syllables[i].letter == syllables[i - 1].letter) return false;
    }
    return true;
}

std::vector<int> toLetters(const PantsWord& w) {
    std::vector<int> out;
    for (const auto& sy : w.syllables) {
        int base = sy.letter == Letter::a ? 1 : 2;
        int s = sy.exponent < 0 ? -1 : 1;
        for (int k = 0; k < std::abs(sy.exponent); ++k) out.push_back(s * base);
    }
    return out;
}

std::vector<int> freeReduce(const std::vector<int>& letters) {
    std::vector<int> st;
    st.reserve(letters.size());
    for (int x : letters) {
        if (!st.empty() && st.back() == -x)
            st.pop_back();
        else
            st.push_back(x);
    }
    return st;
}

std::vector<int> cyclicReduce(const std::vector<int>& letters) {
    auto r = freeReduce(letters);
    size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i] == -r[j - 1]) {
        ++i;
        --j;
    }
    return {r.begin() + i, r.begin() + j};
}

PantsWord fromLetters(const std::vector<int>& letters) {
    PantsWord w;
    for (int x : freeReduce(letters)) {
        Letter l = std::abs(x) == 1 ? Letter::a : Letter::b;
        int s = x > 0 ? 1 : -1;
        if (!w.syllables.empty() && w.syllables.back().letter == l)
            w.syllables.back().exponent += s;
        else
            w.syllables.push_back({l, s});
    }
    return w;
}

PantsWord normalize(const PantsWord& w) { return fromLetters(toLetters(w)); }

PantsWord cyclicReduce(const PantsWord& w) { return fromLetters(cyclicReduce(toLetters(w))); }

PantsWord inverse(const PantsWord& w) {
    PantsWord r;
    for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
        r.syllables.push_back({it->letter, -it->exponent});
    return normalize(r);
}

PantsWord concat(const PantsWord& u, const PantsWord& v) {
    auto l = toLetters(u);
    auto m = toLetters(v);
    l.insert(l.end(), m.begin(), m.end());
    return fromLetters(l);
}

}  // namespace teichlab

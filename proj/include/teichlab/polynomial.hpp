#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace teichlab {

using Rational = boost::multiprecision::cpp_rational;

// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    explicit Polynomial(int variables = 0) : vars_(variables) {}
    static Polynomial constant(int variables, const Rational& c);
    static Polynomial variable(int variables, int index);

    int variables() const { return vars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    void addTerm(const Exponents& e, const Rational& c);
    int degree() const;  // total degree, -1 for the zero polynomial
    bool isZero() const { return terms_.empty(); }
    // every exponent of the variable is even
    bool evenIn(int index) const;

    double eval(std::span<const double> x) const;
    Rational evalExact(std::span<const Rational> x) const;
    // Integral over the box prod [lo_i, hi_i].
    Rational integrateBox(std::span<const Rational> lo, std::span<const Rational> hi) const;
    double integrateBox(std::span<const double> lo, std::span<const double> hi) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const = default;
    std::string str() const;

private:
    void checkCompatible(const Polynomial& o) const;
    int vars_;
    std::map<Exponents, Rational> terms_;
};

// "p/q", "p" or a JSON number (converted exactly from its binary value).
Rational parseRational(const nlohmann::json& j);
std::string rationalString(const Rational& r);

// JSON {"variables": n, "coeffs": {"e1,e2,...": c}}
Polynomial polynomialFromJson(const nlohmann::json& j);
nlohmann::json polynomialToJson(const Polynomial& p);

// V_{g,n} as polynomials in L_1..L_n. Ships with V_{0,3} = 1 only; other entries come
// from JSON files {"g": g, "n": n, "coeffs": {"i1,...,in": c}} whose keys are exponents
// of L_i^2.
class VolumeRegistry {
public:
    VolumeRegistry();
    void add(int g, int n, const Polynomial& p);
    void loadJson(const nlohmann::json& j);  // one entry or an array of entries
    bool has(int g, int n) const;
    const Polynomial& get(int g, int n) const;

private:
    std::map<std::pair<int, int>, Polynomial> table_;
};

}  // namespace teichlab

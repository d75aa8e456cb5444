#include "teichlab/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "teichlab/errors.hpp"

namespace teichlab {

namespace {

Polynomial::Exponents parseExponents(const std::string& key, int expected) {
    Polynomial::Exponents e;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw ConfigurationError("polynomial: bad exponent key '" + key + "'");
        }
        if (used != part.size() || v < 0) throw ConfigurationError("polynomial: bad exponent key '" + key + "'");
        e.push_back(v);
    }
    if (expected >= 0 && static_cast<int>(e.size()) != expected)
        throw ConfigurationError("polynomial: key '" + key + "' has the wrong number of exponents");
    return e;
}

Rational powR(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

Polynomial Polynomial::constant(int variables, const Rational& c) {
    Polynomial p(variables);
    p.addTerm(Exponents(static_cast<std::size_t>(variables), 0), c);
    return p;
}

Polynomial Polynomial::variable(int variables, int index) {
    if (index < 0 || index >= variables) throw InvalidArgument("polynomial: variable index out of range");
    Polynomial p(variables);
    Exponents e(static_cast<std::size_t>(variables), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.addTerm(e, 1);
    return p;
}

void Polynomial::addTerm(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != vars_) throw InvalidArgument("polynomial: exponent count mismatch");
    for (int k : e)
        if (k < 0) throw InvalidArgument("polynomial: negative exponent");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

bool Polynomial::evenIn(int index) const {
    for (const auto& [e, c] : terms_)
        if (e[static_cast<std::size_t>(index)] % 2 != 0) return false;
    return true;
}

double Polynomial::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != vars_) throw InvalidArgument("polynomial: eval with wrong variable count");
    double s = 0;
    for (const auto& [e, c] : terms_) {
        double t = c.convert_to<double>();
        for (int i = 0; i < vars_; ++i) t *= std::pow(x[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
        s += t;
    }
    return s;
}

Rational Polynomial::evalExact(std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) != vars_) throw InvalidArgument("polynomial: eval with wrong variable count");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < vars_; ++i) t *= powR(x[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);
        s += t;
    }
    return s;
}

Rational Polynomial::integrateBox(std::span<const Rational> lo, std::span<const Rational> hi) const {
    if (static_cast<int>(lo.size()) != vars_ || static_cast<int>(hi.size()) != vars_)
        throw InvalidArgument("polynomial: integrateBox with wrong variable count");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < vars_; ++i) {
            int k = e[static_cast<std::size_t>(i)];
            t *= (powR(hi[static_cast<std::size_t>(i)], k + 1) - powR(lo[static_cast<std::size_t>(i)], k + 1)) / (k + 1);
        }
        s += t;
    }
    return s;
}

double Polynomial::integrateBox(std::span<const double> lo, std::span<const double> hi) const {
    std::vector<Rational> a, b;
    for (double v : lo) a.emplace_back(v);
    for (double v : hi) b.emplace_back(v);
    return integrateBox(std::span<const Rational>(a), std::span<const Rational>(b)).convert_to<double>();
}

void Polynomial::checkCompatible(const Polynomial& o) const {
    if (vars_ != o.vars_)
        throw InvalidArgument("polynomial: variable count mismatch (" + std::to_string(vars_) + " vs " +
                              std::to_string(o.vars_) + ")");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    checkCompatible(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.addTerm(e, c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    checkCompatible(o);
    Polynomial r(vars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e = e1;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
            r.addTerm(e, c1 * c2);
        }
    return r;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += rationalString(c);
        for (int i = 0; i < vars_; ++i) {
            int k = e[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            s += "*x" + std::to_string(i + 1);
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

Rational parseRational(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) {
        double d = j.get<double>();
        if (!std::isfinite(d)) throw ConfigurationError("polynomial: non-finite coefficient");
        return Rational(d);
    }
    if (!j.is_string()) throw ConfigurationError("polynomial: coefficient must be a number or \"p/q\"");
    std::string s = j.get<std::string>();
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
        boost::multiprecision::cpp_int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw ConfigurationError("polynomial: zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const ConfigurationError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigurationError("polynomial: cannot parse coefficient '" + s + "'");
    }
}

std::string rationalString(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Polynomial polynomialFromJson(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigurationError("polynomial: expected an object");
    for (const auto& [k, v] : j.items())
        if (k != "variables" && k != "coeffs") throw ConfigurationError("polynomial: unknown field '" + k + "'");
    if (!j.contains("variables") || !j["variables"].is_number_integer())
        throw ConfigurationError("polynomial: 'variables' must be an integer");
    int n = j["variables"].get<int>();
    if (n < 0) throw ConfigurationError("polynomial: 'variables' must be >= 0");
    Polynomial p(n);
    if (!j.contains("coeffs")) return p;
    if (!j["coeffs"].is_object()) throw ConfigurationError("polynomial: 'coeffs' must be an object");
    for (const auto& [k, v] : j["coeffs"].items())
        p.addTerm(n == 0 && k.empty() ? Polynomial::Exponents{} : parseExponents(k, n), parseRational(v));
    return p;
}

nlohmann::json polynomialToJson(const Polynomial& p) {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [e, v] : p.terms()) {
        std::string key;
        for (std::size_t i = 0; i < e.size(); ++i) key += (i ? "," : "") + std::to_string(e[i]);
        c[key] = rationalString(v);
    }
    return {{"variables", p.variables()}, {"coeffs", c}};
}

VolumeRegistry::VolumeRegistry() { add(0, 3, Polynomial::constant(3, 1)); }

void VolumeRegistry::add(int g, int n, const Polynomial& p) {
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw ConfigurationError("volume registry: (g, n) is not hyperbolic");
    if (p.variables() != n) throw ConfigurationError("volume registry: V_{g,n} must have n variables");
    for (int i = 0; i < n; ++i)
        if (!p.evenIn(i)) throw ConfigurationError("volume registry: odd power of a boundary length");
    table_[{g, n}] = p;
}

void VolumeRegistry::loadJson(const nlohmann::json& j) {
    if (j.is_array()) {
        for (const auto& e : j) loadJson(e);
        return;
    }
    if (!j.is_object()) throw ConfigurationError("volume registry: expected an object or array");
    for (const auto& [k, v] : j.items())
        if (k != "g" && k != "n" && k != "coeffs") throw ConfigurationError("volume registry: unknown field '" + k + "'");
    if (!j.contains("g") || !j.contains("n") || !j["g"].is_number_integer() || !j["n"].is_number_integer())
        throw ConfigurationError("volume registry: 'g' and 'n' must be integers");
    int g = j["g"].get<int>(), n = j["n"].get<int>();
    if (n < 0) throw ConfigurationError("volume registry: 'n' must be >= 0");
    Polynomial p(n);
    if (j.contains("coeffs")) {
        if (!j["coeffs"].is_object()) throw ConfigurationError("volume registry: 'coeffs' must be an object");
        for (const auto& [k, v] : j["coeffs"].items()) {
            Polynomial::Exponents e = n == 0 && k.empty() ? Polynomial::Exponents{} : parseExponents(k, n);
            for (int& x : e) x *= 2;  // keys are powers of L_i^2
            p.addTerm(e, parseRational(v));
        }
    }
    add(g, n, p);
}

bool VolumeRegistry::has(int g, int n) const { return table_.count({g, n}) > 0; }

const Polynomial& VolumeRegistry::get(int g, int n) const {
    auto it = table_.find({g, n});
    if (it == table_.end())
        throw ConfigurationError("volume registry: no entry for (g, n) = (" + std::to_string(g) + ", " +
                                 std::to_string(n) + ")");
    return it->second;
}

}  // namespace teichlab

#pragma once

#include "ddeq/rational.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>
#include <vector>

namespace ddeq {

/// Dense univariate polynomial with exact rational coefficients.
///
/// coeffs()[i] is the coefficient of x^i. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    Poly(std::initializer_list<Rational> coeffs);

    static Poly constant(const Rational& c);
    static Poly monomial(unsigned n, const Rational& c = 1);
    static Poly x() { return monomial(1); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of x^i; zero beyond the degree.
    Rational coeff(int i) const;
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    /// Every odd-power coefficient vanishes (p(-x) = p(x)).
    bool is_even() const;
    /// Every even-power coefficient vanishes (p(-x) = -p(x)).
    bool is_odd() const;

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(Poly lhs, const Rational& c) { return lhs *= c; }
    friend Poly operator*(const Rational& c, Poly rhs) { return rhs *= c; }
    friend Poly operator*(const Poly& lhs, const Poly& rhs);
    Poly operator-() const;

    friend bool operator==(const Poly& lhs, const Poly& rhs) = default;

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

Poly pow(const Poly& p, unsigned n);

/// Human-readable form, ascending powers: "1/4 + 3x^2", "-x + 2x^3", "0".
std::string render(const Poly& p);

/// JSON array of "num/den" strings in ascending degree.
nlohmann::json to_json(const Poly& p);
/// Inverse of to_json; throws std::invalid_argument on malformed entries.
Poly poly_from_json(const nlohmann::json& j);

} // namespace ddeq

#pragma once

#include "ddeq/expr.hpp"
#include "ddeq/poly.hpp"

#include <map>
#include <utility>

namespace ddeq {

/// Finite linear combination sum_t c_t * h^(order_t)(x + shift_t) of shifted
/// derivatives of a single function h, with exact coefficients and shifts.
///
/// Every segment of a method-of-steps solution has this form, which keeps the
/// segment algebra exact and independent of how h itself is represented.
class ShiftCombination {
public:
    using Key = std::pair<int, Rational>;  // (derivative order, shift)

    ShiftCombination() = default;

    /// h itself.
    static ShiftCombination identity();

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int max_order() const;

    void add(const ShiftCombination& other, const Rational& scale = 1);
    ShiftCombination shifted(const Rational& s) const;
    ShiftCombination derivative() const;
    ShiftCombination scaled(const Rational& c) const;

    /// Exact polynomial when h is a polynomial.
    Poly apply(const Poly& h) const;
    /// Value at x given the derivative tower of h.
    double evaluate(const DerivativeTower& h, double x) const;
    /// Simplified expression in x.
    Expr to_expr(const DerivativeTower& h) const;

    friend bool operator==(const ShiftCombination&, const ShiftCombination&) = default;

private:
    void add_term(const Key& key, const Rational& c);
    std::map<Key, Rational> terms_;
};

} // namespace ddeq

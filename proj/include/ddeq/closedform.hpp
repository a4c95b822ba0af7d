#pragma once

#include "ddeq/combination.hpp"
#include "ddeq/expr.hpp"
#include "ddeq/poly.hpp"
#include "ddeq/steps.hpp"

#include <json.hpp>

namespace ddeq {

/// Polynomial in the derivative operator D: coefficient i multiplies D^i.
/// Only radical-free combinations of Phi(D) = (D + sqrt(D^2 + 4))/2 and
/// Psi(D) = (D - sqrt(D^2 + 4))/2 are ever materialized.
struct OpPoly {
    Poly coeffs;

    int degree() const { return coeffs.degree(); }
    friend bool operator==(const OpPoly&, const OpPoly&) = default;
};

/// Renders in D, e.g. "1 + 3D^2 + D^4".
std::string render(const OpPoly& g);
/// Same layout as a Poly: coefficient strings in ascending powers of D.
nlohmann::json to_json(const OpPoly& g);

/// G_n = (Phi^n - Psi^n)/sqrt(D^2 + 4) from G_0 = 0, G_1 = 1,
/// G_(n+1) = D G_n + G_(n-1); valid because Phi + Psi = D and Phi Psi = -1.
OpPoly fib_op_poly(int n);

/// G_n from the binomial expansion
///   2^(1-n) sum_{k=0..floor((n-1)/2)} C(n, 2k+1) D^(n-2k-1) (D^2 + 4)^k.
OpPoly fib_op_poly_explicit(int n);

/// sum_i g_i f^(i), exact.
Poly apply_op_poly(const OpPoly& g, const Poly& f);
/// sum_i g_i f^(i), simplified. Differentiation failures raise OrderError.
Expr apply_op_poly(const OpPoly& g, const Expr& f);
ShiftCombination apply_op_poly(const OpPoly& g, const ShiftCombination& f);

/// Shifted-derivative combination giving y_n in terms of h (y_-1 = y_0 = h):
///   n >= 1:  y_n    = E^(-n/2) G_(n+1) y_0 + E^(-(n+1)/2) G_n y_-1
///   m >= 2:  y_(-m) = (-1)^(m+1) E^((m-1)/2) G_m y_-1 + (-1)^m E^(m/2) G_(m-1) y_0
/// Throws std::invalid_argument for n = 0 and n = -1, which are h itself.
ShiftCombination closed_combination(int n);

/// Segment n built directly from the closed form.
SegmentFormula closed_segment(int n, const InitialFunction& h);

/// Segments -(span_m + 1) .. span_m from closed forms, provenance closed-form.
PiecewiseSolution closed_form_solution(const InitialFunction& h, int span_m);

} // namespace ddeq

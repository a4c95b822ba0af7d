#pragma once

#include "ddeq/poly.hpp"

namespace ddeq {

// Shift and difference operators acting on polynomials. All results exact.

/// (E^h p)(x) = p(x + h).
Poly shift(const Poly& p, const Rational& h);

/// Central difference (Lp)(x) = p(x + 1/2) - p(x - 1/2).
Poly central_L(const Poly& p);

Poly derivative(const Poly& p);
Poly derivative(const Poly& p, unsigned order);

/// Forward difference p(x + 1) - p(x).
Poly forward_diff(const Poly& p);
/// Backward difference p(x) - p(x - 1).
Poly backward_diff(const Poly& p);

/// S_n = L x^n = (x + 1/2)^n - (x - 1/2)^n by direct binomial expansion.
/// Throws std::domain_error for n == 0.
Poly s_n(unsigned n);

/// S_n from the parity-split dyadic sums
///   S_2m     = sum_{k=1..m}   2^(2k-2m)   C(2m, 2k-1)   x^(2k-1)
///   S_(2m-1) = sum_{k=0..m-1} 2^(2k-2m+2) C(2m-1, 2k) x^(2k)
/// Kept as an independent route for cross-checking s_n.
Poly s_n_closed_form(unsigned n);

} // namespace ddeq

#pragma once

#include "ddeq/poly.hpp"
#include "ddeq/steps.hpp"

#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ddeq {

/// L p - D p; zero exactly when p solves the equation.
Poly null_check_poly(const Poly& p);

struct QuadratureSpec {
    enum class Method { gauss_legendre, adaptive_simpson };
    Method method = Method::gauss_legendre;  // 16-point rule, Simpson fallback
    double abs_tol = 1e-12;
    int max_depth = 40;
};

/// Raised when a panel cannot be integrated to the requested accuracy.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double lo, double hi, const std::string& what);
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_, hi_;
};

/// Integral of a smooth f over [lo, hi]. The Gauss-Legendre path compares the
/// whole-panel rule against the two half panels; if they differ by more than
/// 10 abs_tol max(1, |I|) it falls back to adaptive Simpson, and the two must
/// then agree to the same bound.
double integrate_panel(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& q = {});

/// Integral of the piecewise solution over [lo, hi], split at every knot so
/// each panel uses a single segment formula.
double integrate_solution(const PiecewiseSolution& sol, double lo, double hi, const QuadratureSpec& q = {});

/// y(x) - c - integral_{x-1/2}^{x+1/2} y with c = y(x0) - integral_{x0-1/2}^{x0+1/2} y.
/// The default base point x0 = 0 gives the usual constant.
double integral_form_residual(const PiecewiseSolution& sol, double x, const QuadratureSpec& q = {}, double x0 = 0.0);

/// y(x + 1/2) - y(x - 1/2) - y'(x); computed exactly from the double x when
/// the three segments involved are polynomials.
double dde_residual(const PiecewiseSolution& sol, double x);

struct ProfileRow {
    double x, y, dde_residual, integral_residual;
};

/// Minimum distance from a knot for profile samples.
inline constexpr double kKnotExclusion = 0.01;

/// Uniform n_points grid over [lower + 1/2, upper - 1/2], dropping samples
/// within kKnotExclusion of a knot. Throws std::invalid_argument when that
/// sub-span is shorter than one unit or n_points < 2.
std::vector<ProfileRow> residual_profile(const PiecewiseSolution& sol, int n_points, const QuadratureSpec& q = {});

/// Header "x,y,dde_residual,integral_residual" and %.17g values.
void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows);

} // namespace ddeq

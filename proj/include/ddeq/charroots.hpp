#pragma once

#include "ddeq/expr.hpp"

#include <json.hpp>

#include <complex>
#include <utility>
#include <vector>

namespace ddeq {

using Complex = std::complex<double>;

/// Root of sin(w) = w, where w is half of the characteristic exponent z.
struct ComplexRoot {
    Complex w;
    Complex z;  // 2w
    double residual = 0.0;  // |sin(w) - w|
    int iterations = 0;
    Complex origin;  // seed the iteration started from
};

nlohmann::json to_json(const ComplexRoot& root);

enum class NewtonStatus { converged, no_convergence, derivative_underflow };
const char* to_string(NewtonStatus s);

struct NewtonOutcome {
    NewtonStatus status = NewtonStatus::no_convergence;
    ComplexRoot root;  // last iterate when not converged

    bool accepted() const { return status == NewtonStatus::converged; }
};

/// Iterates within this radius of the origin snap to the exact root w = 0,
/// where cos(w) - 1 has a double zero and Newton steps become meaningless.
inline constexpr double kTrivialRootGuard = 1e-3;
inline constexpr double kRootTolerance = 1e-12;
inline constexpr double kDedupRadius = 1e-6;
inline constexpr double kDerivativeFloor = 1e-14;

/// Newton iteration w <- w - (sin w - w)/(cos w - 1). Accepted when
/// |sin w - w| <= tol. Requires tol > 0 and max_iter >= 1.
NewtonOutcome newton_root(Complex seed, double tol = kRootTolerance, int max_iter = 100);

struct Box {
    double x_min, x_max, y_min, y_max;
    bool contains(Complex w) const {
        return w.real() >= x_min && w.real() <= x_max && w.imag() >= y_min && w.imag() <= y_max;
    }
};

/// Newton from every node of a grid_n x grid_n lattice over the box (plus the
/// origin when the box contains it). Accepted roots inside the box are
/// deduplicated within kDedupRadius and sorted by |w|.
std::vector<ComplexRoot> scan_box(const Box& box, int grid_n, double tol = kRootTolerance);

/// (a/2 - sin(a/2)cosh(b/2), b/2 - cos(a/2)sinh(b/2)) for z = a + bi.
std::pair<double, double> real_system_residual(double a, double b);

/// Real solutions e^(-bx)cos(ax) and e^(-bx)sin(ax) induced by z = a + bi.
struct ExpSolutionPair {
    double a = 0.0;
    double b = 0.0;
    Expr real_part;
    Expr imag_part;
};

ExpSolutionPair build_exp_solutions(const ComplexRoot& root);

/// max over the grid of |y(x + 1/2) - y(x - 1/2) - y'(x)| with symbolic y'.
/// Evaluation failures are rethrown as EvalError naming x.
double dde_residual_grid(const Expr& y, const std::vector<double>& grid);

/// max over the grid of |y(x)|.
double max_abs_on_grid(const Expr& y, const std::vector<double>& grid);

/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

} // namespace ddeq

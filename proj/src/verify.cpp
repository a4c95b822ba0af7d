#include "ddeq/verify.hpp"

#include "ddeq/operators.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <cstdio>

namespace ddeq {

Poly null_check_poly(const Poly& p) { return central_L(p) - derivative(p); }

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double gauss16(const std::function<double(double)>& f, double lo, double hi) {
    return boost::math::quadrature::gauss<double, 16>::integrate(f, lo, hi);
}

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;
    bool exhausted = false;

    double run(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = f(lm), frm = f(rm);
        double left = (m - a) / 6 * (fa + 4 * flm + fm);
        double right = (b - m) / 6 * (fm + 4 * frm + fb);
        double delta = left + right - whole;
        if (std::abs(delta) <= 15 * tol) return left + right + delta / 15;
        if (depth >= max_depth) {
            exhausted = true;
            return left + right + delta / 15;
        }
        return run(a, m, fa, flm, fm, left, tol / 2, depth + 1) + run(m, b, fm, frm, fb, right, tol / 2, depth + 1);
    }
};

double simpson(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& q) {
    Simpson s{f, q.max_depth};
    double fa = f(lo), fm = f(0.5 * (lo + hi)), fb = f(hi);
    double whole = (hi - lo) / 6 * (fa + 4 * fm + fb);
    double value = s.run(lo, hi, fa, fm, fb, whole, q.abs_tol, 0);
    if (s.exhausted)
        throw QuadratureError(lo, hi, "adaptive Simpson exhausted depth " + std::to_string(q.max_depth));
    return value;
}

} // namespace

QuadratureError::QuadratureError(double lo, double hi, const std::string& what)
    : std::runtime_error("quadrature failed on panel [" + fmt(lo) + ", " + fmt(hi) + "]: " + what), lo_(lo), hi_(hi) {}

double integrate_panel(const std::function<double(double)>& f, double lo, double hi, const QuadratureSpec& q) {
    if (!(q.abs_tol > 0)) throw std::invalid_argument("abs_tol must be positive");
    if (lo == hi) return 0.0;
    if (q.method == QuadratureSpec::Method::adaptive_simpson) return simpson(f, lo, hi, q);

    double mid = 0.5 * (lo + hi);
    double whole = gauss16(f, lo, hi);
    double halves = gauss16(f, lo, mid) + gauss16(f, mid, hi);
    double bound = 10 * q.abs_tol * std::max(1.0, std::abs(halves));
    if (std::abs(whole - halves) <= bound) return halves;

    double fallback = simpson(f, lo, hi, q);
    if (std::abs(fallback - halves) > bound)
        throw QuadratureError(lo, hi,
                              "Gauss-Legendre (" + fmt(halves) + ") and adaptive Simpson (" + fmt(fallback) + ") disagree");
    return fallback;
}

double integrate_solution(const PiecewiseSolution& sol, double lo, double hi, const QuadratureSpec& q) {
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    sol.locate(lo);
    sol.locate(hi);
    double total = 0.0;
    double a = lo;
    while (a < hi) {
        // Segment owning the open panel just right of a.
        int n = static_cast<int>(std::floor(2.0 * a));
        n = std::clamp(n, sol.first_index(), sol.last_index());
        double b = std::min(hi, (n + 1) / 2.0);
        if (b <= a) b = hi;
        const SegmentFormula& seg = sol.segment(n);
        total += integrate_panel([&seg](double s) { return seg.value(s); }, a, b, q);
        a = b;
    }
    return sign * total;
}

double integral_form_residual(const PiecewiseSolution& sol, double x, const QuadratureSpec& q, double x0) {
    double c = eval_solution(sol, x0) - integrate_solution(sol, x0 - 0.5, x0 + 0.5, q);
    return eval_solution(sol, x) - c - integrate_solution(sol, x - 0.5, x + 0.5, q);
}

double dde_residual(const PiecewiseSolution& sol, double x) {
    const SegmentFormula& here = sol.segment(sol.locate(x));
    const SegmentFormula& ahead = sol.segment(sol.locate(x + 0.5));
    const SegmentFormula& behind = sol.segment(sol.locate(x - 0.5));
    if (here.exact() && ahead.exact() && behind.exact()) {
        Rational rx = exact_rational(x);
        Rational half(1, 2);
        Rational r = (*ahead.exact())(Rational(rx + half)) - (*behind.exact())(Rational(rx - half)) -
                     derivative(*here.exact())(rx);
        return to_double(r);
    }
    return ahead.value(x + 0.5) - behind.value(x - 0.5) - here.slope(x);
}

std::vector<ProfileRow> residual_profile(const PiecewiseSolution& sol, int n_points, const QuadratureSpec& q) {
    if (n_points < 2) throw std::invalid_argument("residual profile needs at least 2 points");
    double lo = to_double(sol.lower()) + 0.5;
    double hi = to_double(sol.upper()) - 0.5;
    if (hi - lo < 1.0)
        throw std::invalid_argument("solution span [" + to_string(sol.lower()) + ", " + to_string(sol.upper()) +
                                    "] is too small for a residual profile (need at least one unit after trimming 1/2 per side)");
    std::vector<ProfileRow> rows;
    for (int i = 0; i < n_points; ++i) {
        double x = lo + (hi - lo) * i / (n_points - 1);
        if (i == n_points - 1) x = hi;
        double nearest_knot = std::round(2.0 * x) / 2.0;
        if (std::abs(x - nearest_knot) < kKnotExclusion) continue;
        rows.push_back({x, eval_solution(sol, x), dde_residual(sol, x), integral_form_residual(sol, x, q)});
    }
    return rows;
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
    out << "x,y,dde_residual,integral_residual\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.x, r.y, r.dde_residual, r.integral_residual);
        out << buf;
    }
}

} // namespace ddeq

#include "ddeq/charroots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ddeq {

nlohmann::json to_json(const ComplexRoot& root) {
    return {{"w", {root.w.real(), root.w.imag()}},
            {"z", {root.z.real(), root.z.imag()}},
            {"residual", root.residual},
            {"iterations", root.iterations},
            {"origin", {root.origin.real(), root.origin.imag()}}};
}

const char* to_string(NewtonStatus s) {
    switch (s) {
    case NewtonStatus::converged: return "converged";
    case NewtonStatus::no_convergence: return "no-convergence";
    case NewtonStatus::derivative_underflow: return "derivative-underflow";
    }
    return "?";
}

namespace {

ComplexRoot make_root(Complex w, int iterations, Complex seed) {
    ComplexRoot r;
    r.w = w;
    r.z = 2.0 * w;
    r.residual = std::abs(std::sin(w) - w);
    r.iterations = iterations;
    r.origin = seed;
    return r;
}

} // namespace

NewtonOutcome newton_root(Complex seed, double tol, int max_iter) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    Complex w = seed;
    for (int it = 0;; ++it) {
        if (std::abs(w) < kTrivialRootGuard) return {NewtonStatus::converged, make_root(Complex(0, 0), it, seed)};
        Complex f = std::sin(w) - w;
        if (std::abs(f) <= tol) return {NewtonStatus::converged, make_root(w, it, seed)};
        if (it == max_iter) break;
        Complex d = std::cos(w) - 1.0;
        if (std::abs(d) < kDerivativeFloor) return {NewtonStatus::derivative_underflow, make_root(w, it, seed)};
        w -= f / d;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) break;
    }
    return {NewtonStatus::no_convergence, make_root(w, max_iter, seed)};
}

std::vector<ComplexRoot> scan_box(const Box& box, int grid_n, double tol) {
    if (grid_n < 2) throw std::invalid_argument("grid must have at least 2 nodes per side");
    if (!(box.x_min <= box.x_max) || !(box.y_min <= box.y_max)) throw std::invalid_argument("box is not well ordered");

    std::vector<Complex> seeds;
    if (box.contains(Complex(0, 0))) seeds.emplace_back(0, 0);
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j)
            seeds.emplace_back(box.x_min + (box.x_max - box.x_min) * i / (grid_n - 1),
                               box.y_min + (box.y_max - box.y_min) * j / (grid_n - 1));

    std::vector<ComplexRoot> roots;
    for (Complex seed : seeds) {
        NewtonOutcome out = newton_root(seed, tol);
        if (!out.accepted() || !box.contains(out.root.w)) continue;
        auto dup = std::find_if(roots.begin(), roots.end(),
                                [&](const ComplexRoot& r) { return std::abs(r.w - out.root.w) <= kDedupRadius; });
        if (dup == roots.end())
            roots.push_back(out.root);
        else if (out.root.residual < dup->residual)
            *dup = out.root;
    }
    std::sort(roots.begin(), roots.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
        double ma = std::abs(a.w), mb = std::abs(b.w);
        if (ma != mb) return ma < mb;
        if (a.w.real() != b.w.real()) return a.w.real() < b.w.real();
        return a.w.imag() < b.w.imag();
    });
    return roots;
}

std::pair<double, double> real_system_residual(double a, double b) {
    return {a / 2 - std::sin(a / 2) * std::cosh(b / 2), b / 2 - std::cos(a / 2) * std::sinh(b / 2)};
}

ExpSolutionPair build_exp_solutions(const ComplexRoot& root) {
    ExpSolutionPair p;
    p.a = root.z.real();
    p.b = root.z.imag();
    Expr x = Expr::var();
    Expr decay = Expr::apply(Func::exp, Expr::constant(-p.b) * x);
    Expr angle = Expr::constant(p.a) * x;
    p.real_part = simplify(decay * Expr::apply(Func::cos, angle));
    p.imag_part = simplify(decay * Expr::apply(Func::sin, angle));
    return p;
}

double dde_residual_grid(const Expr& y, const std::vector<double>& grid) {
    Expr dy = differentiate(y);
    double worst = 0.0;
    for (double x : grid) {
        try {
            worst = std::max(worst, std::abs(evaluate(y, x + 0.5) - evaluate(y, x - 0.5) - evaluate(dy, x)));
        } catch (const EvalError& e) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "at x = %.17g: ", x);
            throw EvalError(buf + std::string(e.what()), e.subtree());
        }
    }
    return worst;
}

double max_abs_on_grid(const Expr& y, const std::vector<double>& grid) {
    double m = 0.0;
    for (double x : grid) m = std::max(m, std::abs(evaluate(y, x)));
    return m;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("linspace needs at least 2 points");
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    out.back() = hi;
    return out;
}

} // namespace ddeq

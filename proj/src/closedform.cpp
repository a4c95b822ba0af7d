#include "ddeq/closedform.hpp"

#include "ddeq/operators.hpp"

#include <stdexcept>

namespace ddeq {

std::string render(const OpPoly& g) {
    std::string s = render(g.coeffs);
    std::string out;
    for (char c : s) out += c == 'x' ? 'D' : c;
    return out;
}

nlohmann::json to_json(const OpPoly& g) { return to_json(g.coeffs); }

OpPoly fib_op_poly(int n) {
    if (n < 0) throw std::invalid_argument("fib_op_poly needs n >= 0");
    Poly prev;                     // G_0
    Poly cur = Poly::constant(1);  // G_1
    if (n == 0) return {prev};
    for (int i = 1; i < n; ++i) {
        Poly next = Poly::x() * cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {cur};
}

OpPoly fib_op_poly_explicit(int n) {
    if (n < 1) throw std::invalid_argument("fib_op_poly_explicit needs n >= 1");
    const Poly radicand = Poly{4, 0, 1};  // D^2 + 4
    Poly sum;
    for (int k = 0; 2 * k <= n - 1; ++k) {
        Rational c(binomial(static_cast<unsigned>(n), static_cast<unsigned>(2 * k + 1)));
        sum += Poly::monomial(static_cast<unsigned>(n - 2 * k - 1), c) * pow(radicand, static_cast<unsigned>(k));
    }
    return {sum * pow2(1 - n)};
}

Poly apply_op_poly(const OpPoly& g, const Poly& f) {
    Poly out;
    for (int i = 0; i <= g.degree(); ++i)
        if (g.coeffs.coeff(i) != 0) out += g.coeffs.coeff(i) * derivative(f, static_cast<unsigned>(i));
    return out;
}

Expr apply_op_poly(const OpPoly& g, const Expr& f) {
    DerivativeTower tower(f);
    std::optional<Expr> acc;
    for (int i = 0; i <= g.degree(); ++i) {
        const Rational c = g.coeffs.coeff(i);
        if (c == 0) continue;
        Expr term;
        try {
            term = tower.at(static_cast<size_t>(i));
        } catch (const std::exception& e) {
            throw OrderError(i, e.what());
        }
        if (c != 1) term = Expr::constant(c) * term;
        acc = acc ? *acc + term : term;
    }
    return acc ? simplify(*acc) : Expr::constant(Rational(0));
}

ShiftCombination apply_op_poly(const OpPoly& g, const ShiftCombination& f) {
    ShiftCombination out;
    ShiftCombination d = f;
    for (int i = 0; i <= g.degree(); ++i) {
        if (g.coeffs.coeff(i) != 0) out.add(d, g.coeffs.coeff(i));
        d = d.derivative();
    }
    return out;
}

ShiftCombination closed_combination(int n) {
    if (n == 0 || n == -1) throw std::invalid_argument("segments 0 and -1 are the initial function itself");
    const ShiftCombination h = ShiftCombination::identity();
    ShiftCombination out;
    if (n >= 1) {
        out.add(apply_op_poly(fib_op_poly(n + 1), h).shifted(Rational(-n, 2)));
        out.add(apply_op_poly(fib_op_poly(n), h).shifted(Rational(-(n + 1), 2)));
    } else {
        const int m = -n;
        const Rational sign = m % 2 == 0 ? Rational(1) : Rational(-1);  // (-1)^m
        out.add(apply_op_poly(fib_op_poly(m), h).shifted(Rational(m - 1, 2)), -sign);
        out.add(apply_op_poly(fib_op_poly(m - 1), h).shifted(Rational(m, 2)), sign);
    }
    return out;
}

SegmentFormula closed_segment(int n, const InitialFunction& h) { return make_segment(n, closed_combination(n), h); }

PiecewiseSolution closed_form_solution(const InitialFunction& h, int span_m) {
    if (span_m < 1) throw std::invalid_argument("span must be at least 1");
    std::vector<SegmentFormula> segs;
    for (int n = -(span_m + 1); n <= span_m; ++n)
        segs.push_back(n == 0 || n == -1 ? make_segment(n, ShiftCombination::identity(), h) : closed_segment(n, h));
    PiecewiseSolution sol(Provenance::closed_form, span_m, std::move(segs));
    sol.set_source(h);
    return sol;
}

} // namespace ddeq

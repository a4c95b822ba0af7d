#include "ddeq/operators.hpp"

#include <stdexcept>

namespace ddeq {

Poly shift(const Poly& p, const Rational& h) {
    if (h == 0 || p.degree() < 1) return p;
    // Horner in the shifted basis: q <- q * (x + h) + c_i.
    const Poly x_plus_h{h, 1};
    Poly q;
    const auto& cs = p.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) q = q * x_plus_h + Poly::constant(*it);
    return q;
}

Poly central_L(const Poly& p) {
    const Rational half(1, 2);
    return shift(p, half) - shift(p, -half);
}

Poly derivative(const Poly& p) {
    if (p.degree() < 1) return {};
    std::vector<Rational> out(static_cast<size_t>(p.degree()));
    for (int i = 1; i <= p.degree(); ++i) out[static_cast<size_t>(i - 1)] = p.coeff(i) * i;
    return Poly(std::move(out));
}

Poly derivative(const Poly& p, unsigned order) {
    Poly r = p;
    for (unsigned i = 0; i < order && !r.is_zero(); ++i) r = derivative(r);
    return r;
}

Poly forward_diff(const Poly& p) { return shift(p, 1) - p; }

Poly backward_diff(const Poly& p) { return p - shift(p, -1); }

Poly s_n(unsigned n) {
    if (n == 0) throw std::domain_error("S_n is defined for n >= 1 (S_0 is identically zero)");
    // (1/2)^j - (-1/2)^j is 2^(1-j) for odd j and 0 for even j.
    std::vector<Rational> cs(n);
    for (unsigned k = 0; k < n; ++k) {
        unsigned j = n - k;
        if (j % 2 == 1) cs[k] = Rational(binomial(n, k)) * pow2(1 - static_cast<int>(j));
    }
    return Poly(std::move(cs));
}

Poly s_n_closed_form(unsigned n) {
    if (n == 0) throw std::domain_error("S_n is defined for n >= 1 (S_0 is identically zero)");
    Poly out;
    if (n % 2 == 0) {
        const int m = static_cast<int>(n / 2);
        for (int k = 1; k <= m; ++k)
            out += Poly::monomial(static_cast<unsigned>(2 * k - 1),
                                  pow2(2 * k - 2 * m) * Rational(binomial(n, static_cast<unsigned>(2 * k - 1))));
    } else {
        const int m = static_cast<int>((n + 1) / 2);
        for (int k = 0; k <= m - 1; ++k)
            out += Poly::monomial(static_cast<unsigned>(2 * k),
                                  pow2(2 * k - 2 * m + 2) * Rational(binomial(n, static_cast<unsigned>(2 * k))));
    }
    return out;
}

} // namespace ddeq

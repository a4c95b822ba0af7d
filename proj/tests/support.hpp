#pragma once

// Shared helpers for the test suites: seeded random data and independent
// oracles that never call the library routine they are used to check.

#include "ddeq/poly.hpp"
#include "ddeq/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace testing_support {

using ddeq::Poly;
using ddeq::Rational;
using Coeffs = std::vector<Rational>;

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20261016);
    return engine;
}

/// Random rational num/den with |num| <= max_num and 1 <= den <= max_den.
inline Rational random_rational(long long max_num = 50, long long max_den = 12) {
    std::uniform_int_distribution<long long> num(-max_num, max_num);
    std::uniform_int_distribution<long long> den(1, max_den);
    return Rational(num(rng()), den(rng()));
}

inline Poly random_poly(int degree, long long max_num = 50, long long max_den = 12) {
    Coeffs c;
    for (int i = 0; i <= degree; ++i) c.push_back(random_rational(max_num, max_den));
    return Poly(c);
}

inline Poly random_poly_of_parity(int degree, bool even) {
    Coeffs c(static_cast<size_t>(degree + 1));
    for (int i = even ? 0 : 1; i <= degree; i += 2) c[static_cast<size_t>(i)] = random_rational();
    return Poly(c);
}

inline double random_double(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng());
}

// ---- naive coefficient-vector arithmetic (independent of Poly's algorithms)

inline Coeffs trimmed(Coeffs c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

inline Coeffs naive_mul(const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return trimmed(out);
}

inline Coeffs naive_add(Coeffs a, const Coeffs& b, const Rational& scale = 1) {
    if (b.size() > a.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
    return trimmed(a);
}

/// p(x + h) by summing a_i (x + h)^i, each power built by repeated multiplication.
inline Coeffs naive_shift(const Coeffs& p, const Rational& h) {
    Coeffs out;
    Coeffs power{Rational(1)};
    const Coeffs lin{h, Rational(1)};
    for (const auto& a : p) {
        out = naive_add(out, power, a);
        power = naive_mul(power, lin);
    }
    return out;
}

inline Coeffs naive_derivative(const Coeffs& p) {
    Coeffs out;
    for (size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<long long>(i));
    return trimmed(out);
}

/// (x + 1/2)^n - (x - 1/2)^n from repeated multiplication.
inline Coeffs naive_S(unsigned n) {
    Coeffs plus{Rational(1)}, minus{Rational(1)};
    for (unsigned i = 0; i < n; ++i) {
        plus = naive_mul(plus, {Rational(1, 2), Rational(1)});
        minus = naive_mul(minus, {Rational(-1, 2), Rational(1)});
    }
    return naive_add(plus, minus, -1);
}

inline Coeffs coeffs_of(const Poly& p) { return p.coeffs(); }

inline Rational naive_eval(const Coeffs& p, const Rational& x) {
    Rational acc = 0, power = 1;
    for (const auto& a : p) {
        acc += a * power;
        power *= x;
    }
    return acc;
}

/// Order-i compatibility defect h^(i)(0) - h^(i-1)(1/2) + h^(i-1)(-1/2) of a
/// coefficient vector, from the naive routines above.
inline Rational naive_defect(const Coeffs& h, int i) {
    Coeffs prev = h;
    for (int j = 1; j < i; ++j) prev = naive_derivative(prev);
    Coeffs cur = naive_derivative(prev);
    return naive_eval(cur, 0) - naive_eval(prev, Rational(1, 2)) + naive_eval(prev, Rational(-1, 2));
}

/// Basis of the polynomials of degree <= max_degree whose defects vanish for
/// orders 1..orders, by exact Gauss-Jordan elimination on the defect matrix.
inline std::vector<Coeffs> admissible_basis(int max_degree, int orders) {
    const size_t cols = static_cast<size_t>(max_degree + 1);
    std::vector<Coeffs> rows;
    for (int i = 1; i <= orders; ++i) {
        Coeffs row(cols);
        for (size_t j = 0; j < cols; ++j) {
            Coeffs mono(j + 1);
            mono[j] = 1;
            row[j] = naive_defect(mono, i);
        }
        rows.push_back(row);
    }
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = Rational(1) / rows[r][c];
        for (auto& v : rows[r]) v *= inv;
        for (size_t k = 0; k < rows.size(); ++k) {
            if (k == r || rows[k][c] == 0) continue;
            Rational f = rows[k][c];
            for (size_t j = 0; j < cols; ++j) rows[k][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<Coeffs> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        Coeffs v(cols);
        v[free] = 1;
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -rows[k][free];
        basis.push_back(trimmed(v));
    }
    return basis;
}

/// Projection of a random degree <= max_degree polynomial onto the polynomials
/// admissible to order `orders`. Each basis vector from admissible_basis has a
/// single 1 in its free coordinate, so keeping the free coordinates of the
/// random polynomial and re-solving the pivot ones is an exact projection.
inline Poly random_admissible_poly(int max_degree, int orders) {
    static std::map<std::pair<int, int>, std::vector<Coeffs>> cache;
    auto key = std::make_pair(max_degree, orders);
    if (!cache.count(key)) cache[key] = admissible_basis(max_degree, orders);
    Coeffs raw = random_poly(max_degree).coeffs();
    raw.resize(static_cast<size_t>(max_degree + 1));
    Coeffs out;
    for (const auto& b : cache[key]) {
        // In reduced echelon form the free coordinate is b's highest entry.
        out = naive_add(out, b, raw[b.size() - 1]);
    }
    return Poly(out);
}

} // namespace testing_support

// Simplification and symbolic differentiation.

#include "ddeq/expr.hpp"

#include <algorithm>

namespace ddeq {

namespace {

bool is_binary(const Expr& e, BinOp op) { return e.kind() == Expr::Kind::binary && e.op() == op; }

// Coefficient handling on left-associated product chains. The coefficient of
// a product always sits at the leftmost leaf.
struct Split {
    Rational coef;
    std::optional<Expr> body;
};

Split split_coefficient(const Expr& e) {
    if (e.kind() == Expr::Kind::constant) return {e.value(), std::nullopt};
    if (e.kind() == Expr::Kind::negate) {
        Split s = split_coefficient(e.operand());
        return {-s.coef, s.body};
    }
    if (is_binary(e, BinOp::mul)) {
        Split s = split_coefficient(e.lhs());
        return {s.coef, s.body ? *s.body * e.rhs() : e.rhs()};
    }
    if (is_binary(e, BinOp::div)) {
        Split s = split_coefficient(e.lhs());
        return {s.coef, (s.body ? *s.body : Expr::constant(Rational(1))) / e.rhs()};
    }
    return {1, e};
}

Expr prepend_coefficient(const Rational& c, const Expr& body) {
    if (body.kind() == Expr::Kind::constant) return Expr::constant(Rational(c * body.value()));
    if (is_binary(body, BinOp::mul)) return prepend_coefficient(c, body.lhs()) * body.rhs();
    if (is_binary(body, BinOp::div)) return prepend_coefficient(c, body.lhs()) / body.rhs();
    return Expr::constant(c) * body;
}

Expr negate_front(const Expr& body) {
    if (body.kind() == Expr::Kind::constant) return Expr::constant(Rational(-body.value()));
    if (is_binary(body, BinOp::mul)) return negate_front(body.lhs()) * body.rhs();
    if (is_binary(body, BinOp::div)) return negate_front(body.lhs()) / body.rhs();
    return -body;
}

Expr scaled(const Rational& c, const Expr& body) {
    if (c == 1) return body;
    if (c == -1) return negate_front(body);
    return prepend_coefficient(c, body);
}

// ---------------------------------------------------------------------------
// Sums

struct Term {
    Rational coef;
    Expr body;
};

void collect_sum(const Expr& raw, const Rational& sign, std::vector<Term>& terms, Rational& constant, bool simplified) {
    if (is_binary(raw, BinOp::add) || is_binary(raw, BinOp::sub)) {
        collect_sum(raw.lhs(), sign, terms, constant, simplified);
        collect_sum(raw.rhs(), raw.op() == BinOp::add ? sign : Rational(-sign), terms, constant, simplified);
        return;
    }
    if (raw.kind() == Expr::Kind::negate) {
        collect_sum(raw.operand(), -sign, terms, constant, simplified);
        return;
    }
    Expr s = simplified ? raw : simplify(raw);
    if (!simplified && (is_binary(s, BinOp::add) || is_binary(s, BinOp::sub) || s.kind() == Expr::Kind::negate)) {
        collect_sum(s, sign, terms, constant, true);
        return;
    }
    Split split = split_coefficient(s);
    if (!split.body) {
        constant += sign * split.coef;
        return;
    }
    Rational c = sign * split.coef;
    for (auto& t : terms) {
        if (t.body == *split.body) {
            t.coef += c;
            return;
        }
    }
    terms.push_back({c, *split.body});
}

Expr simplify_sum(const Expr& e) {
    std::vector<Term> terms;
    Rational constant = 0;
    collect_sum(e, 1, terms, constant, false);
    std::optional<Expr> acc;
    for (const auto& t : terms) {
        if (t.coef == 0) continue;
        if (!acc)
            acc = scaled(t.coef, t.body);
        else if (t.coef < 0)
            acc = *acc - scaled(-t.coef, t.body);
        else
            acc = *acc + scaled(t.coef, t.body);
    }
    if (!acc) return Expr::constant(constant);
    if (constant > 0) return *acc + Expr::constant(constant);
    if (constant < 0) return *acc - Expr::constant(Rational(-constant));
    return *acc;
}

// ---------------------------------------------------------------------------
// Products

struct Factor {
    Expr base;
    Rational exponent;
};

int factor_rank(const Expr& base) {
    switch (base.kind()) {
    case Expr::Kind::named: return 0;
    case Expr::Kind::variable: return 1;
    case Expr::Kind::function: return 2;
    default: return 3;
    }
}

struct ProductParts {
    Rational coef = 1;
    std::vector<Factor> factors;
    bool divides_by_zero = false;
};

void add_factor(ProductParts& parts, const Expr& base, const Rational& exponent) {
    for (auto& f : parts.factors) {
        if (f.base == base) {
            f.exponent += exponent;
            return;
        }
    }
    parts.factors.push_back({base, exponent});
}

void collect_product(const Expr& raw, bool in_denominator, ProductParts& parts, bool simplified) {
    if (is_binary(raw, BinOp::mul)) {
        collect_product(raw.lhs(), in_denominator, parts, simplified);
        collect_product(raw.rhs(), in_denominator, parts, simplified);
        return;
    }
    if (is_binary(raw, BinOp::div)) {
        collect_product(raw.lhs(), in_denominator, parts, simplified);
        collect_product(raw.rhs(), !in_denominator, parts, simplified);
        return;
    }
    if (raw.kind() == Expr::Kind::negate) {
        parts.coef = -parts.coef;
        collect_product(raw.operand(), in_denominator, parts, simplified);
        return;
    }
    Expr s = simplified ? raw : simplify(raw);
    if (!simplified && (is_binary(s, BinOp::mul) || is_binary(s, BinOp::div) || s.kind() == Expr::Kind::negate)) {
        collect_product(s, in_denominator, parts, true);
        return;
    }
    const Rational sign = in_denominator ? -1 : 1;
    if (s.kind() == Expr::Kind::constant) {
        if (!in_denominator)
            parts.coef *= s.value();
        else if (s.value() == 0)
            parts.divides_by_zero = true;
        else
            parts.coef /= s.value();
        return;
    }
    if (is_binary(s, BinOp::pow) && s.rhs().kind() == Expr::Kind::constant) {
        add_factor(parts, s.lhs(), sign * s.rhs().value());
        return;
    }
    add_factor(parts, s, sign);
}

Expr make_power(const Expr& base, const Rational& exponent) {
    if (exponent == 1) return base;
    return pow(base, Expr::constant(exponent));
}

std::optional<Expr> chain(const std::vector<Expr>& items) {
    std::optional<Expr> acc;
    for (const auto& item : items) acc = acc ? *acc * item : item;
    return acc;
}

Expr simplify_product(const Expr& e) {
    ProductParts parts;
    collect_product(e, false, parts, false);
    if (parts.divides_by_zero) return e;  // left for evaluate() to report
    if (parts.coef == 0) return Expr::constant(Rational(0));

    std::vector<std::pair<std::string, Factor>> keyed;
    for (auto& f : parts.factors)
        if (f.exponent != 0) keyed.emplace_back(render(f.base), f);
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        int ra = factor_rank(a.second.base), rb = factor_rank(b.second.base);
        if (ra != rb) return ra < rb;
        return a.first < b.first;
    });

    std::vector<Expr> num, den;
    for (const auto& [key, f] : keyed) {
        if (f.exponent > 0)
            num.push_back(make_power(f.base, f.exponent));
        else
            den.push_back(make_power(f.base, Rational(-f.exponent)));
    }
    std::optional<Expr> body = chain(num);
    if (auto d = chain(den)) body = (body ? *body : Expr::constant(Rational(1))) / *d;
    if (!body) return Expr::constant(parts.coef);
    return scaled(parts.coef, *body);
}

// ---------------------------------------------------------------------------

Expr simplify_power(const Expr& e) {
    Expr base = simplify(e.lhs());
    Expr exponent = simplify(e.rhs());
    if (exponent.kind() == Expr::Kind::constant) {
        const Rational& r = exponent.value();
        if (r == 0) return Expr::constant(Rational(1));
        if (r == 1) return base;
        if (base.kind() == Expr::Kind::constant) {
            const Rational& b = base.value();
            if (b == 1) return base;
            if (denominator(r) == 1 && abs(r) <= 64 && !(b == 0 && r < 0)) {
                long n = numerator(r).convert_to<long>();
                Rational acc = 1;
                for (long i = 0; i < (n < 0 ? -n : n); ++i) acc *= b;
                return Expr::constant(n < 0 ? Rational(Rational(1) / acc) : acc);
            }
        }
        if (is_binary(base, BinOp::pow) && base.rhs().kind() == Expr::Kind::constant && denominator(r) == 1)
            return simplify_power(pow(base.lhs(), Expr::constant(Rational(base.rhs().value() * r))));
    }
    return pow(base, exponent);
}

Expr simplify_function(const Expr& e) {
    Expr arg = simplify(e.operand());
    if (arg.is_constant_node(0)) {
        switch (e.func()) {
        case Func::exp:
        case Func::cos:
        case Func::cosh: return Expr::constant(Rational(1));
        case Func::sin:
        case Func::tan:
        case Func::sinh: return Expr::constant(Rational(0));
        case Func::ln: break;
        }
    }
    if (e.func() == Func::ln && arg.is_constant_node(1)) return Expr::constant(Rational(0));
    if (e.func() == Func::ln && arg.kind() == Expr::Kind::function && arg.func() == Func::exp) return arg.operand();
    return Expr::apply(e.func(), arg);
}

} // namespace

Expr simplify(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::constant:
    case Expr::Kind::named:
    case Expr::Kind::variable: return e;
    case Expr::Kind::negate: return simplify_sum(e);
    case Expr::Kind::function: return simplify_function(e);
    case Expr::Kind::binary: break;
    }
    switch (e.op()) {
    case BinOp::add:
    case BinOp::sub: return simplify_sum(e);
    case BinOp::mul:
    case BinOp::div: return simplify_product(e);
    case BinOp::pow: return simplify_power(e);
    }
    return e;
}

namespace {

Expr one() { return Expr::constant(Rational(1)); }

Expr derive(const Expr& e) {
    if (e.is_free_of_x()) return Expr::constant(Rational(0));
    switch (e.kind()) {
    case Expr::Kind::variable: return one();
    case Expr::Kind::negate: return -derive(e.operand());
    case Expr::Kind::function: {
        const Expr& u = e.operand();
        Expr du = derive(u);
        switch (e.func()) {
        case Func::exp: return e * du;
        case Func::ln: return du / u;
        case Func::sin: return Expr::apply(Func::cos, u) * du;
        case Func::cos: return -(Expr::apply(Func::sin, u) * du);
        case Func::tan: return du / pow(Expr::apply(Func::cos, u), Expr::constant(Rational(2)));
        case Func::sinh: return Expr::apply(Func::cosh, u) * du;
        case Func::cosh: return Expr::apply(Func::sinh, u) * du;
        }
        break;
    }
    case Expr::Kind::binary: {
        const Expr& a = e.lhs();
        const Expr& b = e.rhs();
        switch (e.op()) {
        case BinOp::add: return derive(a) + derive(b);
        case BinOp::sub: return derive(a) - derive(b);
        case BinOp::mul: return derive(a) * b + a * derive(b);
        case BinOp::div:
            if (b.is_free_of_x()) return derive(a) / b;
            return (derive(a) * b - a * derive(b)) / pow(b, Expr::constant(Rational(2)));
        case BinOp::pow:
            if (b.is_free_of_x()) {
                Expr reduced = b.kind() == Expr::Kind::constant ? Expr::constant(Rational(b.value() - 1)) : b - one();
                return b * pow(a, reduced) * derive(a);
            }
            // General u^v = exp(v ln u).
            return e * (derive(b) * Expr::apply(Func::ln, a) + b * derive(a) / a);
        }
        break;
    }
    default: break;
    }
    return Expr::constant(Rational(0));
}

} // namespace

Expr differentiate(const Expr& e) { return simplify(derive(e)); }

Expr substitute(const Expr& e, const Expr& replacement) {
    if (e.is_free_of_x()) return e;
    switch (e.kind()) {
    case Expr::Kind::variable: return replacement;
    case Expr::Kind::negate: return -substitute(e.operand(), replacement);
    case Expr::Kind::function: return Expr::apply(e.func(), substitute(e.operand(), replacement));
    case Expr::Kind::binary:
        return Expr::binary(e.op(), substitute(e.lhs(), replacement), substitute(e.rhs(), replacement));
    default: return e;
    }
}

Expr shifted(const Expr& e, const Rational& s) {
    if (s == 0) return e;
    Expr arg = s > 0 ? Expr::var() + Expr::constant(s) : Expr::var() - Expr::constant(Rational(-s));
    return simplify(substitute(e, arg));
}

} // namespace ddeq

#include "ddeq/expr.hpp"

#include <cmath>
#include <numbers>

namespace ddeq {

struct Expr::Node {
    Kind kind = Kind::constant;
    Rational value;
    NamedConst named = NamedConst::pi;
    BinOp op = BinOp::add;
    Func func = Func::exp;
    std::vector<Expr> children;
    bool free_of_x = true;
    int depth = 1;
};

const char* to_string(Func f) {
    switch (f) {
    case Func::exp: return "exp";
    case Func::ln: return "ln";
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::tan: return "tan";
    case Func::sinh: return "sinh";
    case Func::cosh: return "cosh";
    }
    return "?";
}

namespace {

std::shared_ptr<const Expr::Node> zero_node() {
    static const auto node = [] {
        auto n = std::make_shared<Expr::Node>();
        n->value = 0;
        return std::shared_ptr<const Expr::Node>(n);
    }();
    return node;
}

} // namespace

Expr::Expr() : node_(zero_node()) {}

Expr Expr::constant(const Rational& value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::constant(double value) { return constant(decimal_rational(value)); }

Expr Expr::named(NamedConst c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::named;
    n->named = c;
    return Expr(std::move(n));
}

Expr Expr::var() {
    static const Expr x = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::variable;
        n->free_of_x = false;
        return Expr(std::move(n));
    }();
    return x;
}

Expr Expr::negate(Expr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::negate;
    n->free_of_x = operand.is_free_of_x();
    n->depth = operand.depth() + 1;
    n->children.push_back(std::move(operand));
    return Expr(std::move(n));
}

Expr Expr::binary(BinOp op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::binary;
    n->op = op;
    n->free_of_x = lhs.is_free_of_x() && rhs.is_free_of_x();
    n->depth = std::max(lhs.depth(), rhs.depth()) + 1;
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Expr(std::move(n));
}

Expr Expr::apply(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::function;
    n->func = f;
    n->free_of_x = arg.is_free_of_x();
    n->depth = arg.depth() + 1;
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
NamedConst Expr::named_constant() const { return node_->named; }
BinOp Expr::op() const { return node_->op; }
Func Expr::func() const { return node_->func; }
const Expr& Expr::operand() const { return node_->children.at(0); }
const Expr& Expr::lhs() const { return node_->children.at(0); }
const Expr& Expr::rhs() const { return node_->children.at(1); }
bool Expr::is_free_of_x() const { return node_->free_of_x; }
int Expr::depth() const { return node_->depth; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.depth != y.depth) return false;
    switch (x.kind) {
    case Expr::Kind::constant: return x.value == y.value;
    case Expr::Kind::named: return x.named == y.named;
    case Expr::Kind::variable: return true;
    case Expr::Kind::negate: return x.children[0] == y.children[0];
    case Expr::Kind::binary:
        return x.op == y.op && x.children[0] == y.children[0] && x.children[1] == y.children[1];
    case Expr::Kind::function: return x.func == y.func && x.children[0] == y.children[0];
    }
    return false;
}

Expr operator+(Expr a, Expr b) { return Expr::binary(BinOp::add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(BinOp::sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(BinOp::mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(BinOp::div, std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::negate(std::move(a)); }
Expr pow(Expr base, Expr exponent) { return Expr::binary(BinOp::pow, std::move(base), std::move(exponent)); }

ParseError::ParseError(Kind kind, size_t offset, std::vector<std::string> expected, const std::string& message)
    : std::runtime_error(message), kind_(kind), offset_(offset), expected_(std::move(expected)) {}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(double v, const Expr& at, const char* what) {
    if (!std::isfinite(v)) throw EvalError(what, render(at));
    return v;
}

double eval_node(const Expr& e, double x) {
    switch (e.kind()) {
    case Expr::Kind::constant: return to_double(e.value());
    case Expr::Kind::named: return e.named_constant() == NamedConst::pi ? std::numbers::pi : std::numbers::e;
    case Expr::Kind::variable: return x;
    case Expr::Kind::negate: return -eval_node(e.operand(), x);
    case Expr::Kind::binary: {
        double a = eval_node(e.lhs(), x);
        double b = eval_node(e.rhs(), x);
        switch (e.op()) {
        case BinOp::add: return checked(a + b, e, "non-finite result");
        case BinOp::sub: return checked(a - b, e, "non-finite result");
        case BinOp::mul: return checked(a * b, e, "non-finite result");
        case BinOp::div:
            if (b == 0.0) throw EvalError("division by zero", render(e));
            return checked(a / b, e, "non-finite result");
        case BinOp::pow:
            if (a == 0.0 && b < 0.0) throw EvalError("division by zero", render(e));
            if (a < 0.0 && std::trunc(b) != b) throw EvalError("negative base with non-integer exponent", render(e));
            return checked(std::pow(a, b), e, "non-finite result");
        }
        break;
    }
    case Expr::Kind::function: {
        double u = eval_node(e.operand(), x);
        switch (e.func()) {
        case Func::exp: return checked(std::exp(u), e, "overflow");
        case Func::ln:
            if (u <= 0.0) throw EvalError("logarithm of non-positive value", render(e));
            return std::log(u);
        case Func::sin: return std::sin(u);
        case Func::cos: return std::cos(u);
        case Func::tan: return checked(std::tan(u), e, "non-finite result");
        case Func::sinh: return checked(std::sinh(u), e, "overflow");
        case Func::cosh: return checked(std::cosh(u), e, "overflow");
        }
        break;
    }
    }
    throw EvalError("malformed node", render(e));
}

} // namespace

double evaluate(const Expr& e, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("evaluation point must be finite");
    return eval_node(e, x);
}

// ---------------------------------------------------------------------------
// Polynomial recognition

std::optional<Poly> to_polynomial(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::constant: return Poly::constant(e.value());
    case Expr::Kind::named: return std::nullopt;
    case Expr::Kind::variable: return Poly::x();
    case Expr::Kind::negate: {
        auto p = to_polynomial(e.operand());
        if (!p) return std::nullopt;
        return -*p;
    }
    case Expr::Kind::function: return std::nullopt;
    case Expr::Kind::binary: break;
    }
    auto a = to_polynomial(e.lhs());
    if (!a) return std::nullopt;
    auto b = to_polynomial(e.rhs());
    if (!b) return std::nullopt;
    switch (e.op()) {
    case BinOp::add: return *a + *b;
    case BinOp::sub: return *a - *b;
    case BinOp::mul: return *a * *b;
    case BinOp::div:
        if (b->degree() != 0) return std::nullopt;  // zero or non-constant divisor
        return *a * (Rational(1) / b->leading());
    case BinOp::pow: {
        if (b->degree() > 0) return std::nullopt;
        Rational n = b->coeff(0);
        if (denominator(n) != 1 || n < 0 || n > 4096) return std::nullopt;
        return pow(*a, numerator(n).convert_to<unsigned>());
    }
    }
    return std::nullopt;
}

Expr from_polynomial(const Poly& p) {
    if (p.is_zero()) return Expr::constant(Rational(0));
    Expr acc;
    bool first = true;
    for (int i = 0; i <= p.degree(); ++i) {
        Rational c = p.coeff(i);
        if (c == 0) continue;
        Expr term = i == 0 ? Expr::constant(c) : (i == 1 ? Expr::var() : pow(Expr::var(), Expr::constant(Rational(i))));
        if (i > 0 && c != 1) term = Expr::constant(c) * term;
        acc = first ? term : acc + term;
        first = false;
    }
    return simplify(acc);
}

// ---------------------------------------------------------------------------

DerivativeTower::DerivativeTower(Expr base) : base_(std::move(base)), cache_(std::make_shared<Cache>()) {
    cache_->entries.push_back(base_);
}

Expr DerivativeTower::at(size_t order) const {
    std::lock_guard lock(cache_->mutex);
    auto& entries = cache_->entries;
    while (entries.size() <= order) entries.push_back(differentiate(entries.back()));
    return entries[order];
}

size_t DerivativeTower::computed() const {
    std::lock_guard lock(cache_->mutex);
    return cache_->entries.size();
}

} // namespace ddeq

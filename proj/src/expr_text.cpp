// Parsing and rendering of expression text.

#include "ddeq/expr.hpp"

#include <cctype>

namespace ddeq {

namespace {

const char* const kFunctionNames[] = {"exp", "ln", "sin", "cos", "tan", "sinh", "cosh"};
const Func kFunctions[] = {Func::exp, Func::ln, Func::sin, Func::cos, Func::tan, Func::sinh, Func::cosh};

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += i + 1 == items.size() ? " or " : ", ";
        out += items[i];
    }
    return out;
}

class Parser {
public:
    Parser(std::string_view src, const ParseOptions& options) : src_(src), options_(options) {}

    Expr run() {
        skip_space();
        if (pos_ >= src_.size()) syntax_error({"expression"});
        Expr e = parse_expr();
        skip_space();
        if (pos_ < src_.size()) syntax_error({"operator", "end of input"});
        return e;
    }

private:
    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p_(p) {
            if (++p_.nesting_ > 4 * p_.options_.max_depth + 16)
                throw ParseError(ParseError::Kind::too_deep, p_.pos_, {}, "expression nested too deeply");
        }
        ~DepthGuard() { --p_.nesting_; }
        Parser& p_;
    };

    [[noreturn]] void syntax_error(std::vector<std::string> expected) const {
        std::string where = pos_ >= src_.size() ? "end of input" : "offset " + std::to_string(pos_);
        std::string msg = "syntax error at " + where + ": expected " + join(expected);
        throw ParseError(ParseError::Kind::syntax, pos_, std::move(expected), msg);
    }

    Expr checked(Expr e) const {
        if (e.depth() > options_.max_depth)
            throw ParseError(ParseError::Kind::too_deep, pos_, {},
                             "expression tree deeper than " + std::to_string(options_.max_depth));
        return e;
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    // Current significant character, with U+2212 read as '-'. 0 at end.
    char peek() {
        skip_space();
        if (pos_ >= src_.size()) return 0;
        if (src_.compare(pos_, 3, "\xE2\x88\x92") == 0) return '-';
        return src_[pos_];
    }

    void advance() { pos_ += src_.compare(pos_, 3, "\xE2\x88\x92") == 0 ? 3 : 1; }

    Expr parse_expr() {
        DepthGuard guard(*this);
        Expr acc = parse_term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            advance();
            Expr rhs = parse_term();
            acc = checked(Expr::binary(c == '+' ? BinOp::add : BinOp::sub, acc, rhs));
        }
        return acc;
    }

    Expr parse_term() {
        Expr acc = parse_unary();
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            advance();
            Expr rhs = parse_unary();
            acc = checked(Expr::binary(c == '*' ? BinOp::mul : BinOp::div, acc, rhs));
        }
        return acc;
    }

    static Expr negated(Expr e) {
        if (e.kind() == Expr::Kind::constant) return Expr::constant(Rational(-e.value()));
        return Expr::negate(std::move(e));
    }

    Expr parse_unary() {
        DepthGuard guard(*this);
        if (peek() == '-') {
            advance();
            return checked(negated(parse_unary()));
        }
        return parse_factor();
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (peek() != '^') return base;
        advance();
        size_t exponent_start = pos_;
        Expr exponent = parse_exponent();
        if (exponent.is_free_of_x()) return checked(pow(base, exponent));
        if (base.kind() == Expr::Kind::named && base.named_constant() == NamedConst::e)
            return checked(Expr::apply(Func::exp, exponent));
        throw ParseError(ParseError::Kind::non_constant_exponent, exponent_start, {},
                         "exponent at offset " + std::to_string(exponent_start) + " depends on x");
    }

    // exponent := '-' exponent | base ('^' exponent)?
    Expr parse_exponent() {
        DepthGuard guard(*this);
        if (peek() == '-') {
            advance();
            return checked(negated(parse_exponent()));
        }
        return parse_factor();
    }

    Expr parse_base() {
        DepthGuard guard(*this);
        char c = peek();
        if (c == '(') {
            advance();
            Expr inner = parse_expr();
            if (peek() != ')') syntax_error({"')'"});
            advance();
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        syntax_error({"number", "'x'", "'pi'", "'e'", "function name", "'('"});
    }

    Expr parse_number() {
        size_t start = pos_;
        auto digit_at = [&](size_t i) { return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i])); };
        while (digit_at(pos_)) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (digit_at(pos_)) ++pos_;
        }
        if (pos_ - start == 1 && src_[start] == '.') {
            pos_ = start;
            syntax_error({"number"});
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (digit_at(look)) {
                pos_ = look;
                while (digit_at(pos_)) ++pos_;
            }
        }
        return Expr::constant(parse_rational(src_.substr(start, pos_ - start)));
    }

    Expr parse_identifier() {
        size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return Expr::var();
        if (name == "pi") return Expr::named(NamedConst::pi);
        if (name == "e") return Expr::named(NamedConst::e);
        for (size_t i = 0; i < std::size(kFunctionNames); ++i) {
            if (name != kFunctionNames[i]) continue;
            if (peek() != '(') syntax_error({"'('"});
            advance();
            Expr arg = parse_expr();
            if (peek() != ')') syntax_error({"')'"});
            advance();
            return checked(Expr::apply(kFunctions[i], arg));
        }
        throw ParseError(ParseError::Kind::unknown_identifier, start, {},
                         "unknown identifier '" + std::string(name) + "' at offset " + std::to_string(start));
    }

    std::string_view src_;
    ParseOptions options_;
    size_t pos_ = 0;
    int nesting_ = 0;
};

// Precedence levels used by the renderer.
constexpr int kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5;

// Decimal text for rationals whose denominator is 2^a 5^b, empty otherwise.
std::string terminating_decimal(const Rational& q) {
    BigInt den = denominator(q);
    unsigned twos = 0, fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) return {};
    unsigned digits = std::max(twos, fives);
    if (digits > 40) return {};
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    BigInt mag = numerator(q) * scale / denominator(q);
    if (mag < 0) mag = -mag;
    std::string text = mag.str();
    if (digits > 0) {
        if (text.size() <= digits) text.insert(0, digits + 1 - text.size(), '0');
        text.insert(text.size() - digits, ".");
    }
    return text;
}

struct Rendered {
    std::string text;
    int level;
};

Rendered render_node(const Expr& e);

std::string wrap(const Rendered& r, bool parens) { return parens ? "(" + r.text + ")" : r.text; }

Rendered render_constant(const Rational& q) {
    std::string dec = terminating_decimal(q);
    if (!dec.empty()) return q < 0 ? Rendered{"-" + dec, kUnary} : Rendered{dec, kAtom};
    return {"(" + to_string(q) + ")", kAtom};
}

Rendered render_node(const Expr& e) {
    switch (e.kind()) {
    case Expr::Kind::constant: return render_constant(e.value());
    case Expr::Kind::named: return {e.named_constant() == NamedConst::pi ? "pi" : "e", kAtom};
    case Expr::Kind::variable: return {"x", kAtom};
    case Expr::Kind::negate: {
        Rendered inner = render_node(e.operand());
        return {"-" + wrap(inner, inner.level < kUnary), kUnary};
    }
    case Expr::Kind::function: return {std::string(to_string(e.func())) + "(" + render_node(e.operand()).text + ")", kAtom};
    case Expr::Kind::binary: break;
    }
    Rendered l = render_node(e.lhs());
    Rendered r = render_node(e.rhs());
    switch (e.op()) {
    case BinOp::add:
    case BinOp::sub:
        return {wrap(l, l.level < kSum) + (e.op() == BinOp::add ? " + " : " - ") + wrap(r, r.level <= kSum), kSum};
    case BinOp::mul:
    case BinOp::div:
        return {wrap(l, l.level < kProduct) + (e.op() == BinOp::mul ? "*" : "/") + wrap(r, r.level <= kProduct),
                kProduct};
    case BinOp::pow: return {wrap(l, l.level < kAtom) + "^" + wrap(r, r.level < kUnary), kPower};
    }
    return {"?", kAtom};
}

} // namespace

Expr parse(std::string_view source, const ParseOptions& options) { return Parser(source, options).run(); }

std::string render(const Expr& e) { return render_node(e).text; }

} // namespace ddeq

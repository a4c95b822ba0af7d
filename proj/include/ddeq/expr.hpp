#pragma once

#include "ddeq/poly.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddeq {

enum class Func { exp, ln, sin, cos, tan, sinh, cosh };
enum class NamedConst { pi, e };
enum class BinOp { add, sub, mul, div, pow };

const char* to_string(Func f);

/// Immutable expression tree in the single variable x.
///
/// Nodes are shared; copying an Expr is a reference-count bump. The factory
/// functions build nodes exactly as asked. Use simplify() to fold constants.
class Expr {
public:
    enum class Kind { constant, named, variable, negate, binary, function };

    /// Zero constant.
    Expr();

    static Expr constant(const Rational& value);
    /// Stored as the shortest decimal that round-trips to `value`.
    static Expr constant(double value);
    static Expr named(NamedConst c);
    static Expr var();
    static Expr negate(Expr operand);
    static Expr binary(BinOp op, Expr lhs, Expr rhs);
    static Expr apply(Func f, Expr arg);

    Kind kind() const;
    const Rational& value() const;  // constant
    NamedConst named_constant() const;
    BinOp op() const;  // binary
    Func func() const;  // function
    const Expr& operand() const;  // negate, function
    const Expr& lhs() const;  // binary
    const Expr& rhs() const;  // binary

    bool is_constant_node(const Rational& v) const {
        return kind() == Kind::constant && value() == v;
    }
    /// True when x does not occur anywhere in the tree.
    bool is_free_of_x() const;
    int depth() const;

    friend bool operator==(const Expr& a, const Expr& b);

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);
Expr pow(Expr base, Expr exponent);

class ParseError : public std::runtime_error {
public:
    enum class Kind { syntax, unknown_identifier, non_constant_exponent, too_deep };

    ParseError(Kind kind, size_t offset, std::vector<std::string> expected, const std::string& message);

    Kind kind() const { return kind_; }
    /// Byte offset into the source text.
    size_t offset() const { return offset_; }
    /// Tokens that would have been accepted at offset (syntax errors only).
    const std::vector<std::string>& expected() const { return expected_; }

private:
    Kind kind_;
    size_t offset_;
    std::vector<std::string> expected_;
};

struct ParseOptions {
    int max_depth = 64;
};

/// expr   := term (('+'|'-') term)*
/// term   := unary (('*'|'/') unary)*
/// unary  := '-' unary | factor
/// factor := base ('^' exponent)?
/// base   := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
///
/// Exponents must be free of x, except that e^u is read as exp(u). Decimal
/// literals become exact rationals, and a minus sign directly before a literal
/// is folded into it.
Expr parse(std::string_view source, const ParseOptions& options = {});

/// Text in the parse grammar; parse(render(e)) == e for trees built by parse.
std::string render(const Expr& e);

/// Constant folding, 0/1 absorption, flattening of sums and products with
/// like-term collection. Never applies trig identities.
Expr simplify(const Expr& e);

/// Symbolic d/dx, simplified.
Expr differentiate(const Expr& e);

/// Replace every x by `replacement`.
Expr substitute(const Expr& e, const Expr& replacement);

/// e(x + s), simplified.
Expr shifted(const Expr& e, const Rational& s);

class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& what, std::string subtree)
        : std::runtime_error(what + " in '" + subtree + "'"), subtree_(std::move(subtree)) {}
    /// Rendered subtree where evaluation failed.
    const std::string& subtree() const { return subtree_; }

private:
    std::string subtree_;
};

/// IEEE double evaluation. Throws EvalError on division by zero, logarithm of
/// a non-positive value, an undefined power or a non-finite result.
double evaluate(const Expr& e, double x);

/// Exact polynomial when e uses only rational constants, x, +, -, *,
/// non-negative integer powers and division by nonzero constants.
std::optional<Poly> to_polynomial(const Expr& e);

/// Expression for a polynomial, in ascending powers.
Expr from_polynomial(const Poly& p);

/// Lazily extended list of symbolic derivatives: entry i is the i-th
/// derivative of the base. Copies share the cache. Safe for concurrent use.
class DerivativeTower {
public:
    explicit DerivativeTower(Expr base);

    const Expr& base() const { return base_; }
    Expr at(size_t order) const;
    size_t computed() const;

private:
    struct Cache {
        std::mutex mutex;
        std::vector<Expr> entries;
    };
    Expr base_;
    std::shared_ptr<Cache> cache_;
};

} // namespace ddeq

#pragma once

#include "ddeq/combination.hpp"
#include "ddeq/expr.hpp"
#include "ddeq/poly.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddeq {

/// Initial function h on [-1/2, 1/2] for y'(x) = y(x + 1/2) - y(x - 1/2).
class InitialFunction {
public:
    /// `order` is the declared smoothness k >= 1; nullopt means unbounded.
    explicit InitialFunction(Expr h, std::optional<int> order = std::nullopt);
    static InitialFunction parse(std::string_view text, std::optional<int> order = std::nullopt);

    const Expr& expr() const { return tower_.base(); }
    const DerivativeTower& tower() const { return tower_; }
    /// Present when h is exactly a polynomial.
    const std::optional<Poly>& exact() const { return exact_; }
    std::optional<int> declared_order() const { return order_; }

private:
    DerivativeTower tower_;
    std::optional<Poly> exact_;
    std::optional<int> order_;
};

/// Signed compatibility defect h^(i)(0) - h^(i-1)(1/2) + h^(i-1)(-1/2).
struct OrderDefect {
    int order = 0;
    double defect = 0.0;
    std::optional<Rational> exact_defect;
    double scale = 1.0;  // max(1, |h^(i)(0)|)
    bool admissible = false;
};

struct AdmissibilityReport {
    std::vector<OrderDefect> orders;
    bool exact_path = false;

    bool admissible() const;
    /// Lowest failing order, if any.
    std::optional<int> first_failure() const;
};

nlohmann::json to_json(const AdmissibilityReport& report);

/// Relative gate for the floating-point path.
inline constexpr double kAdmissibilityTolerance = 1e-10;

/// A failure while differentiating or evaluating h at a given order.
class OrderError : public std::runtime_error {
public:
    OrderError(int order, const std::string& what)
        : std::runtime_error("order " + std::to_string(order) + ": " + what), order_(order) {}
    int order() const { return order_; }

private:
    int order_;
};

/// Defects for orders 1..k; exact when h is a polynomial.
AdmissibilityReport check_admissibility(const InitialFunction& h, int k);

class AdmissibilityError : public std::runtime_error {
public:
    explicit AdmissibilityError(AdmissibilityReport report);
    const AdmissibilityReport& report() const { return report_; }

private:
    AdmissibilityReport report_;
};

/// y_n on the half-open interval (n/2, (n+1)/2].
class SegmentFormula {
public:
    SegmentFormula(int index, Expr formula, std::optional<Poly> exact = std::nullopt,
                   std::optional<ShiftCombination> combination = std::nullopt);

    int index() const { return index_; }
    Rational left() const { return Rational(index_, 2); }
    Rational right() const { return Rational(index_ + 1, 2); }

    const Expr& formula() const { return tower_.base(); }
    const std::optional<Poly>& exact() const { return exact_; }
    /// Shifted-derivative form in terms of h, when built from an initial function.
    const std::optional<ShiftCombination>& combination() const { return combination_; }

    /// Analytic continuation of the formula, usable at either endpoint.
    double value(double x) const;
    /// Symbolic first derivative evaluated at x.
    double slope(double x) const;
    Expr derivative_formula() const { return tower_.at(1); }

private:
    int index_;
    DerivativeTower tower_;
    std::optional<Poly> exact_;
    std::optional<Poly> exact_slope_;
    std::optional<ShiftCombination> combination_;
};

enum class Provenance { stepwise, closed_form };
const char* to_string(Provenance p);

/// Segments y_first .. y_last covering [first/2, (last+1)/2]. Segments -1 and
/// 0 are the restrictions of h to (-1/2, 0] and (0, 1/2].
class PiecewiseSolution {
public:
    PiecewiseSolution() = default;
    PiecewiseSolution(Provenance provenance, int span, std::vector<SegmentFormula> segments);

    /// Segments -1 and 0 from h.
    static PiecewiseSolution initial(const InitialFunction& h);

    Provenance provenance() const { return provenance_; }
    int span() const { return span_; }
    int first_index() const { return segments_.begin()->first; }
    int last_index() const { return segments_.rbegin()->first; }
    Rational lower() const { return Rational(first_index(), 2); }
    Rational upper() const { return Rational(last_index() + 1, 2); }

    const std::map<int, SegmentFormula>& segments() const { return segments_; }
    const SegmentFormula& segment(int n) const;
    bool has(int n) const { return segments_.count(n) != 0; }

    /// Initial function the segments were generated from, when known.
    const std::optional<InitialFunction>& source() const { return source_; }
    const std::optional<AdmissibilityReport>& admissibility() const { return report_; }
    /// True when the solution was produced despite an admissibility failure.
    bool forced() const { return forced_; }

    /// Index of the segment owning x under the (n/2, (n+1)/2] convention; the
    /// lower end of the covered span belongs to the first segment.
    /// Throws std::out_of_range naming the covered interval.
    int locate(double x) const;

    /// Records the initial function the segments stand for.
    void set_source(InitialFunction h) { source_ = std::move(h); }
    /// Records the admissibility check the solution was produced under.
    void set_admissibility(AdmissibilityReport report, bool forced) {
        report_ = std::move(report);
        forced_ = forced;
    }

private:
    friend PiecewiseSolution extend_forward(const PiecewiseSolution&);
    friend PiecewiseSolution extend_backward(const PiecewiseSolution&);
    friend PiecewiseSolution solve_ivp(const InitialFunction&, int, bool);

    Provenance provenance_ = Provenance::stepwise;
    int span_ = 0;
    std::map<int, SegmentFormula> segments_;
    std::optional<InitialFunction> source_;
    std::optional<AdmissibilityReport> report_;
    bool forced_ = false;
};

/// Segment formula from a shifted-derivative combination of h.
SegmentFormula make_segment(int index, const ShiftCombination& combination, const InitialFunction& h);

/// Appends y_n(x) = y'_(n-1)(x - 1/2) + y_(n-2)(x - 1) after the last segment.
PiecewiseSolution extend_forward(const PiecewiseSolution& sol);
/// Prepends y_(-n)(x) = y_(2-n)(x + 1) - y'_(1-n)(x + 1/2) before the first segment.
PiecewiseSolution extend_backward(const PiecewiseSolution& sol);

/// Method of steps with `span_m` extensions on each side, producing segments
/// -(span_m + 1) .. span_m on [-(span_m + 1)/2, (span_m + 1)/2].
///
/// Admissibility is checked for orders 1..K with K = max(k, span_m) for
/// declared order k, or span_m + 1 when the order is unbounded. Failure throws
/// AdmissibilityError unless `force` is set, in which case the result is
/// marked forced().
PiecewiseSolution solve_ivp(const InitialFunction& h, int span_m, bool force = false);

/// Orders solve_ivp checks for this input.
int admissibility_orders(const InitialFunction& h, int span_m);

double eval_solution(const PiecewiseSolution& sol, double x);
/// Symbolic derivative of the owning segment.
double eval_derivative(const PiecewiseSolution& sol, double x);
/// Exact value when the owning segment has an exact polynomial.
std::optional<Rational> eval_exact(const PiecewiseSolution& sol, const Rational& x);

struct KnotReport {
    Rational knot;
    double value_jump = 0.0;       // right limit - left limit
    double derivative_jump = 0.0;
    std::optional<Rational> exact_value_jump;
    std::optional<Rational> exact_derivative_jump;
};

/// Jumps at every interior knot n/2, from the adjacent segment formulas.
std::vector<KnotReport> knot_diagnostics(const PiecewiseSolution& sol);
nlohmann::json to_json(const std::vector<KnotReport>& knots);

/// Solution export: {provenance, span, segments: [{n, domain, formula, poly?}]}.
nlohmann::json to_json(const PiecewiseSolution& sol);

/// Raised for documents that do not match the solution schema. path() is a
/// JSON pointer to the offending location.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Validates against the solution schema, then rebuilds the segments.
PiecewiseSolution solution_from_json(const nlohmann::json& doc);

} // namespace ddeq

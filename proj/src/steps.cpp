#include "ddeq/steps.hpp"

#include "ddeq/operators.hpp"

#include <algorithm>
#include <cmath>

namespace ddeq {

namespace {

const Rational kHalf(1, 2);

// ceil(q) for an exact rational.
BigInt ceil_rational(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    BigInt quot = num / den;  // truncates toward zero
    if (num > 0 && quot * den != num) quot += 1;
    return quot;
}

std::string interval_text(const PiecewiseSolution& sol) {
    return "[" + to_string(sol.lower()) + ", " + to_string(sol.upper()) + "]";
}

int span_of(const std::map<int, SegmentFormula>& segments) {
    if (segments.empty()) return 0;
    int forward = segments.rbegin()->first;
    int backward = -segments.begin()->first - 1;
    return std::max(0, std::min(forward, backward));
}

} // namespace

// ---------------------------------------------------------------- initial data

InitialFunction::InitialFunction(Expr h, std::optional<int> order)
    : tower_(std::move(h)), exact_(to_polynomial(tower_.base())), order_(order) {
    if (order_ && *order_ < 1) throw std::invalid_argument("declared order must be at least 1");
}

InitialFunction InitialFunction::parse(std::string_view text, std::optional<int> order) {
    return InitialFunction(ddeq::parse(text), order);
}

bool AdmissibilityReport::admissible() const {
    return std::all_of(orders.begin(), orders.end(), [](const OrderDefect& d) { return d.admissible; });
}

std::optional<int> AdmissibilityReport::first_failure() const {
    for (const auto& d : orders)
        if (!d.admissible) return d.order;
    return std::nullopt;
}

nlohmann::json to_json(const AdmissibilityReport& report) {
    nlohmann::json orders = nlohmann::json::array();
    for (const auto& d : report.orders) {
        nlohmann::json entry{{"order", d.order}, {"defect", d.defect}, {"admissible", d.admissible}};
        if (d.exact_defect) entry["exact_defect"] = to_string(*d.exact_defect);
        orders.push_back(std::move(entry));
    }
    return {{"admissible", report.admissible()}, {"exact", report.exact_path}, {"orders", std::move(orders)}};
}

AdmissibilityReport check_admissibility(const InitialFunction& h, int k) {
    if (k < 1) throw std::invalid_argument("admissibility order must be at least 1");
    AdmissibilityReport report;
    report.exact_path = h.exact().has_value();
    for (int i = 1; i <= k; ++i) {
        OrderDefect d;
        d.order = i;
        if (h.exact()) {
            Poly hi = derivative(*h.exact(), static_cast<unsigned>(i));
            Poly hprev = derivative(*h.exact(), static_cast<unsigned>(i - 1));
            Rational defect = hi(Rational(0)) - hprev(kHalf) + hprev(Rational(-kHalf));
            d.exact_defect = defect;
            d.defect = to_double(defect);
            d.scale = std::max(1.0, std::abs(to_double(hi(Rational(0)))));
            d.admissible = defect == 0;
        } else {
            try {
                double at0 = evaluate(h.tower().at(static_cast<size_t>(i)), 0.0);
                const Expr& prev = h.tower().at(static_cast<size_t>(i - 1));
                d.defect = at0 - evaluate(prev, 0.5) + evaluate(prev, -0.5);
                d.scale = std::max(1.0, std::abs(at0));
            } catch (const std::exception& e) {
                throw OrderError(i, e.what());
            }
            d.admissible = std::abs(d.defect) <= kAdmissibilityTolerance * d.scale;
        }
        report.orders.push_back(std::move(d));
    }
    return report;
}

namespace {

std::string admissibility_message(const AdmissibilityReport& report) {
    auto failure = report.first_failure();
    if (!failure) return "initial function is admissible";
    const auto& d = report.orders[static_cast<size_t>(*failure - 1)];
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g", d.defect);
    return "initial function is not admissible: compatibility fails at order " + std::to_string(*failure) +
           " (defect " + (d.exact_defect ? to_string(*d.exact_defect) : std::string(buf)) + ")";
}

} // namespace

AdmissibilityError::AdmissibilityError(AdmissibilityReport report)
    : std::runtime_error(admissibility_message(report)), report_(std::move(report)) {}

// ---------------------------------------------------------------- segments

SegmentFormula::SegmentFormula(int index, Expr formula, std::optional<Poly> exact,
                               std::optional<ShiftCombination> combination)
    : index_(index), tower_(std::move(formula)), exact_(std::move(exact)), combination_(std::move(combination)) {
    if (exact_) exact_slope_ = derivative(*exact_);
}

double SegmentFormula::value(double x) const {
    if (exact_) return (*exact_)(x);
    return evaluate(tower_.base(), x);
}

double SegmentFormula::slope(double x) const {
    if (exact_slope_) return (*exact_slope_)(x);
    return evaluate(tower_.at(1), x);
}

const char* to_string(Provenance p) { return p == Provenance::stepwise ? "stepwise" : "closed-form"; }

PiecewiseSolution::PiecewiseSolution(Provenance provenance, int span, std::vector<SegmentFormula> segments)
    : provenance_(provenance), span_(span) {
    if (segments.empty()) throw std::invalid_argument("a solution needs at least one segment");
    for (auto& s : segments) {
        int n = s.index();
        if (!segments_.emplace(n, std::move(s)).second)
            throw std::invalid_argument("duplicate segment " + std::to_string(n));
    }
    int expected = segments_.begin()->first;
    for (const auto& [n, s] : segments_) {
        if (n != expected) throw std::invalid_argument("segment indices are not contiguous: missing " + std::to_string(expected));
        ++expected;
    }
}

PiecewiseSolution PiecewiseSolution::initial(const InitialFunction& h) {
    std::vector<SegmentFormula> segs;
    segs.push_back(make_segment(-1, ShiftCombination::identity(), h));
    segs.push_back(make_segment(0, ShiftCombination::identity(), h));
    PiecewiseSolution sol(Provenance::stepwise, 0, std::move(segs));
    sol.source_ = h;
    return sol;
}

const SegmentFormula& PiecewiseSolution::segment(int n) const {
    auto it = segments_.find(n);
    if (it == segments_.end())
        throw std::out_of_range("segment " + std::to_string(n) + " is not part of the solution on " + interval_text(*this));
    return it->second;
}

int PiecewiseSolution::locate(double x) const {
    if (segments_.empty()) throw std::out_of_range("empty solution");
    double lo = to_double(lower());
    double hi = to_double(upper());
    if (!std::isfinite(x) || x < lo || x > hi) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        throw std::out_of_range(std::string("x = ") + buf + " lies outside the covered interval " + interval_text(*this));
    }
    if (x == lo) return first_index();
    int n = static_cast<int>(std::ceil(2.0 * x)) - 1;
    return std::clamp(n, first_index(), last_index());
}

SegmentFormula make_segment(int index, const ShiftCombination& combination, const InitialFunction& h) {
    std::optional<Poly> exact;
    if (h.exact()) exact = combination.apply(*h.exact());
    return SegmentFormula(index, combination.to_expr(h.tower()), std::move(exact), combination);
}

namespace {

// y_target = a * y'_{d}(x + sd) + b * y_{v}(x + sv), shared by both directions.
SegmentFormula combine(const PiecewiseSolution& sol, int target, int d, const Rational& sd, const Rational& a, int v,
                       const Rational& sv, const Rational& b) {
    const SegmentFormula& dseg = sol.segment(d);
    const SegmentFormula& vseg = sol.segment(v);

    if (sol.source() && dseg.combination() && vseg.combination()) {
        ShiftCombination c = dseg.combination()->derivative().shifted(sd).scaled(a);
        c.add(vseg.combination()->shifted(sv), b);
        return make_segment(target, c, *sol.source());
    }

    Expr slope;
    try {
        slope = dseg.derivative_formula();
    } catch (const std::exception& e) {
        throw std::runtime_error("segment " + std::to_string(d) + " cannot be differentiated: " + e.what());
    }
    Expr formula = simplify(Expr::constant(a) * shifted(slope, sd) + Expr::constant(b) * shifted(vseg.formula(), sv));
    std::optional<Poly> exact;
    if (dseg.exact() && vseg.exact())
        exact = a * shift(derivative(*dseg.exact()), sd) + b * shift(*vseg.exact(), sv);
    return SegmentFormula(target, std::move(formula), std::move(exact));
}

} // namespace

PiecewiseSolution extend_forward(const PiecewiseSolution& sol) {
    int n = sol.last_index() + 1;
    PiecewiseSolution out = sol;
    out.segments_.emplace(n, combine(sol, n, n - 1, -kHalf, 1, n - 2, -1, 1));
    out.span_ = span_of(out.segments_);
    return out;
}

PiecewiseSolution extend_backward(const PiecewiseSolution& sol) {
    // Segment -m from y_{-m}(x) = y_{2-m}(x + 1) - y'_{1-m}(x + 1/2).
    int target = sol.first_index() - 1;
    int m = -target;
    PiecewiseSolution out = sol;
    out.segments_.emplace(target, combine(sol, target, 1 - m, kHalf, -1, 2 - m, 1, 1));
    out.span_ = span_of(out.segments_);
    return out;
}

int admissibility_orders(const InitialFunction& h, int span_m) {
    if (h.declared_order()) return std::max(*h.declared_order(), span_m);
    return span_m + 1;
}

PiecewiseSolution solve_ivp(const InitialFunction& h, int span_m, bool force) {
    if (span_m < 1) throw std::invalid_argument("span must be at least 1");
    AdmissibilityReport report = check_admissibility(h, admissibility_orders(h, span_m));
    bool ok = report.admissible();
    if (!ok && !force) throw AdmissibilityError(std::move(report));

    PiecewiseSolution sol = PiecewiseSolution::initial(h);
    for (int step = 0; step < span_m; ++step) {
        sol = extend_forward(sol);
        sol = extend_backward(sol);
    }
    sol.report_ = std::move(report);
    sol.forced_ = !ok;
    sol.span_ = span_m;
    return sol;
}

double eval_solution(const PiecewiseSolution& sol, double x) { return sol.segment(sol.locate(x)).value(x); }

double eval_derivative(const PiecewiseSolution& sol, double x) { return sol.segment(sol.locate(x)).slope(x); }

std::optional<Rational> eval_exact(const PiecewiseSolution& sol, const Rational& x) {
    if (x < sol.lower() || x > sol.upper())
        throw std::out_of_range("x = " + to_string(x) + " lies outside the covered interval " + interval_text(sol));
    int n = x == sol.lower() ? sol.first_index() : static_cast<int>(ceil_rational(2 * x)) - 1;
    const SegmentFormula& seg = sol.segment(n);
    if (!seg.exact()) return std::nullopt;
    return (*seg.exact())(x);
}

std::vector<KnotReport> knot_diagnostics(const PiecewiseSolution& sol) {
    std::vector<KnotReport> out;
    for (int n = sol.first_index() + 1; n <= sol.last_index(); ++n) {
        const SegmentFormula& left = sol.segment(n - 1);
        const SegmentFormula& right = sol.segment(n);
        KnotReport r;
        r.knot = Rational(n, 2);
        double k = to_double(r.knot);
        if (left.exact() && right.exact()) {
            r.exact_value_jump = (*right.exact())(r.knot) - (*left.exact())(r.knot);
            r.exact_derivative_jump = derivative(*right.exact())(r.knot) - derivative(*left.exact())(r.knot);
            r.value_jump = to_double(*r.exact_value_jump);
            r.derivative_jump = to_double(*r.exact_derivative_jump);
        } else {
            r.value_jump = right.value(k) - left.value(k);
            r.derivative_jump = right.slope(k) - left.slope(k);
        }
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json to_json(const std::vector<KnotReport>& knots) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& k : knots) {
        nlohmann::json entry{{"knot", to_string(k.knot)},
                             {"value_jump", k.value_jump},
                             {"derivative_jump", k.derivative_jump}};
        if (k.exact_value_jump) entry["exact_value_jump"] = to_string(*k.exact_value_jump);
        if (k.exact_derivative_jump) entry["exact_derivative_jump"] = to_string(*k.exact_derivative_jump);
        arr.push_back(std::move(entry));
    }
    return arr;
}

} // namespace ddeq

#include "ddeq/combination.hpp"

#include "ddeq/operators.hpp"

#include <algorithm>

namespace ddeq {

ShiftCombination ShiftCombination::identity() {
    ShiftCombination c;
    c.terms_.emplace(Key{0, Rational(0)}, Rational(1));
    return c;
}

int ShiftCombination::max_order() const {
    int m = -1;
    for (const auto& [key, c] : terms_) m = std::max(m, key.first);
    return m;
}

void ShiftCombination::add_term(const Key& key, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

void ShiftCombination::add(const ShiftCombination& other, const Rational& scale) {
    for (const auto& [key, c] : other.terms_) add_term(key, c * scale);
}

ShiftCombination ShiftCombination::shifted(const Rational& s) const {
    ShiftCombination out;
    for (const auto& [key, c] : terms_) out.terms_.emplace(Key{key.first, key.second + s}, c);
    return out;
}

ShiftCombination ShiftCombination::derivative() const {
    ShiftCombination out;
    for (const auto& [key, c] : terms_) out.terms_.emplace(Key{key.first + 1, key.second}, c);
    return out;
}

ShiftCombination ShiftCombination::scaled(const Rational& c) const {
    ShiftCombination out;
    out.add(*this, c);
    return out;
}

Poly ShiftCombination::apply(const Poly& h) const {
    Poly out;
    for (const auto& [key, c] : terms_) out += c * shift(ddeq::derivative(h, static_cast<unsigned>(key.first)), key.second);
    return out;
}

double ShiftCombination::evaluate(const DerivativeTower& h, double x) const {
    double acc = 0.0;
    for (const auto& [key, c] : terms_)
        acc += to_double(c) * ddeq::evaluate(h.at(static_cast<size_t>(key.first)), x + to_double(key.second));
    return acc;
}

Expr ShiftCombination::to_expr(const DerivativeTower& h) const {
    if (terms_.empty()) return Expr::constant(Rational(0));
    // Largest shifts first reads naturally: h'(x - 1/2) + h(x - 1).
    std::vector<std::pair<Key, Rational>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.second != b.first.second) return a.first.second > b.first.second;
        return a.first.first > b.first.first;
    });
    std::optional<Expr> acc;
    for (const auto& [key, c] : ordered) {
        Expr term = ddeq::shifted(h.at(static_cast<size_t>(key.first)), key.second);
        if (c != 1) term = Expr::constant(c) * term;
        acc = acc ? *acc + term : term;
    }
    return simplify(*acc);
}

} // namespace ddeq

#include "ddeq/steps.hpp"

#include <set>

namespace ddeq {

nlohmann::json to_json(const PiecewiseSolution& sol) {
    nlohmann::json segments = nlohmann::json::array();
    for (const auto& [n, seg] : sol.segments()) {
        nlohmann::json entry{{"n", n},
                             {"domain", {to_string(seg.left()), to_string(seg.right())}},
                             {"formula", render(seg.formula())}};
        if (seg.exact()) entry["poly"] = to_json(*seg.exact());
        segments.push_back(std::move(entry));
    }
    nlohmann::json doc{{"provenance", to_string(sol.provenance())}, {"span", sol.span()}};
    if (sol.source()) doc["initial"] = render(sol.source()->expr());
    if (sol.forced()) doc["forced"] = true;
    doc["segments"] = std::move(segments);
    return doc;
}

namespace {

void require(bool ok, const std::string& path, const std::string& what) {
    if (!ok) throw SchemaError(path.empty() ? "/" : path, what);
}

void check_keys(const nlohmann::json& obj, const std::string& path, const std::set<std::string>& allowed,
                const std::set<std::string>& required) {
    for (const auto& key : required) require(obj.contains(key), path, "missing required property '" + key + "'");
    for (const auto& [key, value] : obj.items())
        require(allowed.count(key) != 0, path + "/" + key, "unexpected property");
}

Rational parse_dyadic(const nlohmann::json& v, const std::string& path) {
    require(v.is_string(), path, "expected a rational string");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(path, e.what());
    }
}

} // namespace

PiecewiseSolution solution_from_json(const nlohmann::json& doc) {
    require(doc.is_object(), "", "expected an object");
    check_keys(doc, "", {"provenance", "span", "initial", "forced", "segments"}, {"provenance", "span", "segments"});

    const auto& prov = doc["provenance"];
    require(prov.is_string() && (prov == "stepwise" || prov == "closed-form"), "/provenance",
            "expected \"stepwise\" or \"closed-form\"");
    Provenance provenance = prov == "stepwise" ? Provenance::stepwise : Provenance::closed_form;

    const auto& span = doc["span"];
    require(span.is_number_integer() && span.get<long long>() >= 0, "/span", "expected a non-negative integer");
    if (doc.contains("forced")) require(doc["forced"].is_boolean(), "/forced", "expected a boolean");

    std::optional<InitialFunction> source;
    if (doc.contains("initial")) {
        require(doc["initial"].is_string(), "/initial", "expected an expression string");
        try {
            source = InitialFunction::parse(doc["initial"].get<std::string>());
        } catch (const std::exception& e) {
            throw SchemaError("/initial", e.what());
        }
    }

    const auto& segs = doc["segments"];
    require(segs.is_array() && !segs.empty(), "/segments", "expected a non-empty array");
    std::vector<SegmentFormula> out;
    std::optional<int> previous;
    for (size_t i = 0; i < segs.size(); ++i) {
        std::string path = "/segments/" + std::to_string(i);
        const auto& s = segs[i];
        require(s.is_object(), path, "expected an object");
        check_keys(s, path, {"n", "domain", "formula", "poly"}, {"n", "domain", "formula"});

        require(s["n"].is_number_integer(), path + "/n", "expected an integer");
        int n = s["n"].get<int>();
        require(!previous || n == *previous + 1, path + "/n", "segment indices must be consecutive and increasing");
        previous = n;

        const auto& domain = s["domain"];
        require(domain.is_array() && domain.size() == 2, path + "/domain", "expected [left, right]");
        require(parse_dyadic(domain[0], path + "/domain/0") == Rational(n, 2), path + "/domain/0",
                "left endpoint must be n/2 = " + to_string(Rational(n, 2)));
        require(parse_dyadic(domain[1], path + "/domain/1") == Rational(n + 1, 2), path + "/domain/1",
                "right endpoint must be (n+1)/2 = " + to_string(Rational(n + 1, 2)));

        require(s["formula"].is_string(), path + "/formula", "expected an expression string");
        Expr formula;
        try {
            formula = parse(s["formula"].get<std::string>());
        } catch (const std::exception& e) {
            throw SchemaError(path + "/formula", e.what());
        }

        std::optional<Poly> exact;
        if (s.contains("poly")) {
            const auto& poly = s["poly"];
            require(poly.is_array(), path + "/poly", "expected an array of rational strings");
            for (size_t j = 0; j < poly.size(); ++j) parse_dyadic(poly[j], path + "/poly/" + std::to_string(j));
            exact = poly_from_json(poly);
            auto from_formula = to_polynomial(formula);
            require(!from_formula || *from_formula == *exact, path + "/poly", "does not match the formula");
        }
        out.emplace_back(n, std::move(formula), std::move(exact));
    }

    PiecewiseSolution sol(provenance, span.get<int>(), std::move(out));
    if (source) sol.set_source(std::move(*source));
    return sol;
}

} // namespace ddeq

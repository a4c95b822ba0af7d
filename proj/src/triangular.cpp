#include "ddeq/triangular.hpp"

#include "ddeq/operators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ddeq {

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parse_parity(std::string_view text) {
    if (text == "even") return Parity::even;
    if (text == "odd") return Parity::odd;
    throw std::invalid_argument("parity must be 'even' or 'odd', got '" + std::string(text) + "'");
}

TriangularSystem assemble_triangular(Parity parity, int N) {
    if (N < 2) throw std::invalid_argument("triangular system needs N >= 2, got " + std::to_string(N));
    TriangularSystem sys{parity, N, {}};

    // S'_m = S_m - m x^(m-1), indexed by m.
    auto reduced = [](unsigned m) { return s_n(m) - Poly::monomial(m - 1, m); };

    if (parity == Parity::even) {
        std::vector<Poly> reduced_s(static_cast<size_t>(N) + 1);
        for (int n = 2; n <= N; ++n) reduced_s[static_cast<size_t>(n)] = reduced(static_cast<unsigned>(2 * n - 1));
        for (int k = 0; k <= N - 2; ++k) {
            TriangularRow row{k, {}};
            for (int n = k + 2; n <= N; ++n) {
                Rational c = reduced_s[static_cast<size_t>(n)].coeff(2 * k);
                if (c != 0) row.coeffs.emplace(2 * n - 1, c);
            }
            sys.rows.push_back(std::move(row));
        }
    } else {
        std::vector<Poly> reduced_s(static_cast<size_t>(N) + 1);
        for (int n = 2; n <= N; ++n) reduced_s[static_cast<size_t>(n)] = reduced(static_cast<unsigned>(2 * n));
        for (int k = 1; k <= N - 1; ++k) {
            TriangularRow row{k, {}};
            for (int n = std::max(2, k + 1); n <= N; ++n) {
                Rational c = reduced_s[static_cast<size_t>(n)].coeff(2 * k - 1);
                if (c != 0) row.coeffs.emplace(2 * n, c);
            }
            sys.rows.push_back(std::move(row));
        }
    }
    return sys;
}

std::vector<Rational> residual_on_coefficients(const TriangularSystem& sys,
                                               const std::map<int, Rational>& assignment) {
    std::vector<Rational> out;
    out.reserve(sys.rows.size());
    for (const auto& row : sys.rows) {
        Rational acc = 0;
        for (const auto& [index, c] : row.coeffs) {
            auto it = assignment.find(index);
            if (it == assignment.end())
                throw std::out_of_range("assignment is missing unknown a_" + std::to_string(index));
            acc += c * it->second;
        }
        out.push_back(acc);
    }
    return out;
}

std::map<int, Rational> taylor_assignment(const Poly& p, int max_index) {
    std::map<int, Rational> a;
    for (int i = 0; i <= max_index; ++i) a.emplace(i, p.coeff(i));
    return a;
}

nlohmann::json to_json(const TriangularSystem& sys) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : sys.rows) {
        nlohmann::json coeffs = nlohmann::json::object();
        for (const auto& [index, c] : row.coeffs) coeffs[std::to_string(index)] = to_string(c);
        rows.push_back({{"k", row.k}, {"coeffs", coeffs}});
    }
    return {{"parity", to_string(sys.parity)}, {"N", sys.truncation}, {"rows", rows}};
}

} // namespace ddeq

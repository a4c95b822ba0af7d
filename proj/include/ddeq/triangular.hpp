#pragma once

#include "ddeq/poly.hpp"

#include <json.hpp>

#include <map>
#include <vector>

namespace ddeq {

enum class Parity { even, odd };

const char* to_string(Parity p);
Parity parse_parity(std::string_view text);

/// One homogeneous equation sum_i coeffs[i] * a_i = 0 over Taylor coefficients.
struct TriangularRow {
    int k = 0;
    std::map<int, Rational> coeffs;  // unknown index -> coefficient, all nonzero

    friend bool operator==(const TriangularRow&, const TriangularRow&) = default;
};

/// Truncated triangular system for the Taylor coefficients a_3, a_4, ... of an
/// analytic solution, split by parity of the unknown index.
///
/// Even family: rows k = 0..N-2, unknowns a_(2n-1) for k+2 <= n <= N, entry is
/// the x^(2k) coefficient of S_(2n-1) - (2n-1) x^(2n-2).
/// Odd family: rows k = 1..N-1, unknowns a_(2n) for max(2, k+1) <= n <= N,
/// entry is the x^(2k-1) coefficient of S_(2n) - 2n x^(2n-1).
struct TriangularSystem {
    Parity parity = Parity::even;
    int truncation = 0;
    std::vector<TriangularRow> rows;
};

/// Requires N >= 2 (std::invalid_argument otherwise).
TriangularSystem assemble_triangular(Parity parity, int N);

/// Left-hand side of every row under `assignment`. Throws std::out_of_range
/// naming the first unknown index the assignment lacks.
std::vector<Rational> residual_on_coefficients(const TriangularSystem& sys,
                                               const std::map<int, Rational>& assignment);

/// Assignment a_i = coefficient of x^i in p for i = 0..max_index.
std::map<int, Rational> taylor_assignment(const Poly& p, int max_index);

nlohmann::json to_json(const TriangularSystem& sys);

} // namespace ddeq

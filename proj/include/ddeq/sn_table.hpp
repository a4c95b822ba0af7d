#pragma once

#include "ddeq/poly.hpp"

#include <vector>

namespace ddeq {

/// Published table of S_m = L x^m for m = 1..10, transcribed verbatim,
/// including entries that disagree with direct expansion.
const std::vector<Poly>& reference_sn_table();

struct TableDiscrepancy {
    int m = 0;
    int power = 0;  // coefficient of x^power
    Rational reference;
    Rational computed;
};

/// Entry-by-entry comparison of s_n(m) against the reference table for
/// m = 1..min(m_max, 10).
std::vector<TableDiscrepancy> compare_sn_table(int m_max);

} // namespace ddeq

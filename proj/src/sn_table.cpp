#include "ddeq/sn_table.hpp"

#include "ddeq/operators.hpp"

#include <algorithm>

namespace ddeq {

namespace {

Rational q(long long num, long long den = 1) { return Rational(num, den); }

} // namespace

const std::vector<Poly>& reference_sn_table() {
    // Coefficients in ascending powers of x, exactly as printed.
    static const std::vector<Poly> table = {
        Poly{q(1)},
        Poly{q(0), q(2)},
        Poly{q(1, 4), q(0), q(3)},
        Poly{q(0), q(1), q(0), q(4)},
        Poly{q(1, 16), q(0), q(5, 2), q(0), q(5)},
        Poly{q(0), q(3, 8), q(0), q(5), q(0), q(6)},
        Poly{q(1, 64), q(0), q(21, 16), q(0), q(35, 4), q(0), q(7)},
        Poly{q(0), q(1, 8), q(0), q(7, 2), q(0), q(14), q(0), q(8)},
        Poly{q(1, 128), q(0), q(9, 16), q(0), q(63, 8), q(0), q(21, 2), q(0), q(9)},
        Poly{q(0), q(10, 256), q(0), q(15, 8), q(0), q(63, 2), q(0), q(30), q(0), q(10)},
    };
    return table;
}

std::vector<TableDiscrepancy> compare_sn_table(int m_max) {
    std::vector<TableDiscrepancy> out;
    const auto& table = reference_sn_table();
    int last = std::min<int>(m_max, static_cast<int>(table.size()));
    for (int m = 1; m <= last; ++m) {
        const Poly& ref = table[static_cast<size_t>(m - 1)];
        Poly computed = s_n(static_cast<unsigned>(m));
        int deg = std::max(ref.degree(), computed.degree());
        for (int i = 0; i <= deg; ++i)
            if (ref.coeff(i) != computed.coeff(i)) out.push_back({m, i, ref.coeff(i), computed.coeff(i)});
    }
    return out;
}

} // namespace ddeq

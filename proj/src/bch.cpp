#include "roughforge/bch.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>

namespace roughforge {

namespace {

std::vector<PermutationRow> build_rows(int k) {
    std::vector<PermutationRow> rows;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        int d = 0;
        for (int i = 0; i + 1 < k; ++i)
            if (perm[i] > perm[i + 1]) ++d;
        Rational a = Rational((d % 2 == 0) ? 1 : -1) /
                     (Rational(k) * rational_binomial(k - 1, d));
        rows.push_back({perm, d, a, a.to_double()});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return rows;
}

}  // namespace

const std::vector<PermutationRow>& descent_coefficients(int k) {
    if (k < 1 || k > kBchCap)
        throw std::domain_error("descent table order outside [1, " + std::to_string(kBchCap) +
                                "]");
    static std::array<std::vector<PermutationRow>, kBchCap> tables;
    static std::once_flag built;
    std::call_once(built, [] {
        for (int j = 1; j <= kBchCap; ++j) tables[j - 1] = build_rows(j);
    });
    return tables[k - 1];
}

}  // namespace roughforge

#pragma once

// Canonical bases of modular functions with poles only at infinity.

#include <cstdint>
#include <string>
#include <vector>

#include "qmod/error.hpp"
#include "qmod/series.hpp"

namespace qmod {

enum class basis_kind { level1, genus0, genus1 };

inline std::string to_string(basis_kind k)
{
    switch (k) {
    case basis_kind::level1:
        return "level1";
    case basis_kind::genus0:
        return "genus0";
    case basis_kind::genus1:
        return "genus1";
    }
    return "unknown";
}

/// Family f_0, f_1, ..., f_M with f_m = q^-m + (prescribed tail), all known to a
/// common precision.
///
/// coeff(m, n) is b(m, n) at level 1, b_p(m, n) at genus-zero level p and
/// a_N(m, n) at genus-one level N. At genus one the element f_1 is zero and the
/// convention a_N(1, -1) = -1 is returned for it.
struct basis_table
{
    std::int64_t level = 1;
    basis_kind kind = basis_kind::level1;
    std::int64_t precision = 0;
    std::vector<int_series> elements;

    std::int64_t max_index() const noexcept { return static_cast<std::int64_t>(elements.size()) - 1; }

    const int_series& element(std::int64_t m) const
    {
        if (m < 0 || m > max_index())
            throw domain_error("basis index " + std::to_string(m) + " outside table (max "
                               + std::to_string(max_index()) + ", level " + std::to_string(level) + ")");
        return elements[static_cast<std::size_t>(m)];
    }

    integer coeff(std::int64_t m, std::int64_t n) const
    {
        if (kind == basis_kind::genus1 && m == 1 && n == -1)
            return -1;
        return element(m).coeff(n);
    }
};

/// Cancels the coefficients of q^e for lowest < e <= 0 in `s` using lower
/// elements (elements[k] = q^-k + ..., elements[0] = 1), most negative exponent
/// first. Exponents listed in `keep` are left alone.
inline int_series reduce_principal_part(int_series s, const std::vector<int_series>& elements, std::int64_t lowest,
                                        std::int64_t keep = 1)
{
    for (std::int64_t e = lowest + 1; e <= 0; ++e) {
        if (e == keep)
            continue;
        const integer c = s.coeff(e);
        if (c == 0)
            continue;
        const int_series& pivot = elements.at(static_cast<std::size_t>(-e));
        if (pivot.empty_window() || pivot.valuation() != e || pivot.leading_coefficient() != 1)
            throw zero_pivot("no monic basis element with leading term q^" + std::to_string(e));
        s.subtract_multiple(pivot, c);
    }
    return s;
}

} // namespace qmod

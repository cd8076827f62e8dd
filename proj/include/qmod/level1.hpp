#pragma once

// Level one: the basis j_m = q^-m + O(q), the weight-zero Hecke action on its
// coefficients, and the coefficients c_1(m, n) of j_{1,m} = j_m + 24 sigma_1(m).

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qmod/arith.hpp"
#include "qmod/basis.hpp"
#include "qmod/forms.hpp"

namespace qmod {

/// j_0 = 1, j_1 = j - 744, and j_m for m <= max_index from j_1 * j_{m-1}
/// with its principal part and constant cancelled. All elements are known to
/// `precision`.
inline basis_table build_j_basis(std::int64_t max_index, std::int64_t precision)
{
    if (max_index < 1 || precision < 1)
        throw domain_error("build_j_basis needs max_index >= 1 and precision >= 1");
    // j_1 * j_{m-1} loses one place of precision per step.
    const std::int64_t base = precision + max_index - 1;

    basis_table t;
    t.level = 1;
    t.kind = basis_kind::level1;
    t.precision = precision;
    t.elements.reserve(static_cast<std::size_t>(max_index) + 1);
    t.elements.push_back(int_series::one(base));
    int_series j1 = j_series(base);
    j1.subtract_multiple(int_series::one(base), integer(744));
    t.elements.push_back(std::move(j1));

    for (std::int64_t m = 2; m <= max_index; ++m) {
        int_series product = t.elements[1] * t.elements[static_cast<std::size_t>(m - 1)];
        t.elements.push_back(reduce_principal_part(std::move(product), t.elements, -m));
    }
    for (auto& e : t.elements) {
        if (e.precision() < precision)
            throw precision_exceeded(precision, e.precision());
        e = e.truncate(precision);
    }
    return t;
}

/// n -> b(mk, n) computed as sum_{d | (k, n)} (k/d) b(m, kn/d^2), valid for gcd(k, m) = 1.
class hecke_functional
{
public:
    hecke_functional(const basis_table& table, std::int64_t m, std::int64_t k) : table_(&table), m_(m), k_(k)
    {
        if (table.kind != basis_kind::level1)
            throw domain_error("hecke_t acts on a level-one table");
        if (m < 1 || k < 1)
            throw domain_error("hecke_t needs positive index and operator degree");
        if (std::gcd(m, k) != 1)
            throw not_coprime("T(" + std::to_string(k) + ") applied to j_" + std::to_string(m)
                              + " needs coprime index");
    }

    integer operator()(std::int64_t n) const
    {
        if (n < 1)
            throw domain_error("hecke_t coefficient needs n >= 1");
        integer s = 0;
        for (std::int64_t d : divisors(std::gcd(k_, n)))
            s += to_integer(k_ / d) * table_->coeff(m_, k_ * n / (d * d));
        return s;
    }

    std::int64_t index() const noexcept { return m_ * k_; }

private:
    const basis_table* table_;
    std::int64_t m_;
    std::int64_t k_;
};

inline hecke_functional hecke_t(const basis_table& table, std::int64_t m, std::int64_t k)
{
    return hecke_functional(table, m, k);
}

/// Coefficients c_1(m, n) of j_{1,m} = j_m + 24 sigma_1(m) read from level-one
/// tables. With several tables the first one covering (m, n) is used.
class level1_harmonic_coefficients
{
public:
    explicit level1_harmonic_coefficients(const basis_table& table) : level1_harmonic_coefficients({&table}) {}

    explicit level1_harmonic_coefficients(std::vector<const basis_table*> tables) : tables_(std::move(tables))
    {
        if (tables_.empty())
            throw domain_error("harmonic coefficients need at least one table");
        for (const auto* t : tables_)
            if (t->kind != basis_kind::level1)
                throw domain_error("harmonic coefficients need a level-one table");
    }

    /// c_1(m, n) for integers m >= 1.
    integer operator()(std::int64_t m, std::int64_t n) const
    {
        if (m < 1)
            return 0;
        if (n == 0)
            return 24 * sigma(1, m);
        return table_for(m, n).coeff(m, n);
    }

    /// c_1(m_num/m_den, n_num/n_den); zero unless both arguments are positive integers
    /// (n = 0 allowed).
    integer at_ratio(std::int64_t m_num, std::int64_t m_den, std::int64_t n_num, std::int64_t n_den) const
    {
        if (m_num % m_den != 0 || n_num % n_den != 0)
            return 0;
        const std::int64_t m = m_num / m_den, n = n_num / n_den;
        if (m < 1 || n < 0)
            return 0;
        return (*this)(m, n);
    }

    /// The series j_{1,m}.
    int_series series(std::int64_t m) const
    {
        int_series s = table_for(m, 0).element(m);
        if (m >= 1)
            s.subtract_multiple(int_series::one(s.precision()), -24 * sigma(1, m));
        return s;
    }

private:
    const basis_table& table_for(std::int64_t m, std::int64_t n) const
    {
        for (const auto* t : tables_)
            if (m <= t->max_index() && n < t->precision)
                return *t;
        return *tables_.back(); // reports the missing index or precision
    }

    std::vector<const basis_table*> tables_;
};

/// p c_1(m/p, n) - c_1(m, n/p): the integer value of p c_p(m, pn) - c_p(pm, n).
inline integer mock_combination(const level1_harmonic_coefficients& c1, std::int64_t p, std::int64_t m, std::int64_t n)
{
    if (!is_prime(p))
        throw domain_error("mock_combination needs a prime, got " + std::to_string(p));
    if (m < 1 || n < 1)
        throw domain_error("mock_combination needs positive m and n");
    return to_integer(p) * c1.at_ratio(m, p, n, 1) - c1.at_ratio(m, 1, n, p);
}

inline integer mock_combination(const basis_table& table, std::int64_t p, std::int64_t m, std::int64_t n)
{
    return mock_combination(level1_harmonic_coefficients(table), p, m, n);
}

} // namespace qmod

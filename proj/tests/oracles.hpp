#pragma once

// Slow, obviously-correct reference computations used as independent oracles.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qmod/series.hpp"

namespace oracle {

using qmod::integer;
using poly = std::vector<integer>; // coefficient of q^k at index k

inline poly schoolbook(const poly& a, const poly& b, std::size_t n)
{
    poly c(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

/// prod_{k>=1} (1 - q^{dk})^r for r >= 0, by repeated multiplication by binomials.
inline poly product_of_binomials(std::int64_t d, std::int64_t r, std::size_t n)
{
    poly c(n);
    c[0] = 1;
    for (std::int64_t rep = 0; rep < r; ++rep)
        for (std::size_t k = static_cast<std::size_t>(d); k < n; k += static_cast<std::size_t>(d))
            for (std::size_t i = n; i-- > k;)
                c[i] -= c[i - k];
    return c;
}

/// Power-series quotient a / b with b[0] = 1, by long division.
inline poly divide(const poly& a, const poly& b, std::size_t n)
{
    poly c(n);
    for (std::size_t i = 0; i < n; ++i) {
        integer s = i < a.size() ? a[i] : integer(0);
        for (std::size_t j = 1; j <= i && j < b.size(); ++j)
            s -= b[j] * c[i - j];
        c[i] = s;
    }
    return c;
}

/// Number of partitions of n with all parts <= k, by enumeration.
inline std::int64_t count_partitions(std::int64_t n, std::int64_t k)
{
    if (n == 0)
        return 1;
    std::int64_t s = 0;
    for (std::int64_t part = std::min(n, k); part >= 1; --part)
        s += count_partitions(n - part, part);
    return s;
}

inline integer trial_sigma(unsigned k, std::int64_t n)
{
    integer s = 0;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) {
            integer t = 1;
            for (unsigned e = 0; e < k; ++e)
                t *= static_cast<long>(d);
            s += t;
        }
    return s;
}

/// Coefficients of E_k (k = 4, 6) straight from the divisor sums.
inline poly eisenstein(int k, std::size_t n)
{
    const long c = k == 4 ? 240 : -504;
    poly e(n);
    e[0] = 1;
    for (std::size_t i = 1; i < n; ++i)
        e[i] = c * trial_sigma(static_cast<unsigned>(k - 1), static_cast<std::int64_t>(i));
    return e;
}

/// tau(1..n-1) (index 0 unused) from q prod (1-q^k)^24.
inline poly tau_table(std::size_t n)
{
    poly e = product_of_binomials(1, 24, n);
    poly t(n);
    for (std::size_t i = 1; i < n; ++i)
        t[i] = e[i - 1];
    return t;
}

/// Coefficients of j: entry i is the coefficient of q^{i-1}, from E4^3 / (q prod (1-q^k)^24).
inline poly j_coefficients(std::size_t n)
{
    const poly e4 = eisenstein(4, n);
    const poly cube = schoolbook(schoolbook(e4, e4, n), e4, n);
    return divide(cube, product_of_binomials(1, 24, n), n);
}

/// Number of projective points on y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p.
inline std::int64_t count_points(const std::vector<std::int64_t>& a, std::int64_t p)
{
    auto mod = [p](std::int64_t v) { return ((v % p) + p) % p; };
    std::int64_t count = 1;
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < p; ++y) {
            const std::int64_t lhs = mod(y * y + a[0] * x * y + a[2] * y);
            const std::int64_t rhs = mod(x * x * x + a[1] * x * x + a[3] * x + a[4]);
            if (lhs == rhs)
                ++count;
        }
    return count;
}

inline qmod::int_series random_series(std::mt19937_64& rng, int max_terms = 12, long bound = 1000)
{
    std::uniform_int_distribution<int> len(1, max_terms);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<long> coeff(-bound, bound);
    const int n = len(rng);
    const std::int64_t v = val(rng);
    std::vector<integer> c(static_cast<std::size_t>(n));
    for (auto& x : c)
        x = coeff(rng);
    return qmod::int_series(v, v + n, std::move(c));
}

/// A random series with leading coefficient +-1, so it is invertible over the integers.
inline qmod::int_series random_unit_series(std::mt19937_64& rng, int max_terms = 12, long bound = 1000)
{
    for (;;) {
        qmod::int_series s = random_series(rng, max_terms, bound);
        if (s.empty_window())
            continue;
        std::vector<integer> c(s.coefficients().begin(), s.coefficients().end());
        c[0] = (rng() & 1) ? 1 : -1;
        return qmod::int_series(s.valuation(), s.precision(), std::move(c));
    }
}

} // namespace oracle

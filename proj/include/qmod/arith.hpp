#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qmod {

using integer = mpz_class;
using rational = mpq_class;

inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n)
{
    std::vector<std::int64_t> out;
    if (n < 2)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i)
            composite[j] = true;
    }
    return out;
}

/// Positive divisors of n >= 1 in increasing order.
inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        small.push_back(d);
        if (d != n / d)
            large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// p-adic valuation of n != 0.
inline int valuation(std::int64_t n, std::int64_t p)
{
    int v = 0;
    n = n < 0 ? -n : n;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline integer ipow(std::int64_t base, unsigned long e)
{
    integer r;
    integer b = static_cast<long>(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

/// Exact small power; throws on overflow of int64.
inline std::int64_t ipow64(std::int64_t base, unsigned e)
{
    std::int64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (base != 0 && (r > INT64_MAX / (base < 0 ? -base : base)))
            throw std::overflow_error("ipow64 overflow");
        r *= base;
    }
    return r;
}

/// Legendre symbol (a/p) for an odd prime p.
inline int legendre(std::int64_t a, std::int64_t p)
{
    integer za = static_cast<long>(a), zp = static_cast<long>(p);
    return mpz_legendre(za.get_mpz_t(), zp.get_mpz_t());
}

/// Least non-negative residue of x modulo m > 0.
inline integer residue(const integer& x, const integer& m)
{
    integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Congruence to zero; a modulus of 0 means exact equality.
inline bool divisible(const integer& x, const integer& m)
{
    if (m == 0)
        return x == 0;
    return mpz_divisible_p(x.get_mpz_t(), m.get_mpz_t()) != 0;
}

inline integer to_integer(std::int64_t v) { return integer(static_cast<long>(v)); }

inline std::string to_decimal(const integer& x) { return x.get_str(10); }

} // namespace qmod

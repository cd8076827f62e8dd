#pragma once

// Classical q-series: Euler product, partitions, divisor sums, Eisenstein
// series, the discriminant and the j-invariant.

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <vector>

#include "qmod/arith.hpp"
#include "qmod/series.hpp"

namespace qmod {

namespace detail {

/// Write-once-per-size cache of one series; grows geometrically.
class series_cache
{
public:
    int_series get(std::int64_t precision, const std::function<int_series(std::int64_t)>& build)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!cached_ || cached_->precision() < precision) {
            const std::int64_t target = cached_ ? std::max(precision, cached_->precision() * 3 / 2) : precision;
            cached_ = build(target);
        }
        return cached_->truncate(precision);
    }

private:
    std::mutex mutex_;
    std::optional<int_series> cached_;
};

} // namespace detail

/// prod_{n>=1} (1 - q^n) by the pentagonal number theorem.
inline int_series euler_series(std::int64_t precision)
{
    if (precision < 1)
        throw domain_error("euler_series needs precision >= 1");
    std::vector<integer> c(static_cast<std::size_t>(precision));
    for (std::int64_t k = 0;; ++k) {
        bool placed = false;
        for (std::int64_t s : {k, -k}) {
            const std::int64_t e = s * (3 * s - 1) / 2;
            if (e < precision) {
                c[static_cast<std::size_t>(e)] = (k % 2 == 0) ? 1 : -1;
                placed = true;
            }
            if (k == 0)
                break;
        }
        if (!placed)
            break;
    }
    return int_series(0, precision, std::move(c));
}

/// prod_{n>=1} (1 - q^{dn}) known to `precision`.
inline int_series euler_series(std::int64_t precision, std::int64_t dilation)
{
    if (dilation == 1)
        return euler_series(precision);
    return upscale(euler_series(std::max<std::int64_t>(1, ceil_div(precision, dilation))), dilation).truncate(precision);
}

/// sum p(n) q^n = 1 / prod (1 - q^n).
inline int_series partition_series(std::int64_t precision)
{
    static detail::series_cache cache;
    return cache.get(precision, [](std::int64_t p) { return invert(euler_series(p)); });
}

inline integer partition(std::int64_t n)
{
    if (n < 0)
        return 0;
    return partition_series(n + 1).coeff(n);
}

/// sigma_k(n) for 1 <= n <= bound by a divisor sieve.
class divisor_sum_table
{
public:
    divisor_sum_table(unsigned k, std::int64_t bound) : k_(k), values_(static_cast<std::size_t>(bound) + 1)
    {
        for (std::int64_t d = 1; d <= bound; ++d) {
            const integer dk = ipow(d, k);
            for (std::int64_t m = d; m <= bound; m += d)
                values_[static_cast<std::size_t>(m)] += dk;
        }
    }

    unsigned power() const noexcept { return k_; }
    std::int64_t bound() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }

    const integer& operator()(std::int64_t n) const
    {
        if (n < 1 || n > bound())
            throw domain_error("divisor sum requested outside the sieved range");
        return values_[static_cast<std::size_t>(n)];
    }

private:
    unsigned k_;
    std::vector<integer> values_;
};

/// sum_{d | n} d^k.
inline integer sigma(unsigned k, std::int64_t n)
{
    if (n < 1)
        throw domain_error("sigma needs n >= 1");
    integer s = 0;
    for (std::int64_t d : divisors(n))
        s += ipow(d, k);
    return s;
}

/// E_4 or E_6, normalized with constant term 1.
inline int_series eisenstein(int k, std::int64_t precision)
{
    long scale;
    unsigned power;
    if (k == 4) {
        scale = 240;
        power = 3;
    } else if (k == 6) {
        scale = -504;
        power = 5;
    } else {
        throw domain_error("eisenstein series supported for k in {4, 6}, got " + std::to_string(k));
    }
    std::vector<integer> c(static_cast<std::size_t>(std::max<std::int64_t>(precision, 0)));
    if (!c.empty())
        c[0] = 1;
    if (precision > 1) {
        divisor_sum_table sig(power, precision - 1);
        for (std::int64_t n = 1; n < precision; ++n)
            c[static_cast<std::size_t>(n)] = scale * sig(n);
    }
    return int_series(0, precision, std::move(c));
}

/// Delta = q prod (1 - q^n)^24 = sum tau(n) q^n.
inline int_series delta_series(std::int64_t precision)
{
    if (precision < 2)
        throw domain_error("delta_series needs precision >= 2");
    static detail::series_cache cache;
    return cache.get(precision, [](std::int64_t p) { return pow(euler_series(p - 1), 24).shift(1); });
}

inline integer tau(std::int64_t n)
{
    if (n < 1)
        throw domain_error("tau needs n >= 1");
    return delta_series(n + 1).coeff(n);
}

/// j = E_4^3 / Delta = q^-1 + 744 + sum b(n) q^n.
inline int_series j_series(std::int64_t precision)
{
    if (precision < 1)
        throw domain_error("j_series needs precision >= 1");
    static detail::series_cache cache;
    return cache.get(precision, [](std::int64_t p) {
        const int_series e4 = eisenstein(4, p + 1);
        const int_series e4_cubed = e4 * e4 * e4;
        return (e4_cubed * invert(pow(euler_series(p + 1), 24))).shift(-1);
    });
}

} // namespace qmod

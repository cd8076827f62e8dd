#pragma once

// Eta quotients prod eta(d tau)^{r_d}, eta(tau) = q^{1/24} prod (1 - q^n).

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qmod/arith.hpp"
#include "qmod/error.hpp"
#include "qmod/forms.hpp"
#include "qmod/series.hpp"

namespace qmod {

struct eta_factor
{
    std::int64_t d; ///< argument multiplier, eta(d tau)
    std::int64_t r; ///< exponent

    friend bool operator==(const eta_factor&, const eta_factor&) = default;
};

class eta_quotient_spec
{
public:
    eta_quotient_spec() = default;
    eta_quotient_spec(std::initializer_list<eta_factor> f) : factors_(f) { validate(); }
    explicit eta_quotient_spec(std::vector<eta_factor> f) : factors_(std::move(f)) { validate(); }

    /// Parses "d:r,d:r,...", e.g. "1:2,11:2".
    static eta_quotient_spec parse(const std::string& text)
    {
        std::vector<eta_factor> f;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw domain_error("eta factor '" + item + "' is not of the form d:r");
            try {
                f.push_back({std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1))});
            } catch (const std::logic_error&) {
                throw domain_error("eta factor '" + item + "' is not of the form d:r");
            }
        }
        if (f.empty())
            throw domain_error("empty eta quotient");
        return eta_quotient_spec(std::move(f));
    }

    const std::vector<eta_factor>& factors() const noexcept { return factors_; }

    /// 24 times the q-order at infinity: sum d * r_d.
    std::int64_t order_times_24() const
    {
        std::int64_t s = 0;
        for (const auto& f : factors_)
            s += f.d * f.r;
        return s;
    }

    /// Integral q-order at infinity.
    std::int64_t valuation() const
    {
        const std::int64_t s = order_times_24();
        if (s % 24 != 0)
            throw fractional_valuation("eta quotient " + to_string() + " has q-order " + std::to_string(s) + "/24");
        return s / 24;
    }

    /// Twice the weight: sum r_d.
    std::int64_t weight_times_2() const
    {
        std::int64_t s = 0;
        for (const auto& f : factors_)
            s += f.r;
        return s;
    }

    /// Order of vanishing at the cusp of denominator c (c | N) on X_0(N),
    /// in the local parameter of that cusp.
    rational order_at_cusp(std::int64_t level, std::int64_t c) const
    {
        rational sum = 0;
        for (const auto& f : factors_) {
            const std::int64_t g = std::gcd(c, f.d);
            sum += rational(static_cast<long>(g * g * f.r), static_cast<long>(f.d));
        }
        const std::int64_t width_part = std::gcd(c, level / c) * c;
        rational out = rational(static_cast<long>(level), 24) * sum / rational(static_cast<long>(width_part));
        out.canonicalize();
        return out;
    }

    /// Weight-zero modular function on Gamma_0(level) with trivial character.
    bool is_modular_function(std::int64_t level) const
    {
        if (weight_times_2() != 0)
            return false;
        std::int64_t s_inf = 0, s_zero = 0;
        rational product = 1;
        for (const auto& f : factors_) {
            if (level % f.d != 0)
                return false;
            s_inf += f.d * f.r;
            s_zero += (level / f.d) * f.r;
            integer power = ipow(f.d, static_cast<unsigned long>(f.r < 0 ? -f.r : f.r));
            product *= f.r < 0 ? rational(1, power) : rational(power);
        }
        if (s_inf % 24 != 0 || s_zero % 24 != 0)
            return false;
        product.canonicalize();
        return mpz_perfect_square_p(product.get_num_mpz_t()) && mpz_perfect_square_p(product.get_den_mpz_t());
    }

    /// True when the quotient is a modular function on Gamma_0(level) whose only pole is at infinity.
    bool poles_only_at_infinity(std::int64_t level) const
    {
        if (!is_modular_function(level))
            return false;
        for (std::int64_t c : divisors(level))
            if (c != level && order_at_cusp(level, c) < 0)
                return false;
        return true;
    }

    std::string to_string() const
    {
        std::string s;
        for (const auto& f : factors_) {
            if (!s.empty())
                s += ",";
            s += std::to_string(f.d) + ":" + std::to_string(f.r);
        }
        return s;
    }

private:
    void validate() const
    {
        for (const auto& f : factors_)
            if (f.d < 1)
                throw domain_error("eta factor multiplier must be positive");
    }

    std::vector<eta_factor> factors_;
};

/// q-expansion of an eta quotient, known to `precision`.
inline int_series eta_quotient(const eta_quotient_spec& spec, std::int64_t precision)
{
    const std::int64_t v = spec.valuation();
    const std::int64_t n = precision - v;
    if (n <= 0)
        return int_series::zero(precision);
    int_series product = int_series::one(n);
    for (const auto& f : spec.factors()) {
        if (f.r == 0)
            continue;
        const int_series e = euler_series(n, f.d);
        product = product * (f.r > 0 ? pow(e, f.r) : pow(invert(e), -f.r));
    }
    return product.shift(v);
}

} // namespace qmod

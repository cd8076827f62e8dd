#pragma once

// Exact truncated Laurent series in q.
//
// A series is known exactly on the window [valuation, precision): every
// coefficient below the valuation is zero, every coefficient at or above the
// precision is unknown. Values are kept in canonical form (the stored leading
// coefficient is nonzero unless the window is empty) and are immutable from
// the outside; every operation returns a new value whose precision is the
// largest window on which the result is determined by the inputs.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qmod/arith.hpp"
#include "qmod/convolution.hpp"
#include "qmod/error.hpp"

namespace qmod {

enum class series_mode { integer, rational };

template <class Coeff>
concept series_coefficient = std::is_same_v<Coeff, integer> || std::is_same_v<Coeff, rational>;

template <series_coefficient Coeff>
class laurent_series
{
public:
    using coeff_type = Coeff;
    static constexpr series_mode mode = std::is_same_v<Coeff, integer> ? series_mode::integer : series_mode::rational;

    /// The zero series with an empty known window at q^0.
    laurent_series() = default;

    /// Coefficients for exponents valuation, valuation+1, ...; missing entries up to
    /// `precision` are zero, surplus entries are dropped.
    laurent_series(std::int64_t valuation, std::int64_t precision, std::vector<Coeff> coeffs)
        : valuation_(valuation), precision_(precision), coeffs_(std::move(coeffs))
    {
        if (precision < valuation)
            throw domain_error("series precision below valuation");
        coeffs_.resize(static_cast<std::size_t>(precision - valuation));
        normalize();
    }

    static laurent_series zero(std::int64_t precision)
    {
        laurent_series s;
        s.valuation_ = s.precision_ = precision;
        return s;
    }

    static laurent_series monomial(Coeff c, std::int64_t exponent, std::int64_t precision)
    {
        if (exponent >= precision)
            return zero(precision);
        return laurent_series(exponent, precision, {std::move(c)});
    }

    static laurent_series one(std::int64_t precision) { return monomial(Coeff(1), 0, precision); }

    /// Builds q^v * (c0 + c1 q + ...) known to `precision`, from a brace list.
    static laurent_series from_terms(std::int64_t valuation, std::int64_t precision,
                                     std::initializer_list<long> terms)
    {
        std::vector<Coeff> c;
        for (long t : terms)
            c.emplace_back(t);
        return laurent_series(valuation, precision, std::move(c));
    }

    std::int64_t valuation() const noexcept { return valuation_; }
    std::int64_t precision() const noexcept { return precision_; }
    bool empty_window() const noexcept { return valuation_ == precision_; }
    /// Number of known coefficients from the valuation up.
    std::int64_t relative_precision() const noexcept { return precision_ - valuation_; }

    /// Exact coefficient of q^n; zero below the valuation.
    Coeff coeff(std::int64_t n) const
    {
        if (n >= precision_)
            throw precision_exceeded(n, precision_);
        if (n < valuation_)
            return Coeff(0);
        return coeffs_[static_cast<std::size_t>(n - valuation_)];
    }

    /// Reference access inside the known window (no bounds promotion for n < valuation).
    const Coeff& at(std::int64_t n) const { return coeffs_.at(static_cast<std::size_t>(n - valuation_)); }

    const Coeff& leading_coefficient() const
    {
        if (empty_window())
            throw domain_error("leading coefficient of a series with empty window");
        return coeffs_.front();
    }

    std::span<const Coeff> coefficients() const noexcept { return coeffs_; }

    bool is_zero() const
    {
        return empty_window();
    }

    /// Same series known to min(precision, new_precision).
    laurent_series truncate(std::int64_t new_precision) const
    {
        if (new_precision >= precision_)
            return *this;
        if (new_precision <= valuation_)
            return zero(new_precision);
        laurent_series s = *this;
        s.coeffs_.resize(static_cast<std::size_t>(new_precision - valuation_));
        s.precision_ = new_precision;
        return s;
    }

    /// Multiplication by q^k.
    laurent_series shift(std::int64_t k) const
    {
        laurent_series s = *this;
        s.valuation_ += k;
        s.precision_ += k;
        return s;
    }

    /// In-place this -= c * other, on the common window.
    laurent_series& subtract_multiple(const laurent_series& other, const Coeff& c)
    {
        if (c == 0) {
            *this = truncate(std::min(precision_, other.precision_));
            return *this;
        }
        const std::int64_t p = std::min(precision_, other.precision_);
        const std::int64_t v = std::min(valuation_, other.valuation_);
        if (p <= v) {
            *this = zero(p);
            return *this;
        }
        widen(v, p);
        for (std::int64_t e = std::max(other.valuation_, v); e < p; ++e) {
            auto& dst = coeffs_[static_cast<std::size_t>(e - valuation_)];
            const auto& src = other.coeffs_[static_cast<std::size_t>(e - other.valuation_)];
            if constexpr (std::is_same_v<Coeff, integer>)
                mpz_submul(dst.get_mpz_t(), src.get_mpz_t(), c.get_mpz_t());
            else
                dst -= src * c;
        }
        normalize();
        return *this;
    }

    laurent_series& operator+=(const laurent_series& o) { return subtract_multiple(o, Coeff(-1)); }
    laurent_series& operator-=(const laurent_series& o) { return subtract_multiple(o, Coeff(1)); }

    laurent_series& operator*=(const Coeff& c)
    {
        if (c == 0) {
            *this = zero(precision_);
            return *this;
        }
        for (auto& x : coeffs_)
            x *= c;
        return *this;
    }

    laurent_series operator-() const
    {
        laurent_series s = *this;
        for (auto& x : s.coeffs_)
            x = -x;
        return s;
    }

    /// Human-readable rendering, e.g. "q^-1 + 744 + 196884*q + O(q^2)".
    std::string to_string(std::size_t max_terms = 12) const
    {
        std::ostringstream os;
        std::size_t shown = 0;
        for (std::int64_t e = valuation_; e < precision_ && shown < max_terms; ++e) {
            const Coeff& c = at(e);
            if (c == 0)
                continue;
            if (shown > 0)
                os << (c < 0 ? " - " : " + ");
            else if (c < 0)
                os << "-";
            Coeff mag = c < 0 ? Coeff(-c) : c;
            const bool unit = mag == 1;
            if (e == 0 || !unit)
                os << mag;
            if (e != 0) {
                if (!unit)
                    os << "*";
                os << "q";
                if (e != 1)
                    os << "^" << e;
            }
            ++shown;
        }
        if (shown > 0)
            os << " + ";
        os << "O(q^" << precision_ << ")";
        return os.str();
    }

private:
    template <series_coefficient>
    friend class laurent_series;

    void normalize()
    {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0)
            ++lead;
        if (lead == 0)
            return;
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        valuation_ += static_cast<std::int64_t>(lead);
    }

    /// Re-expresses storage on [v, p) with v <= valuation_, p <= precision_.
    void widen(std::int64_t v, std::int64_t p)
    {
        if (v < valuation_) {
            coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(valuation_ - v), Coeff(0));
            valuation_ = v;
        }
        precision_ = p;
        coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, p - valuation_)));
    }

    std::int64_t valuation_ = 0;
    std::int64_t precision_ = 0;
    std::vector<Coeff> coeffs_;
};

using int_series = laurent_series<integer>;
using rat_series = laurent_series<rational>;

/// Equality on the overlap of the two known windows.
template <class C>
bool operator==(const laurent_series<C>& a, const laurent_series<C>& b)
{
    const std::int64_t lo = std::min(a.valuation(), b.valuation());
    const std::int64_t hi = std::min(a.precision(), b.precision());
    for (std::int64_t e = lo; e < hi; ++e)
        if (a.coeff(e) != b.coeff(e))
            return false;
    return true;
}

/// Stricter equality: same known window and same coefficients.
template <class C>
bool identical(const laurent_series<C>& a, const laurent_series<C>& b)
{
    return a.precision() == b.precision() && a == b;
}

template <class C>
laurent_series<C> operator+(laurent_series<C> a, const laurent_series<C>& b)
{
    a += b;
    return a;
}

template <class C>
laurent_series<C> operator-(laurent_series<C> a, const laurent_series<C>& b)
{
    a -= b;
    return a;
}

template <class C>
laurent_series<C> operator*(laurent_series<C> a, const C& c)
{
    a *= c;
    return a;
}

template <class C>
laurent_series<C> operator*(const C& c, laurent_series<C> a)
{
    a *= c;
    return a;
}

/// Cauchy product, known on [v_a + v_b, min(P_a + v_b, P_b + v_a)).
template <class C>
laurent_series<C> operator*(const laurent_series<C>& a, const laurent_series<C>& b)
{
    const std::int64_t v = a.valuation() + b.valuation();
    const std::int64_t p = std::min(a.precision() + b.valuation(), b.precision() + a.valuation());
    if (p <= v)
        return laurent_series<C>::zero(p);
    const auto n = static_cast<std::size_t>(p - v);
    return laurent_series<C>(v, p, detail::convolve<C>(a.coefficients(), b.coefficients(), n));
}

inline rat_series to_rational(const int_series& s)
{
    std::vector<rational> c(s.coefficients().begin(), s.coefficients().end());
    return rat_series(s.valuation(), s.precision(), std::move(c));
}

/// Converts back to integer mode; every coefficient must be integral.
inline int_series to_integer(const rat_series& s)
{
    std::vector<integer> c;
    c.reserve(s.coefficients().size());
    std::int64_t e = s.valuation();
    for (const auto& x : s.coefficients()) {
        if (x.get_den() != 1)
            throw non_integral("coefficient " + x.get_str() + " of q^" + std::to_string(e) + " is not an integer");
        c.push_back(x.get_num());
        ++e;
    }
    return int_series(s.valuation(), s.precision(), std::move(c));
}

inline rat_series operator+(const int_series& a, const rat_series& b) { return to_rational(a) + b; }
inline rat_series operator+(const rat_series& a, const int_series& b) { return a + to_rational(b); }
inline rat_series operator-(const int_series& a, const rat_series& b) { return to_rational(a) - b; }
inline rat_series operator-(const rat_series& a, const int_series& b) { return a - to_rational(b); }
inline rat_series operator*(const int_series& a, const rat_series& b) { return to_rational(a) * b; }
inline rat_series operator*(const rat_series& a, const int_series& b) { return a * to_rational(b); }

namespace detail {

template <class C>
bool is_unit(const C& c)
{
    if constexpr (std::is_same_v<C, integer>)
        return c == 1 || c == -1;
    else
        return c != 0;
}

/// Inverse of a power series with unit constant term, first n coefficients.
template <class C>
std::vector<C> invert_power_series(std::span<const C> a, std::size_t n)
{
    const C lead_inv = C(1) / C(a[0]);
    std::vector<C> inv(n);
    if (n == 0)
        return inv;
    inv[0] = lead_inv;

    std::size_t nonzero = 0;
    for (std::size_t i = 1; i < std::min(a.size(), n); ++i)
        nonzero += a[i] != 0;

    const bool sparse = nonzero * 8 < std::min(a.size(), n);
    if constexpr (std::is_same_v<C, integer>) {
        if (!sparse && n > 4 * kronecker_threshold.load(std::memory_order_relaxed)) {
            // Newton iteration g <- g (2 - a g), doubling the known length.
            std::vector<C> g{lead_inv};
            std::size_t known = 1;
            while (known < n) {
                const std::size_t next = std::min(2 * known, n);
                auto ag = convolve<C>(a.first(std::min(a.size(), next)), std::span<const C>(g), next);
                for (auto& x : ag)
                    x = -x;
                ag[0] += 2;
                g = convolve<C>(std::span<const C>(g), std::span<const C>(ag), next);
                known = next;
            }
            return g;
        }
    }

    std::vector<std::size_t> support;
    for (std::size_t i = 1; i < std::min(a.size(), n); ++i)
        if (a[i] != 0)
            support.push_back(i);
    for (std::size_t k = 1; k < n; ++k) {
        C acc = 0;
        for (std::size_t i : support) {
            if (i > k)
                break;
            if constexpr (std::is_same_v<C, integer>)
                mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), inv[k - i].get_mpz_t());
            else
                acc += a[i] * inv[k - i];
        }
        inv[k] = -acc * lead_inv;
    }
    return inv;
}

} // namespace detail

/// Multiplicative inverse; the leading coefficient must be a unit in the active mode.
template <class C>
laurent_series<C> invert(const laurent_series<C>& a)
{
    if (a.empty_window())
        throw non_unit_leading("cannot invert a series with no known nonzero coefficient");
    if (!detail::is_unit(a.leading_coefficient()))
        throw non_unit_leading("leading coefficient " + a.leading_coefficient().get_str()
                               + " is not a unit in integer mode");
    const std::int64_t v = a.valuation();
    const auto n = static_cast<std::size_t>(a.relative_precision());
    return laurent_series<C>(-v, -v + static_cast<std::int64_t>(n), detail::invert_power_series(a.coefficients(), n));
}

template <class C>
laurent_series<C> pow(const laurent_series<C>& a, std::int64_t k)
{
    if (k < 0)
        return pow(invert(a), -k);
    if (a.empty_window()) {
        if (k == 0)
            return laurent_series<C>::one(a.relative_precision());
        return laurent_series<C>::zero(k * a.precision());
    }
    const std::int64_t v = a.valuation();
    const laurent_series<C> unit = a.shift(-v);
    laurent_series<C> result = laurent_series<C>::one(unit.precision());
    laurent_series<C> base = unit;
    std::int64_t e = k;
    while (e > 0) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return result.shift(k * v);
}

/// Substitution q -> q^k.
template <class C>
laurent_series<C> upscale(const laurent_series<C>& a, std::int64_t k)
{
    if (k < 1)
        throw domain_error("upscale factor must be positive");
    if (k == 1)
        return a;
    const std::int64_t v = a.valuation() * k;
    const std::int64_t p = a.precision() * k;
    std::vector<C> c(static_cast<std::size_t>(p - v));
    std::size_t i = 0;
    for (const auto& x : a.coefficients()) {
        c[i * static_cast<std::size_t>(k)] = x;
        ++i;
    }
    return laurent_series<C>(v, p, std::move(c));
}

/// Decimation by k: coefficient of q^n becomes a(kn). No primality requirement.
template <class C>
laurent_series<C> decimate(const laurent_series<C>& a, std::int64_t k)
{
    if (k < 1)
        throw domain_error("decimation factor must be positive");
    const std::int64_t v = ceil_div(a.valuation(), k);
    const std::int64_t p = ceil_div(a.precision(), k);
    std::vector<C> c;
    c.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, p - v)));
    for (std::int64_t n = v; n < p; ++n)
        c.push_back(a.coeff(n * k));
    return laurent_series<C>(std::min(v, p), p, std::move(c));
}

/// The U_p operator on q-expansions: a(n) -> a(pn) for a prime p.
template <class C>
laurent_series<C> u_p(const laurent_series<C>& a, std::int64_t p)
{
    if (!is_prime(p))
        throw domain_error("U_p requires a prime, got " + std::to_string(p));
    return decimate(a, p);
}

/// The derivation q d/dq.
template <class C>
laurent_series<C> theta(const laurent_series<C>& a)
{
    std::vector<C> c(a.coefficients().begin(), a.coefficients().end());
    std::int64_t e = a.valuation();
    for (auto& x : c)
        x *= static_cast<long>(e++);
    return laurent_series<C>(a.valuation(), a.precision(), std::move(c));
}

} // namespace qmod

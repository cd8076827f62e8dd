#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmod {

/// Base class of every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A coefficient was requested at or beyond the known precision of a series.
class precision_exceeded : public error
{
public:
    precision_exceeded(std::int64_t exponent, std::int64_t precision)
        : error("coefficient of q^" + std::to_string(exponent) + " requested but series is only known below q^"
                + std::to_string(precision)),
          exponent_(exponent), precision_(precision)
    {
    }
    std::int64_t exponent() const noexcept { return exponent_; }
    std::int64_t precision() const noexcept { return precision_; }

private:
    std::int64_t exponent_;
    std::int64_t precision_;
};

/// Inversion in integer mode needs a leading coefficient of +-1.
class non_unit_leading : public error
{
public:
    using error::error;
};

/// An eta quotient whose q-order is not an integer.
class fractional_valuation : public error
{
public:
    using error::error;
};

class not_coprime : public error
{
public:
    using error::error;
};

/// A parameter outside the supported domain (unsupported prime, non-genus-one level, ...).
class domain_error : public error
{
public:
    using error::error;
};

/// A value that must be integral picked up a denominator.
class non_integral : public error
{
public:
    using error::error;
};

class seed_missing : public error
{
public:
    using error::error;
};

/// A data file (seed, model table) that exists but cannot be parsed.
class malformed_input : public error
{
public:
    using error::error;
};

class eigenform_sanity_failed : public error
{
public:
    using error::error;
};

class level_unavailable : public error
{
public:
    using error::error;
};

class zero_pivot : public error
{
public:
    using error::error;
};

class inconsistent_at_exponent : public error
{
public:
    explicit inconsistent_at_exponent(std::int64_t exponent)
        : error("model and newform disagree at q^" + std::to_string(exponent)), exponent_(exponent)
    {
    }
    std::int64_t exponent() const noexcept { return exponent_; }

private:
    std::int64_t exponent_;
};

class no_model_found : public error
{
public:
    using error::error;
};

/// Carries every surviving candidate as (a1,a2,a3,a4,a6) tuples.
class ambiguous_model : public error
{
public:
    ambiguous_model(const std::string& what, std::vector<std::vector<std::int64_t>> candidates)
        : error(what), candidates_(std::move(candidates))
    {
    }
    const std::vector<std::vector<std::int64_t>>& candidates() const noexcept { return candidates_; }

private:
    std::vector<std::vector<std::int64_t>> candidates_;
};

} // namespace qmod

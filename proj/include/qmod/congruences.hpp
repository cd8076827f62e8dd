#pragma once

// One checker per divisibility statement. Each computes exact integers, reduces
// at the end, and returns a congruence_report covering the whole grid.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qmod/arith.hpp"
#include "qmod/basis.hpp"
#include "qmod/error.hpp"
#include "qmod/forms.hpp"
#include "qmod/genus0.hpp"
#include "qmod/genus1.hpp"
#include "qmod/level1.hpp"
#include "qmod/report.hpp"

namespace qmod {

/// Bases shared between suites. A request is served by any stored table that
/// covers it; otherwise a table of exactly the requested shape is built.
class basis_cache
{
public:
    std::shared_ptr<const basis_table> level1(std::int64_t max_index, std::int64_t precision)
    {
        return get({basis_kind::level1, 1, ""}, max_index, precision,
                   [&] { return build_j_basis(max_index, precision); });
    }

    std::shared_ptr<const basis_table> genus0(std::int64_t p, std::int64_t max_index, std::int64_t precision)
    {
        require_genus0_prime(p);
        return get({basis_kind::genus0, p, ""}, max_index, precision,
                   [&] { return build_genus0_basis(p, max_index, precision); });
    }

    /// Throws level_unavailable when the level needs a seed file that is absent.
    std::shared_ptr<const basis_table> genus1(std::int64_t level, std::int64_t max_index, std::int64_t precision,
                                              const std::filesystem::path& data_dir = default_data_dir())
    {
        require_genus_one_level(level);
        auto pipeline = pipeline_for(level, data_dir);
        try {
            return get({basis_kind::genus1, level, data_dir.string()}, max_index, precision,
                       [&] { return pipeline->basis(max_index, precision); });
        } catch (const seed_missing& e) {
            throw level_unavailable("level " + std::to_string(level) + " unavailable: " + e.what());
        }
    }

private:
    using key = std::tuple<basis_kind, std::int64_t, std::string>;

    struct slot
    {
        std::mutex mutex;
        std::vector<std::shared_ptr<const basis_table>> tables;
    };

    template <typename Build>
    std::shared_ptr<const basis_table> get(const key& k, std::int64_t max_index, std::int64_t precision, Build&& build)
    {
        std::shared_ptr<slot> s;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto& entry = slots_[k];
            if (!entry)
                entry = std::make_shared<slot>();
            s = entry;
        }
        std::lock_guard<std::mutex> lock(s->mutex);
        for (const auto& t : s->tables)
            if (t->max_index() >= max_index && t->precision >= precision)
                return t;
        auto t = std::make_shared<const basis_table>(build());
        s->tables.push_back(t);
        return t;
    }

    std::shared_ptr<genus1_pipeline> pipeline_for(std::int64_t level, const std::filesystem::path& dir)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto& p = pipelines_[{level, dir.string()}];
        if (!p)
            p = std::make_shared<genus1_pipeline>(level, dir);
        return p;
    }

    std::mutex mutex_;
    std::map<key, std::shared_ptr<slot>> slots_;
    std::map<std::pair<std::int64_t, std::string>, std::shared_ptr<genus1_pipeline>> pipelines_;
};

inline basis_cache& shared_basis_cache()
{
    static basis_cache cache;
    return cache;
}

namespace detail {

inline void require_nonnegative(std::int64_t v, const char* name)
{
    if (v < 0)
        throw domain_error(std::string(name) + " must be non-negative");
}

inline void require_positive(std::int64_t v, const char* name)
{
    if (v < 1)
        throw domain_error(std::string(name) + " must be positive");
}

inline std::int64_t checked_pow(std::int64_t p, std::int64_t e) { return ipow64(p, static_cast<unsigned>(e)); }

} // namespace detail

// ---------------------------------------------------------------------------
// Partitions and tau

inline congruence_report check_partition_ramanujan(std::int64_t n_max, std::int64_t precision = 0)
{
    detail::require_nonnegative(n_max, "nMax");
    congruence_report r;
    r.suite = "partition";
    r.params["nMax"] = n_max;
    {
        report_timer timer(r);
        r.precision = std::max(11 * n_max + 7, precision);
        const int_series p = partition_series(r.precision);
        for (auto [a, b] : {std::pair{5, 4}, std::pair{7, 5}, std::pair{11, 6}})
            for (std::int64_t n = 0; n <= n_max; ++n)
                r.expect_divisible(p.coeff(a * n + b), a, {{"modulus", a}, {"n", n}});
    }
    return r;
}

inline congruence_report check_tau(std::int64_t n_max, std::int64_t p_max, std::int64_t a_max, std::int64_t precision = 0)
{
    detail::require_nonnegative(n_max, "nMax");
    detail::require_nonnegative(p_max, "pMax");
    detail::require_nonnegative(a_max, "aMax");
    congruence_report r;
    r.suite = "tau";
    r.params["nMax"] = n_max;
    r.params["pMax"] = p_max;
    r.params["aMax"] = a_max;
    {
        report_timer timer(r);
        const auto primes = primes_up_to(p_max);
        std::int64_t need = n_max;
        if (!primes.empty())
            need = std::max(need, detail::checked_pow(primes.back(), a_max + 2));
        r.precision = std::max(need + 1, std::max<std::int64_t>(precision, 2));
        const int_series delta = delta_series(r.precision);
        auto t = [&](std::int64_t n) { return delta.coeff(n); };
        for (std::int64_t n = 1; n <= n_max; ++n)
            r.expect_divisible(t(n) - sigma(11, n), 691, {{"statement", "tau mod 691"}, {"n", n}});
        for (std::int64_t p : primes) {
            const integer p11 = ipow(p, 11);
            for (std::int64_t a = 0; a <= a_max; ++a) {
                const integer lo = a == 0 ? integer(1) : t(detail::checked_pow(p, a));
                const integer diff = t(detail::checked_pow(p, a + 2)) - (t(p) * t(detail::checked_pow(p, a + 1)) - p11 * lo);
                r.expect_divisible(diff, 0, {{"statement", "hecke recursion"}, {"p", p}, {"alpha", a}});
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Coefficients of j

/// 2^{3a+8} 3^{2b+3} 5^{c+1} 7^d restricted to the primes dividing k.
inline integer lehner_modulus(std::int64_t k)
{
    integer mod = 1;
    if (int v = valuation(k, 2))
        mod *= ipow(2, 3 * v + 8);
    if (int v = valuation(k, 3))
        mod *= ipow(3, 2 * v + 3);
    if (int v = valuation(k, 5))
        mod *= ipow(5, v + 1);
    if (int v = valuation(k, 7))
        mod *= ipow(7, v);
    return mod;
}

inline congruence_report check_lehner_small(std::int64_t bound, std::int64_t precision = 0)
{
    detail::require_nonnegative(bound, "bound");
    congruence_report r;
    r.suite = "lehner";
    r.params["bound"] = bound;
    {
        report_timer timer(r);
        r.precision = std::max({bound + 1, precision, std::int64_t{1}});
        const int_series j = j_series(r.precision);
        struct prime_rule
        {
            std::int64_t p;
            int slope, offset;
        };
        constexpr std::array<prime_rule, 4> rules{{{2, 3, 8}, {3, 2, 3}, {5, 1, 1}, {7, 1, 0}}};
        for (std::int64_t k = 2; k <= bound; ++k) {
            int dividing = 0;
            const integer b = j.coeff(k);
            for (const auto& rule : rules) {
                const int v = valuation(k, rule.p);
                if (v == 0)
                    continue;
                ++dividing;
                r.expect_divisible(b, ipow(rule.p, rule.slope * v + rule.offset),
                                   {{"statement", "single prime"}, {"p", rule.p}, {"argument", k}});
            }
            if (dividing >= 2)
                r.expect_divisible(b, lehner_modulus(k), {{"statement", "joint"}, {"argument", k}});
        }
        // The classical prime-power families.
        for (std::int64_t a = 1; detail::checked_pow(5, a + 1) <= bound; ++a)
            for (std::int64_t n = 1; detail::checked_pow(5, a + 1) * n <= bound; ++n)
                r.expect_divisible(j.coeff(detail::checked_pow(5, a + 1) * n), ipow(5, a),
                                   {{"statement", "b(5^(a+1) n) mod 5^a"}, {"a", a}, {"n", n}});
        for (std::int64_t a = 1; detail::checked_pow(7, a) <= bound; ++a)
            for (std::int64_t n = 1; detail::checked_pow(7, a) * n <= bound; ++n)
                r.expect_divisible(j.coeff(detail::checked_pow(7, a) * n), ipow(7, a),
                                   {{"statement", "b(7^a n) mod 7^a"}, {"a", a}, {"n", n}});
        for (std::int64_t n = 1; 121 * n <= bound; ++n)
            r.expect_divisible(j.coeff(121 * n), 121, {{"statement", "b(121 n) mod 121"}, {"n", n}});
    }
    return r;
}

inline congruence_report check_atkin_11(std::int64_t a_max, std::int64_t bound, std::int64_t precision = 0)
{
    detail::require_nonnegative(a_max, "aMax");
    detail::require_nonnegative(bound, "bound");
    congruence_report r;
    r.suite = "atkin11";
    r.params["aMax"] = a_max;
    r.params["bound"] = bound;
    {
        report_timer timer(r);
        std::int64_t need = bound;
        if (a_max >= 1)
            need = std::max(need, detail::checked_pow(11, a_max));
        r.precision = std::max({need + 1, precision, std::int64_t{1}});
        const int_series j = j_series(r.precision);
        for (std::int64_t a = 1; a <= a_max; ++a) {
            const std::int64_t q = detail::checked_pow(11, a);
            for (std::int64_t n = 1; q * n <= bound; ++n)
                r.expect_divisible(j.coeff(q * n), ipow(11, a), {{"statement", "divisibility"}, {"alpha", a}, {"n", n}});
            r.expect_not_divisible(j.coeff(q), ipow(11, a + 1), {{"statement", "sharpness"}, {"alpha", a}});
        }
    }
    return r;
}

inline congruence_report check_thm_b11(std::int64_t alpha_max, std::int64_t beta_max, std::int64_t m_max,
                                       std::int64_t n_max, std::int64_t precision = 0,
                                       basis_cache& cache = shared_basis_cache())
{
    detail::require_nonnegative(alpha_max, "alphaMax");
    detail::require_positive(beta_max, "betaMax");
    detail::require_positive(m_max, "mMax");
    detail::require_positive(n_max, "nMax");
    congruence_report r;
    r.suite = "thm-b11";
    r.params["alphaMax"] = alpha_max;
    r.params["betaMax"] = beta_max;
    r.params["mMax"] = m_max;
    r.params["nMax"] = n_max;
    {
        report_timer timer(r);
        const std::int64_t top = std::min(alpha_max, beta_max - 1);
        r.precision = std::max(detail::checked_pow(11, beta_max) * n_max + 1, precision);
        const auto table = cache.level1(detail::checked_pow(11, std::max<std::int64_t>(top, 0)) * m_max, r.precision);
        for (std::int64_t a = 0; a <= top; ++a)
            for (std::int64_t b = a + 1; b <= beta_max; ++b)
                for (std::int64_t m = 1; m <= m_max; ++m) {
                    if (m % 11 == 0) {
                        ++r.skipped;
                        continue;
                    }
                    for (std::int64_t n = 1; n <= n_max; ++n)
                        r.expect_divisible(
                            table->coeff(detail::checked_pow(11, a) * m, detail::checked_pow(11, b) * n), ipow(11, b - a),
                            {{"alpha", a}, {"beta", b}, {"m", m}, {"n", n}});
                }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Genus-zero levels

/// Exponent of p in the modulus: slope * (beta - alpha) + offset.
inline std::pair<int, int> aj_modulus_shape(std::int64_t p)
{
    switch (p) {
    case 2:
        return {3, 8};
    case 3:
        return {2, 3};
    case 5:
        return {1, 1};
    case 7:
        return {1, 0};
    default:
        throw domain_error("unsupported prime " + std::to_string(p) + "; expected 2, 3, 5 or 7");
    }
}

inline congruence_report check_aj(std::int64_t p, std::int64_t alpha_max, std::int64_t beta_max, std::int64_t m_max,
                                  std::int64_t n_max, std::int64_t precision = 0,
                                  basis_cache& cache = shared_basis_cache())
{
    const auto [slope, offset] = aj_modulus_shape(p);
    detail::require_nonnegative(alpha_max, "alphaMax");
    detail::require_positive(beta_max, "betaMax");
    detail::require_positive(m_max, "mMax");
    detail::require_positive(n_max, "nMax");
    congruence_report r;
    r.suite = "aj";
    r.params["p"] = p;
    r.params["alphaMax"] = alpha_max;
    r.params["betaMax"] = beta_max;
    r.params["mMax"] = m_max;
    r.params["nMax"] = n_max;
    {
        report_timer timer(r);
        const std::int64_t top = std::min(alpha_max, beta_max - 1);
        r.precision = std::max(detail::checked_pow(p, beta_max) * n_max + 1, precision);
        const auto table = cache.genus0(p, detail::checked_pow(p, std::max<std::int64_t>(top, 0)) * m_max, r.precision);
        for (std::int64_t a = 0; a <= top; ++a)
            for (std::int64_t b = a + 1; b <= beta_max; ++b)
                for (std::int64_t m = 1; m <= m_max; ++m) {
                    if (m % p == 0) {
                        ++r.skipped;
                        continue;
                    }
                    for (std::int64_t n = 1; n <= n_max; ++n)
                        r.expect_divisible(
                            table->coeff(detail::checked_pow(p, a) * m, detail::checked_pow(p, b) * n),
                            ipow(p, slope * (b - a) + offset), {{"p", p}, {"alpha", a}, {"beta", b}, {"m", m}, {"n", n}});
                }
    }
    return r;
}

/// One grid point of Griffin's congruences in cleared form:
/// multiplier * b(p^alpha m, p^beta n) == rhs (mod modulus).
struct griffin_branch
{
    std::string name;
    integer multiplier = 1;
    integer rhs;
    integer modulus;
};

/// `corrected` differs from the statement as usually printed in two places,
/// both forced by the coefficients of j: the p = 7 branches with gamma > 0
/// carry a minus sign, and the p = 3 gamma = 0 branch needs mn == 1 (mod 3)
/// (b(m, n) is prime to 3 when mn == 2). `as_printed` keeps the printed text.
enum class griffin_reading { corrected, as_printed };

/// The branch for (p, alpha, beta, m, n), or nothing when its side condition fails.
/// m and n must be prime to p.
inline std::optional<griffin_branch> griffin_select(std::int64_t p, std::int64_t alpha, std::int64_t beta, std::int64_t m,
                                                    std::int64_t n,
                                                    griffin_reading reading = griffin_reading::corrected)
{
    const bool printed = reading == griffin_reading::as_printed;
    const std::int64_t g = alpha > beta ? alpha - beta : beta - alpha;
    const unsigned ug = static_cast<unsigned>(g);
    const std::string order = beta > alpha ? "beta>alpha" : (alpha > beta ? "alpha>beta" : "gamma=0");
    const integer M = to_integer(m), N = to_integer(n);
    griffin_branch br;
    switch (p) {
    case 2: {
        const integer base = M * sigma(7, m) * sigma(7, n);
        if (g > 0) {
            const unsigned k = beta > alpha ? 3 : 4;
            br = {order, 1, -ipow(2, k * ug + 8) * ipow(3, ug - 1) * base, ipow(2, k * ug + 13)};
        } else {
            switch ((m * n) % 8) {
            case 1:
                br = {"gamma=0, mn=1 mod 8", 1, 20 * base, ipow(2, 7)};
                break;
            case 3: // b == (1/2) m s1(m) s1(n) mod 2^3, doubled
                br = {"gamma=0, mn=3 mod 8", 2, M * sigma(1, m) * sigma(1, n), ipow(2, 4)};
                break;
            case 5:
                br = {"gamma=0, mn=5 mod 8", 1, -12 * base, ipow(2, 8)};
                break;
            default:
                return std::nullopt;
            }
        }
        break;
    }
    case 3: {
        // sigma_1(m) sigma_1(n) / n: both sides multiplied by n, a unit mod 3.
        const integer base = sigma(1, m) * sigma(1, n);
        const int sign = (m * n) % 3 == 1 ? -1 : 1;
        if (g > 0) {
            const unsigned k = beta > alpha ? 2 : 3;
            br = {order, N, sign * ipow(3, k * ug + 3) * ipow(10, ug - 1) * base, ipow(3, k * ug + 6)};
        } else {
            if (!printed && (m * n) % 3 != 1)
                return std::nullopt;
            br = {printed ? "gamma=0" : "gamma=0, mn=1 mod 3", N, 54 * base, ipow(3, 7)};
        }
        break;
    }
    case 5: {
        const integer base = M * M * N * sigma(1, m) * sigma(1, n);
        if (g > 0) {
            const unsigned k = beta > alpha ? 1 : 2;
            br = {order, 1, -ipow(5, k * ug + 1) * ipow(3, ug - 1) * base, ipow(5, k * ug + 2)};
        } else {
            if (legendre(m * n, 5) != -1)
                return std::nullopt;
            br = {"gamma=0, (mn/5)=-1", 1, 10 * base, 25};
        }
        break;
    }
    case 7: {
        const integer base = M * M * N * sigma(3, m) * sigma(3, n);
        if (g > 0) {
            const unsigned k = beta > alpha ? 1 : 2;
            const int sign = printed ? 1 : -1;
            br = {order, 1, sign * ipow(7, k * ug) * ipow(5, ug - 1) * base, ipow(7, k * ug + 1)};
        } else {
            if (legendre(m * n, 7) != 1)
                return std::nullopt;
            br = {"gamma=0, (mn/7)=1", 1, 2 * base, 7};
        }
        break;
    }
    default:
        throw domain_error("unsupported prime " + std::to_string(p) + "; expected 2, 3, 5 or 7");
    }
    return br;
}

struct griffin_grid
{
    std::int64_t alpha_max = 1;
    std::int64_t beta_max = 1;
    std::int64_t m_max = 8;
    std::int64_t n_max = 16;
};

inline congruence_report check_griffin(std::int64_t p, const griffin_grid& grid = {}, std::int64_t precision = 0,
                                       basis_cache& cache = shared_basis_cache(),
                                       griffin_reading reading = griffin_reading::corrected)
{
    aj_modulus_shape(p); // domain check
    detail::require_nonnegative(grid.alpha_max, "alphaMax");
    detail::require_nonnegative(grid.beta_max, "betaMax");
    detail::require_positive(grid.m_max, "mMax");
    detail::require_positive(grid.n_max, "nMax");
    congruence_report r;
    r.suite = "griffin";
    r.params["p"] = p;
    r.params["alphaMax"] = grid.alpha_max;
    r.params["betaMax"] = grid.beta_max;
    r.params["mMax"] = grid.m_max;
    r.params["nMax"] = grid.n_max;
    if (reading == griffin_reading::as_printed)
        r.params["reading"] = "as printed";
    {
        report_timer timer(r);
        r.precision = std::max(detail::checked_pow(p, grid.beta_max) * grid.n_max + 1, precision);
        const auto table = cache.level1(detail::checked_pow(p, grid.alpha_max) * grid.m_max, r.precision);
        std::map<std::string, std::int64_t> branches;
        for (std::int64_t a = 0; a <= grid.alpha_max; ++a)
            for (std::int64_t b = 0; b <= grid.beta_max; ++b)
                for (std::int64_t m = 1; m <= grid.m_max; ++m)
                    for (std::int64_t n = 1; n <= grid.n_max; ++n) {
                        if (m % p == 0 || n % p == 0) {
                            ++r.skipped;
                            continue;
                        }
                        const auto br = griffin_select(p, a, b, m, n, reading);
                        if (!br) {
                            ++r.skipped;
                            continue;
                        }
                        ++branches[br->name];
                        const integer value =
                            br->multiplier
                                * table->coeff(detail::checked_pow(p, a) * m, detail::checked_pow(p, b) * n)
                            - br->rhs;
                        r.expect_divisible(value, br->modulus,
                                           {{"p", p}, {"branch", br->name}, {"alpha", a}, {"beta", b}, {"m", m}, {"n", n}});
                    }
        ordered_json counts = ordered_json::object();
        for (const auto& [name, count] : branches)
            counts[name] = count;
        r.params["branchCounts"] = counts;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Genus-one levels

inline congruence_report check_thm_f11(std::int64_t alpha_max, std::int64_t beta_max, std::int64_t m_max,
                                       std::int64_t n_max, std::int64_t precision = 0,
                                       basis_cache& cache = shared_basis_cache())
{
    detail::require_nonnegative(alpha_max, "alphaMax");
    detail::require_positive(beta_max, "betaMax");
    detail::require_positive(m_max, "mMax");
    detail::require_positive(n_max, "nMax");
    congruence_report r;
    r.suite = "thm-f11";
    r.params["alphaMax"] = alpha_max;
    r.params["betaMax"] = beta_max;
    r.params["mMax"] = m_max;
    r.params["nMax"] = n_max;
    {
        report_timer timer(r);
        const std::int64_t top = std::min(alpha_max, beta_max - 1);
        r.precision = std::max(detail::checked_pow(11, beta_max) * n_max + 1, precision);
        const std::int64_t index = std::max<std::int64_t>(2, detail::checked_pow(11, std::max<std::int64_t>(top, 0)) * m_max);
        const auto table = cache.genus1(11, index, r.precision);
        for (std::int64_t a = 0; a <= top; ++a)
            for (std::int64_t b = a + 1; b <= beta_max; ++b)
                for (std::int64_t m = 1; m <= m_max; ++m) {
                    const std::int64_t idx = detail::checked_pow(11, a) * m;
                    if (m % 11 == 0 || idx < 2) {
                        ++r.skipped;
                        continue;
                    }
                    for (std::int64_t n = 1; n <= n_max; ++n)
                        r.expect_divisible(table->coeff(idx, detail::checked_pow(11, b) * n), ipow(11, b - a),
                                           {{"alpha", a}, {"beta", b}, {"m", m}, {"n", n}});
                }
    }
    return r;
}

/// a_N(p^a m, n) + a_N(m, -1) a_N(p^a, n) == 0 (mod p^a) for 1 <= a <= alphaMax.
inline congruence_report check_thm_genus1(std::int64_t level, std::int64_t p, std::int64_t alpha_max, std::int64_t m_max,
                                          std::int64_t n_max, std::int64_t precision = 0,
                                          const std::filesystem::path& data_dir = default_data_dir(),
                                          basis_cache& cache = shared_basis_cache())
{
    require_genus_one_level(level);
    if (!is_prime(p))
        throw domain_error("thm-genus1 needs a prime p, got " + std::to_string(p));
    detail::require_nonnegative(alpha_max, "alphaMax");
    detail::require_positive(m_max, "mMax");
    detail::require_positive(n_max, "nMax");
    congruence_report r;
    r.suite = "thm-genus1";
    r.params["N"] = level;
    r.params["p"] = p;
    r.params["alphaMax"] = alpha_max;
    r.params["mMax"] = m_max;
    r.params["nMax"] = n_max;
    {
        report_timer timer(r);
        r.precision = std::max(n_max + 1, precision);
        const std::int64_t index = std::max({m_max, detail::checked_pow(p, alpha_max) * m_max, std::int64_t{2}});
        const auto table = cache.genus1(level, index, r.precision, data_dir);
        for (std::int64_t a = 1; a <= alpha_max; ++a) {
            const std::int64_t pa = detail::checked_pow(p, a);
            for (std::int64_t m = 1; m <= m_max; ++m)
                for (std::int64_t n = 1; n <= n_max; ++n) {
                    if (m % p == 0 || n % p == 0) {
                        ++r.skipped;
                        continue;
                    }
                    const integer value = table->coeff(pa * m, n) + table->coeff(m, -1) * table->coeff(pa, n);
                    r.expect_divisible(value, ipow(p, a), {{"N", level}, {"p", p}, {"alpha", a}, {"m", m}, {"n", n}});
                }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Harmonic Maass functions

/// L - R of the p-plication identity has no nonconstant terms below q^precision.
inline congruence_report check_pplication(std::int64_t p, std::int64_t m_max, std::int64_t precision,
                                          basis_cache& cache = shared_basis_cache())
{
    require_genus0_prime(p);
    detail::require_positive(m_max, "mMax");
    detail::require_positive(precision, "precision");
    congruence_report r;
    r.suite = "pplication";
    r.params["p"] = p;
    r.params["mMax"] = m_max;
    {
        report_timer timer(r);
        r.precision = precision;
        const auto small = cache.genus0(p, m_max, p * precision);
        const auto large = cache.genus0(p, p * m_max, precision);
        const auto level1 = cache.level1(m_max, precision);
        for (std::int64_t m = 1; m <= m_max; ++m) {
            const int_series res = pplication_residual(*small, *large, *level1, p, m).truncate(precision);
            ++r.checked;
            if (res.precision() < precision) {
                r.violations.push_back({{{"p", p}, {"m", m}, {"knownBelow", res.precision()}}, 0, 0});
                continue;
            }
            for (std::int64_t e = res.valuation(); e < res.precision(); ++e)
                if (e != 0 && res.coeff(e) != 0) {
                    r.violations.push_back({{{"p", p}, {"m", m}, {"exponent", e}}, 0, res.coeff(e)});
                    break;
                }
        }
    }
    return r;
}

/// 11 c_11(11^a m, 11^{b+1} n) - c_11(11^{a+1} m, 11^b n) == 0 (mod 11^{b-a-1}),
/// the left side evaluated as mock_combination(11, 11^a m, 11^b n).
inline congruence_report check_cor_c11(std::int64_t alpha_max, std::int64_t beta_max, std::int64_t m_max,
                                       std::int64_t n_max, std::int64_t precision = 0,
                                       basis_cache& cache = shared_basis_cache())
{
    detail::require_nonnegative(alpha_max, "alphaMax");
    detail::require_positive(beta_max, "betaMax");
    detail::require_positive(m_max, "mMax");
    detail::require_positive(n_max, "nMax");
    congruence_report r;
    r.suite = "cor-c11";
    r.params["alphaMax"] = alpha_max;
    r.params["betaMax"] = beta_max;
    r.params["mMax"] = m_max;
    r.params["nMax"] = n_max;
    {
        report_timer timer(r);
        const std::int64_t top = std::min(alpha_max, beta_max - 2);
        if (top >= 0) {
            // First term: c_1(11^{a-1} m, 11^b n); second: c_1(11^a m, 11^{b-1} n).
            std::vector<std::shared_ptr<const basis_table>> tables;
            const std::int64_t p1 = std::max(detail::checked_pow(11, beta_max) * n_max + 1, precision);
            const std::int64_t p2 = std::max(detail::checked_pow(11, beta_max - 1) * n_max + 1, precision);
            tables.push_back(cache.level1(detail::checked_pow(11, std::max<std::int64_t>(top - 1, 0)) * m_max, p1));
            tables.push_back(cache.level1(detail::checked_pow(11, top) * m_max, p2));
            r.precision = p1;
            const level1_harmonic_coefficients c1({tables[0].get(), tables[1].get()});
            for (std::int64_t a = 0; a <= top; ++a)
                for (std::int64_t b = a + 2; b <= beta_max; ++b)
                    for (std::int64_t m = 1; m <= m_max; ++m)
                        for (std::int64_t n = 1; n <= n_max; ++n) {
                            if (m % 11 == 0 || n % 11 == 0) {
                                ++r.skipped;
                                continue;
                            }
                            const integer value = mock_combination(c1, 11, detail::checked_pow(11, a) * m,
                                                                   detail::checked_pow(11, b) * n);
                            r.expect_divisible(value, ipow(11, b - a - 1), {{"alpha", a}, {"beta", b}, {"m", m}, {"n", n}});
                        }
        }
    }
    return r;
}

} // namespace qmod

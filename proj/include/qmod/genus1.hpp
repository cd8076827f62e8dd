#pragma once

// Genus-one levels N: weight-two newform, Weierstrass model of X_0(N), the
// coordinate functions (x, y) as q-series, and the reduced basis
//
//   f_{N,0} = 1,  f_{N,1} = 0,  f_{N,m} = q^-m + a_N(m,-1) q^-1 + O(q)  (m >= 2).
//
// x and y are recovered from the newform f alone: pulling back the invariant
// differential gives q dx/dq = (2y + a1 x + a3) f, and eliminating y turns the
// Weierstrass equation into
//
//   (q dx/dq)^2 = f^2 (4x^3 + b2 x^2 + 2 b4 x + b6),
//
// which determines x = q^-2 + ... one coefficient at a time (the newest
// unknown x_e enters linearly with factor -4(e+3)).

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qmod/arith.hpp"
#include "qmod/basis.hpp"
#include "qmod/error.hpp"
#include "qmod/eta.hpp"
#include "qmod/series.hpp"

#ifndef QMOD_DEFAULT_DATA_DIR
#define QMOD_DEFAULT_DATA_DIR "data"
#endif

namespace qmod {

inline constexpr std::array<std::int64_t, 12> genus_one_levels = {11, 14, 15, 17, 19, 20, 21, 24, 27, 32, 36, 49};

inline bool is_genus_one_level(std::int64_t n)
{
    return std::find(genus_one_levels.begin(), genus_one_levels.end(), n) != genus_one_levels.end();
}

inline void require_genus_one_level(std::int64_t n)
{
    if (!is_genus_one_level(n))
        throw domain_error("X_0(" + std::to_string(n) + ") is not of genus one");
}

/// The weight-two newform as an eta quotient, for the levels where it is one.
inline std::optional<eta_quotient_spec> newform_eta_spec(std::int64_t level)
{
    require_genus_one_level(level);
    switch (level) {
    case 11:
        return eta_quotient_spec{{1, 2}, {11, 2}};
    case 14:
        return eta_quotient_spec{{1, 1}, {2, 1}, {7, 1}, {14, 1}};
    case 15:
        return eta_quotient_spec{{1, 1}, {3, 1}, {5, 1}, {15, 1}};
    case 20:
        return eta_quotient_spec{{2, 2}, {10, 2}};
    case 24:
        return eta_quotient_spec{{2, 1}, {4, 1}, {6, 1}, {12, 1}};
    case 27:
        return eta_quotient_spec{{3, 2}, {9, 2}};
    case 32:
        return eta_quotient_spec{{4, 2}, {8, 2}};
    case 36:
        return eta_quotient_spec{{6, 4}};
    default:
        return std::nullopt;
    }
}

/// An eta quotient on Gamma_0(N) whose only pole is at infinity. Any correct
/// (x, y) must express it as a polynomial; isogenous models fail this.
inline eta_quotient_spec pole_witness_spec(std::int64_t level)
{
    require_genus_one_level(level);
    switch (level) {
    case 11:
        return {{1, 12}, {11, -12}};
    case 14:
        return {{1, -1}, {2, 1}, {7, 7}, {14, -7}};
    case 15:
        return {{1, -1}, {3, 1}, {5, 5}, {15, -5}};
    case 17:
        return {{1, 6}, {17, -6}};
    case 19:
        return {{1, 4}, {19, -4}};
    case 20:
        return {{2, 3}, {4, -1}, {10, 1}, {20, -3}};
    case 21:
        return {{1, -1}, {3, 3}, {7, 1}, {21, -3}};
    case 24:
        return {{2, -1}, {6, 3}, {8, 1}, {24, -3}};
    case 27:
        return {{3, -1}, {9, 4}, {27, -3}};
    case 32:
        return {{2, 2}, {4, -1}, {16, 1}, {32, -2}};
    case 36:
        return {{2, -1}, {4, 2}, {18, 1}, {36, -2}};
    default: // 49
        return {{1, 1}, {49, -1}};
    }
}

// ---------------------------------------------------------------------------
// Data files

inline std::filesystem::path default_data_dir()
{
    if (const char* env = std::getenv("QMOD_DATA_DIR"); env && *env)
        return env;
    return QMOD_DEFAULT_DATA_DIR;
}

struct newform_seed
{
    std::int64_t level = 0;
    std::int64_t weight = 2;
    std::vector<integer> coefficients; ///< a_1, a_2, ...
    std::string source;
};

inline newform_seed parse_seed(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw malformed_input(std::string("seed file is not valid JSON: ") + e.what());
    }
    newform_seed seed;
    try {
        seed.level = doc.at("level").get<std::int64_t>();
        seed.weight = doc.at("weight").get<std::int64_t>();
        for (const auto& c : doc.at("coefficients")) {
            integer z;
            if (z.set_str(c.get<std::string>(), 10) != 0)
                throw malformed_input("seed coefficient '" + c.get<std::string>() + "' is not a decimal integer");
            seed.coefficients.push_back(std::move(z));
        }
        if (doc.contains("source"))
            seed.source = doc.at("source").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw malformed_input(std::string("seed file has wrong shape: ") + e.what());
    }
    if (seed.weight != 2)
        throw malformed_input("seed weight must be 2");
    if (seed.coefficients.empty())
        throw malformed_input("seed has no coefficients");
    return seed;
}

inline std::filesystem::path seed_path(const std::filesystem::path& data_dir, std::int64_t level)
{
    return data_dir / "seeds" / ("newform_" + std::to_string(level) + ".json");
}

inline newform_seed load_seed(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw seed_missing("seed file " + path.string() + " not found");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_seed(text);
}

inline int_series seed_series(const newform_seed& seed, std::int64_t precision)
{
    const auto known = static_cast<std::int64_t>(seed.coefficients.size()) + 1;
    if (precision > known)
        throw precision_exceeded(precision - 1, known);
    std::vector<integer> c(seed.coefficients.begin(), seed.coefficients.begin() + (precision - 1));
    return int_series(1, precision, std::move(c));
}

// ---------------------------------------------------------------------------
// Newforms

/// Violations of the Hecke eigenform relations among a_1..a_{n_max}.
inline std::vector<std::string> eigenform_violations(const int_series& f, std::int64_t level, std::int64_t n_max)
{
    std::vector<std::string> bad;
    n_max = std::min(n_max, f.precision() - 1);
    auto a = [&](std::int64_t n) { return f.coeff(n); };
    if (n_max >= 1 && a(1) != 1)
        bad.push_back("a(1) = " + a(1).get_str() + ", expected 1");
    for (std::int64_t m = 2; m <= n_max; ++m)
        for (std::int64_t n = m + 1; m * n <= n_max; ++n)
            if (std::gcd(m, n) == 1 && a(m * n) != a(m) * a(n))
                bad.push_back("a(" + std::to_string(m * n) + ") != a(" + std::to_string(m) + ") a(" + std::to_string(n)
                              + ")");
    for (std::int64_t p : primes_up_to(n_max)) {
        std::int64_t prev = 1, cur = p;
        while (cur <= n_max / p) {
            const std::int64_t next = cur * p;
            integer expected = a(p) * a(cur);
            if (level % p != 0)
                expected -= to_integer(p) * a(prev);
            if (a(next) != expected)
                bad.push_back("a(" + std::to_string(next) + ") breaks the Hecke recursion at p = " + std::to_string(p));
            prev = cur;
            cur = next;
        }
    }
    return bad;
}

inline void check_eigenform(const int_series& f, std::int64_t level, std::int64_t n_max)
{
    const auto bad = eigenform_violations(f, level, n_max);
    if (!bad.empty())
        throw eigenform_sanity_failed("level " + std::to_string(level) + " newform: " + bad.front() + " ("
                                      + std::to_string(bad.size()) + " violations)");
}

/// Weight-two newform of level N known to `precision`: an eta quotient or a
/// seed file. Either way the eigenform relations are checked before use.
inline int_series newform_series(std::int64_t level, std::int64_t precision,
                                 const std::filesystem::path& data_dir = default_data_dir())
{
    require_genus_one_level(level);
    int_series f;
    if (auto spec = newform_eta_spec(level)) {
        f = eta_quotient(*spec, precision);
    } else {
        const newform_seed seed = load_seed(seed_path(data_dir, level));
        if (seed.level != level)
            throw malformed_input("seed for level " + std::to_string(level) + " declares level "
                                  + std::to_string(seed.level));
        f = seed_series(seed, precision);
    }
    check_eigenform(f, level, std::min<std::int64_t>(precision - 1, 200));
    return f;
}

// ---------------------------------------------------------------------------
// Weierstrass models

struct weierstrass_model
{
    std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    integer b2() const { return to_integer(a1 * a1 + 4 * a2); }
    integer b4() const { return to_integer(2 * a4 + a1 * a3); }
    integer b6() const { return to_integer(a3 * a3 + 4 * a6); }
    integer b8() const
    {
        const integer A1 = to_integer(a1), A2 = to_integer(a2), A3 = to_integer(a3), A4 = to_integer(a4),
                      A6 = to_integer(a6);
        return A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    }
    integer discriminant() const
    {
        const integer B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    std::vector<std::int64_t> coefficients() const { return {a1, a2, a3, a4, a6}; }

    std::string to_string() const
    {
        return "[" + std::to_string(a1) + "," + std::to_string(a2) + "," + std::to_string(a3) + "," + std::to_string(a4)
               + "," + std::to_string(a6) + "]";
    }

    friend bool operator==(const weierstrass_model&, const weierstrass_model&) = default;
};

/// Rows {level, a1, a2, a3, a4, a6}.
inline std::map<std::int64_t, weierstrass_model> parse_model_table(const std::string& text)
{
    std::map<std::int64_t, weierstrass_model> out;
    try {
        for (const auto& row : nlohmann::json::parse(text)) {
            weierstrass_model m{row.at("a1").get<std::int64_t>(), row.at("a2").get<std::int64_t>(),
                                row.at("a3").get<std::int64_t>(), row.at("a4").get<std::int64_t>(),
                                row.at("a6").get<std::int64_t>()};
            out[row.at("level").get<std::int64_t>()] = m;
        }
    } catch (const nlohmann::json::exception& e) {
        throw malformed_input(std::string("model table: ") + e.what());
    }
    return out;
}

inline std::string format_model_table(const std::map<std::int64_t, weierstrass_model>& models)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& [level, m] : models) {
        nlohmann::ordered_json row;
        row["level"] = level;
        row["a1"] = m.a1;
        row["a2"] = m.a2;
        row["a3"] = m.a3;
        row["a4"] = m.a4;
        row["a6"] = m.a6;
        rows.push_back(row);
    }
    return rows.dump(1) + "\n";
}

inline std::filesystem::path model_table_path(const std::filesystem::path& data_dir) { return data_dir / "models.json"; }

inline std::map<std::int64_t, weierstrass_model> load_model_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        return {};
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_model_table(text);
}

// ---------------------------------------------------------------------------
// Coordinate functions

struct generator_pair
{
    int_series x; ///< q^-2 + x_{-1} q^-1 + x_0 + O(q)
    int_series y; ///< -q^-3 + O(q^-2)
    weierstrass_model model;
};

namespace detail {

inline void require_normalized_newform(const int_series& f)
{
    if (f.empty_window() || f.valuation() != 1 || f.leading_coefficient() != 1)
        throw zero_pivot("newform must be normalized as q + O(q^2)");
}

struct x_expansion
{
    std::vector<integer> coeffs; ///< x_{-2}, x_{-1}, ..., up to the last solved exponent
    std::optional<std::int64_t> failed_at; ///< first exponent whose coefficient is not integral
};

/// Solves the squared differential equation for x through exponent `last`,
/// stopping at the first non-integral coefficient.
inline x_expansion expand_x(const int_series& f, const weierstrass_model& model, std::int64_t last)
{
    require_normalized_newform(f);
    if (f.precision() < last + 4)
        throw precision_exceeded(last + 3, f.precision());
    const int_series f2 = f * f;
    const auto F = [&](std::int64_t i) -> const integer& { return f2.at(i + 2); }; // q^{i+2} coefficient

    const std::int64_t count = last + 3;
    x_expansion out;
    auto& X = out.coeffs; // X[e + 2]
    X.assign(static_cast<std::size_t>(count), integer(0));
    std::vector<integer> S(static_cast<std::size_t>(count + 2)); // S[k + 4], k = -4 .. last - 2
    std::vector<integer> C(static_cast<std::size_t>(count + 2)); // C[k + 6], k = -6 .. last - 4
    std::vector<integer> G(static_cast<std::size_t>(count + 2)); // 4C + b2 S + 2 b4 X + b6 at the same index

    const integer b2 = model.b2(), b4x2 = 2 * model.b4(), b6 = model.b6();
    auto x = [&](std::int64_t e) -> integer& { return X[static_cast<std::size_t>(e + 2)]; };
    auto s = [&](std::int64_t k) -> integer& { return S[static_cast<std::size_t>(k + 4)]; };
    auto c = [&](std::int64_t k) -> integer& { return C[static_cast<std::size_t>(k + 6)]; };
    auto g = [&](std::int64_t k) -> integer& { return G[static_cast<std::size_t>(k + 6)]; };

    x(-2) = 1;
    s(-4) = 1;
    c(-6) = 1;
    g(-6) = 4;

    integer acc, lhs, rhs, res, pivot, tmp;
    for (std::int64_t e = -1; e <= last; ++e) {
        // x_e is still zero below; its contributions are added after solving.
        const std::int64_t k2 = e - 2;
        acc = 0;
        for (std::int64_t i = -1, j = k2 + 1; i < j; ++i, --j)
            mpz_addmul(acc.get_mpz_t(), x(i).get_mpz_t(), x(j).get_mpz_t());
        acc *= 2;
        if ((k2 + 2) % 2 == 0 && k2 / 2 >= -1)
            mpz_addmul(acc.get_mpz_t(), x(k2 / 2).get_mpz_t(), x(k2 / 2).get_mpz_t());
        s(k2) = acc;

        const std::int64_t k4 = e - 4;
        acc = 0;
        for (std::int64_t i = -2; i <= e - 1; ++i)
            mpz_addmul(acc.get_mpz_t(), x(i).get_mpz_t(), s(k4 - i).get_mpz_t());
        c(k4) = acc;

        tmp = 4 * c(k4);
        if (k4 >= -4)
            mpz_addmul(tmp.get_mpz_t(), b2.get_mpz_t(), s(k4).get_mpz_t());
        if (k4 >= -2)
            mpz_addmul(tmp.get_mpz_t(), b4x2.get_mpz_t(), x(k4).get_mpz_t());
        if (k4 == 0)
            tmp += b6;
        g(k4) = tmp;

        // (q dx/dq)^2 at q^{e-2}
        lhs = 0;
        for (std::int64_t i = -2, j = k2 + 2; i < j; ++i, --j) {
            if (j > e - 1 || i > e - 1)
                continue;
            tmp = x(i) * x(j);
            tmp *= static_cast<long>(i * j);
            lhs += tmp;
        }
        lhs *= 2;
        if (k2 % 2 == 0 && k2 / 2 >= -2 && k2 / 2 <= e - 1) {
            tmp = x(k2 / 2) * x(k2 / 2);
            tmp *= static_cast<long>((k2 / 2) * (k2 / 2));
            lhs += tmp;
        }

        // f^2 (4x^3 + ...) at q^{e-2}
        rhs = 0;
        for (std::int64_t i = 0; i <= e + 2; ++i)
            mpz_addmul(rhs.get_mpz_t(), F(i).get_mpz_t(), g(k4 - i).get_mpz_t());

        res = lhs - rhs;
        pivot = 4 * (e + 3);
        if (!mpz_divisible_p(res.get_mpz_t(), pivot.get_mpz_t())) {
            X.resize(static_cast<std::size_t>(e + 2));
            out.failed_at = e;
            return out;
        }
        mpz_divexact(x(e).get_mpz_t(), res.get_mpz_t(), pivot.get_mpz_t());
        mpz_addmul_ui(s(k2).get_mpz_t(), x(e).get_mpz_t(), 2);
        mpz_addmul_ui(c(k4).get_mpz_t(), x(e).get_mpz_t(), 3);
        mpz_addmul_ui(g(k4).get_mpz_t(), x(e).get_mpz_t(), 12);
    }
    return out;
}

} // namespace detail

/// Replays both defining identities; throws inconsistent_at_exponent on the first mismatch.
inline void verify_generators(const generator_pair& pair, const int_series& f)
{
    const auto& m = pair.model;
    const int_series& x = pair.x;
    const int_series& y = pair.y;
    const int_series one = int_series::one(x.precision());
    int_series diff = theta(x) - (y * integer(2) + x * to_integer(m.a1) + one * to_integer(m.a3)) * f;
    if (!diff.is_zero())
        throw inconsistent_at_exponent(diff.valuation());
    int_series lhs = y * y + x * y * to_integer(m.a1) + y * to_integer(m.a3);
    int_series rhs = x * x * x + x * x * to_integer(m.a2) + x * to_integer(m.a4) + one * to_integer(m.a6);
    int_series weier = lhs - rhs;
    if (!weier.is_zero())
        throw inconsistent_at_exponent(weier.valuation());
}

/// x and y known to `precision`, with q dx/dq = (2y + a1 x + a3) f and the
/// Weierstrass equation holding through that precision. f must be known to precision + 4.
inline generator_pair solve_xy(const int_series& f, const weierstrass_model& model, std::int64_t precision)
{
    detail::require_normalized_newform(f);
    if (precision < -1)
        throw domain_error("solve_xy precision must be at least -1");
    if (model.discriminant() == 0)
        throw domain_error("singular Weierstrass model " + model.to_string());
    if (f.precision() < precision + 4)
        throw precision_exceeded(precision + 3, f.precision());

    auto expansion = detail::expand_x(f, model, precision);
    if (expansion.failed_at)
        throw non_integral("x has a non-integral coefficient at q^" + std::to_string(*expansion.failed_at) + " for model "
                           + model.to_string());
    int_series x(-2, precision + 1, std::move(expansion.coeffs));

    int_series eta = theta(x) * invert(f);
    eta -= x * to_integer(model.a1);
    eta -= int_series::one(eta.precision()) * to_integer(model.a3);
    std::vector<integer> yc;
    for (std::int64_t e = eta.valuation(); e < eta.precision(); ++e) {
        integer v = eta.coeff(e);
        if (!mpz_even_p(v.get_mpz_t()))
            throw non_integral("y has a non-integral coefficient at q^" + std::to_string(e) + " for model "
                               + model.to_string());
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), 2);
        yc.push_back(std::move(v));
    }
    generator_pair pair{x.truncate(precision), int_series(eta.valuation(), eta.precision(), std::move(yc)).truncate(precision),
                        model};
    if (pair.y.precision() < precision)
        throw precision_exceeded(precision, pair.y.precision());
    verify_generators(pair, f);
    return pair;
}

// ---------------------------------------------------------------------------
// Bases

/// Reduced basis f_{N,0..max_index} from a generator pair, all known to `precision`.
inline basis_table build_genus1_basis(const generator_pair& gens, std::int64_t level, std::int64_t max_index,
                                      std::int64_t precision)
{
    if (max_index < 1)
        throw domain_error("genus-one basis needs max_index >= 1");
    // f_2 * f_{m-2} loses two places per step from the base precision.
    const std::int64_t base = std::min(gens.x.precision(), gens.y.precision());
    if (base < precision + max_index)
        throw precision_exceeded(precision + max_index - 1, base);

    basis_table t;
    t.level = level;
    t.kind = basis_kind::genus1;
    t.precision = precision;
    t.elements.push_back(int_series::one(base));
    t.elements.push_back(int_series::zero(base));
    if (max_index >= 2)
        t.elements.push_back(reduce_principal_part(gens.x.truncate(base), t.elements, -2, -1));
    if (max_index >= 3)
        t.elements.push_back(reduce_principal_part(-gens.y.truncate(base), t.elements, -3, -1));
    for (std::int64_t m = 4; m <= max_index; ++m) {
        int_series product = t.elements[2] * t.elements[static_cast<std::size_t>(m - 2)];
        t.elements.push_back(reduce_principal_part(std::move(product), t.elements, -m, -1));
    }
    for (std::int64_t m = 0; m <= max_index; ++m) {
        auto& e = t.elements[static_cast<std::size_t>(m)];
        if (e.precision() < precision)
            throw precision_exceeded(precision, e.precision());
        if (m >= 2 && (e.valuation() != -m || e.leading_coefficient() != 1))
            throw zero_pivot("genus-one basis element " + std::to_string(m) + " is not monic of order -m");
        e = e.truncate(precision);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Model search

struct model_search_bounds
{
    std::int64_t a4_min = -60, a4_max = 60;
    std::int64_t a6_min = -60, a6_max = 60;
    std::int64_t depth = 50; ///< number of x coefficients that must come out integral
};

/// Every model in the search box for which x and y come out integral to the given depth.
inline std::vector<weierstrass_model> integral_models(const int_series& f, const model_search_bounds& bounds = {})
{
    detail::require_normalized_newform(f);
    const std::int64_t last = bounds.depth - 3;
    if (f.precision() < last + 4)
        throw precision_exceeded(last + 3, f.precision());
    std::vector<weierstrass_model> out;
    for (std::int64_t a1 : {0, 1})
        for (std::int64_t a2 : {-1, 0, 1})
            for (std::int64_t a3 : {0, 1})
                for (std::int64_t a4 = bounds.a4_min; a4 <= bounds.a4_max; ++a4)
                    for (std::int64_t a6 = bounds.a6_min; a6 <= bounds.a6_max; ++a6) {
                        const weierstrass_model m{a1, a2, a3, a4, a6};
                        // A short prefix rejects almost every candidate cheaply.
                        if (detail::expand_x(f, m, std::min<std::int64_t>(last, 8)).failed_at)
                            continue;
                        if (detail::expand_x(f, m, last).failed_at)
                            continue;
                        if (m.discriminant() == 0)
                            continue;
                        try {
                            solve_xy(f, m, std::min(last, f.precision() - 4));
                        } catch (const error&) {
                            continue;
                        }
                        out.push_back(m);
                    }
    return out;
}

/// True when the witness eta quotient (poles only at infinity) reduces to zero
/// against the basis generated by the model.
inline bool model_explains_witness(const int_series& f, const weierstrass_model& model, const eta_quotient_spec& witness,
                                   std::int64_t precision = 30)
{
    const std::int64_t order = -witness.valuation();
    if (order < 2)
        throw domain_error("pole witness must have a pole of order >= 2 at infinity");
    generator_pair gens;
    try {
        gens = solve_xy(f, model, precision + order);
    } catch (const error&) {
        return false;
    }
    const basis_table basis = build_genus1_basis(gens, 0, order, precision);
    const int_series w = eta_quotient(witness, precision);
    return reduce_principal_part(w, basis.elements, -order - 1, -1).is_zero();
}

/// The unique integral model in the search box; with a level, survivors must
/// also explain that level's pole witness.
inline weierstrass_model find_model(const int_series& f, std::optional<std::int64_t> level = std::nullopt,
                                    const model_search_bounds& bounds = {})
{
    std::vector<weierstrass_model> survivors = integral_models(f, bounds);
    if (level) {
        const eta_quotient_spec witness = pole_witness_spec(*level);
        std::erase_if(survivors, [&](const weierstrass_model& m) { return !model_explains_witness(f, m, witness); });
    }
    if (survivors.empty())
        throw no_model_found("no Weierstrass model in the search box is consistent with the newform");
    if (survivors.size() > 1) {
        std::vector<std::vector<std::int64_t>> all;
        std::string names;
        for (const auto& m : survivors) {
            all.push_back(m.coefficients());
            names += " " + m.to_string();
        }
        throw ambiguous_model("several consistent models:" + names, std::move(all));
    }
    return survivors.front();
}

// ---------------------------------------------------------------------------
// Per-level pipeline

/// Newform, model and generators for one level, cached and grown on demand.
class genus1_pipeline
{
public:
    explicit genus1_pipeline(std::int64_t level, std::filesystem::path data_dir = default_data_dir())
        : level_(level), data_dir_(std::move(data_dir))
    {
        require_genus_one_level(level);
    }

    std::int64_t level() const noexcept { return level_; }

    /// Bundled model if present, otherwise the result of find_model.
    weierstrass_model model()
    {
        std::lock_guard<std::mutex> lock(mutex_);
        return model_locked();
    }

    generator_pair generators(std::int64_t precision)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!gens_ || gens_->x.precision() < precision || gens_->y.precision() < precision) {
            const std::int64_t target = gens_ ? std::max(precision, gens_->x.precision() * 3 / 2) : precision;
            const weierstrass_model m = model_locked();
            gens_ = solve_xy(newform_series(level_, target + 4, data_dir_), m, target);
        }
        return {gens_->x.truncate(precision), gens_->y.truncate(precision), gens_->model};
    }

    basis_table basis(std::int64_t max_index, std::int64_t precision)
    {
        return build_genus1_basis(generators(precision + max_index), level_, max_index, precision);
    }

private:
    weierstrass_model model_locked()
    {
        if (model_)
            return *model_;
        const auto table = load_model_table(model_table_path(data_dir_));
        if (auto it = table.find(level_); it != table.end())
            model_ = it->second;
        else
            model_ = find_model(newform_series(level_, 64, data_dir_), level_);
        return *model_;
    }

    std::int64_t level_;
    std::filesystem::path data_dir_;
    std::mutex mutex_;
    std::optional<weierstrass_model> model_;
    std::optional<generator_pair> gens_;
};

/// Reduced basis at a genus-one level through the default data directory.
inline basis_table build_genus1_basis(std::int64_t level, std::int64_t max_index, std::int64_t precision,
                                      const std::filesystem::path& data_dir = default_data_dir())
{
    genus1_pipeline pipeline(level, data_dir);
    return pipeline.basis(max_index, precision);
}

} // namespace qmod

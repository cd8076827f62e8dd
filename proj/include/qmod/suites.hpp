#pragma once

// Named verification suites with default grids, parameter validation and a
// bounded worker pool.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qmod/congruences.hpp"

namespace qmod {

struct suite_param
{
    std::string key;
    std::optional<std::int64_t> fallback; ///< empty: optional selector (p, N) that defaults to "all"
    bool zero_allowed = false;            ///< exponent lower bounds may be 0
};

struct suite_definition
{
    std::string name;
    std::vector<suite_param> params;
};

inline const std::vector<suite_definition>& suite_definitions()
{
    static const std::vector<suite_definition> defs = {
        {"partition", {{"nMax", 2000}}},
        {"tau", {{"nMax", 2000}, {"pMax", 13}, {"aMax", 2, true}}},
        {"lehner", {{"bound", 5000}}},
        {"atkin11", {{"aMax", 2}, {"bound", 5000}}},
        {"thm-b11", {{"alphaMax", 1, true}, {"betaMax", 2}, {"mMax", 5}, {"nMax", 20}}},
        {"aj", {{"p", std::nullopt}, {"alphaMax", 0, true}, {"betaMax", 2}, {"mMax", 5}, {"nMax", 20}}},
        {"griffin", {{"p", std::nullopt}, {"alphaMax", 1, true}, {"betaMax", 1, true}, {"mMax", 8}, {"nMax", 16}}},
        {"thm-f11", {{"alphaMax", 0, true}, {"betaMax", 2}, {"mMax", 12}, {"nMax", 30}}},
        {"thm-genus1",
         {{"N", std::nullopt}, {"p", std::nullopt}, {"alphaMax", 2, true}, {"mMax", 10}, {"nMax", 10}}},
        {"pplication", {{"p", std::nullopt}, {"mMax", 10}}},
        {"cor-c11", {{"alphaMax", 1, true}, {"betaMax", 3}, {"mMax", 5}, {"nMax", 5}}},
    };
    return defs;
}

inline std::vector<std::string> suite_names()
{
    std::vector<std::string> out;
    for (const auto& d : suite_definitions())
        out.push_back(d.name);
    return out;
}

inline const suite_definition& find_suite(const std::string& name)
{
    for (const auto& d : suite_definitions())
        if (d.name == name)
            return d;
    throw domain_error("unknown suite '" + name + "'");
}

/// Default p-plication precision: the residual is checked through q^100.
inline constexpr std::int64_t default_pplication_precision = 101;

struct suite_config
{
    std::string suite;
    std::map<std::string, std::int64_t> overrides;
    std::int64_t precision = 0; ///< floor on series precision (sets P for pplication); 0 = computed
    std::filesystem::path data_dir = default_data_dir();
};

/// Resolved parameter values; selectors that were not given are absent.
inline std::map<std::string, std::int64_t> resolve_params(const suite_config& config)
{
    const suite_definition& def = find_suite(config.suite);
    std::map<std::string, std::int64_t> values;
    for (const auto& [key, value] : config.overrides) {
        const auto it = std::find_if(def.params.begin(), def.params.end(), [&](const auto& p) { return p.key == key; });
        if (it == def.params.end())
            throw domain_error("suite '" + config.suite + "' has no parameter '" + key + "'");
        if (value < 0 || (value == 0 && !it->zero_allowed))
            throw domain_error("parameter '" + key + "' must be " + (it->zero_allowed ? "non-negative" : "positive"));
        values[key] = value;
    }
    for (const auto& p : def.params)
        if (p.fallback && !values.count(p.key))
            values[p.key] = *p.fallback;
    if (config.precision < 0)
        throw domain_error("precision must be positive");
    if (values.count("p")) {
        const std::int64_t p = values["p"];
        if (config.suite == "thm-genus1") {
            if (!is_prime(p))
                throw domain_error("p must be prime, got " + std::to_string(p));
        } else if (!is_genus0_prime(p)) {
            throw domain_error("unsupported prime " + std::to_string(p) + " for suite '" + config.suite
                               + "'; expected 2, 3, 5 or 7");
        }
    }
    if (values.count("N"))
        require_genus_one_level(values["N"]);
    return values;
}

namespace detail {

inline congruence_report combine_reports(const std::string& suite, ordered_json params,
                                         const std::vector<congruence_report>& parts)
{
    congruence_report r;
    r.suite = suite;
    ordered_json sub = ordered_json::array();
    for (const auto& part : parts) {
        r.merge(part);
        r.millis += part.millis;
        sub.push_back(part.params);
    }
    params["parts"] = std::move(sub);
    r.params = std::move(params);
    return r;
}

inline std::vector<std::int64_t> selected_primes(const std::map<std::string, std::int64_t>& v,
                                                 std::vector<std::int64_t> all)
{
    if (auto it = v.find("p"); it != v.end())
        return {it->second};
    return all;
}

} // namespace detail

/// Runs one suite. Multi-prime or multi-level suites fold their parts into a
/// single report (the parts' grids are listed under params.parts).
inline congruence_report run_suite(const suite_config& config, basis_cache& cache = shared_basis_cache())
{
    auto v = resolve_params(config);
    const std::string& s = config.suite;
    const std::int64_t prec = config.precision;
    if (s == "partition")
        return check_partition_ramanujan(v["nMax"], prec);
    if (s == "tau")
        return check_tau(v["nMax"], v["pMax"], v["aMax"], prec);
    if (s == "lehner")
        return check_lehner_small(v["bound"], prec);
    if (s == "atkin11")
        return check_atkin_11(v["aMax"], v["bound"], prec);
    if (s == "thm-b11")
        return check_thm_b11(v["alphaMax"], v["betaMax"], v["mMax"], v["nMax"], prec, cache);
    if (s == "thm-f11")
        return check_thm_f11(v["alphaMax"], v["betaMax"], v["mMax"], v["nMax"], prec, cache);
    if (s == "cor-c11")
        return check_cor_c11(v["alphaMax"], v["betaMax"], v["mMax"], v["nMax"], prec, cache);

    std::vector<congruence_report> parts;
    ordered_json params = ordered_json::object();
    if (s == "aj" || s == "griffin" || s == "pplication") {
        const auto primes = detail::selected_primes(v, {2, 3, 5, 7});
        if (primes.size() == 1 && v.count("p")) {
            if (s == "aj")
                return check_aj(primes[0], v["alphaMax"], v["betaMax"], v["mMax"], v["nMax"], prec, cache);
            if (s == "griffin")
                return check_griffin(primes[0], {v["alphaMax"], v["betaMax"], v["mMax"], v["nMax"]}, prec, cache);
            return check_pplication(primes[0], v["mMax"], prec > 0 ? prec : default_pplication_precision, cache);
        }
        for (std::int64_t p : primes) {
            if (s == "aj")
                parts.push_back(check_aj(p, v["alphaMax"], v["betaMax"], v["mMax"], v["nMax"], prec, cache));
            else if (s == "griffin")
                parts.push_back(check_griffin(p, {v["alphaMax"], v["betaMax"], v["mMax"], v["nMax"]}, prec, cache));
            else
                parts.push_back(
                    check_pplication(p, v["mMax"], prec > 0 ? prec : default_pplication_precision, cache));
        }
        params["p"] = primes;
        for (const auto& [key, value] : v)
            if (key != "p")
                params[key] = value;
        return detail::combine_reports(s, params, parts);
    }
    if (s == "thm-genus1") {
        const auto primes = detail::selected_primes(v, {2, 3});
        std::vector<std::int64_t> levels(genus_one_levels.begin(), genus_one_levels.end());
        const bool explicit_level = v.count("N") > 0;
        if (explicit_level)
            levels = {v["N"]};
        std::vector<std::int64_t> used, unavailable;
        for (std::int64_t n : levels) {
            try {
                for (std::int64_t p : primes)
                    parts.push_back(check_thm_genus1(n, p, v["alphaMax"], v["mMax"], v["nMax"], prec, config.data_dir,
                                                     cache));
                used.push_back(n);
            } catch (const level_unavailable&) {
                if (explicit_level)
                    throw;
                unavailable.push_back(n);
            }
        }
        params["N"] = used;
        params["p"] = primes;
        params["alphaMax"] = v["alphaMax"];
        params["mMax"] = v["mMax"];
        params["nMax"] = v["nMax"];
        params["unavailable"] = unavailable;
        if (parts.size() == 1)
            return parts.front();
        return detail::combine_reports(s, params, parts);
    }
    throw domain_error("unknown suite '" + s + "'");
}

/// Runs suites on up to `jobs` worker threads; reports come back in input
/// order. The first operational error is rethrown after all workers finish.
inline std::vector<congruence_report> run_suites(const std::vector<suite_config>& configs, unsigned jobs = 1,
                                                 basis_cache& cache = shared_basis_cache())
{
    for (const auto& c : configs)
        resolve_params(c); // fail fast on bad configuration
    std::vector<congruence_report> out(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) {
            try {
                out[i] = run_suite(configs[i], cache);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < jobs; ++k)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace qmod

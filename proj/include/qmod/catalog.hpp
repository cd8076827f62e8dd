#pragma once

// Named series for the command line: j, delta, partition, eta:<d:r,...>,
// jm:<m>, f:<p>:<m> (genus zero), f:<N>:<m> (genus one), newform:<N>.

#include <cstdint>
#include <filesystem>
#include <numeric>
#include <optional>
#include <string>

#include "qmod/forms.hpp"
#include "qmod/genus0.hpp"
#include "qmod/genus1.hpp"
#include "qmod/level1.hpp"

namespace qmod {

struct named_series
{
    std::string spec;
    std::int64_t level = 1;
    std::string kind;
    std::optional<std::int64_t> index;
    int_series series;
};

namespace detail {

inline std::int64_t parse_int(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw domain_error(what + " '" + text + "' is not an integer");
    return v;
}

} // namespace detail

inline named_series lookup_series(const std::string& spec, std::int64_t precision,
                                  const std::filesystem::path& data_dir = default_data_dir())
{
    named_series out;
    out.spec = spec;
    if (spec == "j") {
        out.kind = "j";
        out.series = j_series(precision);
    } else if (spec == "delta") {
        out.kind = "delta";
        out.series = delta_series(precision);
    } else if (spec == "partition") {
        out.kind = "partition";
        out.series = partition_series(precision);
    } else if (spec.rfind("eta:", 0) == 0) {
        const eta_quotient_spec eta = eta_quotient_spec::parse(spec.substr(4));
        out.kind = "eta";
        out.level = 1;
        for (const auto& f : eta.factors())
            out.level = std::lcm(out.level, f.d);
        out.series = eta_quotient(eta, precision);
    } else if (spec.rfind("jm:", 0) == 0) {
        const std::int64_t m = detail::parse_int(spec.substr(3), "index");
        if (m < 0)
            throw domain_error("basis index must be non-negative");
        out.kind = to_string(basis_kind::level1);
        out.index = m;
        out.series = build_j_basis(std::max<std::int64_t>(m, 1), precision).element(m);
    } else if (spec.rfind("newform:", 0) == 0) {
        out.level = detail::parse_int(spec.substr(8), "level");
        out.kind = "newform";
        out.series = newform_series(out.level, precision, data_dir);
    } else if (spec.rfind("f:", 0) == 0) {
        const auto colon = spec.find(':', 2);
        if (colon == std::string::npos)
            throw domain_error("expected f:<level>:<m>, got '" + spec + "'");
        const std::int64_t level = detail::parse_int(spec.substr(2, colon - 2), "level");
        const std::int64_t m = detail::parse_int(spec.substr(colon + 1), "index");
        if (m < 0)
            throw domain_error("basis index must be non-negative");
        out.level = level;
        out.index = m;
        if (is_genus0_prime(level)) {
            out.kind = to_string(basis_kind::genus0);
            out.series = build_genus0_basis(level, std::max<std::int64_t>(m, 1), precision).element(m);
        } else if (is_genus_one_level(level)) {
            out.kind = to_string(basis_kind::genus1);
            out.series = build_genus1_basis(level, std::max<std::int64_t>(m, 2), precision, data_dir).element(m);
        } else {
            throw domain_error("level " + std::to_string(level) + " is neither 2, 3, 5, 7 nor a genus-one level");
        }
    } else {
        throw domain_error("unknown series '" + spec + "'");
    }
    return out;
}

/// Builds the table named by kind ("level1", "genus0", "genus1").
inline basis_table lookup_basis(const std::string& kind, std::int64_t level, std::int64_t max_index,
                                std::int64_t precision, const std::filesystem::path& data_dir = default_data_dir())
{
    if (kind == "level1") {
        if (level != 1)
            throw domain_error("level1 tables have level 1");
        return build_j_basis(max_index, precision);
    }
    if (kind == "genus0")
        return build_genus0_basis(level, max_index, precision);
    if (kind == "genus1")
        return build_genus1_basis(level, max_index, precision, data_dir);
    throw domain_error("unknown basis kind '" + kind + "'");
}

} // namespace qmod

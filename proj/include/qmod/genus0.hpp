#pragma once

// Genus-zero prime levels p in {2, 3, 5, 7}: the basis f_{p,m} = q^-m + O(q)
// of level-p modular functions holomorphic at the cusp 0, and the residual of
// the p-plication identity.

#include <cstdint>
#include <string>

#include "qmod/basis.hpp"
#include "qmod/eta.hpp"
#include "qmod/level1.hpp"

namespace qmod {

inline bool is_genus0_prime(std::int64_t p) { return p == 2 || p == 3 || p == 5 || p == 7; }

inline void require_genus0_prime(std::int64_t p)
{
    if (!is_genus0_prime(p))
        throw domain_error("genus-zero prime level must be one of 2, 3, 5, 7; got " + std::to_string(p));
}

/// (eta(tau) / eta(p tau))^{24/(p-1)}: leading term q^-1, zero at the cusp 0.
inline eta_quotient_spec hauptmodul_spec(std::int64_t p)
{
    require_genus0_prime(p);
    const std::int64_t r = 24 / (p - 1);
    return eta_quotient_spec{{1, r}, {p, -r}};
}

inline int_series hauptmodul(std::int64_t p, std::int64_t precision) { return eta_quotient(hauptmodul_spec(p), precision); }

/// f_{p,0} = 1 and f_{p,m} = q^-m + O(q) with zero constant term.
inline basis_table build_genus0_basis(std::int64_t p, std::int64_t max_index, std::int64_t precision)
{
    require_genus0_prime(p);
    if (max_index < 1 || precision < 1)
        throw domain_error("build_genus0_basis needs max_index >= 1 and precision >= 1");
    const std::int64_t base = precision + max_index - 1;

    basis_table t;
    t.level = p;
    t.kind = basis_kind::genus0;
    t.precision = precision;
    t.elements.push_back(int_series::one(base));
    t.elements.push_back(reduce_principal_part(hauptmodul(p, base), t.elements, -1));
    for (std::int64_t m = 2; m <= max_index; ++m) {
        int_series product = t.elements[1] * t.elements[static_cast<std::size_t>(m - 1)];
        t.elements.push_back(reduce_principal_part(std::move(product), t.elements, -m));
    }
    for (auto& e : t.elements) {
        if (e.precision() < precision)
            throw precision_exceeded(precision, e.precision());
        e = e.truncate(precision);
    }
    return t;
}

/// L - R with L = p U_p(f_{p,m}) - f_{p,pm} and R = p j_{1,m/p} - j_{1,m}(p tau)
/// (the first R term is absent when p does not divide m). The result is a
/// constant series whenever the p-plication identity holds.
///
/// `small` must hold f_{p,m}, `large` must hold f_{p,pm}, `level1` must hold j_m.
inline int_series pplication_residual(const basis_table& small, const basis_table& large, const basis_table& level1,
                                      std::int64_t p, std::int64_t m)
{
    require_genus0_prime(p);
    if (m < 1)
        throw domain_error("pplication_residual needs m >= 1");
    const integer pz = to_integer(p);
    int_series left = u_p(small.element(m), p) * pz;
    left -= large.element(p * m);

    const level1_harmonic_coefficients c1(level1);
    int_series right = -upscale(c1.series(m), p);
    if (m % p == 0)
        right += c1.series(m / p) * pz;
    return left - right;
}

/// Convenience form: builds the three tables so that the residual is known
/// through q^{precision - 1}.
inline int_series pplication_residual(std::int64_t p, std::int64_t m, std::int64_t precision)
{
    require_genus0_prime(p);
    const basis_table small = build_genus0_basis(p, m, p * precision);
    const basis_table large = build_genus0_basis(p, p * m, precision);
    const basis_table level1 = build_j_basis(m, precision);
    return pplication_residual(small, large, level1, p, m).truncate(precision);
}

} // namespace qmod

#pragma once

// Truncated convolution kernels for dense coefficient vectors.
//
// Integer vectors above a size threshold are multiplied by Kronecker
// substitution: each operand is packed into one big integer with a fixed
// number of limbs per coefficient, the two integers are multiplied by GMP
// (which switches to FFT internally), and the product is unpacked with
// balanced (signed) digits.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstring>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace qmod {

/// Operands shorter than this (in coefficients) use the schoolbook kernel.
inline std::atomic<std::size_t> kronecker_threshold{24};

namespace detail {

template <class C>
std::vector<C> schoolbook_convolve(std::span<const C> a, std::span<const C> b, std::size_t n)
{
    std::vector<C> r(n);
    const std::size_t la = std::min(a.size(), n), lb = std::min(b.size(), n);
    for (std::size_t i = 0; i < la; ++i) {
        if (a[i] == 0)
            continue;
        const std::size_t top = std::min(lb, n - i);
        for (std::size_t j = 0; j < top; ++j) {
            if constexpr (std::is_same_v<C, mpz_class>)
                mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
            else
                r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

inline std::size_t max_bits(std::span<const mpz_class> v)
{
    std::size_t bits = 0;
    for (const auto& c : v)
        if (c != 0)
            bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    return bits;
}

/// Writes coefficient magnitudes into limb slots; positive and negative parts separately.
inline mpz_class kronecker_pack(std::span<const mpz_class> v, std::size_t slot_limbs)
{
    const std::size_t total = v.size() * slot_limbs;
    std::vector<mp_limb_t> pos(total, 0), neg(total, 0);
    bool any_neg = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const mpz_srcptr z = v[i].get_mpz_t();
        const int sign = mpz_sgn(z);
        if (sign == 0)
            continue;
        const std::size_t sz = mpz_size(z);
        auto& dst = sign > 0 ? pos : neg;
        any_neg |= sign < 0;
        std::memcpy(dst.data() + i * slot_limbs, mpz_limbs_read(z), sz * sizeof(mp_limb_t));
    }
    auto load = [](const std::vector<mp_limb_t>& limbs) {
        mpz_class out;
        std::size_t used = limbs.size();
        while (used > 0 && limbs[used - 1] == 0)
            --used;
        if (used == 0)
            return out;
        mp_limb_t* w = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(used));
        std::memcpy(w, limbs.data(), used * sizeof(mp_limb_t));
        mpz_limbs_finish(out.get_mpz_t(), static_cast<mp_size_t>(used));
        return out;
    };
    mpz_class result = load(pos);
    if (any_neg)
        result -= load(neg);
    return result;
}

inline std::vector<mpz_class> kronecker_unpack(const mpz_class& packed, std::size_t slot_limbs, std::size_t n)
{
    std::vector<mpz_class> out(n);
    const bool negative = packed < 0;
    mpz_class mag = abs(packed);
    const mp_limb_t* limbs = mpz_limbs_read(mag.get_mpz_t());
    const std::size_t size = mpz_size(mag.get_mpz_t());

    mpz_class full, half;
    mpz_setbit(full.get_mpz_t(), slot_limbs * GMP_NUMB_BITS);
    mpz_setbit(half.get_mpz_t(), slot_limbs * GMP_NUMB_BITS - 1);

    bool carry = false;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t start = i * slot_limbs;
        mpz_class digit;
        if (start < size) {
            std::size_t take = std::min(slot_limbs, size - start);
            while (take > 0 && limbs[start + take - 1] == 0)
                --take;
            if (take > 0) {
                mp_limb_t* w = mpz_limbs_write(digit.get_mpz_t(), static_cast<mp_size_t>(take));
                std::memcpy(w, limbs + start, take * sizeof(mp_limb_t));
                mpz_limbs_finish(digit.get_mpz_t(), static_cast<mp_size_t>(take));
            }
        }
        if (carry)
            digit += 1;
        carry = false;
        if (digit >= half) {
            digit -= full;
            carry = true;
        }
        if (negative)
            digit = -digit;
        out[i] = std::move(digit);
    }
    return out;
}

inline std::vector<mpz_class> kronecker_convolve(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                                 std::size_t n)
{
    a = a.first(std::min(a.size(), n));
    b = b.first(std::min(b.size(), n));
    if (a.empty() || b.empty())
        return std::vector<mpz_class>(n);
    const std::size_t bits_a = max_bits(a), bits_b = max_bits(b);
    if (bits_a == 0 || bits_b == 0)
        return std::vector<mpz_class>(n);
    const std::size_t terms = std::min(a.size(), b.size());
    const std::size_t slot_bits = bits_a + bits_b + static_cast<std::size_t>(std::bit_width(terms)) + 2;
    const std::size_t slot_limbs = (slot_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

    const bool same = a.data() == b.data() && a.size() == b.size();
    mpz_class pa = kronecker_pack(a, slot_limbs);
    mpz_class product;
    if (same) {
        mpz_mul(product.get_mpz_t(), pa.get_mpz_t(), pa.get_mpz_t());
    } else {
        mpz_class pb = kronecker_pack(b, slot_limbs);
        mpz_mul(product.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
    }
    return kronecker_unpack(product, slot_limbs, std::min(n, a.size() + b.size() - 1));
}

/// First n coefficients of the product of two dense coefficient vectors.
template <class C>
std::vector<C> convolve(std::span<const C> a, std::span<const C> b, std::size_t n)
{
    if constexpr (std::is_same_v<C, mpz_class>) {
        const std::size_t la = std::min(a.size(), n), lb = std::min(b.size(), n);
        if (std::min(la, lb) >= kronecker_threshold.load(std::memory_order_relaxed)) {
            auto r = kronecker_convolve(a, b, n);
            r.resize(n);
            return r;
        }
    }
    return schoolbook_convolve(a, b, n);
}

} // namespace detail
} // namespace qmod

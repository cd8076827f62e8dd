#!/usr/bin/env python3
"""Generate weight-2 newform seed files for genus-one levels without an
eta-quotient newform.

Coefficients come from point counts on the X_0(N)-optimal curve:
a_p = p + 1 - #E(F_p) on the minimal model (valid at good and bad primes),
extended to all n by multiplicativity and the Hecke recursion.

    python3 tools/make_seed.py --out data/seeds --terms 1200
"""
import argparse
import json
import os

# Minimal models [a1, a2, a3, a4, a6] of the optimal curves of conductor N.
CURVES = {
    11: [0, -1, 1, -10, -20],
    14: [1, 0, 1, 4, -6],
    17: [1, -1, 1, -1, -14],
    19: [0, 1, 1, -9, -15],
    21: [1, 0, 0, -4, -1],
    49: [1, -1, 0, -2, -1],
}
SEEDED = (17, 19, 21, 49)


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\0\0"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


def count_points(model, p):
    a1, a2, a3, a4, a6 = model
    total = 1  # point at infinity
    if p == 2:
        for x in range(2):
            for y in range(2):
                lhs = y * y + a1 * x * y + a3 * y
                rhs = x ** 3 + a2 * x * x + a4 * x + a6
                total += (lhs - rhs) % 2 == 0
        return total
    half = (p - 1) // 2
    for x in range(p):
        b = (a1 * x + a3) % p
        c = (x ** 3 + a2 * x * x + a4 * x + a6) % p
        disc = (b * b + 4 * c) % p
        if disc == 0:
            total += 1
        else:
            total += 2 if pow(disc, half, p) == 1 else 0
    return total


def coefficients(level, terms):
    model = CURVES[level]
    a = [0] * (terms + 1)
    a[1] = 1
    ap = {p: p + 1 - count_points(model, p) for p in primes_upto(terms)}
    for p, value in ap.items():
        prev, cur, pk = 1, value, p
        a[p] = value
        while pk * p <= terms:
            nxt = value * cur if level % p == 0 else value * cur - p * prev
            prev, cur, pk = cur, nxt, pk * p
            a[pk] = cur
    # multiplicative closure
    for n in range(2, terms + 1):
        m, p = n, None
        for q in primes_upto(int(n ** 0.5) + 1):
            if m % q == 0:
                p = q
                break
        if p is None:
            continue
        pk = 1
        while m % p == 0:
            m //= p
            pk *= p
        if m > 1:
            a[n] = a[pk] * a[m]
    return a[1:]


def eta_newform(spec, terms):
    series = [0] * (terms + 1)
    series[0] = 1
    for d, r in spec:
        for _ in range(r):
            for k in range(1, terms // d + 1):
                step = k * d
                for i in range(terms, step - 1, -1):
                    series[i] -= series[i - step]
    shift = sum(d * r for d, r in spec) // 24
    out = [0] * (terms + 1)
    for i in range(terms + 1 - shift):
        out[i + shift] = series[i]
    return out[1:]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/seeds")
    parser.add_argument("--terms", type=int, default=1200)
    args = parser.parse_args()

    # The point-count construction must reproduce the eta-quotient levels.
    check = 300
    assert coefficients(11, check) == eta_newform([(1, 2), (11, 2)], check)
    assert coefficients(14, check) == eta_newform([(1, 1), (2, 1), (7, 1), (14, 1)], check)

    os.makedirs(args.out, exist_ok=True)
    for level in SEEDED:
        doc = {
            "level": level,
            "weight": 2,
            "source": "point counts on minimal model %s, a_p = p + 1 - #E(F_p)"
            % CURVES[level],
            "coefficients": [str(c) for c in coefficients(level, args.terms)],
        }
        path = os.path.join(args.out, "newform_%d.json" % level)
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        print(path)


if __name__ == "__main__":
    main()

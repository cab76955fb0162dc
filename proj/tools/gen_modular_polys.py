#!/usr/bin/env python3
"""Generate classical modular polynomials Phi_l(X, Y) from q-expansions of j.

Power sums of the l+1 conjugates j(l*tau), j((tau+k)/l) are Laurent series in q
that are polynomials in j(tau); only the principal part and the constant term
are needed to identify them. Newton's identities then give the elementary
symmetric functions, i.e. the coefficients of Phi_l in X.

Output format (one file per l): lines "dx dy c" with dx >= dy.
"""
import argparse
import os
import sys


def sigma3(n):
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d ** 3
            if d * d != n:
                s += (n // d) ** 3
        d += 1
    return s


def j_series(terms):
    """Coefficients c[-1..terms-2] of j, returned as list indexed by n+1."""
    e4 = [1] + [240 * sigma3(n) for n in range(1, terms + 1)]
    # Delta / q = prod (1 - q^n)^24
    prod = [0] * (terms + 1)
    prod[0] = 1
    for n in range(1, terms + 1):
        for _ in range(24):
            for k in range(terms, n - 1, -1):
                prod[k] -= prod[k - n]
    # E4^3
    def mul(a, b):
        out = [0] * (terms + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for k in range(0, terms + 1 - i):
                out[i + k] += ai * b[k]
        return out
    e43 = mul(mul(e4, e4), e4)
    # invert prod
    inv = [0] * (terms + 1)
    inv[0] = 1
    for n in range(1, terms + 1):
        s = 0
        for k in range(1, n + 1):
            s += prod[k] * inv[n - k]
        inv[n] = -s
    return mul(e43, inv)  # j*q, index n -> coefficient of q^(n-1)


class Laurent:
    """Truncated Laurent series: coefficients from q^low up to q^0."""

    def __init__(self, low, coeffs):
        self.low = low
        self.c = coeffs  # c[i] -> q^(low+i), up to exponent 0


def phi(l):
    maxpow = l * (l + 1)
    jq = j_series(maxpow + 3)
    # jpow[k][n] = coefficient of q^(n-k) in j^k, n = 0..k; computed from
    # (q j)^k truncated at degree maxpow so every constant term is exact.
    jpow = [[1]]
    cur = [1] + [0] * maxpow
    for k in range(1, maxpow + 1):
        nxt = [0] * (maxpow + 1)
        for a, ca in enumerate(cur):
            if ca == 0:
                continue
            for b in range(0, maxpow + 1 - a):
                nxt[a + b] += ca * jq[b]
        cur = nxt
        jpow.append(cur[:k + 1])

    def as_poly_in_j(low, coeffs):
        # coeffs[i] -> q^(low+i), low <= 0, up to q^0
        coeffs = list(coeffs)
        deg = -low
        poly = [0] * (deg + 1)
        for k in range(deg, -1, -1):
            c = coeffs[deg - k]  # coefficient of q^-k
            poly[k] = c
            if c:
                jp = jpow[k]
                for n in range(0, k + 1):
                    coeffs[deg - k + n] -= c * jp[n]
        assert all(v == 0 for v in coeffs)
        return poly

    power_sums = []
    for m in range(1, l + 2):
        low = -m * l
        s = [0] * (m * l + 1)
        # j(l tau)^m: j^m in q^l
        jp = jpow[m]
        for n in range(0, m + 1):
            e = (n - m) * l
            s[e - low] += jp[n]
        # sum_k j((tau+k)/l)^m: l * terms of j^m with exponent divisible by l
        for n in range(0, m + 1):
            e = n - m
            if e % l == 0:
                s[e // l - low] += l * jp[n]
        power_sums.append(as_poly_in_j(low, s))

    def padd(a, b):
        n = max(len(a), len(b))
        return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]

    def pmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for k, bk in enumerate(b):
                    out[i + k] += ai * bk
        return out

    e = [[1]]
    for m in range(1, l + 2):
        acc = [0]
        for i in range(1, m + 1):
            term = pmul(e[m - i], power_sums[i - 1])
            if i % 2 == 0:
                term = [-t for t in term]
            acc = padd(acc, term)
        assert all(t % m == 0 for t in acc)
        e.append([t // m for t in acc])

    coeffs = {}
    for m in range(0, l + 2):
        sign = -1 if m % 2 else 1
        for dy, c in enumerate(e[m]):
            if c:
                coeffs[(l + 1 - m, dy)] = sign * c
    for (dx, dy), c in coeffs.items():
        assert coeffs.get((dy, dx)) == c, "symmetry"
        assert dy <= l + 1
    return coeffs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "modular"))
    ap.add_argument("ells", nargs="*", type=int, default=[2, 3, 5, 7, 11, 13])
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for l in args.ells:
        c = phi(l)
        path = os.path.join(args.out, f"phi{l}.txt")
        with open(path, "w", newline="\n") as f:
            for (dx, dy) in sorted(c):
                if dx >= dy:
                    f.write(f"{dx} {dy} {c[(dx, dy)]}\n")
        print(f"phi{l}: {len(c)} terms", file=sys.stderr)


if __name__ == "__main__":
    main()

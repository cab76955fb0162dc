#pragma once

// Machine-word modular arithmetic: primality, Legendre symbols, square roots.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "../errors.hpp"

namespace ssendo::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m)
{
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Least nonnegative residue of a signed value.
inline u64 mod_floor(i64 a, u64 m)
{
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 mod_floor(const mpz_class& a, u64 m)
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
    return r.get_ui();
}

// Deterministic Miller-Rabin for all 64-bit inputs (first twelve prime bases).
inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

// Above 2^64 GMP's Baillie-PSW plus 30 Miller-Rabin rounds; error below 4^-30.
inline bool is_prime(const mpz_class& n)
{
    if (n.fits_ulong_p())
        return is_prime(static_cast<u64>(n.get_ui()));
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

inline void require_odd_prime(u64 m, const char* what)
{
    if (m < 3 || !is_prime(m))
        throw ArgumentError(std::string(what) + ": modulus " + std::to_string(m) + " is not an odd prime");
}

// Legendre symbol (a/m) for an odd prime m, via the Jacobi reciprocity algorithm.
inline int legendre(i64 a, u64 m)
{
    require_odd_prime(m, "legendre");
    u64 x = mod_floor(a, m);
    u64 n = m;
    int sign = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5)
                sign = -sign;
        }
        std::swap(x, n);
        if ((x & 3) == 3 && (n & 3) == 3)
            sign = -sign;
        x %= n;
    }
    return n == 1 ? sign : 0;
}

inline int legendre(const mpz_class& a, u64 m)
{
    require_odd_prime(m, "legendre");
    return legendre(static_cast<i64>(mod_floor(a, m)), m);
}

// Tonelli-Shanks. Returns the smaller of the two roots, or nothing for a non-residue.
inline std::optional<u64> sqrt_mod_prime(i64 a, u64 m)
{
    int chi = legendre(a, m);
    if (chi == 0)
        return u64{0};
    if (chi < 0)
        return std::nullopt;
    u64 n = mod_floor(a, m);
    u64 q = m - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (legendre(static_cast<i64>(z), m) != -1)
        ++z;
    u64 c = powmod(z, q, m);
    u64 r = powmod(n, (q + 1) / 2, m);
    u64 t = powmod(n, q, m);
    int e = s;
    while (t != 1) {
        int i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, m);
            ++i;
        }
        u64 b = c;
        for (int k = 0; k < e - i - 1; ++k)
            b = mulmod(b, b, m);
        r = mulmod(r, b, m);
        c = mulmod(b, b, m);
        t = mulmod(t, c, m);
        e = i;
    }
    return std::min(r, m - r);
}

inline u64 invmod(u64 a, u64 m)
{
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(m), newr = static_cast<i64>(a % m);
    while (newr != 0) {
        i64 quot = r / newr;
        i64 tmp = t - quot * newt;
        t = newt;
        newt = tmp;
        tmp = r - quot * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1)
        throw ArgumentError("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
    return mod_floor(t, m);
}

inline u64 isqrt(u64 n)
{
    u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline bool is_square(u64 n, u64* root = nullptr)
{
    u64 r = isqrt(n);
    if (root)
        *root = r;
    return r * r == n;
}

inline i64 gcd(i64 a, i64 b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Primes in [lo, hi] by trial sieve; fine for the ranges swept here.
inline std::vector<u64> primes_between(u64 lo, u64 hi)
{
    std::vector<u64> out;
    if (hi < 2 || hi < lo)
        return out;
    std::vector<bool> composite(hi + 1, false);
    for (u64 i = 2; i * i <= hi; ++i) {
        if (!composite[i]) {
            for (u64 k = i * i; k <= hi; k += i)
                composite[k] = true;
        }
    }
    for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n) {
        if (!composite[n])
            out.push_back(n);
    }
    return out;
}

} // namespace ssendo::arith

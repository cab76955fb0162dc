#pragma once

// Prime fields and their quadratic extensions, as small value-type "field objects".
// Elements are plain values; the field object carries the modulus and does the work.

#include <atomic>
#include <cstdint>
#include <random>
#include <string>

#include <gmpxx.h>

#include "modular.hpp"

namespace ssendo::arith {

// Seed shared by every randomized splitting routine. Each call seeds its own
// generator from this value, so results are reproducible and thread-safe.
inline std::atomic<u64>& rng_seed()
{
    static std::atomic<u64> seed{1};
    return seed;
}

class PrimeField {
public:
    using Elem = u64;

    PrimeField() = default;
    explicit PrimeField(u64 p) : p_(p) { require_odd_prime(p, "PrimeField"); }

    u64 characteristic() const { return p_; }
    mpz_class order() const { return mpz_class(static_cast<unsigned long>(p_)); }
    unsigned extension_degree() const { return 1; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(i64 v) const { return mod_floor(v, p_); }
    Elem from_mpz(const mpz_class& v) const { return mod_floor(v, p_); }

    Elem add(Elem a, Elem b) const
    {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return mulmod(a, b, p_); }
    Elem inv(Elem a) const
    {
        if (a == 0)
            throw ArgumentError("PrimeField: inverse of zero");
        return invmod(a, p_);
    }
    Elem pow(Elem a, u64 e) const { return powmod(a, e, p_); }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    bool in_base(Elem) const { return true; }
    u64 base_part(Elem a) const { return a; }

    Elem random(std::mt19937_64& rng) const { return rng() % p_; }
    std::string to_string(Elem a) const { return std::to_string(a); }

    // Total order used only to sort outputs deterministically.
    bool less(Elem a, Elem b) const { return a < b; }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    u64 p_ = 3;
};

struct Fp2Elem {
    u64 c0 = 0;
    u64 c1 = 0;
    bool operator==(const Fp2Elem&) const = default;
};

// F_p[t]/(t^2 - n), n the smallest positive quadratic non-residue mod p.
class Fp2Field {
public:
    using Elem = Fp2Elem;

    Fp2Field() = default;
    explicit Fp2Field(u64 p) : base_(p), p_(p)
    {
        if (p >= (u64{1} << 32))
            throw ArgumentError("Fp2Field: characteristic too large for word-sized F_p2 order");
        nonres_ = 2;
        while (legendre(static_cast<i64>(nonres_), p) != -1)
            ++nonres_;
    }

    const PrimeField& base() const { return base_; }
    u64 characteristic() const { return p_; }
    u64 nonresidue() const { return nonres_; }
    mpz_class order() const { return base_.order() * base_.order(); }
    unsigned extension_degree() const { return 2; }

    Elem zero() const { return {0, 0}; }
    Elem one() const { return {1, 0}; }
    Elem from_int(i64 v) const { return {base_.from_int(v), 0}; }
    Elem from_mpz(const mpz_class& v) const { return {base_.from_mpz(v), 0}; }
    Elem embed(u64 v) const { return {v % p_, 0}; }
    Elem make(u64 c0, u64 c1) const { return {c0 % p_, c1 % p_}; }
    Elem gen() const { return {0, 1}; }

    Elem add(Elem a, Elem b) const { return {base_.add(a.c0, b.c0), base_.add(a.c1, b.c1)}; }
    Elem sub(Elem a, Elem b) const { return {base_.sub(a.c0, b.c0), base_.sub(a.c1, b.c1)}; }
    Elem neg(Elem a) const { return {base_.neg(a.c0), base_.neg(a.c1)}; }
    Elem mul(Elem a, Elem b) const
    {
        u64 r0 = base_.add(base_.mul(a.c0, b.c0), base_.mul(nonres_, base_.mul(a.c1, b.c1)));
        u64 r1 = base_.add(base_.mul(a.c0, b.c1), base_.mul(a.c1, b.c0));
        return {r0, r1};
    }
    Elem conj(Elem a) const { return {a.c0, base_.neg(a.c1)}; }
    u64 norm(Elem a) const
    {
        return base_.sub(base_.mul(a.c0, a.c0), base_.mul(nonres_, base_.mul(a.c1, a.c1)));
    }
    Elem inv(Elem a) const
    {
        u64 n = norm(a);
        if (n == 0)
            throw ArgumentError("Fp2Field: inverse of zero");
        u64 ni = base_.inv(n);
        Elem c = conj(a);
        return {base_.mul(c.c0, ni), base_.mul(c.c1, ni)};
    }
    Elem pow(Elem a, const mpz_class& e) const
    {
        Elem r = one();
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = mul(r, r);
            if (mpz_tstbit(e.get_mpz_t(), i))
                r = mul(r, a);
        }
        return r;
    }

    bool is_zero(Elem a) const { return a.c0 == 0 && a.c1 == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    bool in_base(Elem a) const { return a.c1 == 0; }
    u64 base_part(Elem a) const { return a.c0; }

    Elem random(std::mt19937_64& rng) const { return {rng() % p_, rng() % p_}; }
    std::string to_string(Elem a) const
    {
        if (a.c1 == 0)
            return std::to_string(a.c0);
        return std::to_string(a.c0) + "+" + std::to_string(a.c1) + "*t";
    }
    bool less(Elem a, Elem b) const { return a.c1 != b.c1 ? a.c1 < b.c1 : a.c0 < b.c0; }

    bool operator==(const Fp2Field& o) const { return p_ == o.p_; }

private:
    PrimeField base_;
    u64 p_ = 3;
    u64 nonres_ = 2;
};

} // namespace ssendo::arith

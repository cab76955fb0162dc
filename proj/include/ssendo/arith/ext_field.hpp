#pragma once

// F[x]/(g) for an irreducible g over a base field object F.

#include <string>
#include <vector>

#include "poly.hpp"

namespace ssendo::arith {

template <class F>
class ExtField {
public:
    using Base = F;
    using BaseElem = typename F::Elem;
    struct Elem {
        std::vector<BaseElem> c; // reduced, trimmed, lowest degree first
        bool operator==(const Elem&) const = default;
    };

    ExtField(F base, Poly<F> modulus) : ring_(std::move(base)), g_(ring_.monic(modulus))
    {
        if (ring_.deg(g_) < 1)
            throw ArgumentError("ExtField: modulus must have positive degree");
    }

    const F& base() const { return ring_.field(); }
    const PolyRing<F>& ring() const { return ring_; }
    const Poly<F>& modulus() const { return g_; }
    unsigned degree() const { return static_cast<unsigned>(ring_.deg(g_)); }
    u64 characteristic() const { return base().characteristic(); }
    mpz_class order() const
    {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), base().order().get_mpz_t(), degree());
        return r;
    }

    Elem zero() const { return {}; }
    Elem one() const { return lift(base().one()); }
    Elem from_int(i64 v) const { return lift(base().from_int(v)); }
    Elem lift(BaseElem a) const { return wrap(ring_.constant(a)); }
    // The class of x, a root of the modulus.
    Elem gen() const { return wrap(ring_.mod(ring_.x(), g_)); }
    Elem from_poly(const Poly<F>& a) const { return wrap(ring_.mod(a, g_)); }

    Elem add(const Elem& a, const Elem& b) const { return wrap(ring_.add(unwrap(a), unwrap(b))); }
    Elem sub(const Elem& a, const Elem& b) const { return wrap(ring_.sub(unwrap(a), unwrap(b))); }
    Elem neg(const Elem& a) const { return wrap(ring_.neg(unwrap(a))); }
    Elem mul(const Elem& a, const Elem& b) const { return wrap(ring_.mulmod(unwrap(a), unwrap(b), g_)); }
    Elem inv(const Elem& a) const
    {
        if (a.c.empty())
            throw ArgumentError("ExtField: inverse of zero");
        return wrap(ring_.invmod(unwrap(a), g_));
    }

    bool is_zero(const Elem& a) const { return a.c.empty(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool in_base(const Elem& a) const { return a.c.size() <= 1; }
    BaseElem to_base(const Elem& a) const
    {
        if (a.c.size() > 1)
            throw ArgumentError("ExtField: element is not in the base field");
        return a.c.empty() ? base().zero() : a.c[0];
    }

    std::string to_string(const Elem& a) const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (i)
                s += ",";
            s += base().to_string(a.c[i]);
        }
        return s + "]";
    }

private:
    Elem wrap(Poly<F> a) const { return Elem{std::move(a.c)}; }
    Poly<F> unwrap(const Elem& a) const { return Poly<F>{a.c}; }

    PolyRing<F> ring_;
    Poly<F> g_;
};

} // namespace ssendo::arith

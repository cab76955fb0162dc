#pragma once

// Dense univariate polynomials over a field object, lowest degree first.
// Root finding: gcd with x^Q - x, then Cantor-Zassenhaus equal-degree splitting.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fields.hpp"

namespace ssendo::arith {

template <class F>
struct Poly {
    std::vector<typename F::Elem> c;
};

template <class F>
struct RootMult {
    typename F::Elem root;
    unsigned mult;
};

template <class F>
class PolyRing {
public:
    using Elem = typename F::Elem;
    using P = Poly<F>;

    explicit PolyRing(F field) : f_(std::move(field)) {}

    const F& field() const { return f_; }

    P zero() const { return {}; }
    P constant(Elem a) const
    {
        P r{{a}};
        trim(r);
        return r;
    }
    P x() const { return P{{f_.zero(), f_.one()}}; }
    P monomial(Elem a, std::size_t d) const
    {
        P r;
        r.c.assign(d + 1, f_.zero());
        r.c[d] = a;
        trim(r);
        return r;
    }
    P from_ints(const std::vector<i64>& coeffs) const
    {
        P r;
        for (i64 v : coeffs)
            r.c.push_back(f_.from_int(v));
        trim(r);
        return r;
    }
    // Monic linear factor x - a.
    P linear(Elem a) const { return P{{f_.neg(a), f_.one()}}; }

    void trim(P& a) const
    {
        while (!a.c.empty() && f_.is_zero(a.c.back()))
            a.c.pop_back();
    }
    bool is_zero(const P& a) const { return a.c.empty(); }
    int deg(const P& a) const { return static_cast<int>(a.c.size()) - 1; }
    Elem lead(const P& a) const { return a.c.empty() ? f_.zero() : a.c.back(); }
    bool eq(const P& a, const P& b) const
    {
        if (a.c.size() != b.c.size())
            return false;
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (!f_.eq(a.c[i], b.c[i]))
                return false;
        }
        return true;
    }

    P add(const P& a, const P& b) const
    {
        P r;
        r.c.resize(std::max(a.c.size(), b.c.size()), f_.zero());
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            Elem u = i < a.c.size() ? a.c[i] : f_.zero();
            Elem v = i < b.c.size() ? b.c[i] : f_.zero();
            r.c[i] = f_.add(u, v);
        }
        trim(r);
        return r;
    }
    P sub(const P& a, const P& b) const
    {
        P r;
        r.c.resize(std::max(a.c.size(), b.c.size()), f_.zero());
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            Elem u = i < a.c.size() ? a.c[i] : f_.zero();
            Elem v = i < b.c.size() ? b.c[i] : f_.zero();
            r.c[i] = f_.sub(u, v);
        }
        trim(r);
        return r;
    }
    P neg(const P& a) const
    {
        P r = a;
        for (auto& v : r.c)
            v = f_.neg(v);
        return r;
    }
    P scale(const P& a, Elem s) const
    {
        P r = a;
        for (auto& v : r.c)
            v = f_.mul(v, s);
        trim(r);
        return r;
    }
    P mul(const P& a, const P& b) const
    {
        if (a.c.empty() || b.c.empty())
            return {};
        P r;
        r.c.assign(a.c.size() + b.c.size() - 1, f_.zero());
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (f_.is_zero(a.c[i]))
                continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = f_.add(r.c[i + j], f_.mul(a.c[i], b.c[j]));
        }
        trim(r);
        return r;
    }
    P sqr(const P& a) const { return mul(a, a); }

    // Quotient and remainder; b must be nonzero.
    std::pair<P, P> divmod(const P& a, const P& b) const
    {
        if (b.c.empty())
            throw ArgumentError("poly divmod: division by zero polynomial");
        P rem = a;
        trim(rem);
        if (rem.c.size() < b.c.size())
            return {P{}, rem};
        P quot;
        quot.c.assign(rem.c.size() - b.c.size() + 1, f_.zero());
        Elem linv = f_.inv(b.c.back());
        for (std::size_t k = quot.c.size(); k-- > 0;) {
            Elem coef = f_.mul(rem.c[k + b.c.size() - 1], linv);
            quot.c[k] = coef;
            if (f_.is_zero(coef))
                continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                rem.c[k + j] = f_.sub(rem.c[k + j], f_.mul(coef, b.c[j]));
        }
        trim(rem);
        trim(quot);
        return {quot, rem};
    }
    P mod(const P& a, const P& b) const { return divmod(a, b).second; }
    P div(const P& a, const P& b) const { return divmod(a, b).first; }

    P monic(const P& a) const
    {
        if (a.c.empty())
            return a;
        return scale(a, f_.inv(a.c.back()));
    }
    P gcd(P a, P b) const
    {
        while (!b.c.empty()) {
            P r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    // Returns (g, s) with s*a = g mod m, g = gcd(a, m) monic.
    std::pair<P, P> half_gcd_inverse(const P& a, const P& m) const
    {
        P r0 = m, r1 = mod(a, m);
        P s0{}, s1 = constant(f_.one());
        while (!r1.c.empty()) {
            auto [q, r] = divmod(r0, r1);
            P s = sub(s0, mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r0.c.empty())
            return {r0, s0};
        Elem li = f_.inv(r0.c.back());
        return {scale(r0, li), scale(s0, li)};
    }
    P invmod(const P& a, const P& m) const
    {
        auto [g, s] = half_gcd_inverse(a, m);
        if (deg(g) != 0)
            throw ArgumentError("poly invmod: not invertible");
        return mod(s, m);
    }

    P mulmod(const P& a, const P& b, const P& m) const { return mod(mul(a, b), m); }
    P powmod(const P& base, const mpz_class& e, const P& m) const
    {
        P r = mod(constant(f_.one()), m);
        P b = mod(base, m);
        std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = mulmod(r, r, m);
            if (mpz_tstbit(e.get_mpz_t(), i))
                r = mulmod(r, b, m);
        }
        return r;
    }
    P pow(const P& base, unsigned e) const
    {
        P r = constant(f_.one());
        for (unsigned i = 0; i < e; ++i)
            r = mul(r, base);
        return r;
    }

    Elem eval(const P& a, Elem x0) const
    {
        Elem r = f_.zero();
        for (std::size_t i = a.c.size(); i-- > 0;)
            r = f_.add(f_.mul(r, x0), a.c[i]);
        return r;
    }
    P derivative(const P& a) const
    {
        P r;
        for (std::size_t i = 1; i < a.c.size(); ++i)
            r.c.push_back(f_.mul(f_.from_int(static_cast<i64>(i)), a.c[i]));
        trim(r);
        return r;
    }
    P from_roots(const std::vector<Elem>& roots) const
    {
        P r = constant(f_.one());
        for (const auto& z : roots)
            r = mul(r, linear(z));
        return r;
    }

    // x^(Q^k) mod m, Q the field order.
    P frobenius_power(const P& m, unsigned k = 1) const
    {
        P r = mod(x(), m);
        for (unsigned i = 0; i < k; ++i)
            r = powmod(r, f_.order(), m);
        return r;
    }

    // Product of the distinct linear factors of a.
    P linear_part(const P& a) const
    {
        P am = monic(a);
        if (deg(am) <= 0)
            return constant(f_.one());
        P xq = frobenius_power(am);
        return gcd(am, sub(xq, x()));
    }

    // Splits a squarefree monic product of degree-d irreducibles into its factors.
    std::vector<P> equal_degree_split(const P& a, unsigned d) const
    {
        std::vector<P> out;
        P am = monic(a);
        if (deg(am) <= 0)
            return out;
        if (static_cast<unsigned>(deg(am)) == d) {
            out.push_back(am);
            return out;
        }
        if (f_.characteristic() == 2)
            throw CapabilityError("equal-degree splitting needs odd characteristic");
        std::mt19937_64 rng(rng_seed().load());
        mpz_class qd;
        mpz_pow_ui(qd.get_mpz_t(), f_.order().get_mpz_t(), d);
        mpz_class e = (qd - 1) / 2;
        std::vector<P> todo{am};
        while (!todo.empty()) {
            P g = std::move(todo.back());
            todo.pop_back();
            if (static_cast<unsigned>(deg(g)) == d) {
                out.push_back(g);
                continue;
            }
            for (;;) {
                P t;
                for (int i = 0; i < deg(g); ++i)
                    t.c.push_back(f_.random(rng));
                trim(t);
                if (deg(t) < 1)
                    continue;
                P s = sub(powmod(t, e, g), constant(f_.one()));
                P h = gcd(g, s);
                if (deg(h) > 0 && deg(h) < deg(g)) {
                    todo.push_back(h);
                    todo.push_back(div(g, h));
                    break;
                }
            }
        }
        return out;
    }

    // Distinct roots in the coefficient field, sorted by the field's order.
    std::vector<Elem> distinct_roots(const P& a) const
    {
        if (a.c.empty())
            throw ArgumentError("poly roots: zero polynomial");
        P lin = linear_part(a);
        std::vector<Elem> roots;
        if (deg(lin) <= 0)
            return roots;
        if (f_.is_zero(lin.c[0])) {
            roots.push_back(f_.zero());
            lin = div(lin, x());
        }
        for (const auto& fac : equal_degree_split(lin, 1))
            roots.push_back(f_.neg(fac.c[0]));
        std::sort(roots.begin(), roots.end(), [&](Elem u, Elem v) { return f_.less(u, v); });
        return roots;
    }

    std::vector<RootMult<F>> roots(const P& a) const
    {
        std::vector<RootMult<F>> out;
        for (const auto& z : distinct_roots(a)) {
            unsigned m = 0;
            P cur = a;
            for (;;) {
                auto [q, r] = divmod(cur, linear(z));
                if (!r.c.empty())
                    break;
                ++m;
                cur = std::move(q);
            }
            out.push_back({z, m});
        }
        return out;
    }

    // True iff a is a product of linear factors: strip distinct-linear gcds until nothing is left.
    bool splits_linear(const P& a) const
    {
        if (a.c.empty())
            throw ArgumentError("poly splits_linear: zero polynomial");
        P cur = monic(a);
        while (deg(cur) > 0) {
            P g = linear_part(cur);
            if (deg(g) <= 0)
                return false;
            cur = div(cur, g);
        }
        return true;
    }

    struct DegreeBlock {
        unsigned degree;
        P product;
    };

    // Distinct-degree factorization of a squarefree monic polynomial.
    std::vector<DegreeBlock> distinct_degree(const P& a) const
    {
        std::vector<DegreeBlock> out;
        P rest = monic(a);
        P h = mod(x(), rest);
        unsigned d = 0;
        while (deg(rest) > 0) {
            ++d;
            if (2 * d > static_cast<unsigned>(deg(rest))) {
                out.push_back({static_cast<unsigned>(deg(rest)), rest});
                break;
            }
            h = powmod(h, f_.order(), rest);
            P g = gcd(rest, sub(h, x()));
            if (deg(g) > 0) {
                out.push_back({d, g});
                rest = div(rest, g);
                h = mod(h, rest);
            }
        }
        return out;
    }

    // Complete factorization of a squarefree polynomial into monic irreducibles.
    std::vector<P> factor_squarefree(const P& a) const
    {
        std::vector<P> out;
        for (const auto& blk : distinct_degree(a)) {
            for (auto& fac : equal_degree_split(blk.product, blk.degree))
                out.push_back(std::move(fac));
        }
        return out;
    }

private:
    F f_;
};

} // namespace ssendo::arith

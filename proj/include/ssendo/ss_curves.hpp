#pragma once

// Short Weierstrass curves over F_p and F_p2: supersingularity, j-invariants,
// division polynomials and the Velu neighbor oracle.

#include <algorithm>
#include <string>
#include <vector>

#include "arith.hpp"

namespace ssendo {

using JInvariant = Fp2Elem;

struct Curve {
    u64 p = 0;
    u64 A = 0;
    u64 B = 0;
};

template <class F>
struct CurveOver {
    typename F::Elem A;
    typename F::Elem B;
};

template <class F>
typename F::Elem discriminant_part(const F& K, const typename F::Elem& A, const typename F::Elem& B)
{
    // 4A^3 + 27B^2
    auto a3 = K.mul(K.mul(A, A), A);
    return K.add(K.mul(K.from_int(4), a3), K.mul(K.from_int(27), K.mul(B, B)));
}

template <class F>
typename F::Elem j_invariant_of(const F& K, const typename F::Elem& A, const typename F::Elem& B)
{
    auto den = discriminant_part(K, A, B);
    if (K.is_zero(den))
        throw ArgumentError("singular curve: 4A^3 + 27B^2 = 0");
    auto num = K.mul(K.from_int(1728 * 4), K.mul(K.mul(A, A), A));
    return K.mul(num, K.inv(den));
}

inline u64 j_invariant(const Curve& E) { return j_invariant_of(PrimeField(E.p), E.A, E.B); }

// A curve with invariant j: (0,1) for j=0, (1,0) for j=1728, else A = 3j(1728-j), B = 2j(1728-j)^2.
template <class F>
CurveOver<F> curve_with_j(const F& K, const typename F::Elem& j)
{
    auto k1728 = K.from_int(1728);
    if (K.is_zero(j))
        return {K.zero(), K.one()};
    if (K.eq(j, k1728))
        return {K.one(), K.zero()};
    auto t = K.sub(k1728, j);
    auto A = K.mul(K.from_int(3), K.mul(j, t));
    auto B = K.mul(K.from_int(2), K.mul(j, K.mul(t, t)));
    return {A, B};
}

inline Curve curve_from_j(u64 j, u64 p)
{
    PrimeField K(p);
    if (p <= 3)
        throw ArgumentError("curve_from_j: p must exceed 3");
    auto c = curve_with_j(K, K.from_int(static_cast<i64>(j % p)));
    return {p, c.A, c.B};
}

// Coefficient of x^(p-1) in (x^3 + Ax + B)^((p-1)/2).
template <class F>
typename F::Elem hasse_invariant(const F& K, const typename F::Elem& A, const typename F::Elem& B)
{
    const u64 p = K.characteristic();
    const u64 m = (p - 1) / 2;
    if (K.is_zero(B)) {
        if (m % 2 == 1)
            return K.zero();
        // binom(m, m/2) A^(m/2)
        auto binom = K.one();
        for (u64 i = 1; i <= m / 2; ++i) {
            binom = K.mul(binom, K.from_int(static_cast<i64>(m / 2 + i)));
            binom = K.mul(binom, K.inv(K.from_int(static_cast<i64>(i))));
        }
        auto apow = K.one();
        for (u64 i = 0; i < m / 2; ++i)
            apow = K.mul(apow, A);
        return K.mul(binom, apow);
    }
    // B(n+1) g_{n+1} = (3m - n + 2) g_{n-2} + A(m - n) g_n, g_0 = B^m
    std::vector<typename F::Elem> g(p, K.zero());
    auto bm = K.one();
    for (u64 i = 0; i < m; ++i)
        bm = K.mul(bm, B);
    g[0] = bm;
    auto binv = K.inv(B);
    for (u64 n = 0; n + 1 <= p - 1; ++n) {
        auto term = K.mul(A, K.mul(K.from_int(static_cast<i64>(m) - static_cast<i64>(n)), g[n]));
        if (n >= 2)
            term = K.add(term, K.mul(K.from_int(3 * static_cast<i64>(m) - static_cast<i64>(n) + 2), g[n - 2]));
        g[n + 1] = K.mul(term, K.mul(binv, K.inv(K.from_int(static_cast<i64>(n + 1)))));
    }
    return g[p - 1];
}

inline bool is_supersingular(const Curve& E)
{
    if (E.p <= 3)
        throw ArgumentError("is_supersingular: p must exceed 3");
    PrimeField K(E.p);
    if (K.is_zero(discriminant_part(K, E.A % E.p, E.B % E.p)))
        throw ArgumentError("is_supersingular: singular curve");
    return K.is_zero(hasse_invariant(K, E.A % E.p, E.B % E.p));
}

inline bool is_supersingular_j(const Fp2Field& K, const JInvariant& j)
{
    auto c = curve_with_j(K, j);
    return K.is_zero(hasse_invariant(K, c.A, c.B));
}

inline std::vector<u64> supersingular_j_list(u64 p)
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("supersingular_j_list: p must be a prime > 3");
    PrimeField K(p);
    std::vector<u64> out;
    for (u64 j = 0; j < p; ++j) {
        auto c = curve_with_j(K, j);
        if (K.is_zero(hasse_invariant(K, c.A, c.B)))
            out.push_back(j);
    }
    return out;
}

// All supersingular j in F_p2, by a full sweep (p^3 work; for small p only).
inline std::vector<JInvariant> supersingular_j_list_fp2(u64 p)
{
    Fp2Field K(p);
    std::vector<JInvariant> out;
    for (u64 c1 = 0; c1 < p; ++c1)
        for (u64 c0 = 0; c0 < p; ++c0)
            if (is_supersingular_j(K, K.make(c0, c1)))
                out.push_back(K.make(c0, c1));
    std::sort(out.begin(), out.end(), [&](auto a, auto b) { return K.less(a, b); });
    return out;
}

// #E(F_p) by summing Legendre symbols.
inline u64 count_points(const Curve& E)
{
    PrimeField K(E.p);
    u64 total = 1;
    for (u64 x = 0; x < E.p; ++x) {
        u64 rhs = K.add(K.mul(K.mul(x, x), x), K.add(K.mul(E.A, x), E.B));
        total += 1 + legendre(static_cast<i64>(rhs), E.p);
    }
    return total;
}

// Division polynomials with the y-factor removed from even indices:
// g_n = psi_n for odd n, psi_n / y for even n.
template <class F>
class DivisionPolynomials {
public:
    using P = Poly<F>;

    DivisionPolynomials(const PolyRing<F>& R, typename F::Elem A, typename F::Elem B) : R_(R), A_(A), B_(B)
    {
        const F& K = R_.field();
        rhs_ = P{{B, A, K.zero(), K.one()}};
        R_.trim(rhs_);
        rhs2_ = R_.sqr(rhs_);
        auto a2 = K.mul(A, A);
        g_.push_back(R_.zero());
        g_.push_back(R_.constant(K.one()));
        g_.push_back(R_.constant(K.from_int(2)));
        // 3x^4 + 6Ax^2 + 12Bx - A^2
        g_.push_back(P{{K.neg(a2), K.mul(K.from_int(12), B), K.mul(K.from_int(6), A), K.zero(), K.from_int(3)}});
        // 4(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
        P g4{{K.sub(K.neg(K.mul(K.from_int(8), K.mul(B, B))), K.mul(a2, A)),
              K.neg(K.mul(K.from_int(4), K.mul(A, B))), K.neg(K.mul(K.from_int(5), a2)), K.mul(K.from_int(20), B),
              K.mul(K.from_int(5), A), K.zero(), K.one()}};
        g_.push_back(R_.scale(g4, K.from_int(4)));
        for (auto& g : g_)
            R_.trim(g);
    }

    const P& rhs() const { return rhs_; }

    const P& get(std::size_t n)
    {
        while (g_.size() <= n)
            extend();
        return g_[n];
    }

private:
    void extend()
    {
        const std::size_t n = g_.size();
        const std::size_t m = n / 2;
        if (n % 2 == 1) {
            P t1 = R_.mul(g_[m + 2], R_.mul(g_[m], R_.sqr(g_[m])));
            P t2 = R_.mul(g_[m - 1], R_.mul(g_[m + 1], R_.sqr(g_[m + 1])));
            if (m % 2 == 0)
                t1 = R_.mul(rhs2_, t1);
            else
                t2 = R_.mul(rhs2_, t2);
            g_.push_back(R_.sub(t1, t2));
        } else {
            // needs g_{m+2} with m+2 < n, true for n >= 6
            P inner = R_.sub(R_.mul(g_[m + 2], R_.sqr(g_[m - 1])), R_.mul(g_[m - 2], R_.sqr(g_[m + 1])));
            const F& K = R_.field();
            g_.push_back(R_.scale(R_.mul(g_[m], inner), K.inv(K.from_int(2))));
        }
    }

    PolyRing<F> R_;
    typename F::Elem A_, B_;
    P rhs_, rhs2_;
    std::vector<P> g_;
};

namespace detail {

template <class E, class F>
typename E::Elem eval_in(const E& L, const Poly<F>& f, const typename E::Elem& x)
{
    auto r = L.zero();
    for (std::size_t i = f.c.size(); i-- > 0;)
        r = L.add(L.mul(r, x), L.lift(f.c[i]));
    return r;
}

inline JInvariant velu_codomain_j(const Fp2Field& K, Fp2Elem A, Fp2Elem B, Fp2Elem v, Fp2Elem w)
{
    auto A2 = K.sub(A, K.mul(K.from_int(5), v));
    auto B2 = K.sub(B, K.mul(K.from_int(7), w));
    return j_invariant_of(K, A2, B2);
}

} // namespace detail

// The l+1 codomain j-invariants of the l-isogenies from a curve with invariant j,
// found by splitting the l-division polynomial into kernels and applying Velu.
inline std::vector<JInvariant> velu_neighbors(const JInvariant& j, u64 ell, u64 p)
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("velu_neighbors: p must be a prime > 3");
    if (!is_prime(ell) || ell == p)
        throw ArgumentError("velu_neighbors: l must be a prime different from p");
    if (ell > 13)
        throw CapabilityError("velu_neighbors: l=" + std::to_string(ell) + " is above the supported range");
    Fp2Field K(p);
    PolyRing<Fp2Field> R(K);
    auto E = curve_with_j(K, K.make(j.c0, j.c1));
    std::vector<JInvariant> out;

    if (ell == 2) {
        DivisionPolynomials<Fp2Field> dp(R, E.A, E.B);
        auto roots = R.roots(dp.rhs());
        for (const auto& r : roots) {
            for (unsigned k = 0; k < r.mult; ++k) {
                auto v = K.add(K.mul(K.from_int(3), K.mul(r.root, r.root)), E.A);
                out.push_back(detail::velu_codomain_j(K, E.A, E.B, v, K.mul(r.root, v)));
            }
        }
        if (out.size() != 3)
            throw CapabilityError("velu_neighbors: 2-torsion not rational over F_p2");
    } else {
        DivisionPolynomials<Fp2Field> dp(R, E.A, E.B);
        const std::size_t half = (ell - 1) / 2;
        for (std::size_t k = 0; k <= half + 1; ++k)
            dp.get(k);
        auto factors = R.factor_squarefree(dp.get(ell));
        std::vector<bool> used(factors.size(), false);
        for (std::size_t fi = 0; fi < factors.size(); ++fi) {
            if (used[fi])
                continue;
            ExtField<Fp2Field> L(K, factors[fi]);
            const auto X = L.gen();
            const auto fX = detail::eval_in(L, dp.rhs(), X);
            std::vector<ExtField<Fp2Field>::Elem> xs{X};
            for (std::size_t k = 2; k <= half; ++k) {
                auto gkm = detail::eval_in(L, dp.get(k - 1), X);
                auto gkp = detail::eval_in(L, dp.get(k + 1), X);
                auto gk = detail::eval_in(L, dp.get(k), X);
                auto num = L.mul(gkm, gkp);
                auto den = L.mul(gk, gk);
                if (k % 2 == 1)
                    num = L.mul(num, fX);
                else
                    den = L.mul(den, fX);
                xs.push_back(L.sub(X, L.mul(num, L.inv(den))));
            }
            PolyRing<ExtField<Fp2Field>> RL(L);
            auto hL = RL.from_roots(xs);
            Poly<Fp2Field> h;
            for (const auto& c : hL.c) {
                if (!L.in_base(c))
                    throw CapabilityError("velu_neighbors: kernel polynomial not defined over F_p2");
                h.c.push_back(L.to_base(c));
            }
            for (std::size_t fk = fi; fk < factors.size(); ++fk) {
                if (!used[fk] && R.deg(R.gcd(h, factors[fk])) > 0)
                    used[fk] = true;
            }
            auto p1 = L.zero(), p2 = L.zero(), p3 = L.zero();
            for (const auto& xk : xs) {
                auto x2 = L.mul(xk, xk);
                p1 = L.add(p1, xk);
                p2 = L.add(p2, x2);
                p3 = L.add(p3, L.mul(x2, xk));
            }
            const auto n = K.from_int(static_cast<i64>(half));
            auto v = K.add(K.mul(K.from_int(6), L.to_base(p2)), K.mul(K.from_int(2), K.mul(E.A, n)));
            auto w = K.add(K.add(K.mul(K.from_int(10), L.to_base(p3)), K.mul(K.from_int(6), K.mul(E.A, L.to_base(p1)))),
                           K.mul(K.from_int(4), K.mul(E.B, n)));
            out.push_back(detail::velu_codomain_j(K, E.A, E.B, v, w));
        }
        if (out.size() != ell + 1)
            throw InternalError("velu_neighbors: found " + std::to_string(out.size()) + " kernels instead of " +
                                std::to_string(ell + 1));
    }
    std::sort(out.begin(), out.end(), [&](auto a, auto b) { return K.less(a, b); });
    return out;
}

} // namespace ssendo

#pragma once

// Positive definite binary quadratic forms ax^2 + bxy + cy^2 of negative discriminant.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace ssendo {

struct QuadForm {
    i64 a = 1;
    i64 b = 0;
    i64 c = 1;

    i64 discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm&) const = default;
    std::string to_string() const
    {
        return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    }
};

inline std::ostream& operator<<(std::ostream& os, const QuadForm& f) { return os << f.to_string(); }

struct ClassGroupData {
    i64 discriminant = 0;
    std::vector<QuadForm> reduced_forms;
    std::size_t class_number = 0;
};

struct PrimeFormClass {
    QuadForm form;
    bool is_principal = false;
};

inline void require_discriminant(i64 D)
{
    if (D >= 0)
        throw ArgumentError("discriminant must be negative, got " + std::to_string(D));
    i64 r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw ArgumentError("discriminant must be 0 or 1 mod 4, got " + std::to_string(D));
}

inline bool is_reduced(const QuadForm& f)
{
    i64 ab = f.b < 0 ? -f.b : f.b;
    if (!(ab <= f.a && f.a <= f.c))
        return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

inline QuadForm principal_form(i64 D)
{
    require_discriminant(D);
    i64 b = (D % 2 == 0) ? 0 : 1;
    return {1, b, (b * b - D) / 4};
}

// Standard reduction of a positive definite form.
inline QuadForm reduce(QuadForm f)
{
    using arith::i128;
    if (f.a <= 0 || f.c <= 0)
        throw ArgumentError("reduce: form " + f.to_string() + " is not positive definite");
    const i64 D = f.discriminant();
    auto normalize = [&](QuadForm& g) {
        // b' = b mod 2a, taken in (-a, a]
        i64 twoa = 2 * g.a;
        i64 t = (g.a - g.b) % twoa;
        if (t < 0)
            t += twoa;
        g.b = g.a - t;
        g.c = static_cast<i64>((static_cast<i128>(g.b) * g.b - D) / (4 * static_cast<i128>(g.a)));
    };
    normalize(f);
    while (f.a > f.c) {
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize(f);
    }
    if (f.a == f.c && f.b < 0)
        f.b = -f.b;
    return f;
}

inline QuadForm inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

inline ClassGroupData reduced_forms(i64 D)
{
    require_discriminant(D);
    ClassGroupData out;
    out.discriminant = D;
    const i64 absD = -D;
    for (i64 a = 1; 3 * a * a <= absD; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b - D) % 2 + 2) % 2 != 0)
                continue;
            i64 num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            i64 c = num / (4 * a);
            if (c < a)
                continue;
            if (b < 0 && a == c)
                continue;
            if (arith::gcd(arith::gcd(a, b), c) != 1)
                continue;
            out.reduced_forms.push_back({a, b, c});
        }
    }
    out.class_number = out.reduced_forms.size();
    return out;
}

inline std::size_t class_number(i64 D) { return reduced_forms(D).class_number; }

namespace detail {

// (u, v, d) with u*a + v*b = d = gcd(a, b) >= 0.
inline void ext_gcd(i64 a, i64 b, i64& u, i64& v, i64& d)
{
    i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
        t = v0 - q * v1;
        v0 = v1;
        v1 = t;
    }
    if (a < 0) {
        a = -a;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    d = a;
}

inline i64 floor_mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace detail

// Gauss composition followed by reduction.
inline QuadForm compose_reduce(QuadForm f1, QuadForm f2)
{
    using arith::i128;
    const i64 D = f1.discriminant();
    if (f2.discriminant() != D)
        throw ArgumentError("compose_reduce: discriminants differ (" + std::to_string(D) + " vs " +
                            std::to_string(f2.discriminant()) + ")");
    if (f1.a > f2.a)
        std::swap(f1, f2);
    const i64 s = (f1.b + f2.b) / 2;
    const i64 n = f2.b - s;
    i64 y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        i64 u, v;
        detail::ext_gcd(f2.a, f1.a, u, v, d);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        i64 u, v;
        detail::ext_gcd(s, d, u, v, d1);
        x2 = u;
        y2 = -v;
    }
    const i64 v1 = f1.a / d1;
    const i64 v2 = f2.a / d1;
    i128 rr = (static_cast<i128>(y1) * y2 % v1) * n % v1 - static_cast<i128>(x2) * f2.c % v1;
    rr %= v1;
    if (rr < 0)
        rr += v1;
    const i64 r = static_cast<i64>(rr);
    const i128 b3 = static_cast<i128>(f2.b) + 2 * static_cast<i128>(v2) * r;
    const i128 a3 = static_cast<i128>(v1) * v2;
    if ((b3 * b3 - D) % (4 * a3) != 0)
        throw InternalError("compose_reduce: non-integral composite");
    // b3 can be large before the first normalization step
    i128 A = a3, B = b3;
    i128 t = (A - B) % (2 * A);
    if (t < 0)
        t += 2 * A;
    B = A - t;
    i128 C = (B * B - D) / (4 * A);
    return reduce({static_cast<i64>(A), static_cast<i64>(B), static_cast<i64>(C)});
}

inline QuadForm class_power(const QuadForm& f, u64 e)
{
    QuadForm r = principal_form(f.discriminant());
    QuadForm base = reduce(f);
    while (e) {
        if (e & 1)
            r = compose_reduce(r, base);
        base = compose_reduce(base, base);
        e >>= 1;
    }
    return r;
}

// Class of a prime form of norm q, or nothing when q is inert.
inline std::optional<PrimeFormClass> prime_form_class(i64 D, u64 q)
{
    require_discriminant(D);
    arith::require_odd_prime(q, "prime_form_class");
    if (D % static_cast<i64>(q) == 0)
        throw ArgumentError("prime_form_class: q=" + std::to_string(q) + " divides D=" + std::to_string(D));
    if (legendre(D, q) != 1)
        return std::nullopt;
    const i64 qq = static_cast<i64>(q);
    const i64 m = 4 * qq;
    for (i64 b = 0; b < 2 * qq; ++b) {
        if (((b - D) % 2 + 2) % 2 != 0)
            continue;
        if (detail::floor_mod(b * b - D, m) != 0)
            continue;
        QuadForm f = reduce({qq, b, (b * b - D) / m});
        return PrimeFormClass{f, f == principal_form(D)};
    }
    throw InternalError("prime_form_class: no square root of D mod 4q for a split prime");
}

// All (x, y), x, y >= 0, with x^2 + n y^2 = m.
inline std::vector<std::pair<u64, u64>> solve_norm_eq(u64 n, u64 m)
{
    std::vector<std::pair<u64, u64>> out;
    if (n == 0 || m == 0)
        throw ArgumentError("solve_norm_eq: n and m must be positive");
    for (u64 y = 0;; ++y) {
        arith::u128 ny2 = static_cast<arith::u128>(n) * y * y;
        if (ny2 > m)
            break;
        u64 rest = m - static_cast<u64>(ny2);
        u64 x;
        if (arith::is_square(rest, &x))
            out.emplace_back(x, y);
    }
    return out;
}

inline bool norm_eq_solvable(u64 n, u64 m) { return !solve_norm_eq(n, m).empty(); }

} // namespace ssendo

#include <gtest/gtest.h>

#include <numeric>
#include <set>
#include <tuple>

#include <ssendo/quad_class.hpp>

using namespace ssendo;

namespace {

std::size_t triple_sweep_count(i64 D)
{
    std::size_t n = 0;
    for (i64 a = 1; 3 * a * a <= -D; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            i64 c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1)
                continue;
            ++n;
        }
    return n;
}

// Product of the ideals [a, -b/2 + w] with w^2 = -m (D = -4m), by Hermite reduction of the four generators.
QuadForm ideal_product(const QuadForm& f, const QuadForm& g, i64 D)
{
    const i64 m = -D / 4;
    const i64 s = -f.b / 2, t = -g.b / 2;
    // (x, y) stands for x + y w
    std::vector<std::pair<i64, i64>> v = {{f.a * g.a, 0}, {f.a * t, f.a}, {g.a * s, g.a}, {s * t - m, s + t}};
    i64 x0 = 0, gy = 0;
    for (auto [x, y] : v) {
        if (y == 0)
            continue;
        // extended gcd of gy and y, carrying the x-coordinates along
        i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1, r0 = gy, r1 = y;
        while (r1 != 0) {
            i64 q = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
            std::tie(u0, u1) = std::make_pair(u1, u0 - q * u1);
            std::tie(v0, v1) = std::make_pair(v1, v0 - q * v1);
        }
        x0 = u0 * x0 + v0 * x;
        gy = r0;
        if (gy < 0)
            gy = -gy, x0 = -x0;
    }
    i64 n1 = 0;
    for (auto [x, y] : v)
        n1 = std::gcd(n1, std::abs(x - (y / gy) * x0));
    const i64 a = n1 / gy;
    i64 b = detail::floor_mod(-2 * (x0 / gy), 2 * a);
    if (b > a)
        b -= 2 * a;
    return reduce({a, b, (b * b - D) / (4 * a)});
}

} // namespace

TEST(ReducedForms, SmallDiscriminants)
{
    auto d3 = reduced_forms(-3);
    ASSERT_EQ(d3.class_number, 1u);
    EXPECT_EQ(d3.reduced_forms[0], (QuadForm{1, 1, 1}));
    auto d4 = reduced_forms(-4);
    ASSERT_EQ(d4.class_number, 1u);
    EXPECT_EQ(d4.reduced_forms[0], (QuadForm{1, 0, 1}));
    EXPECT_EQ(class_number(-404), 14u);
}

TEST(ReducedForms, RejectsBadDiscriminant)
{
    EXPECT_THROW(reduced_forms(-5), ArgumentError);
    EXPECT_THROW(reduced_forms(4), ArgumentError);
}

TEST(ReducedForms, CountMatchesTripleSweep)
{
    for (i64 D = -3; D > -2000; --D) {
        if (((D % 4) + 4) % 4 > 1)
            continue;
        auto cg = reduced_forms(D);
        ASSERT_EQ(cg.class_number, triple_sweep_count(D)) << D;
        ASSERT_EQ(cg.class_number, cg.reduced_forms.size());
        std::set<std::tuple<i64, i64, i64>> seen;
        for (const auto& f : cg.reduced_forms) {
            ASSERT_TRUE(is_reduced(f));
            ASSERT_EQ(f.discriminant(), D);
            ASSERT_TRUE(seen.insert({f.a, f.b, f.c}).second);
        }
    }
}

TEST(Compose, PrincipalAndInverse)
{
    const i64 D = -404;
    const QuadForm e = principal_form(D);
    EXPECT_EQ(compose_reduce(e, e), e);
    for (const auto& f : reduced_forms(D).reduced_forms) {
        EXPECT_EQ(compose_reduce(f, inverse(f)), e);
        EXPECT_EQ(compose_reduce(f, e), f);
    }
    EXPECT_THROW(compose_reduce(QuadForm{1, 0, 101}, QuadForm{1, 1, 1}), ArgumentError);
}

TEST(Compose, MatchesIdealMultiplication)
{
    for (i64 D : {-404L, -4 * 311L, -4 * 1847L, -4 * 23L}) {
        auto forms = reduced_forms(D).reduced_forms;
        for (const auto& f : forms)
            for (const auto& g : forms)
                ASSERT_EQ(compose_reduce(f, g), ideal_product(f, g, D)) << f << " * " << g << " D=" << D;
    }
    EXPECT_EQ(compose_reduce(QuadForm{3, 2, 34}, QuadForm{3, 2, 34}), ideal_product({3, 2, 34}, {3, 2, 34}, -404));
}

TEST(Compose, GroupLawsExhaustive)
{
    for (i64 D = -3; D > -1000; --D) {
        if (((D % 4) + 4) % 4 > 1)
            continue;
        auto forms = reduced_forms(D).reduced_forms;
        if (forms.size() > 12)
            forms.resize(12);
        for (const auto& f : forms)
            for (const auto& g : forms) {
                auto fg = compose_reduce(f, g);
                ASSERT_TRUE(is_reduced(fg));
                ASSERT_EQ(fg, compose_reduce(g, f));
                for (const auto& h : forms)
                    ASSERT_EQ(compose_reduce(fg, h), compose_reduce(f, compose_reduce(g, h))) << D;
            }
    }
}

TEST(PrimeFormClass, Examples)
{
    auto t = prime_form_class(-3, 7);
    ASSERT_TRUE(t.has_value());
    EXPECT_TRUE(t->is_principal);

    auto c = prime_form_class(-404, 11);
    ASSERT_TRUE(c.has_value());
    EXPECT_FALSE(c->is_principal);
    // (11, 6, 10) reduces to (10, -6, 11); its conjugate is (10, 6, 11)
    EXPECT_EQ(c->form, (QuadForm{10, -6, 11}));
    EXPECT_EQ(inverse(c->form), (QuadForm{10, 6, 11}));

    EXPECT_FALSE(prime_form_class(-404, 19).has_value());
    EXPECT_THROW(prime_form_class(-404, 101), ArgumentError);
}

TEST(PrimeFormClass, ClassRepresentsQ)
{
    for (u64 q : arith::primes_between(3, 200)) {
        for (i64 D : {-404L, -311L, -4 * 1847L}) {
            if ((-D) % static_cast<i64>(q) == 0)
                continue;
            auto c = prime_form_class(D, q);
            ASSERT_EQ(c.has_value(), legendre(D, q) == 1);
            if (!c)
                continue;
            // the class represents q
            bool found = false;
            const QuadForm f = c->form;
            for (i64 x = -60; x <= 60 && !found; ++x)
                for (i64 y = -60; y <= 60 && !found; ++y)
                    found = f.a * x * x + f.b * x * y + f.c * y * y == static_cast<i64>(q);
            ASSERT_TRUE(found) << f << " q=" << q;
            ASSERT_EQ(c->is_principal, c->form == principal_form(D));
        }
    }
}

TEST(SolveNormEq, Examples)
{
    EXPECT_TRUE(solve_norm_eq(404, 33).empty());
    auto s = solve_norm_eq(4, 8);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0], (std::pair<u64, u64>{2, 1}));
}

TEST(SolveNormEq, MatchesDoubleLoop)
{
    for (u64 n : {1ull, 2ull, 4ull, 11ull, 311ull, 404ull})
        for (u64 m = 1; m < 3000; m += 7) {
            bool brute = false;
            for (u64 y = 0; n * y * y <= m && !brute; ++y)
                for (u64 x = 0; x * x + n * y * y <= m && !brute; ++x)
                    brute = x * x + n * y * y == m;
            auto sols = solve_norm_eq(n, m);
            ASSERT_EQ(!sols.empty(), brute) << n << " " << m;
            for (auto [x, y] : sols)
                ASSERT_EQ(x * x + n * y * y, m);
        }
}

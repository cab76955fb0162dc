#include <gtest/gtest.h>

#include <ssendo/hilbert.hpp>
#include <ssendo/ss_curves.hpp>

using namespace ssendo;

namespace {

std::vector<mpz_class> ints(std::initializer_list<const char*> cs)
{
    std::vector<mpz_class> out;
    for (auto c : cs)
        out.emplace_back(c);
    return out;
}

u64 eval_mod(const ClassPolynomial& H, u64 x, u64 p)
{
    mpz_class acc = 0;
    for (std::size_t i = H.coefficients.size(); i-- > 0;) {
        acc = acc * x + H.coefficients[i];
        acc %= static_cast<unsigned long>(p);
    }
    if (acc < 0)
        acc += static_cast<unsigned long>(p);
    return acc.get_ui();
}

} // namespace

TEST(HilbertClassPoly, ClassNumberOne)
{
    EXPECT_EQ(hilbert_class_poly(-3).coefficients, ints({"0", "1"}));
    EXPECT_EQ(hilbert_class_poly(-4).coefficients, ints({"-1728", "1"}));
    EXPECT_EQ(hilbert_class_poly(-7).coefficients, ints({"3375", "1"}));
    EXPECT_EQ(hilbert_class_poly(-8).coefficients, ints({"-8000", "1"}));
    EXPECT_EQ(hilbert_class_poly(-11).coefficients, ints({"32768", "1"}));
    EXPECT_EQ(hilbert_class_poly(-163).coefficients, ints({"262537412640768000", "1"}));
}

TEST(HilbertClassPoly, HigherClassNumber)
{
    EXPECT_EQ(hilbert_class_poly(-15).coefficients, ints({"-121287375", "191025", "1"}));
    EXPECT_EQ(hilbert_class_poly(-23).coefficients,
              ints({"12771880859375", "-5151296875", "3491750", "1"}));
}

TEST(HilbertClassPoly, DegreeIsClassNumber)
{
    for (i64 D : {-20L, -56L, -71L, -84L, -311L, -404L, -431L, -1244L})
        EXPECT_EQ(hilbert_class_poly(D).degree(), class_number(D)) << D;
}

TEST(HilbertClassPoly, RejectsBadDiscriminant)
{
    EXPECT_THROW(hilbert_class_poly(-6), ArgumentError);
    EXPECT_THROW(hilbert_class_poly(5), ArgumentError);
}

TEST(HilbertMod, Reduction)
{
    auto h = hilbert_mod(-4, 101);
    ASSERT_EQ(h.c.size(), 2u);
    EXPECT_EQ(h.c[0], (101 - 1728 % 101) % 101);
    EXPECT_EQ(h.c[1], 1u);
    auto H = hilbert_class_poly(-404);
    auto hm = hilbert_mod(-404, 311);
    ASSERT_EQ(hm.c.size(), H.coefficients.size());
    for (std::size_t i = 0; i < hm.c.size(); ++i) {
        mpz_class r = H.coefficients[i] % 311;
        if (r < 0)
            r += 311;
        EXPECT_EQ(hm.c[i], r.get_ui());
    }
}

// Roots mod a split prime p are j-invariants of curves with trace t, 4p = t^2 - v^2 D.
TEST(HilbertMod, SplitRootsHaveTheRightTrace)
{
    for (i64 D : {-23L, -47L, -71L, -104L}) {
        for (u64 p : arith::primes_between(5, 400)) {
            std::vector<u64> traces;
            for (u64 v = 1; v * v * static_cast<u64>(-D) <= 4 * p; ++v) {
                u64 t;
                if (arith::is_square(4 * p - v * v * static_cast<u64>(-D), &t) && t != 0)
                    traces.push_back(t);
            }
            if (traces.empty())
                continue;
            auto roots = *hilbert_roots_mod(D, p);
            // the order of discriminant D may be non-maximal in its field only if v > 1 is forced
            for (u64 j : roots) {
                u64 n = count_points(curve_from_j(j, p));
                bool ok = false;
                for (u64 t : traces)
                    ok = ok || n == p + 1 - t || n == p + 1 + t;
                EXPECT_TRUE(ok) << "D=" << D << " p=" << p << " j=" << j;
            }
        }
    }
}

// For p inert in Q(sqrt D) the roots of H_D are supersingular.
TEST(HilbertMod, InertRootsAreSupersingular)
{
    for (i64 D : {-3L, -4L, -7L, -8L, -11L, -19L, -23L, -43L, -67L, -404L}) {
        for (u64 p : arith::primes_between(5, 300)) {
            if ((-D) % static_cast<i64>(p) == 0 || legendre(D, p) != -1)
                continue;
            for (u64 j : *hilbert_roots_mod(D, p)) {
                EXPECT_EQ(count_points(curve_from_j(j, p)), p + 1) << D << " " << p;
                EXPECT_EQ(eval_mod(hilbert_class_poly(D), j, p), 0u);
            }
        }
    }
}

TEST(Delta, Examples)
{
    EXPECT_EQ(delta(-4, 5), 1);
    EXPECT_EQ(delta(-4, 3), -1);
    EXPECT_EQ(delta(-23, 59), 1);
    EXPECT_THROW(delta(-23, 23), ArgumentError);
}

TEST(Delta, MethodsAgree)
{
    for (i64 D : {-3L, -4L, -15L, -20L, -23L, -56L, -71L, -84L, -404L})
        for (u64 ell : arith::primes_between(3, 400)) {
            if ((-D) % static_cast<i64>(ell) == 0)
                continue;
            ASSERT_EQ(delta_by_splitting(D, ell), delta_by_norm_form(D, ell)) << D << " " << ell;
        }
}

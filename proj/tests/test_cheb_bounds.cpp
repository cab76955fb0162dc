#include <gtest/gtest.h>

#include <cmath>

#include <ssendo/cheb_bounds.hpp>

using namespace ssendo;

namespace {

u64 next_prime_1mod4(u64 n)
{
    while (!(is_prime(n) && n % 4 == 1))
        ++n;
    return n;
}

// the bracket of the explicit Chebotarev bound, in long double
long double error_oracle(long double x, long double n, long double a2, long double bp, long double p)
{
    const long double pi = 3.141592653589793238462643383279L;
    const long double L = std::log(x), logd = a2 * std::log(2.0L) + bp * std::log(p);
    return std::sqrt(x) * ((1 / pi + 3 / L) * logd + (L / (8 * pi) + 1 / (4 * pi) + 6 / L) * n);
}

} // namespace

TEST(FieldInvariants, AllFivePatterns)
{
    auto k = field_invariants(2003, FieldCase::Kzeta8, 7);
    EXPECT_EQ(k.n, 8);
    EXPECT_EQ(k.log2_coeff, 16);
    EXPECT_EQ(k.logp_coeff, 4);

    auto l0 = field_invariants(2003, FieldCase::L0zeta8, 5);
    EXPECT_EQ(l0.n, 40);
    EXPECT_EQ(l0.log2_coeff, 80);
    EXPECT_EQ(l0.logp_coeff, 20);

    auto l1 = field_invariants(2003, FieldCase::L1zeta8, 5);
    EXPECT_EQ(l1.n, 120);
    EXPECT_EQ(l1.log2_coeff, 260);
    EXPECT_EQ(l1.logp_coeff, 60);
    EXPECT_FALSE(l1.disc_is_upper_bound);

    auto m0 = field_invariants(2017, FieldCase::L0zeta8, 3);
    EXPECT_EQ(m0.n, 12);
    EXPECT_EQ(m0.log2_coeff, 24);
    EXPECT_EQ(m0.logp_coeff, 6);

    auto m1 = field_invariants(2017, FieldCase::L1zeta8, 3);
    EXPECT_EQ(m1.n, 24);
    EXPECT_EQ(m1.log2_coeff, 63);
    EXPECT_EQ(m1.logp_coeff, 12);
    EXPECT_TRUE(m1.disc_is_upper_bound);

    EXPECT_THROW(field_invariants(10007, FieldCase::L1zeta8, 3), ArgumentError);
    EXPECT_THROW(field_invariants(2001, FieldCase::Kzeta8), ArgumentError);
}

TEST(ChebGap, MatchesDirectEvaluation)
{
    auto inv = field_invariants(2003, FieldCase::Kzeta8);
    auto r = cheb_gap_bound(1e6, inv);
    const long double want = error_oracle(1e6L, 8, 16, 4, 2003);
    EXPECT_NEAR(r.error_term, static_cast<double>(want), 1e-9 * static_cast<double>(want));
    EXPECT_NEAR(r.main_term, 1e6 / std::log(1e6), 1e-9 * r.main_term);
    EXPECT_DOUBLE_EQ(r.lower_bound, r.main_term - r.error_term);
    EXPECT_EQ(r.positive, r.lower_bound > 0);
    EXPECT_THROW(cheb_gap_bound(2.0, inv), ArgumentError);
}

TEST(ChebGap, ErrorIncreasesWithDiscriminantAndDegree)
{
    for (double x : {1e4, 1e6, 1e9})
        for (double n = 4; n < 100; n += 8)
            for (double ld = 10; ld < 500; ld += 37) {
                const double e = cheb_error_term(x, n, ld);
                ASSERT_GE(e, 0);
                ASSERT_LT(e, cheb_error_term(x, n + 1, ld));
                ASSERT_LT(e, cheb_error_term(x, n, ld + 1));
            }
}

TEST(ChebGap, DominatesClosedForms)
{
    for (u64 p : {2003ull, 2017ull, 5003ull, 5009ull, 10007ull, 10009ull}) {
        const ResidueClass rc = residue_class(p);
        const u64 h = field_class_number(p);
        for (int k : {4, 6}) {
            const double x = static_cast<double>(p) * std::pow(std::log(static_cast<double>(p)), k);
            for (FieldCase fc : {FieldCase::L0zeta8, FieldCase::L1zeta8}) {
                if (fc == FieldCase::L1zeta8 && rc == ResidueClass::SevenMod8)
                    continue;
                const double C = envelope_coefficient(fc, rc, k);
                auto r = cheb_gap_bound(x, field_invariants(p, fc, h));
                const double L = std::log(x);
                const double closed = std::sqrt(x) - C * static_cast<double>(h) * L * L;
                EXPECT_GE(r.normalized, closed - 1e-9 * std::abs(closed))
                    << p << " " << to_string(fc) << " k=" << k;
                EXPECT_LE(r.coefficient, C);
                EXPECT_LE(relaxed_coefficient(fc, rc, static_cast<double>(p), x), C + 0.005);
            }
        }
    }
}

TEST(ChebGap, ConstantsReproducedAtTheBoundary)
{
    struct Row {
        FieldCase fc;
        ResidueClass rc;
    };
    for (Row row : {Row{FieldCase::L0zeta8, ResidueClass::OneMod4}, Row{FieldCase::L0zeta8, ResidueClass::ThreeMod8},
                    Row{FieldCase::L1zeta8, ResidueClass::OneMod4}, Row{FieldCase::L1zeta8, ResidueClass::ThreeMod8}})
        for (int k : {4, 6}) {
            const double x = 2000 * std::pow(std::log(2000.0), k);
            EXPECT_NEAR(relaxed_coefficient(row.fc, row.rc, 2000, x), envelope_coefficient(row.fc, row.rc, k), 0.005);
        }
    EXPECT_THROW(envelope_coefficient(FieldCase::Kzeta8, ResidueClass::OneMod4, 4), ArgumentError);
    EXPECT_THROW(envelope_coefficient(FieldCase::L0zeta8, ResidueClass::OneMod4, 5), ArgumentError);
}

TEST(BoundSearch, CertifiesAtTheThreshold)
{
    for (auto mode : {HBoundMode::BrauerSiegel, HBoundMode::Unconditional}) {
        auto r = thm_bound_search(2003, mode);
        const int k = mode == HBoundMode::BrauerSiegel ? 4 : 6;
        const double pl = 2003 * std::pow(std::log(2003.0), k);
        EXPECT_LE(r.x, 10000 * pl * (1 + 1e-9));
        EXPECT_GE(r.x, pl * (1 - 1e-9));
        EXPECT_GT(r.margin_at_reference, 0);
        EXPECT_GT(envelope_value(r.x, r.coefficient, r.h_used), 0);
        if (r.x / 1.1 >= r.x_floor)
            EXPECT_LE(envelope_value(r.x / 1.1, r.coefficient, r.h_used), 0);
    }
    EXPECT_THROW(thm_bound_search(1999, HBoundMode::BrauerSiegel), ArgumentError);
    EXPECT_THROW(thm_bound_search(2001, HBoundMode::BrauerSiegel), ArgumentError);
}

TEST(BoundSearch, NonIncreasingRelativeToFloor)
{
    for (auto mode : {HBoundMode::BrauerSiegel, HBoundMode::Unconditional}) {
        double prev = INFINITY;
        for (u64 p : {2003ull, 5003ull, 10007ull}) {
            auto r = thm_bound_search(p, mode);
            const double ratio = r.x / r.x_floor;
            EXPECT_LE(ratio, prev * (1 + 1e-9)) << p;
            prev = ratio;
        }
    }
}

TEST(CountN, Examples)
{
    EXPECT_EQ(count_N(101, 40.2), 2u);
    EXPECT_EQ(count_N(101, 2), 0u);
    EXPECT_EQ(count_N(5, 8), 1u);
}

TEST(CountN, MatchesSieve)
{
    for (u64 p : {5ull, 101ull, 311ull, 2003ull})
        for (double x : {10.0, 100.0, 1000.0, 5000.0}) {
            u64 n = 0;
            for (u64 q = 3; q <= static_cast<u64>(x); q += 8) {
                bool prime = q > 1;
                for (u64 d = 2; d * d <= q && prime; ++d)
                    prime = q % d != 0;
                if (!prime)
                    continue;
                u64 r = 1, b = p % q, e = (q - 1) / 2;
                while (e) {
                    if (e & 1)
                        r = r * b % q;
                    b = b * b % q;
                    e >>= 1;
                }
                n += r == q - 1;
            }
            EXPECT_EQ(count_N(p, x), n) << p << " " << x;
        }
}

TEST(CountN, SanityBand)
{
    for (u64 start : {10000ull, 100000ull, 500000ull, 999000ull}) {
        const u64 p = next_prime_1mod4(start);
        const double pd = static_cast<double>(p);
        const double v = static_cast<double>(count_N(p, 4 * std::sqrt(pd))) * std::log(pd) / std::sqrt(pd);
        EXPECT_GE(v, 0.5) << p;
        EXPECT_LE(v, 2.0) << p;
    }
}

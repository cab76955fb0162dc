#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include <ssendo/quad_class.hpp>
#include <ssendo/ss_curves.hpp>

using namespace ssendo;

namespace {

u64 naive_count(u64 A, u64 B, u64 p)
{
    u64 n = 1;
    for (u64 x = 0; x < p; ++x)
        for (u64 y = 0; y < p; ++y)
            if ((y * y) % p == (x * x % p * x + A * x + B) % p)
                ++n;
    return n;
}

u64 expected_fp_count(u64 p)
{
    if (p % 4 == 1)
        return class_number(-4 * static_cast<i64>(p)) / 2;
    return p % 8 == 7 ? class_number(-static_cast<i64>(p)) : 2 * class_number(-static_cast<i64>(p));
}

} // namespace

TEST(SupersingularList, Examples)
{
    EXPECT_EQ(supersingular_j_list(5), (std::vector<u64>{0}));
    EXPECT_EQ(supersingular_j_list(7), (std::vector<u64>{6}));
    EXPECT_EQ(supersingular_j_list(11), (std::vector<u64>{0, 1}));
    EXPECT_EQ(supersingular_j_list(101), (std::vector<u64>{0, 3, 21, 57, 59, 64, 66}));
    EXPECT_THROW(supersingular_j_list(100), ArgumentError);
}

TEST(SupersingularList, HasseMatchesPointCount)
{
    for (u64 p : arith::primes_between(5, 200)) {
        std::vector<u64> want;
        for (u64 j = 0; j < p; ++j) {
            Curve E = curve_from_j(j, p);
            if (naive_count(E.A, E.B, p) == p + 1)
                want.push_back(j);
        }
        ASSERT_EQ(supersingular_j_list(p), want) << p;
    }
}

TEST(SupersingularList, CountMatchesClassNumbers)
{
    for (u64 p : arith::primes_between(5, 500))
        ASSERT_EQ(supersingular_j_list(p).size(), expected_fp_count(p)) << p;
}

TEST(SupersingularList, Fp2Count)
{
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 37ull, 43ull}) {
        const u64 extra[12] = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
        EXPECT_EQ(supersingular_j_list_fp2(p).size(), p / 12 + extra[p % 12]) << p;
    }
}

TEST(Curves, FromJ)
{
    for (u64 p : {101ull, 311ull, 1847ull})
        for (u64 j : std::vector<u64>{0, 1, 2, 1728 % p, 57, p - 1})
            EXPECT_EQ(j_invariant(curve_from_j(j, p)), j % p);
    EXPECT_THROW(curve_from_j(1, 3), ArgumentError);
}

TEST(Curves, Examples)
{
    EXPECT_TRUE(is_supersingular(Curve{293, 256, 73}));
    EXPECT_EQ(count_points(Curve{293, 256, 73}), 294u);
    EXPECT_FALSE(is_supersingular(Curve{311, 122, 185}));
    EXPECT_NE(count_points(Curve{311, 122, 185}), 312u);
    EXPECT_THROW(is_supersingular(Curve{311, 0, 0}), ArgumentError);
    for (u64 j : supersingular_j_list(1847))
        EXPECT_EQ(count_points(curve_from_j(j, 1847)), 1848u);
}

TEST(Velu, NeighborCountAndSupersingularity)
{
    for (u64 p : {101ull, 103ull, 311ull})
        for (u64 ell : {2ull, 3ull, 5ull, 7ull}) {
            Fp2Field K(p);
            for (u64 j : supersingular_j_list(p)) {
                auto nb = velu_neighbors(K.make(j, 0), ell, p);
                ASSERT_EQ(nb.size(), ell + 1) << p << " " << ell << " " << j;
                for (const auto& n : nb)
                    ASSERT_TRUE(is_supersingular_j(K, n));
            }
        }
    EXPECT_THROW(velu_neighbors(Fp2Elem{0, 0}, 17, 101), CapabilityError);
    EXPECT_THROW(velu_neighbors(Fp2Elem{0, 0}, 101, 101), ArgumentError);
}

TEST(Velu, Symmetric)
{
    const u64 p = 103, ell = 3;
    Fp2Field K(p);
    auto all = supersingular_j_list_fp2(p);
    auto key = [](const Fp2Elem& e) { return std::make_pair(e.c0, e.c1); };
    std::map<std::pair<std::pair<u64, u64>, std::pair<u64, u64>>, int> edges;
    for (const auto& j : all)
        for (const auto& n : velu_neighbors(j, ell, p))
            ++edges[{key(j), key(n)}];
    const Fp2Elem j0{0, 0}, j1728{1728 % p, 0};
    for (const auto& [e, m] : edges) {
        auto [a, b] = e;
        Fp2Elem ja{a.first, a.second}, jb{b.first, b.second};
        if (ja == j0 || ja == j1728 || jb == j0 || jb == j1728)
            continue;
        EXPECT_EQ(m, (edges[{b, a}]));
    }
}

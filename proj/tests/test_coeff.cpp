#include <random>

#include <gtest/gtest.h>

#include <floerflow/coeff.hpp>
#include <floerflow/error.hpp>

#include "oracles.hpp"

using namespace floerflow;
using testing_oracles::bareissDeterminant;
using testing_oracles::torusTriangulation;

namespace {

IntegerMatrix randomMatrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi)
{
    std::uniform_int_distribution<int> d(lo, hi);
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

void expectSmithInvariants(IntegerMatrix const& a)
{
    auto s = smithNormalForm(a);
    ASSERT_EQ(s.u * a * s.v, s.d);
    auto du = bareissDeterminant(s.u), dv = bareissDeterminant(s.v);
    EXPECT_TRUE(du == 1 || du == -1);
    EXPECT_TRUE(dv == 1 || dv == -1);
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) {
                EXPECT_EQ(s.d(i, j), 0);
            }
    auto f = s.factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        EXPECT_GE(f[i], 0);
        if (f[i] == 0) {
            EXPECT_EQ(f[i + 1], 0);
        } else {
            EXPECT_EQ(f[i + 1] % f[i], 0);
        }
    }
}

} // namespace

TEST(Smith, ZeroMatrixIsFixed)
{
    auto s = smithNormalForm(IntegerMatrix::fromRows({{0}}));
    EXPECT_EQ(s.d, IntegerMatrix::fromRows({{0}}));
    EXPECT_EQ(s.rank(), 0u);
}

TEST(Smith, TwoByTwoExample)
{
    auto const a = IntegerMatrix::fromRows({{2, 4}, {6, 8}});
    auto s = smithNormalForm(a);
    EXPECT_EQ(s.d, IntegerMatrix::fromRows({{2, 0}, {0, 4}}));
    // Product of invariant factors is |det| and the first one is the gcd of
    // the entries.
    EXPECT_EQ(bareissDeterminant(a), -8);
    EXPECT_EQ(s.factors()[0], 2);
    expectSmithInvariants(a);
}

TEST(Smith, IdentityIsFixed)
{
    auto s = smithNormalForm(IntegerMatrix::identity(3));
    EXPECT_EQ(s.d, IntegerMatrix::identity(3));
}

TEST(Smith, EmptyShapes)
{
    expectSmithInvariants(IntegerMatrix(0, 3));
    expectSmithInvariants(IntegerMatrix(2, 0));
    EXPECT_EQ(smithNormalForm(IntegerMatrix(0, 0)).rank(), 0u);
}

TEST(Smith, RandomMatricesProperty)
{
    std::mt19937_64 rng(20261017);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int sample = 0; sample < 200; ++sample) {
        auto a = randomMatrix(rng, dim(rng), dim(rng), -5, 5);
        SCOPED_TRACE(toString(a));
        expectSmithInvariants(a);
    }
}

TEST(Smith, SquareDeterminantMatchesFactors)
{
    std::mt19937_64 rng(7);
    for (int sample = 0; sample < 50; ++sample) {
        auto a = randomMatrix(rng, 5, 5, -4, 4);
        Integer prod = 1;
        for (auto const& f : smithNormalForm(a).factors())
            prod *= f;
        auto det = bareissDeterminant(a);
        EXPECT_EQ(prod, det < 0 ? Integer(-det) : det);
    }
}

TEST(Smith, LargeEntriesStayExact)
{
    auto a = IntegerMatrix::fromRows({{1000000007LL * 3, 998244353LL}, {998244353LL, 1000000007LL * 5}});
    auto big = a * a * a;
    expectSmithInvariants(big);
}

TEST(InvariantFactors, NormalizesCyclicOrders)
{
    auto f = invariantFactors({Integer(2), Integer(3)});
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0], 6);
    auto g = invariantFactors({Integer(4), Integer(2)});
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0], 2);
    EXPECT_EQ(g[1], 4);
}

TEST(Ring, ParseAndValidate)
{
    EXPECT_EQ(CoefficientRing::parse("z").kind(), CoefficientRing::Kind::Integers);
    EXPECT_EQ(CoefficientRing::parse("q").kind(), CoefficientRing::Kind::Rationals);
    EXPECT_EQ(CoefficientRing::parse("zmod:6").modulus(), 6);
    auto l = CoefficientRing::parse("laurent:2:3");
    EXPECT_EQ(l.generatorDegree(), 2);
    EXPECT_EQ(l.truncation(), 3);
    EXPECT_THROW(CoefficientRing::parse("zmod:1"), Error);
    EXPECT_THROW(CoefficientRing::parse("laurent:3:1"), Error);
    EXPECT_THROW(CoefficientRing::parse("laurent:2:0"), Error);
    EXPECT_THROW(CoefficientRing::parse("r"), Error);
    EXPECT_TRUE(CoefficientRing::modular(5).isField());
    EXPECT_FALSE(CoefficientRing::modular(6).isField());
}

TEST(Ring, LaurentWindowOverflowIsAnError)
{
    auto l = CoefficientRing::laurent(2, 2);
    EXPECT_EQ(l.windowPowers(), (std::vector<int>{-2, -1, 0, 1, 2}));
    EXPECT_EQ(l.multiplyPowers(1, 1), 2);
    EXPECT_EQ(l.multiplyPowers(2, -2), 0);
    try {
        l.multiplyPowers(2, 1);
        FAIL() << "expected WindowOverflow";
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), Errc::WindowOverflow);
    }
}

TEST(Homology, ZeroDifferential)
{
    auto h = homology(IntegerMatrix(4, 0), IntegerMatrix(0, 4), CoefficientRing::integers());
    EXPECT_EQ(h.freeRank, 4u);
    EXPECT_TRUE(h.torsion.empty());
}

TEST(Homology, KleinTypeTorsion)
{
    auto const dIn = IntegerMatrix::fromRows({{2}});
    auto const dOut = IntegerMatrix(0, 1);
    auto z = homology(dIn, dOut, CoefficientRing::integers());
    EXPECT_EQ(z.freeRank, 0u);
    ASSERT_EQ(z.torsion.size(), 1u);
    EXPECT_EQ(z.torsion[0], 2);
    EXPECT_EQ(describe(z, CoefficientRing::integers()), "Z/2");

    // Over Z/2 the reduced matrix is zero: one class in degree 1 and one in
    // degree 2 (the kernel of the 2-cell's boundary).
    auto m1 = homology(dIn, dOut, CoefficientRing::modular(2));
    EXPECT_EQ(m1.freeRank, 1u);
    EXPECT_TRUE(m1.torsion.empty());
    auto m2 = homology(IntegerMatrix(1, 0), dIn, CoefficientRing::modular(2));
    EXPECT_EQ(m2.freeRank, 1u);

    auto q = homology(dIn, dOut, CoefficientRing::rationals());
    EXPECT_EQ(q.freeRank, 0u);
    EXPECT_TRUE(q.torsion.empty());
}

TEST(Homology, ModularMixesTorAndTensor)
{
    // Z/6 in degree 0 of 0 <- Z <-6- Z; over Z/4: H0 = Z/2, H1 = Z/2.
    auto d = IntegerMatrix::fromRows({{6}});
    auto r = CoefficientRing::modular(4);
    auto h0 = homology(d, IntegerMatrix(0, 1), r);
    auto h1 = homology(IntegerMatrix(1, 0), d, r);
    EXPECT_EQ(h0.freeRank, 0u);
    EXPECT_EQ(h0.torsion, std::vector<Integer>{2});
    EXPECT_EQ(h1.freeRank, 0u);
    EXPECT_EQ(h1.torsion, std::vector<Integer>{2});
}

TEST(Homology, LaurentReplicatesPerPower)
{
    auto r = CoefficientRing::laurent(2, 1);
    auto h = homology(IntegerMatrix::fromRows({{2}}), IntegerMatrix(0, 1), r);
    ASSERT_EQ(h.graded.size(), 3u);
    EXPECT_EQ(h.graded[0].degree, -2);
    EXPECT_EQ(h.graded[2].degree, 2);
    EXPECT_EQ(h.torsion.size(), 3u);
}

TEST(Homology, Errors)
{
    try {
        homology(IntegerMatrix::fromRows({{1}}), IntegerMatrix::fromRows({{1}}), CoefficientRing::integers());
        FAIL();
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), Errc::CompositeNonzero);
    }
    try {
        homology(IntegerMatrix(2, 1), IntegerMatrix(1, 3), CoefficientRing::integers());
        FAIL();
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), Errc::DimensionMismatch);
    }
}

TEST(Homology, TorusTriangulationOracle)
{
    auto t = torusTriangulation();
    auto const z = CoefficientRing::integers();
    auto h0 = homology(t.d1, IntegerMatrix(0, t.d1.rows()), z);
    auto h1 = homology(t.d2, t.d1, z);
    auto h2 = homology(IntegerMatrix(t.d2.cols(), 0), t.d2, z);
    EXPECT_EQ(h0.freeRank, 1u);
    EXPECT_EQ(h1.freeRank, 2u);
    EXPECT_EQ(h2.freeRank, 1u);
    EXPECT_TRUE(h0.torsion.empty() && h1.torsion.empty() && h2.torsion.empty());
}

// Random complexes C_2 -> C_1 -> C_0 with d1 d2 = 0 built as d2 = K * R where
// the columns of K span ker d1.
TEST(Homology, RationalAndEulerProperties)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    auto const z = CoefficientRing::integers();
    auto const q = CoefficientRing::rationals();
    for (int sample = 0; sample < 100; ++sample) {
        std::size_t n0 = dim(rng), n1 = dim(rng), n2 = dim(rng);
        auto d1 = randomMatrix(rng, n0, n1, -3, 3);
        auto s = smithNormalForm(d1);
        std::size_t const r = s.rank();
        IntegerMatrix k(n1, n1 - r);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = r; j < n1; ++j)
                k(i, j - r) = s.v(i, j);
        auto d2 = k * randomMatrix(rng, n1 - r, n2, -2, 2);
        ASSERT_TRUE((d1 * d2).isZero());

        std::vector<HomologyGroup> hz{homology(d1, IntegerMatrix(0, n0), z), homology(d2, d1, z),
                                      homology(IntegerMatrix(n2, 0), d2, z)};
        std::vector<HomologyGroup> hq{homology(d1, IntegerMatrix(0, n0), q), homology(d2, d1, q),
                                      homology(IntegerMatrix(n2, 0), d2, q)};
        long euler = static_cast<long>(n0) - static_cast<long>(n1) + static_cast<long>(n2);
        long eulerH = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_TRUE(hq[i].torsion.empty());
            EXPECT_EQ(hq[i].freeRank, hz[i].freeRank);
            eulerH += (i % 2 == 0 ? 1 : -1) * static_cast<long>(hz[i].freeRank);
        }
        EXPECT_EQ(euler, eulerH);
    }
}

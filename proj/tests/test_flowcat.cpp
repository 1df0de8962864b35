#include <gtest/gtest.h>

#include <floerflow/examples.hpp>
#include <floerflow/flowcat.hpp>

#include "expect_error.hpp"
#include "oracles.hpp"

using namespace floerflow;

namespace {

std::vector<HomologyGroup> homologyOf(FlowCategory const& cat, OrientationData const& o,
                                      CoefficientRing const& ring = CoefficientRing::integers())
{
    return floerComplex(cat, o).complex.homology(ring);
}

std::vector<std::string> described(std::vector<HomologyGroup> const& h, CoefficientRing const& ring)
{
    std::vector<std::string> out;
    for (auto const& x : h)
        out.push_back(describe(x, ring));
    return out;
}

FlowCategory withFlows(FlowCategory const& cat, std::vector<RigidFlow> flows)
{
    return FlowCategory(cat.objects(), std::move(flows), cat.oneDimModuli());
}

} // namespace

TEST(Validator, HandBuiltBankPasses)
{
    for (auto const* name : {"circle", "klein", "rp2"}) {
        auto [cat, o] = *handBuiltCategory(name);
        EXPECT_TRUE(validateMorseSmale(cat).passed()) << name;
        EXPECT_TRUE(checkOrientationCoherence(cat, o).passed()) << name;
    }
}

TEST(Validator, InjectedDefectsAreNamed)
{
    auto [cat, o] = *handBuiltCategory("rp2");

    // A flow against the index.
    auto flows = cat.rigidFlows();
    flows.push_back({"up", "m", "M"});
    auto rep = validateMorseSmale(withFlows(cat, flows));
    EXPECT_FALSE(rep.passed("partial order"));
    EXPECT_FALSE(rep.passed("dimension rule"));

    // A self-morphism.
    flows = cat.rigidFlows();
    flows.push_back({"loop", "s", "s"});
    rep = validateMorseSmale(withFlows(cat, flows));
    EXPECT_FALSE(rep.passed("Mor(a,a) is the identity"));

    // A rigid flow across index gap 2.
    flows = cat.rigidFlows();
    flows.push_back({"long", "M", "m"});
    rep = validateMorseSmale(withFlows(cat, flows));
    EXPECT_FALSE(rep.passed("dimension rule"));
    EXPECT_TRUE(rep.passed("composition into boundary"));

    // An extra broken flow that no interval bounds.
    flows = cat.rigidFlows();
    flows.push_back({"f3", "M", "s"});
    rep = validateMorseSmale(withFlows(cat, flows));
    EXPECT_FALSE(rep.passed("composition into boundary"));
    EXPECT_EQ(rep.failuresOf("composition into boundary").size(), 2u);
    EXPECT_EQ(codeOf([&] { floerComplex(withFlows(cat, flows), o); }), Errc::MorseSmaleViolation);

    // An interval listed twice.
    auto moduli = cat.oneDimModuli();
    moduli[0].components.push_back(moduli[0].components[0]);
    rep = validateMorseSmale(FlowCategory(cat.objects(), cat.rigidFlows(), moduli));
    EXPECT_FALSE(rep.passed("composition into boundary"));
    EXPECT_TRUE(rep.passed("dimension rule"));
}

TEST(Coherence, OneFlippedSignFailsExactlyTheTouchingIntervals)
{
    // A flow on both ends of an interval flips both products, so only the
    // intervals where it bounds one end can notice.
    auto [cat, o] = *handBuiltCategory("klein");
    int noticed = 0;
    for (auto const& f : cat.rigidFlows()) {
        auto bad = o;
        bad.sign[f.id] = -bad.sign[f.id];
        auto rep = checkOrientationCoherence(cat, bad);
        std::size_t touching = 0;
        for (auto const& c : cat.moduliBetween("M", "m")->components) {
            int uses = 0;
            for (auto const& e : c.ends)
                uses += (e.first == f.id) + (e.second == f.id);
            touching += uses % 2;
        }
        EXPECT_EQ(rep.failuresOf("interval endpoints carry opposite signs").size(), touching) << f.id;
        EXPECT_TRUE(rep.passed("sign diagrams compose multiplicatively"));
        if (touching > 0) {
            EXPECT_EQ(codeOf([&] { floerComplex(cat, bad); }), Errc::IncoherentOrientation);
            ++noticed;
        } else {
            EXPECT_NO_THROW(floerComplex(cat, bad));
        }
    }
    EXPECT_EQ(noticed, 4);
    auto missing = o;
    missing.sign.erase("fa");
    EXPECT_FALSE(checkOrientationCoherence(cat, missing).passed("signs defined on every rigid flow"));
}

TEST(FloerComplex, Circle)
{
    auto [cat, o] = *handBuiltCategory("circle");
    auto fc = floerComplex(cat, o);
    EXPECT_TRUE(fc.complex.boundary(1).isZero());
    EXPECT_EQ(described(homologyOf(cat, o), CoefficientRing::integers()), (std::vector<std::string>{"Z", "Z"}));
}

// Hand Smith normal form: the Klein boundary into degree 1 is (2, 0)^T and
// the boundary into degree 0 vanishes.
TEST(FloerComplex, KleinAndProjectivePlane)
{
    auto const z = CoefficientRing::integers(), z2 = CoefficientRing::modular(2);
    auto [k, ko] = *handBuiltCategory("klein");
    auto kc = floerComplex(k, ko).complex;
    EXPECT_EQ(kc.boundary(2), IntegerMatrix::fromRows({{2}, {0}}));
    EXPECT_TRUE(kc.boundary(1).isZero());
    EXPECT_EQ(described(homologyOf(k, ko), z), (std::vector<std::string>{"Z", "Z + Z/2", "0"}));
    auto kz2 = homologyOf(k, ko, z2);
    EXPECT_EQ(kz2[0].freeRank, 1u);
    EXPECT_EQ(kz2[1].freeRank, 2u);
    EXPECT_EQ(kz2[2].freeRank, 1u);

    auto [r, ro] = *handBuiltCategory("rp2");
    EXPECT_EQ(described(homologyOf(r, ro), z), (std::vector<std::string>{"Z", "Z/2", "0"}));
    auto rz2 = homologyOf(r, ro, z2);
    for (auto const& h : rz2)
        EXPECT_EQ(h.freeRank, 1u);
    auto rq = homologyOf(r, ro, CoefficientRing::rationals());
    EXPECT_EQ(rq[0].freeRank, 1u);
    EXPECT_EQ(rq[1].freeRank, 0u);
}

TEST(FloerComplex, TorusMatchesTriangulation)
{
    auto [cat, o] = exampleCategory("torus");
    auto h = homologyOf(cat, o);
    auto t = testing_oracles::torusTriangulation();
    auto const z = CoefficientRing::integers();
    std::vector<HomologyGroup> simplicial{homology(t.d1, IntegerMatrix(0, t.d1.rows()), z),
                                          homology(t.d2, t.d1, z),
                                          homology(IntegerMatrix(t.d2.cols(), 0), t.d2, z)};
    EXPECT_EQ(h, simplicial);
    EXPECT_EQ(described(h, z), (std::vector<std::string>{"Z", "Z^2", "Z"}));
}

TEST(FloerComplex, SignManipulationsPreserveHomology)
{
    auto const rings = {CoefficientRing::integers(), CoefficientRing::modular(2), CoefficientRing::modular(3)};
    for (auto const& name : exampleNames()) {
        auto [cat, o] = exampleCategory(name);
        for (auto const& ring : rings) {
            auto const h = homologyOf(cat, o, ring);
            auto rev = reverseOrientationConvention(cat, o);
            EXPECT_TRUE(checkOrientationCoherence(cat, rev).passed());
            EXPECT_EQ(homologyOf(cat, rev, ring), h) << name;
            for (auto const& obj : cat.objects()) {
                auto flipped = flipObjectSigns(cat, o, obj.id);
                EXPECT_TRUE(checkOrientationCoherence(cat, flipped).passed()) << name << " " << obj.id;
                EXPECT_EQ(homologyOf(cat, flipped, ring), h) << name << " " << obj.id;
            }
        }
    }
}

TEST(FloerComplex, RelativeGradingShifts)
{
    auto [cat, o] = *handBuiltCategory("rp2");
    auto fc = floerComplex(cat, o, std::string("s"));
    EXPECT_EQ(fc.degreeOffset, -1);
    EXPECT_EQ(fc.baseObject, std::optional<std::string>("s"));
    auto h = fc.complex.homology(CoefficientRing::integers());
    EXPECT_EQ(h, homologyOf(cat, o));
    EXPECT_EQ(codeOf([&] { floerComplex(cat, o, std::string("s"), true); }), Errc::NegativeRelativeIndex);
    auto top = floerComplex(cat, o, std::string("m"), true);
    EXPECT_EQ(top.degreeOffset, 0);
    EXPECT_EQ(codeOf([&] { floerComplex(cat, o, std::string("nope")); }), Errc::InvalidCategory);
}

// Weak and strong Morse inequalities against the critical point counts.
TEST(FloerComplex, MorseInequalities)
{
    for (auto const& name : exampleNames()) {
        auto [cat, o] = exampleCategory(name);
        auto fc = floerComplex(cat, o).complex;
        for (auto const& ring : {CoefficientRing::rationals(), CoefficientRing::modular(2)}) {
            auto h = fc.homology(ring);
            long alt = 0;
            for (std::size_t i = 0; i < h.size(); ++i) {
                EXPECT_LE(h[i].freeRank, fc.rank(i));
                alt = static_cast<long>(fc.rank(i)) - static_cast<long>(h[i].freeRank) - alt;
                EXPECT_GE(alt, 0) << name << " degree " << i;
            }
            EXPECT_EQ(alt, 0) << name;
        }
    }
}

TEST(FloerComplex, EmptyCategory)
{
    auto fc = floerComplex(FlowCategory(), OrientationData());
    EXPECT_EQ(fc.complex.length(), 0u);
}

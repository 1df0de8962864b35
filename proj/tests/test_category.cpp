#include <gtest/gtest.h>

#include <floerflow/category.hpp>
#include <floerflow/examples.hpp>

#include "expect_error.hpp"

using namespace floerflow;

TEST(FlowCategory, JsonRoundTripOverHandBuiltBank)
{
    for (auto const* name : {"circle", "klein", "rp2"}) {
        SCOPED_TRACE(name);
        auto [cat, orient] = *handBuiltCategory(name);
        auto j = categoryToJson(cat, orient);
        auto [cat2, orient2] = categoryFromJson(j);
        EXPECT_EQ(cat2.objects(), cat.objects());
        EXPECT_EQ(cat2.rigidFlows(), cat.rigidFlows());
        EXPECT_EQ(cat2.oneDimModuli(), cat.oneDimModuli());
        EXPECT_EQ(orient2, orient);
        EXPECT_EQ(categoryToJson(cat2, orient2).dump(), j.dump());
    }
}

TEST(FlowCategory, ReferentialIntegrity)
{
    EXPECT_EQ(codeOf([] { FlowCategory({{"a", 1}, {"a", 0}}, {}, {}); }), Errc::InvalidCategory);
    EXPECT_EQ(codeOf([] { FlowCategory({{"a", 1}}, {{"f", "a", "b"}}, {}); }), Errc::InvalidCategory);
    EXPECT_EQ(codeOf([] { FlowCategory({{"a", 1}, {"b", 0}}, {{"f", "a", "b"}, {"f", "a", "b"}}, {}); }),
              Errc::InvalidCategory);
    EXPECT_EQ(codeOf([] {
                  FlowCategory({{"a", 2}, {"c", 0}}, {},
                               {{"a", "c", {ModuliComponent::interval({"", "x", "y"}, {"", "x", "z"})}}});
              }),
              Errc::InvalidCategory);
}

TEST(FlowCategory, ParseErrors)
{
    EXPECT_EQ(codeOf([] { categoryFromJson(json::array()); }), Errc::ParseError);
    json bad = {{"objects", {{{"id", "a"}, {"index", 1}}, {{"id", "b"}, {"index", 0}}}},
                {"rigidFlows", {{{"id", "f"}, {"from", "a"}, {"to", "b"}, {"sign", 2}}}}};
    EXPECT_EQ(codeOf([&] { categoryFromJson(bad); }), Errc::ParseError);
    bad["rigidFlows"][0]["sign"] = 1;
    bad["oneDimModuli"] = {{{"from", "a"}, {"to", "b"}, {"components", {{{"kind", "disk"}}}}}};
    EXPECT_EQ(codeOf([&] { categoryFromJson(bad); }), Errc::ParseError);
    bad.erase("oneDimModuli");
    bad["objects"][0].erase("index");
    EXPECT_EQ(codeOf([&] { categoryFromJson(bad); }), Errc::ParseError);
}

TEST(FlowCategory, OrderIsTransitiveClosure)
{
    auto [cat, orient] = *handBuiltCategory("klein");
    EXPECT_TRUE(cat.greater("M", "s1"));
    EXPECT_TRUE(cat.greater("M", "m"));
    EXPECT_FALSE(cat.greater("s1", "s2"));
    EXPECT_FALSE(cat.greater("m", "M"));
    EXPECT_FALSE(cat.greater("M", "M"));
    EXPECT_EQ(cat.comparablePairs().size(), 5u);
    EXPECT_EQ(cat.brokenFlows("M", "m").size(), 8u);
    EXPECT_EQ(cat.flowsBetween("M", "s2"), (std::vector<std::string>{"h+", "h-"}));
    ASSERT_NE(cat.moduliBetween("M", "m"), nullptr);
    EXPECT_EQ(cat.moduliBetween("M", "m")->components[0].ends[0].through, "s1");
    EXPECT_EQ(cat.moduliBetween("m", "M"), nullptr);
}

TEST(FlowCategory, MissingSignIsAnError)
{
    OrientationData o;
    EXPECT_EQ(codeOf([&] { o.signOf("f"); }), Errc::InvalidCategory);
}

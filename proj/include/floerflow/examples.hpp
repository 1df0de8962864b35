#pragma once

// Canonical example bank: hand-built categories for the circle, the Klein
// bottle and the real projective plane, and Morse functions on T^1 and T^2.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "error.hpp"
#include "morse.hpp"

namespace floerflow {

inline std::vector<std::string> exampleNames() { return {"circle", "torus", "klein", "rp2"}; }

/// Hand-built categories; "torus" and "torus-perturbed:<seed>" are built
/// from their functions instead.
inline std::optional<std::pair<FlowCategory, OrientationData>> handBuiltCategory(std::string const& name)
{
    auto obj = [](std::string id, int index) { return CategoryObject{std::move(id), index}; };
    auto ivl = [](std::string a, std::string b, std::string c, std::string d) {
        return ModuliComponent::interval(BrokenFlow{"", std::move(a), std::move(b)},
                                         BrokenFlow{"", std::move(c), std::move(d)});
    };
    OrientationData o;
    if (name == "circle") {
        o.sign = {{"e+", 1}, {"e-", -1}};
        return std::make_pair(FlowCategory({obj("A", 1), obj("B", 0)}, {{"e+", "A", "B"}, {"e-", "A", "B"}}, {}), o);
    }
    if (name == "klein") {
        // One 2-cell, two 1-cells, one 0-cell; the 2-cell is attached along
        // a b a^{-1} b.
        std::vector<RigidFlow> flows{{"fa", "M", "s1"}, {"fb", "M", "s1"}, {"h+", "M", "s2"}, {"h-", "M", "s2"},
                                     {"g+", "s1", "m"}, {"g-", "s1", "m"}, {"k+", "s2", "m"}, {"k-", "s2", "m"}};
        o.sign = {{"fa", 1}, {"fb", 1}, {"h+", 1}, {"h-", -1}, {"g+", 1}, {"g-", -1}, {"k+", 1}, {"k-", -1}};
        std::vector<OneDimModuli> moduli{{"M", "m",
                                          {ivl("fa", "g+", "fa", "g-"), ivl("fb", "g+", "fb", "g-"),
                                           ivl("h+", "k+", "h+", "k-"), ivl("h-", "k+", "h-", "k-")}}};
        return std::make_pair(
            FlowCategory({obj("M", 2), obj("s1", 1), obj("s2", 1), obj("m", 0)}, std::move(flows), std::move(moduli)),
            o);
    }
    if (name == "rp2") {
        std::vector<RigidFlow> flows{{"f1", "M", "s"}, {"f2", "M", "s"}, {"g+", "s", "m"}, {"g-", "s", "m"}};
        o.sign = {{"f1", 1}, {"f2", 1}, {"g+", 1}, {"g-", -1}};
        std::vector<OneDimModuli> moduli{{"M", "m", {ivl("f1", "g+", "f1", "g-"), ivl("f2", "g+", "f2", "g-")}}};
        return std::make_pair(FlowCategory({obj("M", 2), obj("s", 1), obj("m", 0)}, std::move(flows), std::move(moduli)),
                              o);
    }
    return std::nullopt;
}

inline TrigPolynomial standardTorusFunction() { return TrigPolynomial(2, {{{1, 0}, 1, 0}, {{0, 1}, 1, 0}}); }
inline TrigPolynomial standardCircleFunction() { return TrigPolynomial(1, {{{1}, 1, 0}}); }

/// Functions of the bank: "circle", "torus", "torus-perturbed:<seed>".
inline std::optional<TrigPolynomial> exampleFunction(std::string const& name)
{
    if (name == "circle")
        return standardCircleFunction();
    if (name == "torus")
        return standardTorusFunction();
    std::string const prefix = "torus-perturbed:";
    if (name.rfind(prefix, 0) == 0) {
        std::string const seed = name.substr(prefix.size());
        if (seed.empty() || seed.find_first_not_of("0123456789") != std::string::npos)
            throw Error(Errc::ParseError, "seed must be a nonnegative integer in '" + name + "'");
        return perturbedTorus(std::stoull(seed));
    }
    return std::nullopt;
}

/// The category of a bank entry: hand-built if available, otherwise built
/// from the function.
inline std::pair<FlowCategory, OrientationData> exampleCategory(std::string const& name,
                                                                 NumericalConfig const& cfg = {})
{
    if (auto c = handBuiltCategory(name))
        return *std::move(c);
    if (auto f = exampleFunction(name)) {
        auto built = buildFlowCategory(*f, cfg);
        return {std::move(built.category), std::move(built.orientation)};
    }
    throw Error(Errc::ParseError, "unknown example '" + name + "'");
}

} // namespace floerflow

#pragma once

// Morse-Smale axioms for flow categories, coherence of orientation signs on
// 1-dimensional moduli, and extraction of the Floer chain complex.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "category.hpp"
#include "coeff.hpp"
#include "corners.hpp"
#include "error.hpp"
#include "jcat.hpp"
#include "report.hpp"

namespace floerflow {

inline Report validateMorseSmale(FlowCategory const& cat)
{
    Report rep("Morse-Smale category");
    auto& order = rep.check("partial order");
    auto& ident = rep.check("Mor(a,a) is the identity");
    auto& dims = rep.check("dimension rule");
    auto& finite = rep.check("finite type");
    auto& boundary = rep.check("composition into boundary");

    for (auto const& a : cat.objects()) {
        if (cat.greater(a.id, a.id))
            order.fail("'" + a.id + "' lies on a cycle of morphisms");
        for (auto const& b : cat.objects())
            if (a.id != b.id && cat.greater(a.id, b.id) && a.index <= b.index)
                order.fail("'" + a.id + "' > '" + b.id + "' but the index does not decrease");
    }

    for (auto const& f : cat.rigidFlows()) {
        if (f.from == f.to) {
            ident.fail("flow '" + f.id + "' is a self-morphism of '" + f.from + "'");
            continue;
        }
        int const gap = cat.index(f.from) - cat.index(f.to);
        if (gap != 1)
            dims.fail("rigid flow '" + f.id + "' spans index gap " + std::to_string(gap));
    }
    for (auto const& m : cat.oneDimModuli()) {
        if (m.from == m.to) {
            ident.fail("1-dimensional moduli on '" + m.from + "' to itself");
            continue;
        }
        int const gap = cat.index(m.from) - cat.index(m.to);
        if (gap != 2)
            dims.fail("1-dimensional moduli " + m.from + " -> " + m.to + " span index gap " + std::to_string(gap));
    }

    // Finite object sets are automatically of finite type; the check is
    // kept so that reports list every axiom.
    (void)finite;

    // Every broken flow a -> c -> b with mu(a) - mu(b) = 2 must be exactly
    // one interval endpoint, and every endpoint must be such a broken flow.
    std::set<std::pair<std::string, std::string>> pairs;
    for (auto const& m : cat.oneDimModuli())
        pairs.emplace(m.from, m.to);
    for (auto const& a : cat.objects())
        for (auto const& b : cat.objects())
            if (a.index - b.index == 2 && !cat.brokenFlows(a.id, b.id).empty())
                pairs.emplace(a.id, b.id);

    for (auto const& [a, b] : pairs) {
        if (cat.index(a) - cat.index(b) != 2)
            continue;
        std::map<BrokenFlow, int> seen;
        for (auto const& bf : cat.brokenFlows(a, b))
            seen[bf] = 0;
        if (auto const* m = cat.moduliBetween(a, b)) {
            for (auto const& c : m->components) {
                if (c.kind != ModuliComponent::Kind::Interval)
                    continue;
                if (c.ends[0] == c.ends[1])
                    boundary.fail("interval " + a + " -> " + b + " has identical endpoints");
                for (auto const& e : c.ends) {
                    auto it = seen.find(e);
                    if (it == seen.end()) {
                        boundary.fail("endpoint (" + e.first + ", " + e.second + ") is not a broken flow " +
                                      a + " -> " + b);
                        continue;
                    }
                    ++it->second;
                }
            }
        }
        for (auto const& [bf, count] : seen)
            if (count != 1)
                boundary.fail("broken flow (" + bf.first + ", " + bf.second + ") through '" + bf.through +
                              "' bounds " + std::to_string(count) + " interval ends");
    }
    return rep;
}

inline Report checkOrientationCoherence(FlowCategory const& cat, OrientationData const& orient)
{
    Report rep("orientation coherence");
    auto& total = rep.check("signs defined on every rigid flow");
    auto& cancel = rep.check("interval endpoints carry opposite signs");
    auto& counts = rep.check("signed broken-flow counts vanish");
    auto& diag = rep.check("sign diagrams compose multiplicatively");

    auto signOr0 = [&](std::string const& id) {
        auto it = orient.sign.find(id);
        return it == orient.sign.end() ? 0 : it->second;
    };
    for (auto const& f : cat.rigidFlows()) {
        int const s = signOr0(f.id);
        if (s != 1 && s != -1)
            total.fail("flow '" + f.id + "' has no +-1 sign");
    }
    if (!total.ok)
        return rep;

    for (auto const& m : cat.oneDimModuli()) {
        std::size_t n = 0;
        for (auto const& c : m.components) {
            ++n;
            if (c.kind != ModuliComponent::Kind::Interval)
                continue;
            int const s0 = signOr0(c.ends[0].first) * signOr0(c.ends[0].second);
            int const s1 = signOr0(c.ends[1].first) * signOr0(c.ends[1].second);
            if (s0 != -s1)
                cancel.fail("interval " + std::to_string(n - 1) + " of " + m.from + " -> " + m.to + ": (" +
                            c.ends[0].first + ", " + c.ends[0].second + ") and (" + c.ends[1].first + ", " +
                            c.ends[1].second + ") have equal sign products");
        }
    }

    for (auto const& a : cat.objects())
        for (auto const& b : cat.objects()) {
            if (a.index - b.index != 2)
                continue;
            int sum = 0;
            for (auto const& bf : cat.brokenFlows(a.id, b.id))
                sum += signOr0(bf.first) * signOr0(bf.second);
            if (sum != 0)
                counts.fail(a.id + " -> " + b.id + ": signed count " + std::to_string(sum));
        }

    // Orientation units on Mor(a,c) and Mor(c,b) must pair, through the
    // unit, into the unit on Mor(a,b).
    for (auto const& a : cat.objects())
        for (auto const& c : cat.objects())
            for (auto const& b : cat.objects()) {
                if (!cat.greater(a.id, c.id) || !cat.greater(c.id, b.id))
                    continue;
                int const kac = a.index - c.index - 1;
                int const kcb = c.index - b.index - 1;
                int const kab = a.index - b.index - 1;
                if (kac < 0 || kcb < 0 || kab > 20)
                    continue; // dimension-rule failures are reported elsewhere
                auto const x = SignDiagram::unit(kac);
                auto const y = SignDiagram::unit(kcb);
                auto const xy = SignDiagram::composeWithUnit(x, y);
                if (xy.k() != kab || !isMultiplicative(SignDiagram::pair(x, SignDiagram::unit(1)), y, xy))
                    diag.fail(a.id + " > " + c.id + " > " + b.id);
            }
    return rep;
}

/// The Floer complex of a validated, coherently oriented category. Degree i
/// of `complex` holds the objects of (relative) index i + degreeOffset.
struct FloerComplexExtract
{
    std::optional<std::string> baseObject;
    int degreeOffset = 0;
    ChainComplexData complex;
};

inline FloerComplexExtract floerComplex(FlowCategory const& cat, OrientationData const& orient,
                                        std::optional<std::string> const& base = std::nullopt,
                                        bool strict = false)
{
    if (auto rep = validateMorseSmale(cat); !rep.passed())
        throw Error(Errc::MorseSmaleViolation, "category fails the Morse-Smale axioms");
    if (auto rep = checkOrientationCoherence(cat, orient); !rep.passed())
        throw Error(Errc::IncoherentOrientation, "orientation signs are not coherent");

    FloerComplexExtract out;
    out.baseObject = base;
    if (cat.objects().empty())
        return out;

    int const shift = base ? cat.index(*base) : 0;
    auto grade = [&](std::string const& id) { return cat.index(id) - shift; };
    int lo = grade(cat.objects().front().id), hi = lo;
    for (auto const& o : cat.objects()) {
        lo = std::min(lo, grade(o.id));
        hi = std::max(hi, grade(o.id));
    }
    if (lo < 0 && strict)
        throw Error(Errc::NegativeRelativeIndex, "relative index " + std::to_string(lo) + " is negative");
    out.degreeOffset = std::min(lo, 0);

    std::size_t const len = static_cast<std::size_t>(hi - out.degreeOffset);
    std::vector<Basis> bases(len + 1);
    std::map<std::string, std::size_t> slot;
    for (auto const& o : cat.objects()) {
        auto& b = bases[static_cast<std::size_t>(grade(o.id) - out.degreeOffset)];
        slot[o.id] = b.size();
        b.push_back(o.id);
    }
    std::vector<IntegerMatrix> bds;
    for (std::size_t i = 1; i <= len; ++i)
        bds.emplace_back(bases[i - 1].size(), bases[i].size());
    for (auto const& f : cat.rigidFlows()) {
        std::size_t const deg = static_cast<std::size_t>(grade(f.from) - out.degreeOffset);
        bds[deg - 1](slot[f.to], slot[f.from]) += orient.signOf(f.id);
    }
    out.complex = ChainComplexData(std::move(bases), std::move(bds));
    if (!out.complex.compositesVanish())
        throw Error(Errc::IncoherentOrientation, "Floer boundary does not square to zero");
    return out;
}

// ---------------------------------------------------------------------------
// Sign manipulations that must not change homology

/// Reverses the orientation of the generator `a`: every flow into or out of
/// a changes sign, i.e. the boundary is conjugated by a diagonal +-1 matrix.
inline OrientationData flipObjectSigns(FlowCategory const& cat, OrientationData orient, std::string const& a)
{
    for (auto const& f : cat.rigidFlows())
        if (f.from == a || f.to == a)
            orient.sign[f.id] = -orient.signOf(f.id);
    return orient;
}

/// Reverses the orientation convention on every positive-dimensional
/// unstable manifold.
inline OrientationData reverseOrientationConvention(FlowCategory const& cat, OrientationData orient)
{
    for (auto const& f : cat.rigidFlows()) {
        int const flips = (cat.index(f.from) >= 1 ? 1 : 0) + (cat.index(f.to) >= 1 ? 1 : 0);
        if (flips % 2 == 1)
            orient.sign[f.id] = -orient.signOf(f.id);
    }
    return orient;
}

} // namespace floerflow

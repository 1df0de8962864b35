#pragma once

// Combinatorics of manifolds with corners: the cube poset 2^k, corner
// codes, face-structure axioms on sampled models, the chain stratification
// of compactified moduli spaces, and sign diagrams over 2^k.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "category.hpp"
#include "error.hpp"
#include "json_util.hpp"
#include "report.hpp"

namespace floerflow {

// ---------------------------------------------------------------------------
// Cube poset

/// An object a in {0,1}^k; bit i (1-based) is a_i.
class CubeObject
{
public:
    CubeObject(int k, std::uint32_t mask) : k_(k), mask_(mask)
    {
        if (k < 0 || k > 31)
            throw Error(Errc::IndexOutOfRange, "cube dimension must lie in [0, 31]");
        if (k < 32 && (mask >> k) != 0)
            throw Error(Errc::IndexOutOfRange, "bits set beyond the cube dimension");
    }

    static CubeObject minimal(int k) { return CubeObject(k, 0); }
    static CubeObject maximal(int k) { return CubeObject(k, k == 0 ? 0u : (0xffffffffu >> (32 - k))); }

    static std::vector<CubeObject> all(int k)
    {
        std::vector<CubeObject> out;
        for (std::uint32_t m = 0; m < (1u << k); ++m)
            out.emplace_back(k, m);
        return out;
    }

    int k() const { return k_; }
    std::uint32_t mask() const { return mask_; }
    bool bit(int i) const { return (mask_ >> (i - 1)) & 1u; }

    int zeros() const { return k_ - __builtin_popcount(mask_); }

    bool leq(CubeObject const& o) const { return k_ == o.k_ && (mask_ & ~o.mask_) == 0; }

    /// (a, b) in 2^{k+r} from a in 2^k and b in 2^r.
    static CubeObject join(CubeObject const& a, CubeObject const& b)
    {
        return CubeObject(a.k_ + b.k_, a.mask_ | (b.mask_ << a.k_));
    }

    friend bool operator==(CubeObject const&, CubeObject const&) = default;

private:
    int k_;
    std::uint32_t mask_;
};

/// Number of zero coordinates of a point of the nonnegative orthant.
template <class T>
std::size_t cornerCode(std::span<T const> x)
{
    std::size_t zeros = 0;
    for (auto const& v : x) {
        if (v < 0)
            throw Error(Errc::NegativeCoordinate, "point lies outside the nonnegative orthant");
        if (v == 0)
            ++zeros;
    }
    return zeros;
}

template <class T>
std::size_t cornerCode(std::vector<T> const& x)
{
    return cornerCode(std::span<T const>(x));
}

// ---------------------------------------------------------------------------
// Face structures on sampled models

/// Sample points of R_+^k with the set of face labels (1..k) claimed for
/// each.
struct FaceStructure
{
    int k = 0;
    std::vector<std::vector<Rational>> samples;
    std::vector<std::set<int>> labels;

    /// Face j is the locus where coordinate j vanishes.
    static FaceStructure canonical(int k, std::vector<std::vector<Rational>> samples)
    {
        FaceStructure f{k, std::move(samples), {}};
        for (auto const& x : f.samples) {
            std::set<int> l;
            for (std::size_t j = 0; j < x.size(); ++j)
                if (x[j] == 0)
                    l.insert(static_cast<int>(j) + 1);
            f.labels.push_back(std::move(l));
        }
        return f;
    }
};

inline Report validateKStructure(FaceStructure const& f)
{
    Report rep("<" + std::to_string(f.k) + ">-structure");
    auto& shape = rep.check("well-formed samples");
    auto& p1 = rep.check("each point lies in c(x) faces");
    auto& p2 = rep.check("faces cover the boundary");
    auto& p3 = rep.check("face intersections are codimension two");

    if (f.labels.size() != f.samples.size())
        shape.fail("label list and sample list differ in length");
    std::size_t const n = std::min(f.labels.size(), f.samples.size());
    for (std::size_t s = 0; s < n; ++s) {
        auto const& x = f.samples[s];
        auto const& l = f.labels[s];
        std::string const tag = "sample " + std::to_string(s);
        if (static_cast<int>(x.size()) != f.k) {
            shape.fail(tag + " has " + std::to_string(x.size()) + " coordinates");
            continue;
        }
        bool labelsOk = true;
        for (int lab : l)
            if (lab < 1 || lab > f.k) {
                shape.fail(tag + " carries label " + std::to_string(lab));
                labelsOk = false;
            }
        std::size_t c = 0;
        try {
            c = cornerCode(x);
        } catch (Error const&) {
            shape.fail(tag + " has a negative coordinate");
            continue;
        }
        if (!labelsOk)
            continue;
        if (l.size() != c)
            p1.fail(tag + ": c = " + std::to_string(c) + " but " + std::to_string(l.size()) + " faces");
        if (c > 0 && l.empty())
            p2.fail(tag + " is a boundary point in no face");
        if (l.size() >= 2 && c < 2)
            p3.fail(tag + " lies on two faces with c = " + std::to_string(c));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Chain stratification of compactified moduli spaces

struct StratumChain
{
    std::vector<std::string> chain; // a = a_0 > a_1 > ... > a_r = b
    int dimension = 0;

    std::size_t intermediates() const { return chain.size() >= 2 ? chain.size() - 2 : 0; }

    friend bool operator==(StratumChain const&, StratumChain const&) = default;
};

namespace detail {

inline void extendChains(FlowCategory const& cat, std::string const& b, std::vector<std::string>& cur,
                         std::vector<std::vector<std::string>>& out)
{
    std::string const last = cur.back(); // cur grows below
    for (auto const& o : cat.objects()) {
        if (!cat.greater(last, o.id))
            continue;
        if (o.id == b) {
            cur.push_back(b);
            out.push_back(cur);
            cur.pop_back();
        } else if (cat.greater(o.id, b)) {
            cur.push_back(o.id);
            extendChains(cat, b, cur, out);
            cur.pop_back();
        }
    }
}

} // namespace detail

/// All strictly decreasing chains from a to b, shortest first. The chain
/// (a, b) is the open stratum.
inline std::vector<StratumChain> strata(FlowCategory const& cat, std::string const& a, std::string const& b)
{
    if (!cat.greater(a, b))
        throw Error(Errc::NotComparable, "'" + a + "' > '" + b + "' does not hold");
    std::vector<std::vector<std::string>> raw;
    std::vector<std::string> cur{a};
    detail::extendChains(cat, b, cur, raw);

    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < cat.objects().size(); ++i)
        pos[cat.objects()[i].id] = i;
    std::stable_sort(raw.begin(), raw.end(), [&](auto const& x, auto const& y) {
        if (x.size() != y.size())
            return x.size() < y.size();
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != y[i])
                return pos[x[i]] < pos[y[i]];
        return false;
    });

    int const gap = cat.index(a) - cat.index(b);
    std::vector<StratumChain> out;
    for (auto& c : raw) {
        int const inner = static_cast<int>(c.size()) - 2;
        out.push_back(StratumChain{std::move(c), gap - 1 - inner});
    }
    return out;
}

/// Chains through an object of index mu(a) - j, grouped by that object.
inline std::map<std::string, std::vector<StratumChain>>
faceDecomposition(FlowCategory const& cat, std::string const& a, std::string const& b, int j)
{
    if (!cat.greater(a, b))
        throw Error(Errc::NotComparable, "'" + a + "' > '" + b + "' does not hold");
    int const k = cat.index(a) - cat.index(b) - 1;
    if (j < 1 || j > k)
        throw Error(Errc::IndexOutOfRange, "face index " + std::to_string(j) + " outside [1, " +
                                               std::to_string(k) + "]");
    int const level = cat.index(a) - j;
    std::map<std::string, std::vector<StratumChain>> out;
    for (auto const& s : strata(cat, a, b))
        for (std::size_t i = 1; i + 1 < s.chain.size(); ++i)
            if (cat.index(s.chain[i]) == level)
                out[s.chain[i]].push_back(s);
    return out;
}

/// The cube object of the stratum: bit j is 0 exactly when the chain
/// passes through index mu(a) - j.
inline CubeObject chainCubeObject(FlowCategory const& cat, StratumChain const& s)
{
    int const top = cat.index(s.chain.front());
    int const k = top - cat.index(s.chain.back()) - 1;
    std::uint32_t mask = k == 0 ? 0u : (0xffffffffu >> (32 - k));
    for (std::size_t i = 1; i + 1 < s.chain.size(); ++i) {
        int const j = top - cat.index(s.chain[i]);
        if (j >= 1 && j <= k)
            mask &= ~(1u << (j - 1));
    }
    return CubeObject(k, mask);
}

/// Model of the <k>-structure of the compactified moduli space from a to b:
/// one sample per stratum (coordinate j is 0 on the faces through index
/// mu(a) - j, 1 otherwise), labelled by face-decomposition membership.
inline FaceStructure strataFaceStructure(FlowCategory const& cat, std::string const& a, std::string const& b)
{
    auto const chains = strata(cat, a, b);
    int const k = cat.index(a) - cat.index(b) - 1;
    FaceStructure f;
    f.k = std::max(k, 0);
    std::vector<std::map<std::string, std::vector<StratumChain>>> faces;
    for (int j = 1; j <= k; ++j)
        faces.push_back(faceDecomposition(cat, a, b, j));
    for (auto const& s : chains) {
        auto const cube = chainCubeObject(cat, s);
        std::vector<Rational> x;
        for (int j = 1; j <= k; ++j)
            x.emplace_back(cube.bit(j) ? 1 : 0);
        std::set<int> l;
        for (int j = 1; j <= k; ++j)
            for (auto const& [c, members] : faces[static_cast<std::size_t>(j - 1)])
                if (std::find(members.begin(), members.end(), s) != members.end())
                    l.insert(j);
        f.samples.push_back(std::move(x));
        f.labels.push_back(std::move(l));
    }
    return f;
}

inline json strataToJson(std::string const& a, std::string const& b, std::vector<StratumChain> const& chains)
{
    json j;
    j["pair"] = json::array({a, b});
    json cs = json::array();
    json ds = json::array();
    for (auto const& s : chains) {
        cs.push_back(s.chain);
        ds.push_back(s.dimension);
    }
    j["chains"] = std::move(cs);
    j["dims"] = std::move(ds);
    return j;
}

// ---------------------------------------------------------------------------
// Sign diagrams

/// A +-1 unit attached to every object of 2^k, +1 at the minimal object.
class SignDiagram
{
public:
    SignDiagram(int k, std::vector<int> signs) : k_(k), signs_(std::move(signs))
    {
        if (k < 0 || k > 20)
            throw Error(Errc::IndexOutOfRange, "sign diagram dimension must lie in [0, 20]");
        if (signs_.size() != (std::size_t{1} << k))
            throw Error(Errc::DimensionMismatch, "need one sign per cube object");
        for (int s : signs_)
            if (s != 1 && s != -1)
                throw Error(Errc::DimensionMismatch, "signs must be +1 or -1");
        if (signs_[0] != 1)
            throw Error(Errc::DimensionMismatch, "the minimal object must carry +1");
    }

    static SignDiagram unit(int k) { return SignDiagram(k, std::vector<int>(std::size_t{1} << k, 1)); }

    int k() const { return k_; }
    int sign(CubeObject const& a) const
    {
        if (a.k() != k_)
            throw Error(Errc::DimensionMismatch, "cube object from a different cube");
        return signs_[a.mask()];
    }
    std::vector<int> const& signs() const { return signs_; }

    /// The pairing 2^k x 2^r -> 2^{k+r}: sign(a, b) = sign(a) * sign(b).
    static SignDiagram pair(SignDiagram const& x, SignDiagram const& y)
    {
        std::vector<int> s(std::size_t{1} << (x.k_ + y.k_));
        for (auto const& a : CubeObject::all(x.k_))
            for (auto const& b : CubeObject::all(y.k_))
                s[CubeObject::join(a, b).mask()] = x.sign(a) * y.sign(b);
        return SignDiagram(x.k_ + y.k_, std::move(s));
    }

    /// Composition in the orientation category: pair through the unit
    /// diagram of size one inserted between the factors.
    static SignDiagram composeWithUnit(SignDiagram const& x, SignDiagram const& y)
    {
        return pair(pair(x, unit(1)), y);
    }

    friend bool operator==(SignDiagram const&, SignDiagram const&) = default;

private:
    int k_;
    std::vector<int> signs_;
};

/// Whether `joined` is the pairing of x and y at every object of 2^{k+r}.
inline bool isMultiplicative(SignDiagram const& x, SignDiagram const& y, SignDiagram const& joined)
{
    if (joined.k() != x.k() + y.k())
        return false;
    for (auto const& a : CubeObject::all(x.k()))
        for (auto const& b : CubeObject::all(y.k()))
            if (joined.sign(CubeObject::join(a, b)) != x.sign(a) * y.sign(b))
                return false;
    return true;
}

} // namespace floerflow

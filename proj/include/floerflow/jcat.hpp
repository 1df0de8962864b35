#pragma once

// The indexing category J and the algebraic side of realizing a chain
// complex: filtered differential modules whose subquotients are free on the
// chain bases and whose adjacent differential components are the boundary
// maps.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coeff.hpp"
#include "error.hpp"
#include "json_util.hpp"
#include "report.hpp"

namespace floerflow {

// ---------------------------------------------------------------------------
// Category J

/// A morphism n -> m of J: either the basepoint, or a sequence of
/// nonnegative rationals t_i supported on m < i < n.
class JPoint
{
public:
    static JPoint identity(int n) { return JPoint(n, n, false, {}); }

    static JPoint infinity(int source, int target)
    {
        if (source <= target)
            throw Error(Errc::InvalidJPoint, "the basepoint exists only for source > target");
        return JPoint(source, target, true, {});
    }

    /// `coords[k]` is t_{target + 1 + k}.
    static JPoint sequence(int source, int target, std::vector<Rational> coords)
    {
        if (source < target)
            throw Error(Errc::InvalidJPoint, "no morphisms from a smaller to a larger object");
        std::size_t const expected = source == target ? 0 : static_cast<std::size_t>(source - target - 1);
        if (coords.size() != expected)
            throw Error(Errc::InvalidJPoint, "sequence length must be source - target - 1");
        for (auto const& t : coords)
            if (t < 0)
                throw Error(Errc::InvalidJPoint, "coordinates must be nonnegative");
        return JPoint(source, target, false, std::move(coords));
    }

    /// Sparse form: unspecified coordinates are zero; keys must lie strictly
    /// between target and source.
    static JPoint fromMap(int source, int target, std::map<int, Rational> const& coords)
    {
        if (source < target)
            throw Error(Errc::InvalidJPoint, "no morphisms from a smaller to a larger object");
        std::vector<Rational> dense(source == target ? 0 : static_cast<std::size_t>(source - target - 1));
        for (auto const& [i, t] : coords) {
            if (i <= target || i >= source)
                throw Error(Errc::InvalidJPoint, "coordinate t_" + std::to_string(i) +
                                                     " outside the open support interval");
            dense[static_cast<std::size_t>(i - target - 1)] = t;
        }
        return sequence(source, target, std::move(dense));
    }

    int source() const { return source_; }
    int target() const { return target_; }
    bool isInfinity() const { return infinity_; }

    /// t_i, zero outside the support. Meaningless for the basepoint.
    Rational coordinate(int i) const
    {
        if (infinity_ || i <= target_ || i >= source_)
            return Rational(0);
        return coords_[static_cast<std::size_t>(i - target_ - 1)];
    }

    std::vector<Rational> const& coordinates() const { return coords_; }

    friend bool operator==(JPoint const&, JPoint const&) = default;

private:
    JPoint(int s, int t, bool inf, std::vector<Rational> c)
        : source_(s), target_(t), infinity_(inf), coords_(std::move(c))
    {
    }

    int source_;
    int target_;
    bool infinity_;
    std::vector<Rational> coords_;
};

/// Composite g o f of g in J(n,m) and f in J(m,p): addition of sequences,
/// with the basepoint absorbing.
inline JPoint composeJ(JPoint const& g, JPoint const& f)
{
    if (g.target() != f.source())
        throw Error(Errc::SourceTargetMismatch, "target " + std::to_string(g.target()) +
                                                    " does not match source " + std::to_string(f.source()));
    int const n = g.source();
    int const m = g.target();
    int const p = f.target();
    if (g.isInfinity() || f.isInfinity())
        return JPoint::infinity(n, p);
    std::vector<Rational> out;
    for (int i = p + 1; i < n; ++i)
        out.push_back(i < m ? f.coordinate(i) : (i > m ? g.coordinate(i) : Rational(0)));
    return JPoint::sequence(n, p, std::move(out));
}

/// Whether x lies in the image of J(n,m) x J(m,p) -> J(n,p).
inline bool inFaceImage(JPoint const& x, int m)
{
    if (m <= x.target() || m >= x.source())
        throw Error(Errc::IndexOutOfRange, "intermediate object " + std::to_string(m) +
                                               " not strictly between target and source");
    return !x.isInfinity() && x.coordinate(m) == 0;
}

// ---------------------------------------------------------------------------
// Chain complexes with bases

using Basis = std::vector<std::string>;

/// C_0 <- C_1 <- ... <- C_n with labelled bases; `boundary(i)` has shape
/// |B_{i-1}| x |B_i|. Shapes are checked on construction, the vanishing of
/// composites is not (see `compositesVanish`).
class ChainComplexData
{
public:
    ChainComplexData() : bases_(1) {}

    ChainComplexData(std::vector<Basis> bases, std::vector<IntegerMatrix> boundaries)
        : bases_(std::move(bases)), boundaries_(std::move(boundaries))
    {
        if (bases_.empty())
            bases_.emplace_back();
        if (boundaries_.size() + 1 != bases_.size())
            throw Error(Errc::DimensionMismatch, "need exactly one boundary per positive degree");
        for (std::size_t i = 1; i < bases_.size(); ++i) {
            auto const& d = boundaries_[i - 1];
            if (d.rows() != bases_[i - 1].size() || d.cols() != bases_[i].size())
                throw Error(Errc::DimensionMismatch, "boundary " + std::to_string(i) + " has shape " +
                                                         std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
        }
    }

    /// Top degree n.
    std::size_t length() const { return bases_.size() - 1; }
    std::vector<Basis> const& bases() const { return bases_; }
    Basis const& basis(std::size_t i) const { return bases_.at(i); }
    std::size_t rank(std::size_t i) const { return i < bases_.size() ? bases_[i].size() : 0; }

    /// The boundary C_i -> C_{i-1}, 1 <= i <= length().
    IntegerMatrix const& boundary(std::size_t i) const { return boundaries_.at(i - 1); }
    std::vector<IntegerMatrix> const& boundaries() const { return boundaries_; }

    /// Degrees i with boundary(i-1) * boundary(i) != 0.
    std::vector<std::size_t> nonzeroComposites() const
    {
        std::vector<std::size_t> bad;
        for (std::size_t i = 2; i <= length(); ++i)
            if (!(boundary(i - 1) * boundary(i)).isZero())
                bad.push_back(i);
        return bad;
    }

    bool compositesVanish() const { return nonzeroComposites().empty(); }

    /// Incoming boundary at degree i (zero map from an empty module past the top).
    IntegerMatrix incoming(std::size_t i) const
    {
        return i + 1 <= length() ? boundary(i + 1) : IntegerMatrix(rank(i), 0);
    }

    IntegerMatrix outgoing(std::size_t i) const
    {
        return i >= 1 ? boundary(i) : IntegerMatrix(0, rank(0));
    }

    std::vector<HomologyGroup> homology(CoefficientRing const& ring) const
    {
        std::vector<HomologyGroup> h;
        for (std::size_t i = 0; i <= length(); ++i)
            h.push_back(floerflow::homology(incoming(i), outgoing(i), ring));
        return h;
    }

private:
    std::vector<Basis> bases_;
    std::vector<IntegerMatrix> boundaries_;
};

// ---------------------------------------------------------------------------
// Filtered realizations

using FiltrationPair = std::pair<int, int>; // (p, q) with p > q

/// Filtered differential module over the coefficient ring: level k is free
/// on the basis B_k in internal degree k, and the differential splits into
/// components D_{p,q} : level p -> level q for p > q.
class FilteredRealization
{
public:
    FilteredRealization(CoefficientRing ring, std::vector<Basis> levels,
                        std::map<FiltrationPair, IntegerMatrix> components)
        : ring_(std::move(ring)), levels_(std::move(levels)), components_(std::move(components))
    {
        if (levels_.empty())
            levels_.emplace_back();
        for (auto const& [pq, m] : components_) {
            auto [p, q] = pq;
            if (p <= q || q < 0 || p >= static_cast<int>(levels_.size()))
                throw Error(Errc::IndexOutOfRange, "component D_{" + std::to_string(p) + "," +
                                                       std::to_string(q) + "} out of range");
            if (m.rows() != levels_[q].size() || m.cols() != levels_[p].size())
                throw Error(Errc::DimensionMismatch, "component D_{" + std::to_string(p) + "," +
                                                         std::to_string(q) + "} has the wrong shape");
        }
    }

    CoefficientRing const& ring() const { return ring_; }
    std::vector<Basis> const& levels() const { return levels_; }
    std::size_t topLevel() const { return levels_.size() - 1; }
    std::map<FiltrationPair, IntegerMatrix> const& components() const { return components_; }

    /// D_{p,q}; zero when not stored.
    IntegerMatrix component(int p, int q) const
    {
        auto it = components_.find({p, q});
        if (it != components_.end())
            return it->second;
        return IntegerMatrix(levels_.at(static_cast<std::size_t>(q)).size(),
                             levels_.at(static_cast<std::size_t>(p)).size());
    }

    FilteredRealization withComponent(int p, int q, IntegerMatrix m) const
    {
        auto c = components_;
        c[{p, q}] = std::move(m);
        return FilteredRealization(ring_, levels_, std::move(c));
    }

    /// Pairs (p, r) where sum_{p > q > r} D_{q,r} D_{p,q} is nonzero.
    std::vector<FiltrationPair> squareDefects() const
    {
        std::vector<FiltrationPair> bad;
        int const top = static_cast<int>(topLevel());
        for (int p = 2; p <= top; ++p)
            for (int r = 0; r + 1 < p; ++r) {
                IntegerMatrix acc(levels_[static_cast<std::size_t>(r)].size(),
                                  levels_[static_cast<std::size_t>(p)].size());
                for (int q = r + 1; q < p; ++q)
                    acc = acc + component(q, r) * component(p, q);
                if (!acc.isZero())
                    bad.emplace_back(p, r);
            }
        return bad;
    }

    bool squaresToZero() const { return squareDefects().empty(); }

    /// Homology of the total complex in each total degree. Components that
    /// drop filtration by s >= 2 carry internal degree s - 1, which the
    /// ungraded rings do not have, so only adjacent components contribute;
    /// for the Laurent window the integral answer is replicated per power.
    std::vector<HomologyGroup> totalHomology() const
    {
        std::vector<HomologyGroup> h;
        int const top = static_cast<int>(topLevel());
        for (int k = 0; k <= top; ++k) {
            IntegerMatrix in = k < top ? component(k + 1, k)
                                       : IntegerMatrix(levels_[static_cast<std::size_t>(k)].size(), 0);
            IntegerMatrix out = k > 0 ? component(k, k - 1)
                                      : IntegerMatrix(0, levels_[0].size());
            h.push_back(floerflow::homology(in, out, ring_));
        }
        return h;
    }

private:
    CoefficientRing ring_;
    std::vector<Basis> levels_;
    std::map<FiltrationPair, IntegerMatrix> components_;
};

/// Builds the filtered module with D_{p,p-1} = boundary(p) and the supplied
/// higher components (p - q >= 2, defaulting to zero).
inline FilteredRealization realize(ChainComplexData const& c, CoefficientRing const& ring,
                                   std::map<FiltrationPair, IntegerMatrix> const& higher = {})
{
    if (auto bad = c.nonzeroComposites(); !bad.empty())
        throw Error(Errc::BoundaryCompositeNonzero,
                    "boundary(" + std::to_string(bad.front() - 1) + ") * boundary(" +
                        std::to_string(bad.front()) + ") != 0");
    std::map<FiltrationPair, IntegerMatrix> comps;
    for (std::size_t p = 1; p <= c.length(); ++p)
        comps[{static_cast<int>(p), static_cast<int>(p) - 1}] = c.boundary(p);
    for (auto const& [pq, m] : higher) {
        if (pq.first - pq.second < 2)
            throw Error(Errc::IndexOutOfRange, "higher components must drop filtration by at least 2");
        comps[pq] = m;
    }
    FilteredRealization x(ring, c.bases(), std::move(comps));
    if (auto bad = x.squareDefects(); !bad.empty())
        throw Error(Errc::TotalDifferentialSquareNonzero,
                    "D^2 has a nonzero component from level " + std::to_string(bad.front().first) +
                        " to level " + std::to_string(bad.front().second));
    return x;
}

/// Checks the two realization conditions: subquotients free on the chain
/// bases in the right degree, and adjacent connecting maps equal to the
/// boundary maps entry by entry. Also reports D^2 = 0.
inline Report checkRealization(FilteredRealization const& x, ChainComplexData const& c)
{
    Report rep("realization");
    auto& free = rep.check("subquotients free on chain bases");
    auto& bd = rep.check("connecting maps equal boundaries");
    auto& sq = rep.check("total differential squares to zero");

    if (x.levels().size() != c.bases().size())
        free.fail("filtration has " + std::to_string(x.levels().size()) + " levels, complex has " +
                  std::to_string(c.bases().size()) + " degrees");
    std::size_t const common = std::min(x.levels().size(), c.bases().size());
    for (std::size_t i = 0; i < common; ++i)
        if (x.levels()[i] != c.basis(i))
            free.fail("level " + std::to_string(i) + " is not free on B_" + std::to_string(i));

    for (std::size_t i = 1; i < common; ++i) {
        IntegerMatrix const got = x.component(static_cast<int>(i), static_cast<int>(i) - 1);
        IntegerMatrix const& want = c.boundary(i);
        if (got.rows() != want.rows() || got.cols() != want.cols()) {
            bd.fail("D_{" + std::to_string(i) + "," + std::to_string(i - 1) + "} has the wrong shape");
            continue;
        }
        for (std::size_t r = 0; r < want.rows(); ++r)
            for (std::size_t k = 0; k < want.cols(); ++k)
                if (got(r, k) != want(r, k))
                    bd.fail("D_{" + std::to_string(i) + "," + std::to_string(i - 1) + "}(" +
                            std::to_string(r) + "," + std::to_string(k) + "): expected " +
                            want(r, k).str() + ", found " + got(r, k).str());
    }

    for (auto const& [p, r] : x.squareDefects())
        sq.fail("D^2 component " + std::to_string(p) + " -> " + std::to_string(r) + " is nonzero");
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization

inline json complexToJson(ChainComplexData const& c)
{
    json j;
    j["bases"] = c.bases();
    json b = json::array();
    for (auto const& d : c.boundaries())
        b.push_back(matrixToJson(d));
    j["boundaries"] = std::move(b);
    return j;
}

inline ChainComplexData complexFromJson(json const& j)
{
    auto bases = requireField<std::vector<Basis>>(j, "bases");
    if (bases.empty())
        bases.emplace_back();
    json const& bj = j.contains("boundaries") ? j.at("boundaries") : json::array();
    if (!bj.is_array() || bj.size() + 1 != bases.size())
        throw Error(Errc::ParseError, "expected " + std::to_string(bases.size() - 1) + " boundary matrices");
    std::vector<IntegerMatrix> bds;
    for (std::size_t i = 1; i < bases.size(); ++i)
        bds.push_back(matrixFromJson(bj[i - 1], bases[i - 1].size(), bases[i].size()));
    return ChainComplexData(std::move(bases), std::move(bds));
}

inline json realizationToJson(FilteredRealization const& x)
{
    json j;
    j["ring"] = x.ring().name();
    j["bases"] = x.levels();
    json comps = json::object();
    for (auto const& [pq, m] : x.components())
        comps[std::to_string(pq.first) + "," + std::to_string(pq.second)] = matrixToJson(m);
    j["components"] = std::move(comps);
    return j;
}

inline FilteredRealization realizationFromJson(json const& j)
{
    auto ring = CoefficientRing::parse(j.value("ring", std::string("z")));
    auto levels = requireField<std::vector<Basis>>(j, "bases");
    if (levels.empty())
        levels.emplace_back();
    std::map<FiltrationPair, IntegerMatrix> comps;
    if (j.contains("components")) {
        for (auto const& [key, val] : j.at("components").items()) {
            auto comma = key.find(',');
            int p = 0, q = 0;
            try {
                if (comma == std::string::npos)
                    throw std::invalid_argument(key);
                p = std::stoi(key.substr(0, comma));
                q = std::stoi(key.substr(comma + 1));
            } catch (std::exception const&) {
                throw Error(Errc::ParseError, "component key '" + key + "' is not of the form \"p,q\"");
            }
            if (p <= q || q < 0 || p >= static_cast<int>(levels.size()))
                throw Error(Errc::ParseError, "component key '" + key + "' out of range");
            comps[{p, q}] = matrixFromJson(val, levels[static_cast<std::size_t>(q)].size(),
                                           levels[static_cast<std::size_t>(p)].size());
        }
    }
    return FilteredRealization(ring, std::move(levels), std::move(comps));
}

inline json homologyToJson(HomologyGroup const& h, CoefficientRing const& ring)
{
    json j;
    j["freeRank"] = h.freeRank;
    json t = json::array();
    for (auto const& x : h.torsion)
        t.push_back(integerToJson(x));
    j["torsion"] = std::move(t);
    j["text"] = describe(h, ring);
    if (!h.graded.empty()) {
        json g = json::array();
        for (auto const& s : h.graded) {
            json tt = json::array();
            for (auto const& x : s.torsion)
                tt.push_back(integerToJson(x));
            g.push_back({{"degree", s.degree}, {"freeRank", s.freeRank}, {"torsion", tt}});
        }
        j["graded"] = std::move(g);
    }
    return j;
}

} // namespace floerflow

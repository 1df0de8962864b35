#pragma once

// Seeded random generators shared by the property tests and the acceptance
// runner.

#include <optional>
#include <random>

#include <floerflow/jcat.hpp>

namespace testing_generators {

using namespace floerflow;

struct FilteredSample
{
    ChainComplexData complex;
    std::map<FiltrationPair, IntegerMatrix> higher;
};

inline IntegerMatrix kernelBasis(IntegerMatrix const& d)
{
    auto s = smithNormalForm(d);
    std::size_t const n = d.cols(), r = s.rank();
    IntegerMatrix k(n, n - r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = r; j < n; ++j)
            k(i, j - r) = s.v(i, j);
    return k;
}

/// Boundaries with entries in [-3, 3] and d d = 0: each column is a small
/// random combination of a kernel basis of the previous boundary, kept if
/// it stays in range. Higher components come from conjugating the adjacent
/// differential by a random unipotent filtered automorphism I + N, which
/// leaves the adjacent components alone.
inline FilteredSample randomFilteredComplex(std::mt19937_64& rng, int maxRank, int maxLength)
{
    std::uniform_int_distribution<int> len(1, maxLength), rk(1, maxRank), entry(-3, 3), small(-1, 1);
    int const n = len(rng);
    std::vector<Basis> bases(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        for (int k = rk(rng); k > 0; --k)
            bases[static_cast<std::size_t>(i)].push_back("c" + std::to_string(i) + "_" +
                                                         std::to_string(bases[static_cast<std::size_t>(i)].size()));

    std::vector<IntegerMatrix> bds;
    for (int i = 1; i <= n; ++i) {
        std::size_t const rows = bases[static_cast<std::size_t>(i) - 1].size();
        std::size_t const cols = bases[static_cast<std::size_t>(i)].size();
        IntegerMatrix d(rows, cols);
        if (i == 1) {
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    d(r, c) = entry(rng);
        } else {
            auto k = kernelBasis(bds.back());
            for (std::size_t c = 0; c < cols && k.cols() > 0; ++c)
                for (int attempt = 0; attempt < 20; ++attempt) {
                    IntegerMatrix coef(k.cols(), 1);
                    for (std::size_t t = 0; t < k.cols(); ++t)
                        coef(t, 0) = small(rng);
                    auto col = k * coef;
                    bool ok = true;
                    for (std::size_t r = 0; r < rows; ++r)
                        ok = ok && col(r, 0) >= -3 && col(r, 0) <= 3;
                    if (!ok)
                        continue;
                    for (std::size_t r = 0; r < rows; ++r)
                        d(r, c) = col(r, 0);
                    break;
                }
        }
        bds.push_back(std::move(d));
    }
    FilteredSample out{ChainComplexData(bases, bds), {}};

    // Total matrices indexed by level offsets.
    std::vector<std::size_t> off{0};
    for (auto const& b : bases)
        off.push_back(off.back() + b.size());
    std::size_t const total = off.back();
    IntegerMatrix dTot(total, total), nTot(total, total);
    for (int p = 1; p <= n; ++p) {
        auto const& d = out.complex.boundary(static_cast<std::size_t>(p));
        for (std::size_t r = 0; r < d.rows(); ++r)
            for (std::size_t c = 0; c < d.cols(); ++c)
                dTot(off[p - 1] + r, off[p] + c) = d(r, c);
    }
    std::bernoulli_distribution sparse(0.3);
    for (int p = 1; p <= n; ++p)
        for (int q = 0; q < p; ++q)
            for (std::size_t r = 0; r < bases[q].size(); ++r)
                for (std::size_t c = 0; c < bases[p].size(); ++c)
                    if (sparse(rng))
                        nTot(off[q] + r, off[p] + c) = small(rng);
    // (I + N)^-1 = I - N + N^2 - ... ; N is nilpotent of order <= n + 1.
    IntegerMatrix inv = IntegerMatrix::identity(total), power = IntegerMatrix::identity(total);
    for (int k = 1; k <= n; ++k) {
        power = -(power * nTot);
        inv = inv + power;
    }
    auto conj = (IntegerMatrix::identity(total) + nTot) * dTot * inv;
    for (int p = 2; p <= n; ++p)
        for (int q = 0; q + 2 <= p; ++q) {
            IntegerMatrix m(bases[q].size(), bases[p].size());
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    m(r, c) = conj(off[q] + r, off[p] + c);
            if (!m.isZero())
                out.higher[{p, q}] = std::move(m);
        }
    return out;
}

/// Changes one entry of one adjacent component by a nonzero amount.
inline std::optional<FilteredRealization> perturbAdjacent(std::mt19937_64& rng, FilteredRealization const& x)
{
    std::vector<int> candidates;
    for (int p = 1; p <= static_cast<int>(x.topLevel()); ++p)
        if (!x.levels()[p].empty() && !x.levels()[p - 1].empty())
            candidates.push_back(p);
    if (candidates.empty())
        return std::nullopt;
    int const p = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    auto d = x.component(p, p - 1);
    std::size_t const r = std::uniform_int_distribution<std::size_t>(0, d.rows() - 1)(rng);
    std::size_t const c = std::uniform_int_distribution<std::size_t>(0, d.cols() - 1)(rng);
    int delta = std::uniform_int_distribution<int>(1, 3)(rng);
    d(r, c) += std::bernoulli_distribution(0.5)(rng) ? delta : -delta;
    return x.withComponent(p, p - 1, d);
}

} // namespace testing_generators

#pragma once

// Independent reference computations used by the tests. None of these go
// through the Smith normal form code under test.

#include <array>
#include <cstddef>
#include <map>
#include <vector>

#include <floerflow/coeff.hpp>

namespace testing_oracles {

using floerflow::Integer;
using floerflow::IntegerMatrix;

/// Fraction-free Gaussian elimination.
inline Integer bareissDeterminant(IntegerMatrix m)
{
    std::size_t const n = m.rows();
    if (n != m.cols())
        return 0;
    if (n == 0)
        return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swapRows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

struct Triangulation
{
    IntegerMatrix d1; // vertices x edges
    IntegerMatrix d2; // edges x triangles
};

/// 3x3 grid on the torus, each square cut along a diagonal: 9 vertices,
/// 27 edges, 18 triangles.
inline Triangulation torusTriangulation()
{
    auto v = [](int i, int j) { return static_cast<std::size_t>(((i % 3 + 3) % 3) * 3 + (j % 3 + 3) % 3); };
    std::vector<std::array<std::size_t, 2>> edges;
    std::map<std::array<std::size_t, 2>, std::size_t> edgeIndex;
    auto addEdge = [&](std::size_t a, std::size_t b) {
        edgeIndex[{a, b}] = edges.size();
        edges.push_back({a, b});
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            addEdge(v(i, j), v(i + 1, j));
            addEdge(v(i, j), v(i, j + 1));
            addEdge(v(i, j), v(i + 1, j + 1));
        }
    // Boundary of an oriented edge (a, b) is b - a; an oriented triangle
    // (a, b, c) has boundary (b,c) - (a,c) + (a,b).
    auto edgeTerm = [&](std::size_t a, std::size_t b, IntegerMatrix& d2, std::size_t t, int s) {
        auto it = edgeIndex.find({a, b});
        if (it != edgeIndex.end()) {
            d2(it->second, t) += s;
            return;
        }
        d2(edgeIndex.at({b, a}), t) -= s;
    };
    Triangulation tr{IntegerMatrix(9, edges.size()), IntegerMatrix(edges.size(), 18)};
    for (std::size_t e = 0; e < edges.size(); ++e) {
        tr.d1(edges[e][1], e) += 1;
        tr.d1(edges[e][0], e) -= 1;
    }
    std::size_t t = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::array<std::array<std::size_t, 3>, 2> tris{{{v(i, j), v(i + 1, j), v(i + 1, j + 1)},
                                                            {v(i, j), v(i + 1, j + 1), v(i, j + 1)}}};
            for (auto const& tri : tris) {
                edgeTerm(tri[1], tri[2], tr.d2, t, 1);
                edgeTerm(tri[0], tri[2], tr.d2, t, -1);
                edgeTerm(tri[0], tri[1], tr.d2, t, 1);
                ++t;
            }
        }
    return tr;
}

} // namespace testing_oracles

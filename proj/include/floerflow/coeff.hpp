#pragma once

// Coefficient rings and exact homology of integer chain complexes.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace floerflow {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major matrix of exact integers.
class IntegerMatrix
{
public:
    IntegerMatrix() = default;

    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols)
    {
    }

    IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != rows_ * cols_)
            throw Error(Errc::DimensionMismatch, "entry count does not match shape");
    }

    static IntegerMatrix identity(std::size_t n)
    {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    static IntegerMatrix fromRows(std::vector<std::vector<Integer>> const& rows)
    {
        std::size_t const r = rows.size();
        std::size_t const c = r ? rows.front().size() : 0;
        IntegerMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw Error(Errc::DimensionMismatch, "ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntegerMatrix fromRows(std::initializer_list<std::initializer_list<long long>> rows)
    {
        std::vector<std::vector<Integer>> v;
        for (auto const& row : rows)
            v.emplace_back(row.begin(), row.end());
        return fromRows(v);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Integer const& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool isZero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](Integer const& x) { return x == 0; });
    }

    IntegerMatrix transposed() const
    {
        IntegerMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    void swapRows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swapCols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[target] += factor * row[source]
    void addRowMultiple(std::size_t target, std::size_t source, Integer const& factor)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(target, j) += factor * (*this)(source, j);
    }

    /// col[target] += factor * col[source]
    void addColMultiple(std::size_t target, std::size_t source, Integer const& factor)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, target) += factor * (*this)(i, source);
    }

    void negateRow(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = -(*this)(i, j);
    }

    friend bool operator==(IntegerMatrix const&, IntegerMatrix const&) = default;

    friend IntegerMatrix operator*(IntegerMatrix const& a, IntegerMatrix const& b)
    {
        if (a.cols_ != b.rows_)
            throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
        IntegerMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                Integer const& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend IntegerMatrix operator+(IntegerMatrix a, IntegerMatrix const& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw Error(Errc::DimensionMismatch, "matrix sum shape mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            a.data_[k] += b.data_[k];
        return a;
    }

    friend IntegerMatrix operator-(IntegerMatrix const& a)
    {
        IntegerMatrix r = a;
        for (auto& x : r.data_)
            x = -x;
        return r;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

inline std::string toString(IntegerMatrix const& m)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

/// U * A * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm
{
    IntegerMatrix u;
    IntegerMatrix d;
    IntegerMatrix v;

    std::size_t rank() const
    {
        std::size_t r = 0;
        for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
            if (d(i, i) != 0)
                ++r;
        return r;
    }

    /// Nonzero diagonal entries in order.
    std::vector<Integer> factors() const
    {
        std::vector<Integer> f;
        for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
            if (d(i, i) != 0)
                f.push_back(d(i, i));
        return f;
    }
};

namespace detail {

// Smallest nonzero |entry| in the lower-right block starting at (t, t);
// ties go to the lowest (row, col) in row-major order.
inline bool findSmithPivot(IntegerMatrix const& d, std::size_t t, std::size_t& pi, std::size_t& pj)
{
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            Integer const& x = d(i, j);
            if (x == 0)
                continue;
            Integer ax = abs(x);
            if (!found || ax < best) {
                found = true;
                best = ax;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace detail

inline SmithForm smithNormalForm(IntegerMatrix const& a)
{
    std::size_t const m = a.rows();
    std::size_t const n = a.cols();
    SmithForm s{IntegerMatrix::identity(m), a, IntegerMatrix::identity(n)};
    IntegerMatrix& d = s.d;

    std::size_t t = 0;
    while (t < std::min(m, n)) {
        std::size_t pi = 0, pj = 0;
        if (!detail::findSmithPivot(d, t, pi, pj))
            break;
        d.swapRows(t, pi);
        s.u.swapRows(t, pi);
        d.swapCols(t, pj);
        s.v.swapCols(t, pj);

        bool residue = false;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (d(i, t) == 0)
                continue;
            Integer q = d(i, t) / d(t, t);
            d.addRowMultiple(i, t, -q);
            s.u.addRowMultiple(i, t, -q);
            if (d(i, t) != 0)
                residue = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (d(t, j) == 0)
                continue;
            Integer q = d(t, j) / d(t, t);
            d.addColMultiple(j, t, -q);
            s.v.addColMultiple(j, t, -q);
            if (d(t, j) != 0)
                residue = true;
        }
        if (residue)
            continue; // a strictly smaller pivot now exists

        // Row and column t are clear. Enforce divisibility of the rest.
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (d(i, j) % d(t, t) != 0) {
                    d.addRowMultiple(t, i, 1);
                    s.u.addRowMultiple(t, i, 1);
                    divides = false;
                    break;
                }
        if (!divides)
            continue;

        if (d(t, t) < 0) {
            d.negateRow(t);
            s.u.negateRow(t);
        }
        ++t;
    }
    return s;
}

/// Normalizes a list of cyclic group orders into invariant-factor form
/// (every entry > 1, each dividing the next). Zero entries mean Z and are
/// rejected.
inline std::vector<Integer> invariantFactors(std::vector<Integer> const& orders)
{
    IntegerMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0)
            throw Error(Errc::DimensionMismatch, "invariantFactors expects finite cyclic orders");
        diag(i, i) = orders[i];
    }
    std::vector<Integer> out;
    for (auto const& f : smithNormalForm(diag).factors())
        if (f > 1)
            out.push_back(f);
    return out;
}

// ---------------------------------------------------------------------------
// Coefficient rings

class CoefficientRing
{
public:
    enum class Kind { Integers, ModularIntegers, Rationals, LaurentGraded };

    static CoefficientRing integers() { return CoefficientRing(Kind::Integers, 0, 0, 0); }
    static CoefficientRing rationals() { return CoefficientRing(Kind::Rationals, 0, 0, 0); }

    static CoefficientRing modular(long long m)
    {
        if (m < 2)
            throw Error(Errc::InvalidRing, "modulus must be at least 2");
        return CoefficientRing(Kind::ModularIntegers, m, 0, 0);
    }

    /// Z[beta, beta^-1] with |beta| = generatorDegree, kept to powers
    /// |j| <= truncation.
    static CoefficientRing laurent(int generatorDegree, int truncation)
    {
        if (generatorDegree <= 0 || generatorDegree % 2 != 0)
            throw Error(Errc::InvalidRing, "Laurent generator degree must be positive and even");
        if (truncation <= 0)
            throw Error(Errc::InvalidRing, "Laurent truncation must be positive");
        return CoefficientRing(Kind::LaurentGraded, 0, generatorDegree, truncation);
    }

    /// Parses "z", "q", "zmod:m" or "laurent:d:w".
    static CoefficientRing parse(std::string const& spec)
    {
        auto bad = [&]() { return Error(Errc::InvalidRing, "cannot parse ring '" + spec + "'"); };
        if (spec == "z" || spec == "Z")
            return integers();
        if (spec == "q" || spec == "Q")
            return rationals();
        auto toInt = [&](std::string const& s) {
            std::size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(s, &pos);
            } catch (...) {
                throw bad();
            }
            if (pos != s.size())
                throw bad();
            return v;
        };
        if (spec.rfind("zmod:", 0) == 0)
            return modular(toInt(spec.substr(5)));
        if (spec.rfind("laurent:", 0) == 0) {
            auto rest = spec.substr(8);
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw bad();
            return laurent(static_cast<int>(toInt(rest.substr(0, colon))),
                           static_cast<int>(toInt(rest.substr(colon + 1))));
        }
        throw bad();
    }

    Kind kind() const { return kind_; }
    long long modulus() const { return modulus_; }
    int generatorDegree() const { return generatorDegree_; }
    int truncation() const { return truncation_; }

    bool isField() const
    {
        if (kind_ == Kind::Rationals)
            return true;
        if (kind_ != Kind::ModularIntegers)
            return false;
        for (long long p = 2; p * p <= modulus_; ++p)
            if (modulus_ % p == 0)
                return false;
        return true;
    }

    /// Powers of beta present in the window; {0} for ungraded rings.
    std::vector<int> windowPowers() const
    {
        if (kind_ != Kind::LaurentGraded)
            return {0};
        std::vector<int> p;
        for (int j = -truncation_; j <= truncation_; ++j)
            p.push_back(j);
        return p;
    }

    /// beta^i * beta^j inside the window.
    int multiplyPowers(int i, int j) const
    {
        if (kind_ != Kind::LaurentGraded) {
            if (i != 0 || j != 0)
                throw Error(Errc::WindowOverflow, "ungraded ring has only degree 0");
            return 0;
        }
        int const k = i + j;
        if (k < -truncation_ || k > truncation_ || i < -truncation_ || i > truncation_ ||
            j < -truncation_ || j > truncation_)
            throw Error(Errc::WindowOverflow, "power of beta leaves the truncation window");
        return k;
    }

    std::string name() const
    {
        switch (kind_) {
        case Kind::Integers: return "z";
        case Kind::Rationals: return "q";
        case Kind::ModularIntegers: return "zmod:" + std::to_string(modulus_);
        case Kind::LaurentGraded:
            return "laurent:" + std::to_string(generatorDegree_) + ":" + std::to_string(truncation_);
        }
        return "?";
    }

    friend bool operator==(CoefficientRing const&, CoefficientRing const&) = default;

private:
    CoefficientRing(Kind k, long long m, int d, int w)
        : kind_(k), modulus_(m), generatorDegree_(d), truncation_(w)
    {
    }

    Kind kind_;
    long long modulus_;
    int generatorDegree_;
    int truncation_;
};

// ---------------------------------------------------------------------------
// Homology

struct GradedSummand
{
    int degree = 0; // internal degree j * |beta|
    std::size_t freeRank = 0;
    std::vector<Integer> torsion;

    friend bool operator==(GradedSummand const&, GradedSummand const&) = default;
};

/// A finitely generated module over the coefficient ring, as free rank
/// plus invariant factors. Over Z/m the free rank counts Z/m summands.
struct HomologyGroup
{
    std::size_t freeRank = 0;
    std::vector<Integer> torsion;
    std::vector<GradedSummand> graded; // LaurentGraded only

    bool isTrivial() const { return freeRank == 0 && torsion.empty(); }

    friend bool operator==(HomologyGroup const&, HomologyGroup const&) = default;
};

inline std::string describe(HomologyGroup const& h, CoefficientRing const& ring)
{
    std::string base;
    switch (ring.kind()) {
    case CoefficientRing::Kind::Integers: base = "Z"; break;
    case CoefficientRing::Kind::Rationals: base = "Q"; break;
    case CoefficientRing::Kind::ModularIntegers: base = "Z/" + std::to_string(ring.modulus()); break;
    case CoefficientRing::Kind::LaurentGraded: base = "Z"; break;
    }
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first)
            os << " + ";
        first = false;
    };
    if (h.freeRank > 0) {
        sep();
        os << base;
        if (h.freeRank > 1)
            os << '^' << h.freeRank;
    }
    for (auto const& t : h.torsion) {
        sep();
        os << "Z/" << t;
    }
    if (first)
        os << '0';
    return os.str();
}

/// Homology at the middle of C_{k+1} --dIn--> C_k --dOut--> C_{k-1},
/// tensored with the ring via universal coefficients.
inline HomologyGroup homology(IntegerMatrix const& dIn, IntegerMatrix const& dOut,
                              CoefficientRing const& ring)
{
    if (dOut.cols() != dIn.rows())
        throw Error(Errc::DimensionMismatch,
                    "outgoing boundary has " + std::to_string(dOut.cols()) +
                        " columns but incoming boundary has " + std::to_string(dIn.rows()) + " rows");
    if (!(dOut * dIn).isZero())
        throw Error(Errc::CompositeNonzero, "consecutive boundaries do not compose to zero");

    SmithForm const in = smithNormalForm(dIn);
    SmithForm const out = smithNormalForm(dOut);
    std::size_t const n = dIn.rows();
    std::size_t const freeZ = n - in.rank() - out.rank();

    std::vector<Integer> torsionZ;
    for (auto const& f : in.factors())
        if (f > 1)
            torsionZ.push_back(f);

    HomologyGroup h;
    switch (ring.kind()) {
    case CoefficientRing::Kind::Integers:
        h.freeRank = freeZ;
        h.torsion = torsionZ;
        break;
    case CoefficientRing::Kind::Rationals:
        h.freeRank = freeZ;
        break;
    case CoefficientRing::Kind::ModularIntegers: {
        Integer const m = ring.modulus();
        std::vector<Integer> orders(freeZ, m);
        for (auto const& f : in.factors()) // H_k (x) Z/m
            if (gcd(f, m) > 1)
                orders.push_back(gcd(f, m));
        for (auto const& f : out.factors()) // Tor(H_{k-1}, Z/m)
            if (gcd(f, m) > 1)
                orders.push_back(gcd(f, m));
        for (auto const& f : invariantFactors(orders)) {
            if (f == m)
                ++h.freeRank;
            else
                h.torsion.push_back(f);
        }
        break;
    }
    case CoefficientRing::Kind::LaurentGraded:
        for (int p : ring.windowPowers()) {
            h.graded.push_back(GradedSummand{p * ring.generatorDegree(), freeZ, torsionZ});
            h.freeRank += freeZ;
            h.torsion.insert(h.torsion.end(), torsionZ.begin(), torsionZ.end());
        }
        std::sort(h.torsion.begin(), h.torsion.end());
        break;
    }
    return h;
}

} // namespace floerflow

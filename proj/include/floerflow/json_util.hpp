#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "coeff.hpp"
#include "error.hpp"

namespace floerflow {

using Rational = boost::multiprecision::cpp_rational;
using json = nlohmann::json;

/// Integers that fit in 64 bits are written as JSON numbers, larger ones
/// as decimal strings.
inline json integerToJson(Integer const& x)
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return json(static_cast<std::int64_t>(x));
    return json(x.str());
}

inline Integer integerFromJson(json const& j)
{
    if (j.is_number_integer())
        return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (std::exception const&) {
        }
    }
    throw Error(Errc::ParseError, "expected an integer, got " + j.dump());
}

/// Exact rational from a JSON integer, a decimal number (converted exactly
/// from its binary value) or a string "p/q".
inline Rational rationalFromJson(json const& j)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_number_float())
        return Rational(j.get<double>());
    if (j.is_string()) {
        auto s = j.get<std::string>();
        try {
            auto slash = s.find('/');
            if (slash == std::string::npos)
                return Rational(Integer(s));
            Integer den(s.substr(slash + 1));
            if (den == 0)
                throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
            return Rational(Integer(s.substr(0, slash)), den);
        } catch (Error const&) {
            throw;
        } catch (std::exception const&) {
        }
    }
    throw Error(Errc::ParseError, "expected a rational, got " + j.dump());
}

inline json rationalToJson(Rational const& q)
{
    if (denominator(q) == 1)
        return integerToJson(numerator(q));
    return json(numerator(q).str() + "/" + denominator(q).str());
}

inline json matrixToJson(IntegerMatrix const& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(integerToJson(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Reads a list of rows into a matrix of known shape. The shape has to be
/// supplied because a matrix with zero rows carries no column count.
inline IntegerMatrix matrixFromJson(json const& j, std::size_t rows, std::size_t cols)
{
    if (!j.is_array() || j.size() != rows)
        throw Error(Errc::ParseError, "expected a matrix with " + std::to_string(rows) + " rows");
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw Error(Errc::ParseError, "matrix row " + std::to_string(i) + " must have " +
                                              std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = integerFromJson(j[i][k]);
    }
    return m;
}

template <class T>
T requireField(json const& j, char const* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (json::exception const& e) {
        throw Error(Errc::ParseError, std::string("field '") + key + "': " + e.what());
    }
}

} // namespace floerflow

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pepos {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised for invalid input data and violated operation contracts.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q" or a plain integer string ("5", "-7/3").
Rational parse_rational(const std::string& text);

/// Serializes as "p/q" with q >= 1, e.g. "-7/3", "0/1", "4/1".
std::string fraction_string(const Rational& value);

std::string fraction_list_string(const std::vector<Rational>& values);

/// Polynomial c0 + c1*t of degree <= 1 in the ampleness parameter t.
/// All adjoint classes in scope are affine in t; anything of higher
/// degree is rejected at the operation level.
struct LinPoly {
    Rational constant;
    Rational slope;

    LinPoly() : constant(0), slope(0) {}
    LinPoly(Rational c0, Rational c1) : constant(std::move(c0)), slope(std::move(c1)) {}

    static LinPoly of(Rational c) { return LinPoly(std::move(c), Rational(0)); }

    Rational at(const Rational& t) const { return constant + slope * t; }
    bool is_constant() const { return slope == 0; }
    bool is_zero() const { return constant == 0 && slope == 0; }

    LinPoly operator+(const LinPoly& o) const { return LinPoly(constant + o.constant, slope + o.slope); }
    LinPoly operator-(const LinPoly& o) const { return LinPoly(constant - o.constant, slope - o.slope); }
    LinPoly operator-() const { return LinPoly(-constant, -slope); }
    LinPoly scaled(const Rational& c) const { return LinPoly(constant * c, slope * c); }
    bool operator==(const LinPoly& o) const { return constant == o.constant && slope == o.slope; }

    /// Formats as "c0 + c1 t" with exact fractions.
    std::string str() const;
};

} // namespace pepos

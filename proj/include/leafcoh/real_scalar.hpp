#pragma once

#include "leafcoh/exact.hpp"

#include <span>
#include <string>
#include <variant>

namespace leafcoh {

/// (a + b√d)/c with c > 0; either b = 0 (a rational, d = 1) or d ≥ 2 square-free.
struct QuadraticNumber {
    Integer a = 0;
    Integer b = 0;
    Integer c = 1;
    Integer d = 1;

    bool is_rational() const { return b == 0; }
    void canonicalize();

    Integer floor() const;
    int sign() const;
    double to_double() const;

    /// Distance to the nearest integer, evaluated from exact integers with a
    /// single final rounding (no cancellation).
    double distance_to_integer() const;
    /// Fractional part in [0, 1), evaluated the same way.
    double fractional_part() const;
    bool is_integer() const { return b == 0 && (a % c) == 0; }

    QuadraticNumber operator-() const;
    friend bool operator==(const QuadraticNumber&, const QuadraticNumber&) = default;
};

/// Sum Σ coeffs[j]·terms[j] when every irrational term shares one radicand.
/// Returns false (and leaves out untouched) if radicands differ.
bool combine_quadratic(std::span<const QuadraticNumber> terms, std::span<const long long> coeffs,
                       QuadraticNumber& out);

/*
 * A real number that is either exact (rational p/q or a quadratic irrational
 * (a + b√d)/c) or a float64 tagged approximate.
 */
class RealScalar {
public:
    enum class Kind { rational, quadratic, approximate };

    RealScalar() = default;
    static RealScalar rational(const Integer& p, const Integer& q = 1);
    static RealScalar rational(const Rational& r);
    static RealScalar quadratic(const Integer& a, const Integer& b, const Integer& c, const Integer& d);
    static RealScalar approximate(double v);

    /// Accepts "rational:7/3", "quadratic:(-1+sqrt5)/2", "float:0.3", or the same
    /// without prefix ("7/3", "sqrt2", "(1-sqrt5)/2"; bare decimals are floats).
    static RealScalar parse(const std::string& text);

    Kind kind() const;
    bool is_exact() const { return std::holds_alternative<QuadraticNumber>(value_); }
    /// Exact value; throws ExactnessError for approximate scalars.
    const QuadraticNumber& exact() const;

    double to_double() const;
    ExactScalar to_exact() const;

    /// k·x ∈ ℤ, decided exactly (throws for approximate input).
    bool multiple_is_integer(long long k) const;
    /// {k·x} in [0, 1); exact argument reduction when x is exact.
    double fractional_part_of_multiple(long long k) const;
    /// ‖k·x‖_{S¹}.
    double distance_of_multiple(long long k) const;

    std::string to_string() const;
    RealScalar operator-() const;
    friend bool operator==(const RealScalar&, const RealScalar&) = default;

private:
    std::variant<QuadraticNumber, double> value_{QuadraticNumber{}};
};

} // namespace leafcoh

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace leafcoh {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);

/// floor(a / b) for b != 0 (rounds toward negative infinity).
Integer floor_div(const Integer& a, const Integer& b);

/// Writes n = square^2 * core with core square-free; returns core.
Integer squarefree_part(const Integer& n, Integer& square);

/// Exact rational value of a finite double (every double is dyadic).
Rational rational_from_double(double x);

std::string to_string(const Rational& r);
Integer parse_integer(const std::string& text);
Rational parse_rational(const std::string& text);

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    Complex to_complex() const;
    GaussianRational conj() const { return {re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/*
 * Exact scalar ring used wherever an identity has to hold with exactly zero
 * residual (d∘d = 0, restriction commuting with d, closedness of extended
 * forms).
 *
 * An element is a finite sum  Σ q · τ^e · i^s · √p₁···√p_r  with q rational,
 * τ = 2π treated as a formal (transcendental) symbol, i the imaginary unit and
 * p_j distinct primes.  Those monomials are linearly independent over ℚ, so an
 * element is zero iff every stored coefficient is zero: equality is decided
 * exactly.  Reduction rules: i² = −1, √p·√p = p.
 */
class ExactScalar {
public:
    struct Monomial {
        int tau = 0;
        bool imag = false;
        std::vector<std::uint32_t> primes; // sorted, distinct

        auto operator<=>(const Monomial&) const = default;
    };

    ExactScalar() = default;
    ExactScalar(int v) : ExactScalar(Rational(v)) {}
    ExactScalar(const Rational& q);

    static ExactScalar imaginary_unit();
    static ExactScalar two_pi();
    /// √n for a positive integer n (square factors pulled out exactly).
    static ExactScalar sqrt(const Integer& n);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    /// Numerical value (τ ↦ 2π, √p ↦ sqrt(p)).
    Complex to_complex() const;
    ExactScalar conj() const;

    /// Multiplicative inverse. Supported when every term carries the same power
    /// of τ (the element is τ^e times an algebraic number); throws otherwise.
    ExactScalar inverse() const;

    ExactScalar operator-() const;
    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.inverse(); }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& q);
    ExactScalar apply_sign_flip(std::uint32_t prime) const; // √p ↦ −√p
    std::map<Monomial, Rational> terms_;
};

} // namespace leafcoh

#pragma once

#include "leafcoh/exact.hpp"
#include "leafcoh/real_scalar.hpp"

#include <map>
#include <string>

namespace leafcoh {

/*
 * Laurent polynomial Σ_e c_e z^e in the phase z = e^{2πiλ} with Gaussian
 * rational coefficients.
 *
 * For irrational quadratic λ the phase is transcendental, so the polynomial is
 * zero iff every coefficient is.  For rational λ = p/q in lowest terms z is a
 * primitive q-th root of unity; values are kept reduced modulo the cyclotomic
 * polynomial Φ_q, which again makes zero testing exact.
 */
class PhasePoly {
public:
    PhasePoly() = default;
    /// order 0 means z is transcendental; order q ≥ 1 means z^q = 1 primitively.
    explicit PhasePoly(long long order) : order_(order) {}
    PhasePoly(long long order, const GaussianRational& c);

    static long long order_of(const RealScalar& lambda);
    static PhasePoly monomial(long long order, long long exponent, const GaussianRational& c);

    long long order() const { return order_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<long long, GaussianRational>& coeffs() const { return coeffs_; }

    /// Numerical value; phases are reduced mod 1 exactly before exponentiating.
    Complex evaluate(const RealScalar& lambda) const;

    /// Multiplication by z^e.
    PhasePoly shifted(long long e) const;

    PhasePoly& operator+=(const PhasePoly& o);
    PhasePoly& operator-=(const PhasePoly& o);
    friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
    friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
    friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
    PhasePoly operator-() const;
    friend bool operator==(const PhasePoly& a, const PhasePoly& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

private:
    void reduce();
    void check(const PhasePoly& o) const;

    long long order_ = 0;
    std::map<long long, GaussianRational> coeffs_;
};

/// e^{2πi·k·x} with the product k·x reduced mod 1 exactly for exact x.
Complex unit_phase(const RealScalar& x, long long k);

} // namespace leafcoh

#pragma once

#include "leafcoh/errors.hpp"
#include "leafcoh/exact.hpp"
#include "leafcoh/real_scalar.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace leafcoh {

using Frequency = std::vector<int>;

/*
 * Coefficient rings for trigonometric polynomials.  Complex float64 is the
 * default; ExactScalar gives exactly-decided zeros (see exact.hpp).
 */
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return {}; }
    static bool is_zero(const Complex& c) { return c == Complex{}; }
    static Complex two_pi_i() { return {0.0, 2.0 * std::numbers::pi}; }
    static Complex from_real(const RealScalar& r) { return r.to_double(); }
    static Complex from_rational(const Rational& r) { return r.convert_to<double>(); }
    static Complex to_complex(const Complex& c) { return c; }
    static Complex conj(const Complex& c) { return std::conj(c); }
    static Complex inverse(const Complex& c) { return 1.0 / c; }
};

template <>
struct ScalarTraits<ExactScalar> {
    static constexpr bool exact = true;
    static ExactScalar zero() { return {}; }
    static bool is_zero(const ExactScalar& c) { return c.is_zero(); }
    static ExactScalar two_pi_i() { return ExactScalar::two_pi() * ExactScalar::imaginary_unit(); }
    static ExactScalar from_real(const RealScalar& r) { return r.to_exact(); }
    static ExactScalar from_rational(const Rational& r) { return ExactScalar(r); }
    static Complex to_complex(const ExactScalar& c) { return c.to_complex(); }
    static ExactScalar conj(const ExactScalar& c) { return c.conj(); }
    static ExactScalar inverse(const ExactScalar& c) { return c.inverse(); }
};

/*
 * Finitely supported Fourier series  f = Σ_k f̂_k e^{2πi k·x}  on T^n.
 *
 * Canonical form: zero coefficients are never stored, so equality is map
 * equality.  Keys are ordered lexicographically, which fixes the iteration and
 * serialization order.
 */
template <class S>
class BasicTrigPoly {
public:
    using Traits = ScalarTraits<S>;
    using Map = std::map<Frequency, S>;

    BasicTrigPoly() = default;
    explicit BasicTrigPoly(int dims) : dims_(dims) {
        if (dims < 1)
            throw DimensionError("TrigPoly needs dims >= 1");
    }

    static BasicTrigPoly constant(int dims, const S& c) {
        BasicTrigPoly f(dims);
        f.set(Frequency(dims, 0), c);
        return f;
    }
    static BasicTrigPoly monomial(const Frequency& k, const S& c) {
        BasicTrigPoly f(static_cast<int>(k.size()));
        f.set(k, c);
        return f;
    }

    int dims() const { return dims_; }
    const Map& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }

    S coeff(const Frequency& k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? Traits::zero() : it->second;
    }

    void set(const Frequency& k, const S& c) {
        check_freq(k);
        if (Traits::is_zero(c))
            coeffs_.erase(k);
        else
            coeffs_[k] = c;
    }

    void add(const Frequency& k, const S& c) {
        check_freq(k);
        if (Traits::is_zero(c))
            return;
        auto [it, inserted] = coeffs_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second))
                coeffs_.erase(it);
        }
    }

    /// max |k_i| over the support (0 for the zero polynomial)
    int max_frequency() const {
        int m = 0;
        for (const auto& [k, c] : coeffs_)
            for (int ki : k)
                m = std::max(m, std::abs(ki));
        return m;
    }

    S mean() const { return coeff(Frequency(dims_, 0)); }

    /// f̂_{−k} = conj(f̂_k) for every k.
    bool is_real() const {
        for (const auto& [k, c] : coeffs_) {
            Frequency mk(k.size());
            for (std::size_t i = 0; i < k.size(); ++i)
                mk[i] = -k[i];
            if (!(coeff(mk) == Traits::conj(c)))
                return false;
        }
        return true;
    }

    BasicTrigPoly& operator+=(const BasicTrigPoly& o) {
        match(o);
        for (const auto& [k, c] : o.coeffs_)
            add(k, c);
        return *this;
    }
    BasicTrigPoly& operator-=(const BasicTrigPoly& o) {
        match(o);
        for (const auto& [k, c] : o.coeffs_)
            add(k, -c);
        return *this;
    }
    friend BasicTrigPoly operator+(BasicTrigPoly a, const BasicTrigPoly& b) { return a += b; }
    friend BasicTrigPoly operator-(BasicTrigPoly a, const BasicTrigPoly& b) { return a -= b; }
    BasicTrigPoly operator-() const {
        BasicTrigPoly r(dims_);
        for (const auto& [k, c] : coeffs_)
            r.coeffs_.emplace(k, -c);
        return r;
    }

    friend BasicTrigPoly operator*(const S& s, const BasicTrigPoly& f) {
        BasicTrigPoly r(f.dims_);
        for (const auto& [k, c] : f.coeffs_)
            r.set(k, s * c);
        return r;
    }

    /// Product by support convolution (exact in the coefficient ring).
    friend BasicTrigPoly operator*(const BasicTrigPoly& a, const BasicTrigPoly& b) {
        a.match(b);
        BasicTrigPoly r(a.dims_);
        Frequency k(a.dims_);
        for (const auto& [ka, ca] : a.coeffs_) {
            for (const auto& [kb, cb] : b.coeffs_) {
                for (int i = 0; i < a.dims_; ++i)
                    k[i] = ka[i] + kb[i];
                r.add(k, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const BasicTrigPoly& a, const BasicTrigPoly& b) {
        return a.dims_ == b.dims_ && a.coeffs_ == b.coeffs_;
    }

    /// Multiplies each mode by a scalar depending on its frequency.
    template <class Fn>
    BasicTrigPoly map_modes(Fn&& fn) const {
        BasicTrigPoly r(dims_);
        for (const auto& [k, c] : coeffs_)
            r.set(k, fn(k) * c);
        return r;
    }

    BasicTrigPoly<Complex> to_complex() const {
        BasicTrigPoly<Complex> r(dims_);
        for (const auto& [k, c] : coeffs_)
            r.set(k, Traits::to_complex(c));
        return r;
    }

    /// Largest |f̂_k| (as complex magnitude).
    double max_abs() const {
        double m = 0.0;
        for (const auto& [k, c] : coeffs_)
            m = std::max(m, std::abs(Traits::to_complex(c)));
        return m;
    }

    void check_freq(const Frequency& k) const {
        if (static_cast<int>(k.size()) != dims_)
            throw DimensionError("frequency vector has length " + std::to_string(k.size()) + ", expected " +
                                 std::to_string(dims_));
    }

private:
    void match(const BasicTrigPoly& o) const {
        if (o.dims_ != dims_)
            throw DimensionError("TrigPoly dimension mismatch");
    }

    int dims_ = 1;
    Map coeffs_;
};

using TrigPoly = BasicTrigPoly<Complex>;
using ExactTrigPoly = BasicTrigPoly<ExactScalar>;

/// Σ_k f̂_k e^{2πi k·x}
Complex evaluate(const TrigPoly& f, std::span<const double> x);

/// Lifts a float polynomial to exact coefficients (each double is dyadic-exact).
ExactTrigPoly to_exact(const TrigPoly& f);

/*
 * Directional derivative along the constant field Σ v_i ∂_i:
 * mode k ↦ 2πi (k·v) f̂_k.
 */
template <class S>
BasicTrigPoly<S> frame_derivative(const BasicTrigPoly<S>& f, std::span<const S> v) {
    using T = ScalarTraits<S>;
    if (static_cast<int>(v.size()) != f.dims())
        throw DimensionError("frame_derivative: direction has the wrong dimension");
    const S tpi = T::two_pi_i();
    return f.map_modes([&](const Frequency& k) {
        S dot = T::zero();
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] != 0)
                dot += S(k[i]) * v[i];
        return tpi * dot;
    });
}

TrigPoly frame_derivative(const TrigPoly& f, std::span<const double> v);

/// Mode k ↦ e^{2πi k·t} f̂_k, i.e. the composition f(· + t).
TrigPoly translate(const TrigPoly& f, std::span<const double> t);

/*
 * Discrete Fourier transform of samples on the regular N^n grid
 * (x_j = j/N, row-major with the last coordinate fastest), folded into the
 * centered frequency window.  Coefficients with magnitude below
 * prune·max|f̂| are dropped to keep the canonical form.
 */
TrigPoly grid_transform(std::span<const Complex> samples, int dims, int N, double prune = 1e-13);

/// Samples of f on the N^n grid; requires |k_i| < N/2 for every mode.
std::vector<Complex> inverse_grid(const TrigPoly& f, int N);

struct DecayEntry {
    double r = 0.0;
    double value = 0.0; // max_{k ≠ 0} |f̂_k|·|k|^r
    Frequency k;        // attaining frequency
};

std::vector<DecayEntry> decay_report(const TrigPoly& f, std::span<const double> exponents);

/// max over the N^n grid of |f|; N chosen as max(8, 4·max_frequency).
double grid_max_norm(const TrigPoly& f);

} // namespace leafcoh

#pragma once

#include "leafcoh/leafwise.hpp"
#include "leafcoh/skewflow.hpp"

#include <random>

namespace leafcoh::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline RealScalar golden() { return RealScalar::parse("(-1+sqrt5)/2"); }

/// Eighths in [−2, 2]: dyadic, so float and exact coefficients agree.
inline Rational small_rational(Rng& rng) { return Rational(uniform_int(rng, -16, 16), 8); }

/// Random f on T^dims with every |k_i| ≤ maxfreq; real-valued when `real`.
inline TrigPoly random_poly(Rng& rng, int dims, int maxfreq, int terms, bool real = false, bool zero_mean = false) {
    TrigPoly f(dims);
    for (int t = 0; t < terms; ++t) {
        Frequency k(static_cast<std::size_t>(dims));
        for (auto& ki : k)
            ki = uniform_int(rng, -maxfreq, maxfreq);
        Complex c(uniform_real(rng, -1, 1), uniform_real(rng, -1, 1));
        f.add(k, c);
        if (real) {
            Frequency mk = k;
            for (auto& ki : mk)
                ki = -ki;
            f.add(mk, std::conj(c));
        }
    }
    if (zero_mean)
        f.set(Frequency(static_cast<std::size_t>(dims), 0), Complex{});
    if (real) {
        // the constant mode received c + conj(c) above; keep f̂_0 real
        auto c0 = f.coeff(Frequency(static_cast<std::size_t>(dims), 0));
        f.set(Frequency(static_cast<std::size_t>(dims), 0), Complex(c0.real(), 0.0));
    }
    return f;
}

inline ExactTrigPoly random_exact_poly(Rng& rng, int dims, int maxfreq, int terms) {
    ExactTrigPoly f(dims);
    for (int t = 0; t < terms; ++t) {
        Frequency k(static_cast<std::size_t>(dims));
        for (auto& ki : k)
            ki = uniform_int(rng, -maxfreq, maxfreq);
        f.add(k, ExactScalar(small_rational(rng)) + ExactScalar(small_rational(rng)) * ExactScalar::imaginary_unit());
    }
    return f;
}

/// All increasing k-subsets of {0..n−1}.
inline std::vector<IndexTuple> subsets(int n, int k) {
    std::vector<IndexTuple> out;
    IndexTuple cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// Exact random slope: rational entries, or quadratic entries over one radicand.
inline LinearFoliation random_exact_foliation(Rng& rng, int p, int q) {
    static const int radicands[] = {2, 3, 5, 7};
    const int d = radicands[uniform_int(rng, 0, 3)];
    RealMatrix B(static_cast<std::size_t>(p));
    for (auto& row : B)
        for (int j = 0; j < q; ++j) {
            if (uniform_int(rng, 0, 2) == 0)
                row.push_back(RealScalar::rational(Integer(uniform_int(rng, -5, 5)), Integer(uniform_int(rng, 1, 6))));
            else
                row.push_back(RealScalar::quadratic(uniform_int(rng, -3, 3), uniform_int(rng, 1, 3),
                                                    uniform_int(rng, 1, 4), d));
        }
    return LinearFoliation(p, q, std::move(B));
}

inline LeafwiseForm<ExactScalar> random_leafwise(Rng& rng, const LinearFoliation& F, int degree, int maxfreq = 2) {
    LeafwiseForm<ExactScalar> w(F, degree);
    for (const auto& idx : subsets(F.p(), degree))
        w.add(idx, random_exact_poly(rng, F.ambient_dim(), maxfreq, 3));
    return w;
}

inline AmbientForm<ExactScalar> random_ambient(Rng& rng, int dims, int degree, int maxfreq = 2) {
    AmbientForm<ExactScalar> w(dims, degree);
    for (const auto& idx : subsets(dims, degree))
        if (uniform_int(rng, 0, 1))
            w.add(idx, random_exact_poly(rng, dims, maxfreq, 2));
    return w;
}

} // namespace leafcoh::testing

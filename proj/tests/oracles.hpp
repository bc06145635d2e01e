#pragma once

// Independent reference computations shared by the unit tests and the acceptance run.

#include "leafcoh/skewflow.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <set>

namespace leafcoh::oracle {

/*
 * Brute-force solvability of the k ≠ 0 rows of f = g∘F_λ − g over a finite
 * window: for each row, unknowns ĝ_{k,j} with j in [min m − W, max m + W],
 * one equation e^{2πi(m−k)λ} ĝ_{k,m−k} − ĝ_{k,m} = f̂_{k,m} for every m that
 * touches the window, solved in least squares.  Returns the largest relative
 * residual over the rows 0 < |k| ≤ K.
 */
inline double katok_window_residual(const TrigPoly& f, double lambda, int K, int W = 16) {
    std::set<int> rows;
    for (const auto& [km, c] : f.coeffs())
        if (km[0] != 0 && std::abs(km[0]) <= K)
            rows.insert(km[0]);
    double worst = 0.0;
    for (int k : rows) {
        int lo = INT32_MAX, hi = INT32_MIN;
        for (const auto& [km, c] : f.coeffs())
            if (km[0] == k) {
                lo = std::min(lo, km[1]);
                hi = std::max(hi, km[1]);
            }
        const int jlo = lo - W, jhi = hi + W;
        const int mlo = std::min(jlo, jlo + k), mhi = std::max(jhi, jhi + k);
        const int nu = jhi - jlo + 1, ne = mhi - mlo + 1;
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(ne, nu);
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(ne);
        for (int m = mlo; m <= mhi; ++m) {
            const int row = m - mlo;
            if (m >= jlo && m <= jhi)
                A(row, m - jlo) -= 1.0;
            if (m - k >= jlo && m - k <= jhi) {
                long double t = static_cast<long double>(m - k) * lambda;
                t -= std::floor(t);
                A(row, m - k - jlo) += std::polar(1.0, static_cast<double>(2 * std::numbers::pi_v<long double> * t));
            }
            b(row) = f.coeff({k, m});
        }
        Eigen::VectorXcd x = A.completeOrthogonalDecomposition().solve(b);
        const double rel = (A * x - b).norm() / std::max(b.norm(), 1e-300);
        worst = std::max(worst, rel);
    }
    return worst;
}

/// (1/T)∫₀^T f(x₀ + tα) dt by composite Simpson with n (even) panels.
inline Complex simpson_average(const TrigPoly& f, const std::vector<double>& alpha, const std::vector<double>& x0,
                               double T, int n) {
    auto at = [&](double t) {
        std::vector<double> x(x0.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = x0[i] + t * alpha[i];
        Complex s = 0;
        for (const auto& [k, c] : f.coeffs()) {
            long double ph = 0;
            for (std::size_t i = 0; i < k.size(); ++i)
                ph += k[i] * static_cast<long double>(x[i]);
            ph -= std::floor(ph);
            s += c * std::polar(1.0, static_cast<double>(2 * std::numbers::pi_v<long double> * ph));
        }
        return s;
    };
    const double h = T / n;
    Complex sum = at(0.0) + at(T);
    for (int j = 1; j < n; ++j)
        sum += (j % 2 ? 4.0 : 2.0) * at(j * h);
    return sum * h / 3.0 / T;
}

} // namespace leafcoh::oracle

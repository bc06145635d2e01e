#pragma once

#include "leafcoh/diophantine.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace leafcoh {

using IntMatrix = std::vector<std::vector<long long>>; // row-major

struct CertifiedEigenvalue {
    std::complex<double> value;
    double radius = 0.0;      // a true eigenvalue lies within this distance
    double modulus_lo = 0.0;  // |value| − radius
    double modulus_hi = 0.0;  // |value| + radius
    bool stable = false;
};

struct ToralAutomorphism {
    int n = 0;
    IntMatrix matrix;
    int det = 1;
    std::vector<Integer> char_poly;       // monic, coefficients of x^0 … x^n
    std::vector<CertifiedEigenvalue> spectrum;
    std::vector<int> stable_set;          // indices into spectrum with |λ| < 1
    double eps = 1e-9;
};

/// det(xI − A) by Faddeev–LeVerrier over exact integers (x^0 first).
std::vector<Integer> characteristic_polynomial(const IntMatrix& A);

/*
 * Roots of the characteristic polynomial with inclusion radii from Smith's
 * bound (every root lies in the union of the discs and each isolated disc holds
 * exactly one).  Hyperbolic iff every modulus interval misses [1 − ε, 1 + ε].
 */
ToralAutomorphism certify_hyperbolic(const IntMatrix& A, double eps = 1e-9);

struct StableSlope {
    int p = 0;
    int q = 0;
    std::vector<int> leaf_coords;       // s-coordinates (greedy complete pivoting)
    std::vector<int> transverse_coords; // x-coordinates
    std::vector<std::vector<double>> B; // p × q, X_i = ∂_{s_i} + Σ_j B_ij ∂_{x_j}
    std::optional<RealMatrix> exact_B;  // quadratic form for 2 × 2 input
    double invariance_residual = 0.0;   // ‖(I − Π_graph) A·graph‖
};

/// The linear foliation by translates of E^s written as a graph over the
/// pivot coordinates.
StableSlope stable_slope_matrix(const ToralAutomorphism& A);

/// Foliation with the slope of stable_slope_matrix, exact when available.
RealMatrix slope_as_real_matrix(const StableSlope& s);

struct CohomologyReport {
    std::vector<int> dims;
    std::string provenance;                // "wang" or "kunneth"
    std::string note;
    std::vector<int> kernel_dims;          // d_k = dim ker(Λ^k(A|E^s)^⊤ − I)
    std::vector<int> cokernel_dims;        // c_k
    double min_gap = 0.0;                  // min over k ≥ 1 of |product − 1|
    bool valid_up_to_extension = false;
    std::optional<double> compound_check;  // max mismatch vs minor-matrix spectra
};

CohomologyReport wang_cohomology(const ToralAutomorphism& A, double tol = 1e-8);

/*
 * Same count from an explicit list of stable eigenvalues, without
 * certification.  Used for synthetic overrides: any degree with a unit
 * product is flagged as valid only up to the extension problem.
 */
CohomologyReport wang_from_eigenvalues(const std::vector<std::complex<double>>& stable, double tol = 1e-8);

/// Eigenvalues of the k-th compound (all k × k minors) of M.
std::vector<std::complex<double>> compound_eigenvalues(const std::vector<std::vector<double>>& M, int k);

/// dims[k] = Σ_{i+j=k} a[i]·b[j]
std::vector<long long> kunneth_dims(const std::vector<long long>& a, const std::vector<long long>& b);

/// Irreducibility of det(xI − A) over ℚ by Kronecker's factor search (n ≤ 6).
bool char_poly_irreducible(const IntMatrix& A);
bool polynomial_irreducible(const std::vector<Integer>& monic);

} // namespace leafcoh

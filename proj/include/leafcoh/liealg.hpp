#pragma once

#include "leafcoh/leafwise.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace leafcoh {

/// Structure constants [e_i, e_j] = Σ_k c_{ij}^k e_k (0-based indices).
struct LieAlgebraSpec {
    int dim = 0;
    std::vector<std::string> labels;
    std::map<std::array<int, 3>, Rational> c; // nonzero entries only

    Rational constant(int i, int j, int k) const;
    /// Sets c_{ij}^k and c_{ji}^k = −v.
    void set_bracket(int i, int j, int k, const Rational& v);

    static LieAlgebraSpec abelian(int p);
    /// [Y, S] = S
    static LieAlgebraSpec affine_line();
    /// [Y, S] = S, [Y, U] = −U, [S, U] = 2Y
    static LieAlgebraSpec sl2();
};

struct ValidationReport {
    bool ok = true;
    std::string violation;            // "antisymmetry" or "jacobi"
    std::array<int, 3> where{0, 0, 0}; // first violating (i, j, k), 0-based
    std::string message;
};

/// Exact check of c_{ij}^k = −c_{ji}^k and the Jacobi identity.
ValidationReport validate(const LieAlgebraSpec& g);

struct CECohomology {
    std::vector<int> dims;                     // dim H^k(𝔤), k = 0..d
    std::vector<int> ranks;                    // rank of d_k : Λ^k → Λ^{k+1}
    std::vector<std::vector<Rational>> h1_basis; // basis of ker d_1 in the dual basis e^i
    bool d_squared_zero = true;
};

/// Matrix of d_k on Λ^k 𝔤^* (rows: (k+1)-subsets, columns: k-subsets, lexicographic).
std::vector<std::vector<Rational>> ce_differential(const LieAlgebraSpec& g, int k);

/// Exact rank of a rational matrix.
int rational_rank(std::vector<std::vector<Rational>> m);

/// Chevalley–Eilenberg cohomology with trivial coefficients; d ≤ 8.
CECohomology ce_cohomology(const LieAlgebraSpec& g);

/// 𝔤-valued leafwise form: one scalar form per basis vector of 𝔤.
template <class S>
using LieValuedForm = std::vector<LeafwiseForm<S>>;

template <class S>
struct MaurerCartanResidual {
    LieValuedForm<S> residual; // degree 2, one per basis vector
    double max_abs = 0.0;
    bool exactly_zero = false;
};

/// d_F ω + [ω∧ω] with [ω∧ω](X_i, X_j) = [ω(X_i), ω(X_j)].
template <class S>
MaurerCartanResidual<S> maurer_cartan_residual(const LieValuedForm<S>& w, const LieAlgebraSpec& g);

} // namespace leafcoh

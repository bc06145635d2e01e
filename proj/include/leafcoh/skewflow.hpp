#pragma once

#include "leafcoh/leafwise.hpp"
#include "leafcoh/phase_poly.hpp"
#include "leafcoh/trig_poly.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace leafcoh {

/// Linear flow φ^t(x) = x + tα on T^n.
struct KroneckerFlowSpec {
    std::vector<RealScalar> alpha;

    KroneckerFlowSpec() = default;
    explicit KroneckerFlowSpec(std::vector<RealScalar> a);
    /// (α, 1) on T².
    static KroneckerFlowSpec from_slope(const RealScalar& a);
    int dims() const { return static_cast<int>(alpha.size()); }
    /// k·α as a double, with an exact zero test when α is exact.
    double dot(const Frequency& k, bool* exact_zero = nullptr) const;
};

struct CohomSolution {
    TrigPoly g;           // zero mean
    Complex c;            // f̂_0
    double residual = 0.0; // grid max-norm of the equation defect
};

/// f = g∘R_α − g + c on T¹.  Resonant kα ∈ ℤ with f̂_k ≠ 0 throws ObstructionError;
/// |e^{2πikα} − 1| ≤ tol returns a diagnostic.
std::variant<CohomSolution, SmallDivisorDiagnostic> circle_cohom_solve(const TrigPoly& f, const RealScalar& alpha,
                                                                       double tol = 1e-9);

/// f = X g + c for X = Σ α_i ∂_i.
std::variant<CohomSolution, SmallDivisorDiagnostic> flow_cohom_solve(const TrigPoly& f, const KroneckerFlowSpec& flow,
                                                                     double tol = 1e-9);

/// g∘R_α on T¹ with exactly reduced phases.
TrigPoly rotate(const TrigPoly& g, const RealScalar& alpha);

struct SectionVerification {
    CohomSolution solution;
    double max_deviation = 0.0; // torus distance between flowed section points
    int samples = 0;
    double step = 0.0;
};

/*
 * Solves the circle equation for the return time f and checks it on the
 * reparametrized suspension flow ψ with vector field (α, 1)/ρ, where
 * ρ(x, y) = f(u) + β(y)(f(u + α) − f(u)), u = x − αy, and β is a C² seam
 * function with ∫β = 0, β(0) = 0, β(1) = 1.  The first return time of ψ to
 * y = 0 from (x, 0) is then f(x).  Each sample x compares ψ^c applied to the
 * section point ψ^{−g(x)}(x, 0) with ψ^{−g(x+α)}(x + α, 0), using fixed-step
 * RK4.
 */
std::variant<SectionVerification, SmallDivisorDiagnostic> straighten_cross_section(const TrigPoly& f,
                                                                                   const RealScalar& alpha,
                                                                                   double tol = 1e-9, int samples = 32,
                                                                                   double step = 1e-4);

/// f/f̂_0 after checking f > 0 on a grid; the mean of the result is exactly 1.
TrigPoly reparam_invariant_density(const TrigPoly& f, const KroneckerFlowSpec& flow);

struct BirkhoffResult {
    Complex average;
    std::vector<std::pair<double, Complex>> curve; // (T_j or N_j, average)
    double bound = 0.0; // Σ_{k·α ≠ 0} |f̂_k| / (π|k·α|T) over the nonconstant part (flow)
};

/// (1/T)∫₀^T f(x₀ + tα) dt, mode by mode in closed form.
BirkhoffResult birkhoff_average(const KroneckerFlowSpec& flow, const TrigPoly& f, const std::vector<double>& x0, double T,
                                int curve_points = 10);

/// (1/N)Σ_{j<N} f(x₀ + jα) by geometric sums.
BirkhoffResult birkhoff_average_map(const std::vector<RealScalar>& alpha, const TrigPoly& f,
                                    const std::vector<double>& x0, long long N, int curve_points = 10);

// ------------------------------------------------------------------ skew product F_λ(x, y) = (x + y, y + λ)

/// Coefficients on T² keyed by (k, m), values in the phase ring of λ.
using PhaseCoefficients = std::map<std::pair<int, int>, PhasePoly>;

PhaseCoefficients to_phase_coefficients(const TrigPoly& f, const RealScalar& lambda);

/// (g∘F_λ − g)^_{k,m} = e^{2πi(m−k)λ} ĝ_{k,m−k} − ĝ_{k,m}.
TrigPoly skew_coboundary(const TrigPoly& g, const RealScalar& lambda);
PhaseCoefficients skew_coboundary(const PhaseCoefficients& g, const RealScalar& lambda);

struct ObstructionValue {
    int k = 0;
    int r = 0;
    Complex value;
    double modulus = 0.0;
    bool exact_zero = false;          // decided symbolically (exact mode only)
    std::optional<PhasePoly> symbolic;
};

struct KatokReport {
    bool exact = false;
    std::vector<ObstructionValue> obstructions; // sorted by (|k|, k, r)
    Complex mean;                               // f̂_{0,0}
    std::vector<int> circle_resonant_m;         // k = 0 row: mλ ∈ ℤ with f̂_{0,m} ≠ 0
    std::vector<int> circle_near_resonant_m;    // |e^{2πimλ} − 1| ≤ tol
    std::optional<TrigPoly> circle_solution;    // ĝ_{0,m} in the variable y, when solvable
    std::vector<int> rows_beyond_K;             // k ≠ 0 rows in the support with |k| > K
};

/*
 * Obstructions to f = g∘F_λ − g + c for trig polynomials g.  For each
 * 0 < |k| ≤ K and residue r mod |k| the chain m ≡ r is swept upward from
 * ĝ = 0 below the support of row k; O_{k,r} is the first value above it.
 */
KatokReport katok_obstructions(const TrigPoly& f, const RealScalar& lambda, int K, double tol = 1e-9);
KatokReport katok_obstructions(const PhaseCoefficients& f, const RealScalar& lambda, int K, double tol = 1e-9);

} // namespace leafcoh

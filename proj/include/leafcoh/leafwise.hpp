#pragma once

#include "leafcoh/diophantine.hpp"
#include "leafcoh/trig_poly.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace leafcoh {

/// Strictly increasing, 0-based index tuple (i_1 < … < i_k).
using IndexTuple = std::vector<int>;

/*
 * Linear foliation F_B of T^{p+q}.  Coordinates are (s ∈ T^p, x ∈ T^q),
 * ambient index c < p is s_c, c ≥ p is x_{c−p}.  The commuting global frame
 * is X_i = ∂_{s_i} + Σ_j B_ij ∂_{x_j}; on the mode (m, n) it acts by
 * 2πi·δ_i(m, n) with δ_i = m_i + (Bn)_i.
 */
class LinearFoliation {
public:
    LinearFoliation() = default;
    LinearFoliation(int p, int q, RealMatrix B);
    /// p = rows of B, q = columns of B.
    explicit LinearFoliation(RealMatrix B);

    int p() const { return p_; }
    int q() const { return q_; }
    int ambient_dim() const { return p_ + q_; }
    const RealMatrix& slope() const { return B_; }
    bool is_exact() const;

    /// Numerical δ_i(mode); `mode` has length p + q.
    double divisor(int i, const Frequency& mode) const;
    /// δ_i(mode) == 0, decided exactly when row i of B is exact.
    bool divisor_is_zero(int i, const Frequency& mode) const;
    /// Direction vector (e_i, B_i·) of X_i in ambient coordinates.
    template <class S>
    std::vector<S> frame_direction(int i) const;
    /// dx_c(X_i): δ_{ci} for c < p, B_{i,c−p} otherwise.
    template <class S>
    S coframe_pairing(int c, int i) const;

    friend bool operator==(const LinearFoliation&, const LinearFoliation&) = default;

private:
    int p_ = 1;
    int q_ = 0;
    RealMatrix B_;
};

/// Leafwise k-form on F_B: components on increasing frame tuples.
template <class S>
class LeafwiseForm {
public:
    using Poly = BasicTrigPoly<S>;

    LeafwiseForm() = default;
    LeafwiseForm(LinearFoliation F, int degree);
    static LeafwiseForm function(LinearFoliation F, Poly g);

    const LinearFoliation& foliation() const { return F_; }
    int degree() const { return degree_; }
    const std::map<IndexTuple, Poly>& components() const { return comps_; }
    Poly component(const IndexTuple& idx) const;
    void set(const IndexTuple& idx, Poly f);
    void add(const IndexTuple& idx, const Poly& f);
    bool is_zero() const { return comps_.empty(); }
    double max_abs() const;
    LeafwiseForm<Complex> to_complex() const;

    LeafwiseForm& operator+=(const LeafwiseForm& o);
    LeafwiseForm& operator-=(const LeafwiseForm& o);
    friend LeafwiseForm operator+(LeafwiseForm a, const LeafwiseForm& b) { return a += b; }
    friend LeafwiseForm operator-(LeafwiseForm a, const LeafwiseForm& b) { return a -= b; }
    friend bool operator==(const LeafwiseForm& a, const LeafwiseForm& b) {
        return a.F_ == b.F_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }

private:
    void check_index(const IndexTuple& idx) const;
    void check_same(const LeafwiseForm& o) const;

    LinearFoliation F_;
    int degree_ = 0;
    std::map<IndexTuple, Poly> comps_;
};

/// Ambient k-form on T^n over the coordinate coframe (ds_i, dx_j).
template <class S>
class AmbientForm {
public:
    using Poly = BasicTrigPoly<S>;

    AmbientForm() = default;
    AmbientForm(int dims, int degree);

    int dims() const { return dims_; }
    int degree() const { return degree_; }
    const std::map<IndexTuple, Poly>& components() const { return comps_; }
    Poly component(const IndexTuple& idx) const;
    void set(const IndexTuple& idx, Poly f);
    void add(const IndexTuple& idx, const Poly& f);
    bool is_zero() const { return comps_.empty(); }
    double max_abs() const;

    friend bool operator==(const AmbientForm& a, const AmbientForm& b) {
        return a.dims_ == b.dims_ && a.degree_ == b.degree_ && a.comps_ == b.comps_;
    }

private:
    void check_index(const IndexTuple& idx) const;

    int dims_ = 1;
    int degree_ = 0;
    std::map<IndexTuple, Poly> comps_;
};

/// (d_F ω)_{i_0…i_k} = Σ_a (−1)^a X_{i_a} ω_{i_0…î_a…i_k}; degree p gives the zero (p+1)-form.
template <class S>
LeafwiseForm<S> leafwise_d(const LeafwiseForm<S>& w);

/// Coordinatewise exterior derivative on T^n.
template <class S>
AmbientForm<S> exterior_derivative(const AmbientForm<S>& w);

/// Pull back along the frame: ds_i(X_j) = δ_ij, dx_j(X_i) = B_ij.
template <class S>
LeafwiseForm<S> restrict_form(const AmbientForm<S>& w, const LinearFoliation& F);

/// Constant leafwise 1-form with component i equal to ξ_i.
template <class S>
LeafwiseForm<S> iota_form(const std::vector<S>& xi, const LinearFoliation& F);

/// ξ_1∧…∧ξ_p (constant top form equal to 1).
template <class S>
LeafwiseForm<S> leafwise_volume(const LinearFoliation& F);

struct SmallDivisorDiagnostic {
    struct Mode {
        Frequency mode;
        double max_divisor = 0.0; // max_i |δ_i|
        double coefficient = 0.0; // largest |coefficient| at the mode
        bool exact_zero = false;
    };
    double tol = 0.0;
    std::string reason;
    std::vector<Mode> modes;
};

template <class S>
struct H1Solution {
    std::vector<S> a;            // cohomology class in H¹(ℝ^p) coordinates
    BasicTrigPoly<S> g;          // primitive with zero mean
    double residual = 0.0;       // max |ω − (Σ a_i ξ_i + d_F g)| over coefficients
};

/*
 * Writes a closed leafwise 1-form as ω = Σ a_i ξ_i + d_F g by Fourier
 * division.  Each mode is divided along the direction i maximizing |δ_i|
 * (ties: smallest i).  Throws NotClosedError if ω is not closed and
 * ObstructionError for a supported mode with all δ_i exactly zero; returns a
 * diagnostic when some supported mode has max |δ_i| ≤ tol.
 */
template <class S>
std::variant<H1Solution<S>, SmallDivisorDiagnostic> solve_h1(const LeafwiseForm<S>& w, double tol = 1e-9);

template <class S>
struct MinimizabilityWitness {
    S c;                          // mean of the top component
    LeafwiseForm<S> eta;          // degree p − 1 with ω0 = c·vol + d_F η
    AmbientForm<S> omega;         // c·ds_1∧…∧ds_p + d(η̃), closed
    double restriction_residual = 0.0;
    double closedness_residual = 0.0;
    bool closed_exactly = false;  // dω has no stored coefficient
};

/// Extends a leafwise top form to a closed ambient p-form restricting to it.
template <class S>
std::variant<MinimizabilityWitness<S>, SmallDivisorDiagnostic> minimizability_witness(const LeafwiseForm<S>& w0,
                                                                                     double tol = 1e-9);

} // namespace leafcoh

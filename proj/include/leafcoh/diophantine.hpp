#pragma once

#include "leafcoh/real_scalar.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace leafcoh {

using RealMatrix = std::vector<std::vector<RealScalar>>; // row-major, p rows × q columns

struct ContinuedFraction {
    std::vector<Integer> quotients;
    std::vector<std::pair<Integer, Integer>> convergents; // (p_i, q_i)
    bool terminated = false;
    // For quadratic irrationals: first index i < j with equal complete-quotient
    // states, i.e. the expansion is periodic from i on with period j − i.
    std::optional<std::pair<std::size_t, std::size_t>> period;
};

/// Partial quotients a_0..a_{n−1} by exact integer recursion.
ContinuedFraction continued_fraction(const RealScalar& x, std::size_t n);

/*
 * Empirical Diophantine certificate: margin = min over searched k of
 * ‖k·x‖·|k|^ρ (scalar) or ‖Bk‖_{T^p}·|k|^ρ (matrix).  Only a statement about
 * 0 < |k| ≤ K, never about all k.
 */
struct DiophantineCertificate {
    double rho = 1.0;
    double margin = 0.0;
    long long search_radius = 0;
    std::vector<long long> witness_k;
    bool exact = true;
};

DiophantineCertificate scalar_margin(const RealScalar& x, double rho, long long K);

/// ‖v‖_{T^p} is the Euclidean distance to ℤ^p.  k ranges over the lattice ball
/// 0 < |k| ≤ K modulo k ~ −k (first nonzero coordinate positive).
DiophantineCertificate matrix_margin(const RealMatrix& B, double rho, long long K);

/// ‖Bk‖_{T^p} for one integer vector; `exact` reports whether each row distance
/// came from exact arithmetic.
double torus_distance(const RealMatrix& B, const std::vector<long long>& k, bool* exact = nullptr);

struct RecordMinimum {
    std::vector<long long> k;
    double norm_k = 0.0;
    double distance = 0.0;
};

struct ExponentFit {
    bool resonant = false;               // some searched k gave distance exactly 0
    std::vector<long long> resonant_k;   // first such k
    double rho_hat = 0.0;                // −slope of log dist vs log |k| over records
    std::vector<RecordMinimum> records;
};

ExponentFit exponent_fit(const RealScalar& x, long long K);
ExponentFit exponent_fit(const RealMatrix& B, long long K);

} // namespace leafcoh

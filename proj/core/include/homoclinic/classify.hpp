#pragma once

// Reduced Hessian sigma^T D sigma - D of a scattering matrix sigma, its
// signature, and the constructions around it: the never-definite ensemble,
// realization of a prescribed indefinite signature, and the reversible case.

#include "homoclinic/majorize.hpp"
#include "homoclinic/matkit.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace homoclinic {

inline constexpr double kSigmaSymplecticTol = 1e-7;
inline constexpr double kReversibilityTol = 1e-7;
inline constexpr double kStructureTol = 1e-10;

/// sigma^T D sigma - D. Rejects sigma with symplectic defect above
/// `symplectic_tol`.
Mat hessian_from_scattering(const Mat& sigma, const Mat& d_center, double symplectic_tol = kSigmaSymplecticTol);

/// chi(op, B): the O(eps) coefficient of the Hessian of exp(-eps J B).
Mat first_order_hessian(const ChiOperator& op, const Mat& b);

struct HessianClassification {
    SignatureReport signature;
    bool degenerate = false;  // zero eigenvalue present
};

HessianClassification classify_hessian(const Mat& hessian, double tol);
HessianClassification classify_hessian(const Mat& hessian);

// ---------------------------------------------------------------------------
// Never-definite ensemble

struct TrialOutcome {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool positive_definite = false;
    bool negative_definite = false;
    bool degenerate = false;
};

TrialOutcome assess_scattering(const Mat& sigma, const Mat& d_center, double tol);

/// sigma = prod_k exp(-J B_k) with 1..5 factors and ||B_k||_F uniform in
/// (0, 2]; trial i uses stream i of `seed`.
Mat random_symplectic(std::size_t l, std::uint64_t seed, std::uint64_t trial);

struct IndefinitenessSummary {
    std::size_t l = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::size_t positive_definite = 0;
    std::size_t negative_definite = 0;
    std::size_t degenerate = 0;
    double largest_min_eigenvalue = 0.0;   // over trials; never above tol
    double smallest_max_eigenvalue = 0.0;  // over trials; never below -tol
};

IndefinitenessSummary indefiniteness_trial(const Mat& d_center, std::size_t trials, std::uint64_t seed,
                                           double tol = 1e-9);

// ---------------------------------------------------------------------------
// Signature realization

struct RealizationReport {
    std::size_t l = 0;
    std::size_t m = 0;
    Vec b;          // target spectrum of G
    Mat G;          // diagonal (1..1, -1..-1), spectrum b
    Mat B;          // chi(B) = G, minimum norm
    double eps_requested = 0.0;
    double eps_used = 0.0;
    int halvings = 0;
    Mat sigma;      // exp(-eps_used J B)
    Mat hessian;
    SignatureReport achieved;
    double first_order_gap = 0.0;       // ||hessian / eps - chi(B)||_max
    double first_order_constant = 0.0;  // K with gap <= K eps

    bool target_met() const noexcept {
        return achieved.n_pos == m && achieved.n_neg == 2 * l - m && achieved.n_zero == 0;
    }
};

inline constexpr int kMaxEpsHalvings = 20;

/// Builds a scattering matrix whose Hessian has signature (m, 2l - m).
/// Halves eps up to 20 times until the achieved signature matches; throws
/// ConvergenceError if it never does.
RealizationReport realize_signature(std::size_t l, std::size_t m, std::span<const double> omega, double eps);

// ---------------------------------------------------------------------------
// Reversible case

struct ReversibilityReport {
    double residual = 0.0;  // ||sigma R sigma - R||_max
    bool pass = false;
    double tol = 0.0;
};

/// R must be symmetric, orthogonal, involutive and anti-symplectic
/// (R J = -J R) within 1e-10; the first violated identity is named in the
/// PreconditionError otherwise.
ReversibilityReport check_reversibility(const Mat& sigma, const Mat& r, double tol = kReversibilityTol);

struct ReversibleSignatureReport {
    HessianClassification classification;
    Mat hessian;
    /// S^{-1} H S^{-1} with S = sqrt((I + (R sigma)^T (R sigma)) / 2). In this
    /// basis R sigma acts as an orthogonal involution Q with H' Q = -Q H'.
    Mat transformed_hessian;
    Vec transformed_eigenvalues;      // descending
    double reversibility_residual = 0.0;
    double anticommutation_residual = 0.0;  // ||H' Q + Q H'||_max
    double orthogonality_residual = 0.0;    // ||Q^T Q - I||_max
    double pairing_residual = 0.0;          // max_k |lambda_k + lambda_{n-1-k}| of H'
    bool balanced = false;                  // (l, l, 0)
};

/// Requires check_reversibility to pass at 1e-7. A degenerate Hessian is
/// reported as such, never forced to (l, l).
ReversibleSignatureReport reversible_signature(const Mat& sigma, const Mat& r, const Mat& d_center, double tol);

} // namespace homoclinic

#pragma once

// Majorization, prescribed diagonal/spectrum construction, and the commutator
// map chi_D(B) = B J D - D J B on symmetric matrices.

#include "homoclinic/matkit.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace homoclinic {

/// Result of testing a < b (a majorized by b).
struct MajorizationWitness {
    Vec a_sorted;          // descending
    Vec b_sorted;          // descending
    Vec partial_sum_gaps;  // sum_{i<=k} b_i - sum_{i<=k} a_i, k = 1..n-1
    double total_gap = 0.0;
    bool holds = false;
    double tol = 0.0;

    /// 1-based index k of the first partial sum with gap < -tol, if any.
    std::optional<std::size_t> first_violation() const;
};

inline constexpr double kDefaultMajorizationTol = 1e-10;

MajorizationWitness majorizes(std::span<const double> a, std::span<const double> b,
                              double tol = kDefaultMajorizationTol);

/// The eigenvalue vector
///   (2l - m, 1, ..., 1, -(2l-1)/(2l-m), ..., -(2l-1)/(2l-m))
/// with m positive and 2l - m negative entries. It majorizes (1,..,1,-1,..,-1)
/// for every 1 <= m <= 2l - 1.
Vec signature_spectrum(std::size_t l, std::size_t m);

/// (1, ..., 1, -1, ..., -1) of length 2l.
Vec balanced_diagonal(std::size_t l);

/// Symmetric matrix with diagonal `diag` (in the given order) and eigenvalues
/// `eigenvalues`, built from diag(eigenvalues) by plane rotations that pin
/// one diagonal entry per step. Requires diag < eigenvalues; throws
/// PreconditionError naming the failing partial sum otherwise.
Mat mirsky_construct(std::span<const double> diag, std::span<const double> eigenvalues,
                     double tol = kDefaultMajorizationTol);

// ---------------------------------------------------------------------------
// chi operator

/// Holds D = diag(w_1..w_l, w_1..w_l) with every w_i nonzero and the squares
/// w_i^2 pairwise distinct.
class ChiOperator {
public:
    explicit ChiOperator(std::span<const double> omega);

    std::size_t l() const noexcept { return omega_.size(); }
    std::size_t dim() const noexcept { return 2 * omega_.size(); }
    const Vec& omega() const noexcept { return omega_; }
    const Mat& d() const noexcept { return d_; }
    const Mat& j() const noexcept { return j_; }

private:
    Vec omega_;
    Mat d_;
    Mat j_;
};

/// B J D - D J B
Mat chi(const ChiOperator& op, const Mat& b);
/// J D M - M D J, the adjoint of chi under <X, Y> = tr(XY).
Mat chi_star(const ChiOperator& op, const Mat& m);

/// diag(e_k, e_k), k = 1..l.
std::vector<Mat> chi_kernel_basis(const ChiOperator& op);

/// True iff M_ii + M_{l+i,l+i} = 0 within tol for every i.
bool range_membership(const ChiOperator& op, const Mat& m, double tol);

/// Minimum-norm symmetric B with chi(B) = G. Throws PreconditionError when G
/// fails range_membership at 1e-10 * max(1, ||G||_max).
Mat solve_chi(const ChiOperator& op, const Mat& g);

// Coordinates on symmetric n x n matrices: E_ii and (E_ij + E_ji)/sqrt(2),
// upper triangle in row-major order. Orthonormal for the trace inner product.
std::size_t sym_coordinate_count(std::size_t n);
Vec sym_to_coordinates(const Mat& s);
Mat sym_from_coordinates(std::size_t n, std::span<const double> coords);

/// Matrix of chi_star in symmetric coordinates.
Mat matricized_chi_star(const ChiOperator& op);
/// Matrix of chi in symmetric coordinates.
Mat matricized_chi(const ChiOperator& op);

/// Number of singular values of the matricized chi_star at most
/// rel_tol * s_max.
std::size_t chi_star_nullity(const ChiOperator& op, double rel_tol = 1e-9);

} // namespace homoclinic

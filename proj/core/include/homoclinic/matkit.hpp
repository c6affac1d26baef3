#pragma once

// Small dense real linear algebra with symplectic structure utilities.
//
// Everything here is sized for the center-block problems of this library
// (a few dozen rows at most); no blocking or vectorization is attempted.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace homoclinic {

using Vec = std::vector<double>;

/// Dense square matrix, row-major storage.
class Mat {
public:
    /// 1x1 zero matrix.
    Mat() : Mat(1) {}
    /// dim x dim zero matrix; dim must be positive.
    explicit Mat(std::size_t dim);

    static Mat zeros(std::size_t dim) { return Mat(dim); }
    static Mat identity(std::size_t dim);
    static Mat diagonal(std::span<const double> diag);
    /// Rejects ragged rows, non-square shapes and non-finite entries.
    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Mat from_row_major(std::size_t dim, std::span<const double> entries);

    std::size_t dim() const noexcept { return dim_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * dim_ + j]; }

    std::span<double> data() noexcept { return a_; }
    std::span<const double> data() const noexcept { return a_; }

    Vec diag() const;
    Vec column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const double> v);

    Mat& operator+=(const Mat& other);
    Mat& operator-=(const Mat& other);
    Mat& operator*=(double s);

    bool operator==(const Mat& other) const = default;

private:
    std::size_t dim_;
    std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator-(Mat a);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(Mat a, double s);
Vec operator*(const Mat& a, std::span<const double> x);

Mat transpose(const Mat& a);
/// (A + A^T) / 2
Mat symmetrize(const Mat& a);
double trace(const Mat& a);
/// tr(X Y), the inner product on symmetric matrices.
double trace_inner(const Mat& x, const Mat& y);
/// Largest absolute entry.
double max_abs(const Mat& a);
double max_abs_diff(const Mat& a, const Mat& b);
double frobenius_norm(const Mat& a);
double dot(std::span<const double> x, std::span<const double> y);
bool all_finite(const Mat& a);

bool is_symmetric(const Mat& a, double tol);
bool is_orthogonal(const Mat& a, double tol);

/// J = [[0, I], [-I, 0]] of size 2n. Throws InvalidArgument for n = 0.
Mat standard_symplectic_form(std::size_t n);

/// ||M^T J M - J||_max. Throws InvalidArgument for odd dimension.
double symplectic_defect(const Mat& m);
bool is_symplectic(const Mat& m, double tol);

/// Block-planar rotation acting on each conjugate pair (i, n+i) by
/// [[cos t_i, sin t_i], [-sin t_i, cos t_i]].
Mat symplectic_rotation(std::span<const double> theta);

/// exp(M) by scaling and squaring of a degree-12 Taylor polynomial.
Mat matrix_exponential(const Mat& m);

struct EigenDecomposition {
    Vec values;   // descending
    Mat vectors;  // orthonormal columns, column k pairs with values[k]
};

/// Cyclic Jacobi. Rejects input that is not symmetric within 1e-10 (relative
/// to max(1, ||S||_max)).
EigenDecomposition symmetric_eigendecomposition(const Mat& s);

struct SignatureReport {
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    std::size_t n_zero = 0;
    Vec eigenvalues;  // descending
    double tol = 0.0;

    std::size_t dim() const noexcept { return n_pos + n_neg + n_zero; }
    bool operator==(const SignatureReport&) const = default;
};

/// 1e-7 * max(1, ||S||_max)
double default_inertia_tol(const Mat& s);

/// Eigenvalues with |lambda| <= tol count as zero (ties at +-tol included).
SignatureReport inertia(const Mat& s, double tol);
SignatureReport inertia(const Mat& s);

/// Symmetric square root of a symmetric positive definite matrix. Throws
/// NotPositiveDefinite when an eigenvalue is <= 1e-12 * max(1, ||S||_max).
Mat spd_sqrt(const Mat& s);

struct SingularValueDecomposition {
    Mat u;
    Vec values;  // descending, non-negative
    Mat v;
};

/// One-sided Jacobi SVD, A = U diag(s) V^T.
SingularValueDecomposition singular_value_decomposition(const Mat& a);

/// Gauss-Jordan with partial pivoting; throws PreconditionError when a pivot
/// falls below 1e-14 * ||A||_max.
Mat inverse(const Mat& a);

/// Minimum-norm least-squares solution of A x = b. Singular values below
/// rel_tol * s_max are treated as zero.
Vec min_norm_solve(const Mat& a, std::span<const double> b, double rel_tol = 1e-12);

} // namespace homoclinic

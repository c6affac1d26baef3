#include "homoclinic/errors.hpp"
#include "homoclinic/matkit.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace homoclinic;

namespace {

constexpr double kPi = std::numbers::pi;

Mat hamiltonian_exp(const Mat& b, double eps) {
    return matrix_exponential(-eps * (standard_symplectic_form(b.dim() / 2) * b));
}

} // namespace

TEST(Mat, RejectsEmptyAndMalformedInput) {
    EXPECT_THROW(Mat(0), InvalidArgument);
    EXPECT_THROW(Mat::from_rows({{1.0, 2.0}, {3.0}}), InvalidArgument);
    EXPECT_THROW(Mat::from_rows({{1.0, 2.0}}), InvalidArgument);
    EXPECT_THROW(Mat::from_rows({{std::numeric_limits<double>::quiet_NaN()}}), InvalidArgument);
    const double entries[] = {1.0, 2.0, 3.0};
    EXPECT_THROW(Mat::from_row_major(2, entries), InvalidArgument);
}

TEST(Mat, ArithmeticMatchesHandComputation) {
    const Mat a = Mat::from_rows({{1, 2}, {3, 4}});
    const Mat b = Mat::from_rows({{0, 1}, {1, 0}});
    EXPECT_EQ(a * b, Mat::from_rows({{2, 1}, {4, 3}}));
    EXPECT_EQ(a + b, Mat::from_rows({{1, 3}, {4, 4}}));
    EXPECT_EQ(transpose(a), Mat::from_rows({{1, 3}, {2, 4}}));
    EXPECT_DOUBLE_EQ(trace(a), 5.0);
    EXPECT_DOUBLE_EQ(trace_inner(a, b), 5.0);
    const Vec x{1.0, -1.0};
    EXPECT_EQ(a * std::span<const double>(x), (Vec{-1.0, -1.0}));
    EXPECT_THROW(a * Mat(3), InvalidArgument);
}

TEST(StandardSymplecticForm, BlockStructure) {
    EXPECT_EQ(standard_symplectic_form(1), Mat::from_rows({{0, 1}, {-1, 0}}));
    const Mat j2 = standard_symplectic_form(2);
    EXPECT_EQ(j2 * j2, -Mat::identity(4));
    const Mat j3 = standard_symplectic_form(3);
    EXPECT_EQ(transpose(j3), -j3);
    EXPECT_THROW(standard_symplectic_form(0), InvalidArgument);
}

TEST(IsSymplectic, Examples) {
    EXPECT_TRUE(is_symplectic(Mat::identity(4), 1e-12));
    EXPECT_FALSE(is_symplectic(2.0 * Mat::identity(2), 1e-12));
    EXPECT_NEAR(symplectic_defect(2.0 * Mat::identity(2)), 3.0, 1e-15);

    oracle::Rng rng(11);
    const Mat b = rng.symmetric(4);
    const Mat s = hamiltonian_exp(b, 0.1);
    // direct multiplication, independent of symplectic_defect
    const Mat j = standard_symplectic_form(2);
    EXPECT_LE(max_abs_diff(transpose(s) * j * s, j), 1e-10);
    EXPECT_TRUE(is_symplectic(s, 1e-10));
    EXPECT_THROW(is_symplectic(Mat::identity(3), 1e-12), InvalidArgument);
}

TEST(SymplecticRotation, Examples) {
    const double quarter[] = {kPi / 2};
    EXPECT_LE(max_abs_diff(symplectic_rotation(quarter), Mat::from_rows({{0, 1}, {-1, 0}})), 1e-15);
    const double zero[] = {0.0, 0.0};
    EXPECT_EQ(symplectic_rotation(zero), Mat::identity(4));
    const double small[] = {0.3};
    const Mat r = symplectic_rotation(small);
    EXPECT_LE(max_abs_diff(transpose(r) * r, Mat::identity(2)), 1e-12);
}

TEST(SymplecticRotation, SymplecticAndOrthogonalForRandomAngles) {
    oracle::Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec theta = rng.vector(rng.index(1, 6), -20.0, 20.0);
        const Mat r = symplectic_rotation(theta);
        ASSERT_TRUE(is_symplectic(r, 1e-12));
        ASSERT_TRUE(is_orthogonal(r, 1e-12));
    }
}

TEST(MatrixExponential, Examples) {
    EXPECT_EQ(matrix_exponential(Mat::zeros(4)), Mat::identity(4));
    const Vec logs{std::log(2.0), std::log(3.0)};
    const Mat e = matrix_exponential(Mat::diagonal(logs));
    EXPECT_NEAR(e(0, 0), 2.0, 1e-12);
    EXPECT_NEAR(e(1, 1), 3.0, 1e-12);
    EXPECT_EQ(e(0, 1), 0.0);
    EXPECT_LE(max_abs_diff(matrix_exponential((kPi / 2) * standard_symplectic_form(1)),
                           Mat::from_rows({{0, 1}, {-1, 0}})),
              1e-12);
}

TEST(MatrixExponential, MatchesTaylorOracleAndInverse) {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = rng.index(1, 8);
        const Mat m = rng.general(n, 0.5);
        const Mat e = matrix_exponential(m);
        ASSERT_LE(max_abs_diff(e, oracle::taylor_exp(m)), 1e-12);
        ASSERT_LE(max_abs_diff(e * matrix_exponential(-m), Mat::identity(n)), 1e-12);
    }
}

TEST(MatrixExponential, LargeArgumentUsesRotationClosedForm) {
    for (double t : {3.0, 10.0, 37.5}) {
        const Mat e = matrix_exponential(t * standard_symplectic_form(3));
        ASSERT_LE(max_abs_diff(e, oracle::rotation(3, t)), 1e-11 * t);
    }
}

TEST(MatrixExponential, HamiltonianExponentialIsSymplectic) {
    oracle::Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t l = rng.index(1, 5);
        Mat b = rng.symmetric(2 * l);
        const double eps = rng.uniform(-1.0, 1.0) / frobenius_norm(b);
        ASSERT_TRUE(is_symplectic(hamiltonian_exp(b, eps), 1e-9));
    }
}

TEST(SymmetricEigendecomposition, Examples) {
    const Vec d{2.0, -3.0, 0.0};
    const auto e = symmetric_eigendecomposition(Mat::diagonal(d));
    EXPECT_EQ(e.values, (Vec{2.0, 0.0, -3.0}));

    const double r3 = std::sqrt(3.0);
    const auto f = symmetric_eigendecomposition(Mat::from_rows({{1, r3}, {r3, -1}}));
    const Vec expected = oracle::eig2(1.0, r3, -1.0);
    EXPECT_NEAR(f.values[0], expected[0], 1e-14);
    EXPECT_NEAR(f.values[1], expected[1], 1e-14);
    EXPECT_NEAR(f.values[0], 2.0, 1e-14);

    const auto g = symmetric_eigendecomposition(Mat::identity(4));
    EXPECT_EQ(g.values, Vec(4, 1.0));
    EXPECT_TRUE(is_orthogonal(g.vectors, 1e-14));
}

TEST(SymmetricEigendecomposition, RejectsNonSymmetric) {
    EXPECT_THROW(symmetric_eigendecomposition(Mat::from_rows({{1, 2}, {0, 1}})), InvalidArgument);
}

TEST(SymmetricEigendecomposition, ReconstructsAndPairs) {
    oracle::Rng rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.index(1, 12);
        const Mat s = rng.symmetric(n, rng.uniform(0.1, 50.0));
        const auto e = symmetric_eigendecomposition(s);
        ASSERT_TRUE(std::is_sorted(e.values.rbegin(), e.values.rend()));
        ASSERT_TRUE(is_orthogonal(e.vectors, 1e-12));
        Mat recon = e.vectors * Mat::diagonal(e.values) * transpose(e.vectors);
        ASSERT_LE(max_abs_diff(recon, s), 1e-8 * frobenius_norm(s));
        for (std::size_t k = 0; k < n; ++k) {
            const Vec v = e.vectors.column(k);
            const Vec sv = s * std::span<const double>(v);
            for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(sv[i], e.values[k] * v[i], 1e-8);
        }
        // trace and Frobenius norm are spectral invariants
        double sum = 0.0, sq = 0.0;
        for (double x : e.values) sum += x, sq += x * x;
        ASSERT_NEAR(sum, trace(s), 1e-10 * std::max(1.0, frobenius_norm(s)));
        ASSERT_NEAR(std::sqrt(sq), frobenius_norm(s), 1e-10 * frobenius_norm(s));
    }
}

TEST(Inertia, Examples) {
    const Vec d{2.0, -3.0, 0.0};
    const auto r = inertia(Mat::diagonal(d), 1e-9);
    EXPECT_EQ(r.n_pos, 1u);
    EXPECT_EQ(r.n_neg, 1u);
    EXPECT_EQ(r.n_zero, 1u);
    EXPECT_EQ(r.tol, 1e-9);

    const auto z = inertia(Mat::zeros(4), 1e-3);
    EXPECT_EQ(z.n_zero, 4u);
    EXPECT_EQ(z.dim(), 4u);

    const auto s = inertia(Mat::from_rows({{-2, 0}, {0, 2}}));
    EXPECT_EQ(s.n_pos, 1u);
    EXPECT_EQ(s.n_neg, 1u);
    EXPECT_EQ(s.n_zero, 0u);
}

TEST(Inertia, TiesAtToleranceCountAsZero) {
    const Vec d{0.5, -0.5, 0.6};
    const auto r = inertia(Mat::diagonal(d), 0.5);
    EXPECT_EQ(r.n_zero, 2u);
    EXPECT_EQ(r.n_pos, 1u);
}

TEST(Inertia, DefaultToleranceScalesWithEntries) {
    EXPECT_DOUBLE_EQ(default_inertia_tol(Mat::from_rows({{0.5}})), 1e-7);
    EXPECT_DOUBLE_EQ(default_inertia_tol(Mat::from_rows({{-300.0}})), 3e-5);
}

TEST(Inertia, InvariantUnderOrthogonalConjugation) {
    oracle::Rng rng(16);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = rng.index(2, 10);
        // well separated spectrum with a planted kernel
        Vec lambda = rng.vector(n, -5.0, 5.0);
        for (double& x : lambda)
            if (std::abs(x) < 0.1) x = 0.1;
        lambda[rng.index(0, n - 1)] = 0.0;
        const Mat q = rng.orthogonal(n);
        const Mat s = symmetrize(q * Mat::diagonal(lambda) * transpose(q));
        const Mat q2 = rng.orthogonal(n);
        const auto a = inertia(s, 1e-6);
        const auto b = inertia(symmetrize(transpose(q2) * s * q2), 1e-6);
        ASSERT_EQ(a.n_pos, b.n_pos);
        ASSERT_EQ(a.n_neg, b.n_neg);
        ASSERT_EQ(a.n_zero, b.n_zero);
        ASSERT_GE(a.n_zero, 1u);
    }
}

TEST(SpdSqrt, Examples) {
    EXPECT_LE(max_abs_diff(spd_sqrt(Mat::identity(3)), Mat::identity(3)), 1e-14);
    const Vec d{4.0, 9.0};
    const Mat t = spd_sqrt(Mat::diagonal(d));
    EXPECT_NEAR(t(0, 0), 2.0, 1e-14);
    EXPECT_NEAR(t(1, 1), 3.0, 1e-14);
    EXPECT_NEAR(t(0, 1), 0.0, 1e-14);
}

TEST(SpdSqrt, SquaresBackForRandomInput) {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = rng.index(1, 10);
        const Mat q = rng.orthogonal(n);
        const Mat a = q * rng.general(n, 2.0) * transpose(q);
        const Mat s = 0.5 * (Mat::identity(n) + transpose(a) * a);
        const Mat t = spd_sqrt(s);
        ASSERT_TRUE(is_symmetric(t, 1e-14));
        ASSERT_LE(max_abs_diff(transpose(t) * t, s), 1e-8);
        ASSERT_LE(max_abs_diff(t * t, s), 1e-8);
    }
}

TEST(SpdSqrt, RejectsIndefiniteAndSemidefinite) {
    EXPECT_THROW(spd_sqrt(Mat::from_rows({{1, 0}, {0, -1}})), NotPositiveDefinite);
    EXPECT_THROW(spd_sqrt(Mat::from_rows({{1, 1}, {1, 1}})), NotPositiveDefinite);
    EXPECT_THROW(spd_sqrt(Mat::from_rows({{1, 2}, {0, 1}})), InvalidArgument);
}

TEST(SingularValueDecomposition, Reconstructs) {
    oracle::Rng rng(18);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = rng.index(1, 10);
        const Mat a = rng.general(n, 3.0);
        const auto svd = singular_value_decomposition(a);
        ASSERT_TRUE(std::is_sorted(svd.values.rbegin(), svd.values.rend()));
        ASSERT_GE(svd.values.back(), 0.0);
        ASSERT_TRUE(is_orthogonal(svd.v, 1e-10));
        ASSERT_LE(max_abs_diff(svd.u * Mat::diagonal(svd.values) * transpose(svd.v), a), 1e-10);
        // singular values are square roots of the eigenvalues of A^T A
        const Vec ev = symmetric_eigendecomposition(symmetrize(transpose(a) * a)).values;
        for (std::size_t k = 0; k < n; ++k) ASSERT_NEAR(svd.values[k], std::sqrt(std::max(0.0, ev[k])), 1e-6);
    }
}

TEST(Inverse, MatchesIdentityAndRejectsSingular) {
    oracle::Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = rng.index(1, 10);
        const Mat a = rng.general(n) + static_cast<double>(n) * Mat::identity(n);
        ASSERT_LE(max_abs_diff(a * inverse(a), Mat::identity(n)), 1e-12);
    }
    EXPECT_THROW(inverse(Mat::from_rows({{1, 2}, {2, 4}})), PreconditionError);
}

TEST(MinNormSolve, ReturnsSolutionOrthogonalToKernel) {
    // A = [[1, 1], [1, 1]] has kernel (1, -1); A x = (2, 2) has minimum-norm
    // solution (1, 1).
    const Vec b{2.0, 2.0};
    const Vec x = min_norm_solve(Mat::from_rows({{1, 1}, {1, 1}}), b);
    EXPECT_NEAR(x[0], 1.0, 1e-14);
    EXPECT_NEAR(x[1], 1.0, 1e-14);

    oracle::Rng rng(20);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = rng.index(2, 8);
        const Mat a = rng.general(n) + static_cast<double>(n) * Mat::identity(n);
        const Vec rhs = rng.vector(n, -1.0, 1.0);
        const Vec sol = min_norm_solve(a, rhs);
        const Vec back = a * std::span<const double>(sol);
        for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(back[i], rhs[i], 1e-11);
    }
}

#include "homoclinic/classify.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/flow.hpp"
#include "homoclinic/models.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace homoclinic;

namespace {

Mat hamiltonian_exp(const Mat& b, double eps) {
    return oracle::taylor_exp(-eps * (standard_symplectic_form(b.dim() / 2) * b));
}

// Symmetric B with R_c B R_c = B: no coupling between the q and p blocks.
Mat reversible_form(oracle::Rng& rng, std::size_t l) {
    const Mat q = rng.symmetric(l), p = rng.symmetric(l);
    Mat b(2 * l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            b(i, j) = q(i, j);
            b(l + i, l + j) = p(i, j);
        }
    return b;
}

Vec frequencies(std::size_t l) {
    const Vec all{1.0, std::sqrt(2.0), std::numbers::pi / 2, std::numbers::e};
    return Vec(all.begin(), all.begin() + static_cast<long>(l));
}

} // namespace

TEST(HessianFromScattering, Examples) {
    const Mat d = oracle::center_d(Vec{1.0, 2.0});
    EXPECT_EQ(hessian_from_scattering(Mat::identity(4), d), Mat::zeros(4));

    const Vec theta{0.4, -2.2};
    EXPECT_LE(max_abs(hessian_from_scattering(symplectic_rotation(theta), d)), 1e-14);

    oracle::Rng rng(61);
    const Mat b = rng.symmetric(4);
    const double eps = 1e-4;
    const Mat h = hessian_from_scattering(hamiltonian_exp(b, eps), d);
    const Vec w{1.0, 2.0};
    EXPECT_LE(max_abs_diff((1.0 / eps) * h, chi(ChiOperator(w), b)), 1e-2);
    EXPECT_TRUE(is_symmetric(h, 1e-9));
}

TEST(HessianFromScattering, RejectsNonSymplectic) {
    const Mat d = oracle::center_d(Vec{1.0});
    EXPECT_THROW(hessian_from_scattering(2.0 * Mat::identity(2), d), PreconditionError);
    EXPECT_THROW(hessian_from_scattering(Mat::identity(4), d), InvalidArgument);
    EXPECT_THROW(hessian_from_scattering(Mat::identity(2), Mat::diagonal(Vec{1, 2})), InvalidArgument);
}

TEST(HessianFromScattering, InvariantUnderRotationQuotient) {
    oracle::Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t l = rng.index(1, 4);
        const Mat d = oracle::center_d(frequencies(l));
        const Mat sigma = hamiltonian_exp(rng.symmetric(2 * l), rng.uniform(0.1, 1.0));
        const Mat rot = symplectic_rotation(rng.vector(l, -10.0, 10.0));
        ASSERT_LE(max_abs_diff(hessian_from_scattering(rot * sigma, d), hessian_from_scattering(sigma, d)), 1e-9);
    }
}

TEST(FirstOrderHessian, Examples) {
    const Vec w{1.0, 2.0};
    const ChiOperator op(w);
    EXPECT_LE(max_abs(first_order_hessian(op, Mat::diagonal(Vec{0.3, -1.0, 0.3, -1.0}))), 1e-15);

    const Vec one{1.0};
    const Mat g = first_order_hessian(ChiOperator(one), Mat::from_rows({{0, 1}, {1, 0}}));
    EXPECT_EQ(g, Mat::from_rows({{-2, 0}, {0, 2}}));
    const auto s = classify_hessian(g);
    EXPECT_EQ(s.signature.n_pos, 1u);
    EXPECT_EQ(s.signature.n_neg, 1u);

    oracle::Rng rng(63);
    for (int trial = 0; trial < 20; ++trial) ASSERT_LE(std::abs(trace(first_order_hessian(op, rng.symmetric(4)))), 1e-12);
}

TEST(FirstOrderHessian, SecondOrderRemainder) {
    oracle::Rng rng(64);
    for (std::size_t l : {1u, 2u, 3u}) {
        const Vec w = frequencies(l);
        const ChiOperator op(w);
        for (int trial = 0; trial < 5; ++trial) {
            Mat b = rng.symmetric(2 * l);
            b *= 1.0 / frobenius_norm(b);
            const Mat first = first_order_hessian(op, b);
            double fitted[3];
            int k = 0;
            for (double eps : {1e-2, 1e-3, 1e-4}) {
                const Mat h = hessian_from_scattering(hamiltonian_exp(b, eps), op.d());
                const double gap = max_abs_diff((1.0 / eps) * h, first);
                fitted[k++] = gap / eps;
                const double bound = 2.0 * w.back() * std::exp(2.0 * eps);
                ASSERT_LE(gap, bound * eps);
            }
            // the O(eps) coefficient settles: K(1e-3) and K(1e-4) agree closely
            ASSERT_NEAR(fitted[1], fitted[2], 0.05 * fitted[2] + 1e-6);
            ASSERT_NEAR(fitted[0], fitted[2], 0.2 * fitted[2] + 1e-6);
        }
    }
}

TEST(ClassifyHessian, Examples) {
    const auto z = classify_hessian(Mat::zeros(4));
    EXPECT_EQ(z.signature.n_zero, 4u);
    EXPECT_TRUE(z.degenerate);

    const auto s = classify_hessian(Mat::from_rows({{-2, 0}, {0, 2}}), 1e-9);
    EXPECT_EQ(s.signature.n_pos, 1u);
    EXPECT_EQ(s.signature.n_neg, 1u);
    EXPECT_EQ(s.signature.n_zero, 0u);
    EXPECT_FALSE(s.degenerate);
    EXPECT_EQ(s.signature.tol, 1e-9);
}

TEST(IndefinitenessTrial, NoDefiniteHessians) {
    for (std::size_t l : {1u, 3u}) {
        const Vec w = l == 1 ? Vec{1.0} : Vec{1.0, std::sqrt(2.0), std::numbers::pi / 2};
        const auto s = indefiniteness_trial(oracle::center_d(w), 1000, 2024);
        EXPECT_EQ(s.trials, 1000u);
        EXPECT_EQ(s.positive_definite, 0u);
        EXPECT_EQ(s.negative_definite, 0u);
        EXPECT_LE(s.largest_min_eigenvalue, s.tol);
        EXPECT_GE(s.smallest_max_eigenvalue, -s.tol);
    }
}

TEST(IndefinitenessTrial, IdentityIsDegenerate) {
    const Mat d = oracle::center_d(Vec{1.0, 2.0});
    const TrialOutcome t = assess_scattering(Mat::identity(4), d, 1e-9);
    EXPECT_FALSE(t.positive_definite);
    EXPECT_FALSE(t.negative_definite);
    EXPECT_TRUE(t.degenerate);
}

TEST(IndefinitenessTrial, DeterministicPerSeed) {
    const Mat d = oracle::center_d(Vec{1.0, 2.0});
    const auto a = indefiniteness_trial(d, 50, 9);
    const auto b = indefiniteness_trial(d, 50, 9);
    const auto c = indefiniteness_trial(d, 50, 10);
    EXPECT_EQ(a.largest_min_eigenvalue, b.largest_min_eigenvalue);
    EXPECT_EQ(a.smallest_max_eigenvalue, b.smallest_max_eigenvalue);
    EXPECT_NE(a.largest_min_eigenvalue, c.largest_min_eigenvalue);
    EXPECT_EQ(random_symplectic(2, 9, 3), random_symplectic(2, 9, 3));
    EXPECT_TRUE(is_symplectic(random_symplectic(3, 9, 4), 1e-10));
}

TEST(IndefinitenessTrial, RejectsBadInput) {
    const Mat d = oracle::center_d(Vec{1.0});
    EXPECT_THROW(indefiniteness_trial(d, 0, 1), InvalidArgument);
    EXPECT_THROW(indefiniteness_trial(d, 10, 1, 0.0), InvalidArgument);
}

TEST(RealizeSignature, Examples) {
    const auto a = realize_signature(1, 1, Vec{1.0}, 1e-2);
    EXPECT_EQ(a.achieved.n_pos, 1u);
    EXPECT_EQ(a.achieved.n_neg, 1u);
    EXPECT_EQ(a.achieved.n_zero, 0u);

    const auto b = realize_signature(2, 1, Vec{1.0, 2.0}, 1e-2);
    EXPECT_EQ(b.achieved.n_pos, 1u);
    EXPECT_EQ(b.achieved.n_neg, 3u);
    EXPECT_EQ(b.achieved.n_zero, 0u);

    const auto c = realize_signature(3, 5, Vec{1.0, std::sqrt(2.0), std::numbers::e}, 1e-2);
    EXPECT_EQ(c.achieved.n_pos, 5u);
    EXPECT_EQ(c.achieved.n_neg, 1u);
    EXPECT_EQ(c.achieved.n_zero, 0u);
}

TEST(RealizeSignature, EverySignatureWithConsistentReport) {
    for (std::size_t l = 1; l <= 4; ++l) {
        const Vec w = frequencies(l);
        const ChiOperator op(w);
        for (std::size_t m = 1; m <= 2 * l - 1; ++m) {
            const auto r = realize_signature(l, m, w, 0.05);
            ASSERT_TRUE(r.target_met()) << "l=" << l << " m=" << m;
            ASSERT_EQ(r.b, signature_spectrum(l, m));
            ASSERT_EQ(r.G.diag(), balanced_diagonal(l));
            ASSERT_LE(max_abs_diff(chi(op, r.B), r.G), 1e-8 * max_abs(r.G));
            ASSERT_LE(max_abs_diff(r.sigma, hamiltonian_exp(r.B, r.eps_used)), 1e-10);
            ASSERT_LE(max_abs_diff(r.hessian, hessian_from_scattering(r.sigma, op.d())), 1e-15);
            ASSERT_LE(r.first_order_gap, r.first_order_constant * r.eps_used);
            ASSERT_EQ(r.eps_used, r.eps_requested * std::ldexp(1.0, -r.halvings));
        }
    }
}

TEST(RealizeSignature, HalvesOversizedEps) {
    const auto r = realize_signature(2, 3, Vec{1.0, 2.0}, 50.0);
    EXPECT_TRUE(r.target_met());
    EXPECT_GT(r.halvings, 0);
    EXPECT_LT(r.eps_used, r.eps_requested);
}

TEST(RealizeSignature, RejectsBadInput) {
    EXPECT_THROW(realize_signature(2, 4, Vec{1.0, 2.0}, 1e-2), InvalidArgument);
    EXPECT_THROW(realize_signature(2, 0, Vec{1.0, 2.0}, 1e-2), InvalidArgument);
    EXPECT_THROW(realize_signature(2, 1, Vec{1.0}, 1e-2), InvalidArgument);
    EXPECT_THROW(realize_signature(2, 1, Vec{1.0, -1.0}, 1e-2), InvalidArgument);
    EXPECT_THROW(realize_signature(1, 1, Vec{1.0}, 0.0), InvalidArgument);
}

TEST(CheckReversibility, Examples) {
    const Mat r = center_reversor(2);
    const auto id = check_reversibility(Mat::identity(4), r, 1e-12);
    EXPECT_TRUE(id.pass);
    EXPECT_EQ(id.residual, 0.0);

    oracle::Rng rng(65);
    const Mat good = hamiltonian_exp(reversible_form(rng, 2), 0.3);
    EXPECT_TRUE(check_reversibility(good, r, 1e-9).pass);

    const Mat generic = hamiltonian_exp(rng.symmetric(4), 0.3);
    const auto bad = check_reversibility(generic, r, 1e-9);
    EXPECT_FALSE(bad.pass);
    EXPECT_GT(bad.residual, 1e-3);
}

TEST(CheckReversibility, NamesTheViolatedIdentity) {
    const Mat sigma = Mat::identity(2);
    auto message = [&](const Mat& r) {
        try {
            check_reversibility(sigma, r);
        } catch (const PreconditionError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(Mat::from_rows({{1, 0.5}, {0, -1}})).find("symmetric"), std::string::npos);
    EXPECT_NE(message(Mat::from_rows({{2, 0}, {0, -0.5}})).find("orthogonal"), std::string::npos);
    // symmetric and orthogonal with R^2 = I but R J = J R
    EXPECT_NE(message(Mat::identity(2)).find("anti-symplectic"), std::string::npos);
    EXPECT_THROW(check_reversibility(Mat::identity(4), center_reversor(1)), InvalidArgument);
}

TEST(ReversibleSignature, IdentityIsDegenerate) {
    const auto r = reversible_signature(Mat::identity(4), center_reversor(2), oracle::center_d(Vec{1.0, 2.0}), 1e-9);
    EXPECT_TRUE(r.classification.degenerate);
    EXPECT_EQ(r.classification.signature.n_zero, 4u);
    EXPECT_FALSE(r.balanced);
}

TEST(ReversibleSignature, BalancedAndPaired) {
    oracle::Rng rng(66);
    for (std::size_t l : {1u, 2u, 3u}) {
        const Mat d = oracle::center_d(frequencies(l));
        const Mat r = center_reversor(l);
        for (int trial = 0; trial < 10; ++trial) {
            const Mat sigma = hamiltonian_exp(reversible_form(rng, l), rng.uniform(0.01, 0.5));
            const Mat h = hessian_from_scattering(sigma, d);
            const auto rep = reversible_signature(sigma, r, d, default_inertia_tol(h));
            if (rep.classification.degenerate) continue;
            ASSERT_TRUE(rep.balanced) << "l=" << l;
            ASSERT_LE(rep.anticommutation_residual, 1e-9);
            ASSERT_LE(rep.orthogonality_residual, 1e-9);
            ASSERT_LE(rep.pairing_residual, 1e-7);
            // H' is congruent to H
            const auto sig = inertia(rep.transformed_hessian, default_inertia_tol(rep.transformed_hessian));
            ASSERT_EQ(sig.n_pos, l);
            ASSERT_EQ(sig.n_neg, l);
        }
    }
}

TEST(ReversibleSignature, RequiresReversibleSigma) {
    oracle::Rng rng(67);
    const Mat sigma = hamiltonian_exp(rng.symmetric(4), 0.3);
    EXPECT_THROW(reversible_signature(sigma, center_reversor(2), oracle::center_d(Vec{1.0, 2.0}), 1e-9),
                 PreconditionError);
}

TEST(ReversibleSignature, ScatteringOfReversibleModel) {
    oracle::Rng rng(68);
    ModelSpec spec = integrable_spec(Vec{1.0, 2.0});
    spec.eps = 0.2;
    spec.C = reversible_form(rng, 2);
    const ScatteringResult s = scattering_matrix(center_scattering_problem(spec));
    const auto check = check_reversibility(s.sigma, center_reversor(2));
    EXPECT_TRUE(check.pass) << check.residual;
    const Mat d = oracle::center_d(spec.omega);
    const auto rep = reversible_signature(s.sigma, center_reversor(2), d, 1e-7);
    EXPECT_TRUE(rep.balanced);
}

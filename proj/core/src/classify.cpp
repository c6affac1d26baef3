#include "homoclinic/classify.hpp"

#include "homoclinic/errors.hpp"
#include "homoclinic/flow.hpp"
#include "homoclinic/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homoclinic {

Mat hessian_from_scattering(const Mat& sigma, const Mat& d_center, double symplectic_tol) {
    if (sigma.dim() != d_center.dim()) throw InvalidArgument("hessian_from_scattering: dimension mismatch");
    center_frequencies(d_center);
    const double defect = symplectic_defect(sigma);
    if (!(defect <= symplectic_tol))
        throw PreconditionError("hessian_from_scattering: sigma is not symplectic (defect " +
                                std::to_string(defect) + ")");
    return symmetrize(transpose(sigma) * d_center * sigma - d_center);
}

Mat first_order_hessian(const ChiOperator& op, const Mat& b) { return chi(op, b); }

HessianClassification classify_hessian(const Mat& hessian, double tol) {
    HessianClassification out;
    out.signature = inertia(hessian, tol);
    out.degenerate = out.signature.n_zero > 0;
    return out;
}

HessianClassification classify_hessian(const Mat& hessian) {
    return classify_hessian(hessian, default_inertia_tol(hessian));
}

// ---------------------------------------------------------------------------

TrialOutcome assess_scattering(const Mat& sigma, const Mat& d_center, double tol) {
    const Mat h = hessian_from_scattering(sigma, d_center);
    const Vec eig = symmetric_eigendecomposition(h).values;
    TrialOutcome out;
    out.max_eigenvalue = eig.front();
    out.min_eigenvalue = eig.back();
    out.positive_definite = out.min_eigenvalue > tol;
    out.negative_definite = out.max_eigenvalue < -tol;
    out.degenerate = std::any_of(eig.begin(), eig.end(), [tol](double x) { return std::abs(x) <= tol; });
    return out;
}

Mat random_symplectic(std::size_t l, std::uint64_t seed, std::uint64_t trial) {
    SeededStream rng(seed, trial);
    const Mat j = standard_symplectic_form(l);
    const std::size_t factors = rng.index(1, 5);
    Mat sigma = Mat::identity(2 * l);
    for (std::size_t k = 0; k < factors; ++k) {
        Mat b = rng.symmetric(2 * l);
        const double norm = frobenius_norm(b);
        if (norm == 0.0) continue;
        // uniform in (0, 2]
        b *= 2.0 * (1.0 - rng.uniform()) / norm;
        sigma = sigma * matrix_exponential(-(j * b));
    }
    return sigma;
}

IndefinitenessSummary indefiniteness_trial(const Mat& d_center, std::size_t trials, std::uint64_t seed,
                                           double tol) {
    if (trials == 0) throw InvalidArgument("indefiniteness_trial: trials must be at least 1");
    if (!(tol > 0.0)) throw InvalidArgument("indefiniteness_trial: tolerance must be positive");
    const std::size_t l = center_frequencies(d_center).size();

    IndefinitenessSummary summary;
    summary.l = l;
    summary.trials = trials;
    summary.seed = seed;
    summary.tol = tol;
    summary.largest_min_eigenvalue = -HUGE_VAL;
    summary.smallest_max_eigenvalue = HUGE_VAL;
    for (std::size_t i = 0; i < trials; ++i) {
        const TrialOutcome t = assess_scattering(random_symplectic(l, seed, i), d_center, tol);
        summary.positive_definite += t.positive_definite;
        summary.negative_definite += t.negative_definite;
        summary.degenerate += t.degenerate;
        summary.largest_min_eigenvalue = std::max(summary.largest_min_eigenvalue, t.min_eigenvalue);
        summary.smallest_max_eigenvalue = std::min(summary.smallest_max_eigenvalue, t.max_eigenvalue);
    }
    return summary;
}

// ---------------------------------------------------------------------------

RealizationReport realize_signature(std::size_t l, std::size_t m, std::span<const double> omega, double eps) {
    if (l == 0) throw InvalidArgument("realize_signature: l must be positive");
    if (omega.size() != l) throw InvalidArgument("realize_signature: omega must have l entries");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("realize_signature: eps must be positive");

    const ChiOperator op(omega);
    RealizationReport report;
    report.l = l;
    report.m = m;
    report.b = signature_spectrum(l, m);
    report.G = mirsky_construct(balanced_diagonal(l), report.b);
    report.B = solve_chi(op, report.G);
    report.eps_requested = eps;

    const Mat j = standard_symplectic_form(l);
    const Mat jb = j * report.B;
    const Mat chi_b = chi(op, report.B);
    double omega_max = 0.0;
    for (double w : omega) omega_max = std::max(omega_max, std::abs(w));
    const double b_norm = frobenius_norm(report.B);

    double current = eps;
    for (int attempt = 0; attempt <= kMaxEpsHalvings; ++attempt, current *= 0.5) {
        report.eps_used = current;
        report.halvings = attempt;
        report.sigma = matrix_exponential(-current * jb);
        report.hessian = hessian_from_scattering(report.sigma, op.d());
        report.achieved = inertia(report.hessian);
        report.first_order_gap = max_abs_diff((1.0 / current) * report.hessian, chi_b);
        // Taylor remainder of exp(-eps X^T) D exp(-eps X) with ||X||_2 <= ||B||_F
        report.first_order_constant = 2.0 * b_norm * b_norm * omega_max * std::exp(2.0 * current * b_norm);
        if (report.target_met()) return report;
    }
    throw ConvergenceError("realize_signature: signature (" + std::to_string(m) + ", " + std::to_string(2 * l - m) +
                           ") not reached after " + std::to_string(kMaxEpsHalvings) + " halvings of eps");
}

// ---------------------------------------------------------------------------

ReversibilityReport check_reversibility(const Mat& sigma, const Mat& r, double tol) {
    if (sigma.dim() != r.dim()) throw InvalidArgument("check_reversibility: dimension mismatch");
    if (r.dim() % 2 != 0) throw InvalidArgument("check_reversibility: odd dimension");
    const Mat id = Mat::identity(r.dim());
    const Mat j = standard_symplectic_form(r.dim() / 2);
    if (!is_symmetric(r, kStructureTol)) throw PreconditionError("check_reversibility: R is not symmetric (R = R^T)");
    if (!is_orthogonal(r, kStructureTol))
        throw PreconditionError("check_reversibility: R is not orthogonal (R^T R = I)");
    if (max_abs_diff(r * r, id) > kStructureTol)
        throw PreconditionError("check_reversibility: R is not an involution (R^2 = I)");
    if (max_abs(r * j + j * r) > kStructureTol)
        throw PreconditionError("check_reversibility: R is not anti-symplectic (R J = -J R)");

    ReversibilityReport report;
    report.residual = max_abs_diff(sigma * r * sigma, r);
    report.tol = tol;
    report.pass = report.residual <= tol;
    return report;
}

ReversibleSignatureReport reversible_signature(const Mat& sigma, const Mat& r, const Mat& d_center, double tol) {
    const ReversibilityReport rev = check_reversibility(sigma, r, kReversibilityTol);
    if (!rev.pass)
        throw PreconditionError("reversible_signature: sigma R sigma != R (residual " + std::to_string(rev.residual) +
                                ")");

    ReversibleSignatureReport out;
    out.reversibility_residual = rev.residual;
    out.hessian = hessian_from_scattering(sigma, d_center);
    out.classification = classify_hessian(out.hessian, tol);

    const std::size_t n = sigma.dim();
    const Mat rs = r * sigma;
    const Mat s = spd_sqrt(0.5 * (Mat::identity(n) + transpose(rs) * rs));
    const Mat s_inv = symmetrize(inverse(s));
    const Mat q = s * rs * s_inv;
    out.transformed_hessian = symmetrize(s_inv * out.hessian * s_inv);
    out.anticommutation_residual = max_abs(out.transformed_hessian * q + q * out.transformed_hessian);
    out.orthogonality_residual = max_abs_diff(transpose(q) * q, Mat::identity(n));

    out.transformed_eigenvalues = symmetric_eigendecomposition(out.transformed_hessian).values;
    for (std::size_t k = 0; k < n; ++k)
        out.pairing_residual = std::max(out.pairing_residual,
                                        std::abs(out.transformed_eigenvalues[k] + out.transformed_eigenvalues[n - 1 - k]));

    const std::size_t l = n / 2;
    const auto& sig = out.classification.signature;
    out.balanced = sig.n_pos == l && sig.n_neg == l && sig.n_zero == 0;
    return out;
}

} // namespace homoclinic

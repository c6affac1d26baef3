#include "homoclinic/flow.hpp"

#include "homoclinic/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace homoclinic {

namespace {

constexpr double kInitialStep = 0.05;
constexpr std::size_t kMaxSteps = std::size_t{1} << 22;

Mat evaluate(const CoefficientField& field, double t, std::size_t dim) {
    Mat a = field(t);
    if (a.dim() != dim) throw InvalidArgument("integrate_fundamental: field changed dimension");
    if (!all_finite(a)) {
        std::ostringstream msg;
        msg << "integrate_fundamental: non-finite field value at t = " << t;
        throw InvalidArgument(msg.str());
    }
    return a;
}

Mat rk4_fixed(const CoefficientField& field, double t0, double t1, std::size_t steps, std::size_t dim) {
    const double h = (t1 - t0) / static_cast<double>(steps);
    Mat phi = Mat::identity(dim);
    Mat a_start = evaluate(field, t0, dim);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = t0 + static_cast<double>(i) * h;
        const Mat a_mid = evaluate(field, t + 0.5 * h, dim);
        const Mat a_end = evaluate(field, i + 1 == steps ? t1 : t + h, dim);

        const Mat k1 = a_start * phi;
        const Mat k2 = a_mid * (phi + (0.5 * h) * k1);
        const Mat k3 = a_mid * (phi + (0.5 * h) * k2);
        const Mat k4 = a_end * (phi + h * k3);
        phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        a_start = a_end;
    }
    return phi;
}

} // namespace

Mat integrate_fundamental(const CoefficientField& field, double t0, double t1, double tol) {
    if (!(t0 <= t1)) throw InvalidArgument("integrate_fundamental: requires t0 <= t1");
    if (!(tol > 0.0)) throw InvalidArgument("integrate_fundamental: tolerance must be positive");
    const std::size_t dim = field(t0).dim();
    if (t0 == t1) return Mat::identity(dim);

    const double span = t1 - t0;
    const double budget = tol * std::max(1.0, span);
    std::size_t steps = static_cast<std::size_t>(std::ceil(span / kInitialStep));
    Mat coarse = rk4_fixed(field, t0, t1, steps, dim);
    while (steps < kMaxSteps) {
        steps *= 2;
        Mat fine = rk4_fixed(field, t0, t1, steps, dim);
        // RK4: fine-run error ~ (fine - coarse) / 15
        if (max_abs_diff(fine, coarse) / 15.0 <= budget) return fine;
        coarse = std::move(fine);
    }
    throw ConvergenceError("integrate_fundamental: step-doubling did not reach the tolerance");
}

Vec center_frequencies(const Mat& d_center) {
    if (d_center.dim() % 2 != 0) throw InvalidArgument("center block must have even dimension");
    const std::size_t l = d_center.dim() / 2;
    for (std::size_t i = 0; i < d_center.dim(); ++i)
        for (std::size_t j = 0; j < d_center.dim(); ++j)
            if (i != j && d_center(i, j) != 0.0)
                throw InvalidArgument("center block must be diagonal");
    Vec omega(l);
    for (std::size_t i = 0; i < l; ++i) {
        if (d_center(i, i) != d_center(l + i, l + i))
            throw InvalidArgument("center block must have the form diag(w, w)");
        omega[i] = d_center(i, i);
    }
    return omega;
}

Mat center_linear_flow(const Mat& d_center, double t) {
    Vec angles = center_frequencies(d_center);
    for (double& a : angles) a *= t;
    return symplectic_rotation(angles);
}

ScatteringResult scattering_matrix(const ScatteringProblem& problem, const ScatteringOptions& options) {
    if (!problem.field) throw InvalidArgument("scattering_matrix: missing coefficient field");
    if (!(options.tol > 0.0) || !(options.integrator_tol > 0.0) || !(options.delta_t > 0.0))
        throw InvalidArgument("scattering_matrix: tolerances and step must be positive");
    if (!(problem.support_halfwidth >= 0.0) || !std::isfinite(problem.support_halfwidth))
        throw InvalidArgument("scattering_matrix: support half-width must be finite and non-negative");

    const std::size_t dim = problem.d_center.dim();
    const Mat jd = standard_symplectic_form(dim / 2) * problem.d_center;
    center_frequencies(problem.d_center);
    if (problem.asymptotic_field.dim() != dim ||
        max_abs_diff(problem.asymptotic_field, jd) > 1e-12 * std::max(1.0, max_abs(jd)))
        throw InvalidArgument("scattering_matrix: asymptotic field must equal J D");

    const double t_max = problem.support_halfwidth + 2.0;
    const double dt = options.delta_t;

    ScatteringResult result;
    Mat phi = Mat::identity(dim);  // Phi(T, -T)
    Mat previous = Mat::identity(dim);
    for (int k = 1;; ++k) {
        const double t = k * dt;
        if (t > t_max + 1e-12) break;
        const Mat forward = integrate_fundamental(problem.field, t - dt, t, options.integrator_tol);
        const Mat backward = integrate_fundamental(problem.field, -t, -t + dt, options.integrator_tol);
        phi = forward * phi * backward;

        const Mat psi = center_linear_flow(problem.d_center, -t);
        Mat sigma = psi * phi * psi;
        const double residual = max_abs_diff(sigma, previous);
        result.residual_trace.push_back(residual);

        if (t > problem.support_halfwidth && residual <= options.tol) {
            result.T_used = t;
            result.residual = residual;
            result.symplectic_defect = symplectic_defect(sigma);
            result.sigma = std::move(sigma);
            return result;
        }
        previous = std::move(sigma);
    }

    std::ostringstream msg;
    msg << "scattering_matrix: no convergence by T = " << t_max << "; residual trace:";
    for (double r : result.residual_trace) msg << ' ' << r;
    throw ConvergenceError(msg.str());
}

} // namespace homoclinic

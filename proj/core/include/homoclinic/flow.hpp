#pragma once

// Fundamental solutions of linear time-dependent systems and the scattering
// matrix of the center block.

#include "homoclinic/matkit.hpp"

#include <functional>
#include <vector>

namespace homoclinic {

/// t -> A(t) for the linear system u' = A(t) u.
using CoefficientField = std::function<Mat(double)>;

/// Phi(t1, t0) with Phi(t0, t0) = I, by fixed-step classical RK4 on the
/// matrix equation. The step is halved until two successive runs differ by
/// at most 15 * tol * max(1, t1 - t0) (step-doubling estimate of the fine
/// run's error). Requires t0 <= t1.
Mat integrate_fundamental(const CoefficientField& field, double t0, double t1, double tol);

/// Frequencies w from D = diag(w, w); throws InvalidArgument for any other
/// shape.
Vec center_frequencies(const Mat& d_center);

/// Psi(t) = exp(t J D), the symplectic rotation by t * w.
Mat center_linear_flow(const Mat& d_center, double t);

struct ScatteringProblem {
    CoefficientField field;
    Mat asymptotic_field;         // J D
    double support_halfwidth = 0; // field(t) == asymptotic_field for |t| > this
    Mat d_center;                 // diag(w, w)
};

struct ScatteringOptions {
    double tol = 1e-8;             // on ||sigma(T) - sigma(T - dT)||_max
    double integrator_tol = 1e-10; // per unit time
    double delta_t = 1.0;
};

struct ScatteringResult {
    Mat sigma;
    double T_used = 0.0;
    double residual = 0.0;
    double symplectic_defect = 0.0;
    Vec residual_trace;  // residual at T = dT, 2 dT, ...
};

/// sigma(T) = Psi(-T) Phi(T, -T) Psi(-T) for T = dT, 2 dT, ... until T is past
/// the support and the step-to-step change is below tol. Throws
/// ConvergenceError (with the residual trace) if T exceeds
/// support_halfwidth + 2 first.
ScatteringResult scattering_matrix(const ScatteringProblem& problem, const ScatteringOptions& options = {});

} // namespace homoclinic

#pragma once

// Integrable saddle-center family
//
//   H = sum_i w_i/2 (q_i^2 + p_i^2) + y_1^2/2 - x_1^2/2 + x_1^3/3
//       + sum_{i>=2} a_i/2 (y_i^2 - x_i^2)
//
// with its homoclinic loop x_1 = 3/2 sech^2(t/2), and a perturbation localized
// on |t| < T that acts on the center block as z' = -eps xi(t) J C z in the
// frame co-rotating with the free center flow.
//
// State ordering is (q_1..q_l, x_1..x_h, p_1..p_l, y_1..y_h), so conjugate
// pairs are (i, n + i) with n = l + h and X_H = J grad H.

#include "homoclinic/flow.hpp"
#include "homoclinic/matkit.hpp"

#include <cstddef>

namespace homoclinic {

struct ModelSpec {
    std::size_t l = 1;      // elliptic pairs
    std::size_t n_hyp = 1;  // hyperbolic pairs, the first one carries the loop
    Vec omega{1.0};         // l center frequencies
    Vec alpha;              // n_hyp - 1 extra hyperbolic rates
    double eps = 0.0;
    Mat C = Mat::zeros(2);  // 2l x 2l symmetric
    Vec mu{0.0, 0.0};       // 2l, must vanish for the scattering pipelines
    double T_support = 1.0; // bump support is (-T, T)
    int bump_order = 1;     // xi ~ exp(-1 / (1 - (t/T)^2)^bump_order)
};

/// Throws InvalidArgument describing the first violated constraint.
void validate(const ModelSpec& spec);

/// Unperturbed model with the given frequencies: eps = 0, C = 0, mu = 0.
ModelSpec integrable_spec(std::span<const double> omega, std::size_t n_hyp = 1);

class HamiltonianSystem {
public:
    explicit HamiltonianSystem(const ModelSpec& spec);

    std::size_t dim() const noexcept { return 2 * (l_ + alpha_.size() + 1); }
    std::size_t degrees_of_freedom() const noexcept { return l_ + alpha_.size() + 1; }
    std::size_t center_block_dim() const noexcept { return 2 * l_; }

    double energy(std::span<const double> u) const;
    Vec gradient(std::span<const double> u) const;
    Mat hessian(std::span<const double> u) const;
    /// J grad H
    Vec vector_field(std::span<const double> u) const;

    /// Positions of the center coordinates (q_1..q_l, p_1..p_l) in the state.
    std::vector<std::size_t> center_indices() const;
    /// diag(w, w)
    Mat center_hessian_at_origin() const;
    /// (q, x, p, y) -> (q, x, -p, -y)
    Mat reversor() const;

private:
    std::size_t l_;
    Vec omega_;
    Vec alpha_;
};

HamiltonianSystem build_integrable(const ModelSpec& spec);

/// 3/2 sech^2(t/2)
double homoclinic_profile(double t);
/// d/dt of homoclinic_profile
double homoclinic_profile_rate(double t);

/// Point of the loop at time t: x_1 = g(t), y_1 = g'(t), all else zero.
Vec homoclinic_gamma0(const ModelSpec& spec, double t);
/// Analytic time derivative of homoclinic_gamma0.
Vec homoclinic_velocity(const ModelSpec& spec, double t);

/// Smooth bump supported on (-T, T) with unit integral. The normalization is
/// computed once at construction by adaptive Simpson quadrature.
class Bump {
public:
    Bump(double half_width, int order = 1);

    double operator()(double t) const;
    double half_width() const noexcept { return half_width_; }
    int order() const noexcept { return order_; }
    double normalization() const noexcept { return scale_; }

private:
    double half_width_;
    int order_;
    double scale_;
};

double bump_xi(double t, const ModelSpec& spec);

/// A_c(t) = J D - eps xi(t) Psi(t) J C Psi(-t). The co-rotating variable
/// w = Psi(-t) z obeys w' = -eps xi(t) J C w.
Mat center_variational_field(const ModelSpec& spec, const Bump& bump, double t);
Mat center_variational_field(const ModelSpec& spec, double t);

/// J D^2 h_s(gamma0(t)) on (x_1..x_h, y_1..y_h). The leading pair is
/// [[0, 1], [1 - 2 g(t), 0]], the others [[0, a_i], [a_i, 0]].
Mat hyperbolic_variational_field(const ModelSpec& spec, double t);

/// diag(I_l, -I_l), the reversor restricted to the center block.
Mat center_reversor(std::size_t l);

/// Center-block scattering problem of the (perturbed) model. Requires mu = 0.
ScatteringProblem center_scattering_problem(const ModelSpec& spec);

} // namespace homoclinic

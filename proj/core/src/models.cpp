#include "homoclinic/models.hpp"

#include "homoclinic/errors.hpp"

#include <cmath>
#include <string>

namespace homoclinic {

namespace {

double bump_shape(double s, int order) {
    const double gap = 1.0 - s * s;
    if (gap <= 0.0) return 0.0;
    return std::exp(-1.0 / std::pow(gap, order));
}

double simpson_step(double fa, double fm, double fb, double width) { return width / 6.0 * (fa + 4.0 * fm + fb); }

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_step(fa, flm, fm, m - a);
    const double right = simpson_step(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate_simpson(const F& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson_step(fa, fm, fb, b - a), tol, 50);
}

bool squares_distinct(std::span<const double> omega) {
    double max_sq = 0.0;
    for (double w : omega) max_sq = std::max(max_sq, w * w);
    for (std::size_t i = 0; i < omega.size(); ++i)
        for (std::size_t k = i + 1; k < omega.size(); ++k)
            if (std::abs(omega[i] * omega[i] - omega[k] * omega[k]) <= 1e-9 * max_sq) return false;
    return true;
}

} // namespace

void validate(const ModelSpec& spec) {
    if (spec.l == 0) throw InvalidArgument("model: l must be positive");
    if (spec.n_hyp == 0) throw InvalidArgument("model: n_hyp must be at least 1");
    if (spec.omega.size() != spec.l)
        throw InvalidArgument("model: omega must have l = " + std::to_string(spec.l) + " entries");
    for (double w : spec.omega)
        if (!std::isfinite(w) || w == 0.0) throw InvalidArgument("model: frequencies must be finite and nonzero");
    if (!squares_distinct(spec.omega)) throw InvalidArgument("model: squared frequencies must be pairwise distinct");
    if (spec.alpha.size() != spec.n_hyp - 1)
        throw InvalidArgument("model: alpha must have n_hyp - 1 = " + std::to_string(spec.n_hyp - 1) + " entries");
    for (double a : spec.alpha)
        if (!std::isfinite(a) || a == 0.0) throw InvalidArgument("model: hyperbolic rates must be finite and nonzero");
    if (!std::isfinite(spec.eps)) throw InvalidArgument("model: eps must be finite");
    if (spec.C.dim() != 2 * spec.l) throw InvalidArgument("model: C must be 2l x 2l");
    if (!all_finite(spec.C)) throw InvalidArgument("model: C has non-finite entries");
    if (!is_symmetric(spec.C, 1e-12 * std::max(1.0, max_abs(spec.C))))
        throw InvalidArgument("model: C must be symmetric");
    if (spec.mu.size() != 2 * spec.l) throw InvalidArgument("model: mu must have 2l entries");
    for (double m : spec.mu)
        if (!std::isfinite(m)) throw InvalidArgument("model: mu must be finite");
    if (!(spec.T_support > 0.0) || !std::isfinite(spec.T_support))
        throw InvalidArgument("model: T_support must be positive and finite");
    if (spec.bump_order < 1) throw InvalidArgument("model: bump_order must be at least 1");
}

ModelSpec integrable_spec(std::span<const double> omega, std::size_t n_hyp) {
    ModelSpec spec;
    spec.l = omega.size();
    spec.n_hyp = n_hyp;
    spec.omega.assign(omega.begin(), omega.end());
    spec.alpha.clear();
    for (std::size_t i = 1; i < n_hyp; ++i) spec.alpha.push_back(1.0 + static_cast<double>(i));
    spec.C = Mat::zeros(std::max<std::size_t>(1, 2 * spec.l));
    spec.mu.assign(2 * spec.l, 0.0);
    validate(spec);
    return spec;
}

// ---------------------------------------------------------------------------
// HamiltonianSystem

HamiltonianSystem::HamiltonianSystem(const ModelSpec& spec) : l_(spec.l), omega_(spec.omega), alpha_(spec.alpha) {
    validate(spec);
}

double HamiltonianSystem::energy(std::span<const double> u) const {
    if (u.size() != dim()) throw InvalidArgument("energy: state has wrong dimension");
    const std::size_t n = degrees_of_freedom();
    double h = 0.0;
    for (std::size_t i = 0; i < l_; ++i) h += 0.5 * omega_[i] * (u[i] * u[i] + u[n + i] * u[n + i]);
    const double x = u[l_], y = u[n + l_];
    h += 0.5 * y * y - 0.5 * x * x + x * x * x / 3.0;
    for (std::size_t j = 1; j <= alpha_.size(); ++j) {
        const double xj = u[l_ + j], yj = u[n + l_ + j];
        h += 0.5 * alpha_[j - 1] * (yj * yj - xj * xj);
    }
    return h;
}

Vec HamiltonianSystem::gradient(std::span<const double> u) const {
    if (u.size() != dim()) throw InvalidArgument("gradient: state has wrong dimension");
    const std::size_t n = degrees_of_freedom();
    Vec g(dim(), 0.0);
    for (std::size_t i = 0; i < l_; ++i) {
        g[i] = omega_[i] * u[i];
        g[n + i] = omega_[i] * u[n + i];
    }
    const double x = u[l_];
    g[l_] = -x + x * x;
    g[n + l_] = u[n + l_];
    for (std::size_t j = 1; j <= alpha_.size(); ++j) {
        g[l_ + j] = -alpha_[j - 1] * u[l_ + j];
        g[n + l_ + j] = alpha_[j - 1] * u[n + l_ + j];
    }
    return g;
}

Mat HamiltonianSystem::hessian(std::span<const double> u) const {
    if (u.size() != dim()) throw InvalidArgument("hessian: state has wrong dimension");
    const std::size_t n = degrees_of_freedom();
    Mat h(dim());
    for (std::size_t i = 0; i < l_; ++i) {
        h(i, i) = omega_[i];
        h(n + i, n + i) = omega_[i];
    }
    h(l_, l_) = -1.0 + 2.0 * u[l_];
    h(n + l_, n + l_) = 1.0;
    for (std::size_t j = 1; j <= alpha_.size(); ++j) {
        h(l_ + j, l_ + j) = -alpha_[j - 1];
        h(n + l_ + j, n + l_ + j) = alpha_[j - 1];
    }
    return h;
}

Vec HamiltonianSystem::vector_field(std::span<const double> u) const {
    return standard_symplectic_form(degrees_of_freedom()) * gradient(u);
}

std::vector<std::size_t> HamiltonianSystem::center_indices() const {
    const std::size_t n = degrees_of_freedom();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < l_; ++i) idx.push_back(i);
    for (std::size_t i = 0; i < l_; ++i) idx.push_back(n + i);
    return idx;
}

Mat HamiltonianSystem::center_hessian_at_origin() const {
    const Vec zero(dim(), 0.0);
    const Mat full = hessian(zero);
    const auto idx = center_indices();
    Mat d(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) d(i, j) = full(idx[i], idx[j]);
    return d;
}

Mat HamiltonianSystem::reversor() const {
    const std::size_t n = degrees_of_freedom();
    Mat r = Mat::identity(dim());
    for (std::size_t i = n; i < 2 * n; ++i) r(i, i) = -1.0;
    return r;
}

HamiltonianSystem build_integrable(const ModelSpec& spec) { return HamiltonianSystem(spec); }

// ---------------------------------------------------------------------------
// Homoclinic loop

double homoclinic_profile(double t) {
    const double s = 1.0 / std::cosh(0.5 * t);
    return 1.5 * s * s;
}

double homoclinic_profile_rate(double t) { return -homoclinic_profile(t) * std::tanh(0.5 * t); }

Vec homoclinic_gamma0(const ModelSpec& spec, double t) {
    const std::size_t n = spec.l + spec.n_hyp;
    Vec u(2 * n, 0.0);
    u[spec.l] = homoclinic_profile(t);
    u[n + spec.l] = homoclinic_profile_rate(t);
    return u;
}

Vec homoclinic_velocity(const ModelSpec& spec, double t) {
    const std::size_t n = spec.l + spec.n_hyp;
    const double g = homoclinic_profile(t);
    Vec v(2 * n, 0.0);
    v[spec.l] = homoclinic_profile_rate(t);
    v[n + spec.l] = g - g * g;  // g'' = g - g^2 along the loop
    return v;
}

// ---------------------------------------------------------------------------
// Bump

Bump::Bump(double half_width, int order) : half_width_(half_width), order_(order), scale_(0.0) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidArgument("Bump: half-width must be positive");
    if (order < 1) throw InvalidArgument("Bump: order must be at least 1");
    const double mass = integrate_simpson([order](double s) { return bump_shape(s, order); }, -1.0, 1.0, 1e-15);
    scale_ = 1.0 / (half_width * mass);
}

double Bump::operator()(double t) const {
    if (std::abs(t) >= half_width_) return 0.0;
    return scale_ * bump_shape(t / half_width_, order_);
}

double bump_xi(double t, const ModelSpec& spec) { return Bump(spec.T_support, spec.bump_order)(t); }

// ---------------------------------------------------------------------------
// Variational fields

Mat center_variational_field(const ModelSpec& spec, const Bump& bump, double t) {
    const Mat j = standard_symplectic_form(spec.l);
    Vec diag(spec.omega);
    diag.insert(diag.end(), spec.omega.begin(), spec.omega.end());
    const Mat d = Mat::diagonal(diag);
    Mat a = j * d;
    const double weight = spec.eps * bump(t);
    if (weight == 0.0) return a;
    const Mat psi = center_linear_flow(d, t);
    a -= weight * (psi * j * spec.C * transpose(psi));
    return a;
}

Mat center_variational_field(const ModelSpec& spec, double t) {
    return center_variational_field(spec, Bump(spec.T_support, spec.bump_order), t);
}

Mat hyperbolic_variational_field(const ModelSpec& spec, double t) {
    const std::size_t h = spec.n_hyp;
    Mat a(2 * h);
    a(0, h) = 1.0;
    a(h, 0) = 1.0 - 2.0 * homoclinic_profile(t);
    for (std::size_t j = 1; j < h; ++j) {
        a(j, h + j) = spec.alpha[j - 1];
        a(h + j, j) = spec.alpha[j - 1];
    }
    return a;
}

Mat center_reversor(std::size_t l) {
    if (l == 0) throw InvalidArgument("center_reversor: l must be positive");
    Mat r = Mat::identity(2 * l);
    for (std::size_t i = l; i < 2 * l; ++i) r(i, i) = -1.0;
    return r;
}

ScatteringProblem center_scattering_problem(const ModelSpec& spec) {
    validate(spec);
    for (double m : spec.mu)
        if (m != 0.0) throw PreconditionError("center_scattering_problem: the loop persists only for mu = 0");

    Vec diag(spec.omega);
    diag.insert(diag.end(), spec.omega.begin(), spec.omega.end());
    ScatteringProblem problem;
    problem.d_center = Mat::diagonal(diag);
    problem.asymptotic_field = standard_symplectic_form(spec.l) * problem.d_center;
    const bool perturbed = spec.eps != 0.0 && max_abs(spec.C) != 0.0;
    problem.support_halfwidth = perturbed ? spec.T_support : 0.0;
    problem.field = [spec, bump = Bump(spec.T_support, spec.bump_order)](double t) {
        return center_variational_field(spec, bump, t);
    };
    return problem;
}

} // namespace homoclinic

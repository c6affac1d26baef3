#include "homoclinic/majorize.hpp"

#include "homoclinic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace homoclinic {

namespace {

Vec sorted_descending(std::span<const double> v) {
    Vec out(v.begin(), v.end());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

void require_symmetric_operand(const ChiOperator& op, const Mat& m, const char* what) {
    if (m.dim() != op.dim())
        throw InvalidArgument(std::string(what) + ": expected dimension " + std::to_string(op.dim()) +
                              ", got " + std::to_string(m.dim()));
    if (!is_symmetric(m, 1e-10 * std::max(1.0, max_abs(m))))
        throw InvalidArgument(std::string(what) + ": operand is not symmetric");
}

// Rotates in the (j, k) plane so that the (j, j) entry becomes `target`.
// The (k, k) entry absorbs the difference, keeping the trace.
void pin_diagonal(Mat& m, std::size_t j, std::size_t k, double target) {
    const double x = m(j, j), y = m(k, k), z = m(j, k);
    const double a = 0.5 * (x - y);
    const double b = -z;
    const double radius = std::hypot(a, b);
    const double r = target - 0.5 * (x + y);

    double c = 1.0, s = 0.0;
    if (radius > 0.0) {
        const double two_theta = std::atan2(b, a) + std::acos(std::clamp(r / radius, -1.0, 1.0));
        c = std::cos(0.5 * two_theta);
        s = std::sin(0.5 * two_theta);
    }

    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i) {
        const double mij = m(i, j), mik = m(i, k);
        m(i, j) = c * mij - s * mik;
        m(i, k) = s * mij + c * mik;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double mji = m(j, i), mki = m(k, i);
        m(j, i) = c * mji - s * mki;
        m(k, i) = s * mji + c * mki;
    }
    for (std::size_t i = 0; i < n; ++i) {
        m(i, j) = m(j, i);
        m(i, k) = m(k, i);
    }
    m(j, j) = target;
    m(k, k) = x + y - target;
}

} // namespace

// ---------------------------------------------------------------------------
// Majorization

std::optional<std::size_t> MajorizationWitness::first_violation() const {
    for (std::size_t k = 0; k < partial_sum_gaps.size(); ++k)
        if (partial_sum_gaps[k] < -tol) return k + 1;
    return std::nullopt;
}

MajorizationWitness majorizes(std::span<const double> a, std::span<const double> b, double tol) {
    if (a.size() != b.size())
        throw InvalidArgument("majorizes: length mismatch (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    if (a.empty()) throw InvalidArgument("majorizes: vectors must be non-empty");
    if (!(tol > 0.0)) throw InvalidArgument("majorizes: tolerance must be positive");
    require_finite(a, "majorizes");
    require_finite(b, "majorizes");

    MajorizationWitness w;
    w.a_sorted = sorted_descending(a);
    w.b_sorted = sorted_descending(b);
    w.tol = tol;

    const std::size_t n = a.size();
    double sum_a = 0.0, sum_b = 0.0;
    w.partial_sum_gaps.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        sum_a += w.a_sorted[k];
        sum_b += w.b_sorted[k];
        if (k + 1 < n) w.partial_sum_gaps.push_back(sum_b - sum_a);
    }
    w.total_gap = sum_b - sum_a;
    w.holds = std::abs(w.total_gap) <= tol &&
              std::all_of(w.partial_sum_gaps.begin(), w.partial_sum_gaps.end(),
                          [tol](double g) { return g >= -tol; });
    return w;
}

Vec signature_spectrum(std::size_t l, std::size_t m) {
    if (l == 0) throw InvalidArgument("signature_spectrum: l must be positive");
    if (m < 1 || m > 2 * l - 1)
        throw InvalidArgument("signature_spectrum: m = " + std::to_string(m) + " outside 1.." +
                              std::to_string(2 * l - 1));
    const double two_l = static_cast<double>(2 * l);
    const double md = static_cast<double>(m);
    Vec b(2 * l, 1.0);
    b[0] = two_l - md;
    const double negative = -(two_l - 1.0) / (two_l - md);
    std::fill(b.begin() + static_cast<std::ptrdiff_t>(m), b.end(), negative);
    return b;
}

Vec balanced_diagonal(std::size_t l) {
    if (l == 0) throw InvalidArgument("balanced_diagonal: l must be positive");
    Vec g(2 * l, 1.0);
    std::fill(g.begin() + static_cast<std::ptrdiff_t>(l), g.end(), -1.0);
    return g;
}

Mat mirsky_construct(std::span<const double> diag, std::span<const double> eigenvalues, double tol) {
    const MajorizationWitness w = majorizes(diag, eigenvalues, tol);
    if (!w.holds) {
        if (auto k = w.first_violation())
            throw PreconditionError("mirsky_construct: diagonal is not majorized by the spectrum; partial sum k = " +
                                    std::to_string(*k) + " exceeds by " +
                                    std::to_string(-w.partial_sum_gaps[*k - 1]));
        throw PreconditionError("mirsky_construct: diagonal and spectrum sums differ by " +
                                std::to_string(w.total_gap));
    }

    const std::size_t n = diag.size();
    // Work in coordinates where the target diagonal is descending.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });
    const Vec& target = w.a_sorted;

    Mat m = Mat::diagonal(w.b_sorted);
    double scale = 0.0;
    for (double x : w.b_sorted) scale = std::max(scale, std::abs(x));
    const double eps = 1e-14 * std::max(1.0, scale);

    // Each pass pins at least one more diagonal entry, so n - 1 passes suffice
    // in exact arithmetic.
    for (std::size_t pass = 0; pass < 4 * n; ++pass) {
        std::optional<std::size_t> j;
        for (std::size_t i = n; i-- > 0;)
            if (target[i] < m(i, i) - eps) {
                j = i;
                break;
            }
        if (!j) break;
        std::optional<std::size_t> k;
        for (std::size_t i = *j + 1; i < n; ++i)
            if (target[i] > m(i, i) + eps) {
                k = i;
                break;
            }
        if (!k) break;
        const double delta = std::min(m(*j, *j) - target[*j], target[*k] - m(*k, *k));
        pin_diagonal(m, *j, *k, m(*j, *j) - delta);
    }
    for (std::size_t i = 0; i < n; ++i) m(i, i) = target[i];

    Mat out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(order[r], order[c]) = m(r, c);
    return out;
}

// ---------------------------------------------------------------------------
// chi operator

ChiOperator::ChiOperator(std::span<const double> omega)
    : omega_(omega.begin(), omega.end()), d_(std::max<std::size_t>(1, 2 * omega.size())),
      j_(std::max<std::size_t>(1, 2 * omega.size())) {
    if (omega_.empty()) throw InvalidArgument("ChiOperator: omega must be non-empty");
    double max_sq = 0.0;
    for (double w : omega_) {
        if (!std::isfinite(w) || w == 0.0) throw InvalidArgument("ChiOperator: frequencies must be finite and nonzero");
        max_sq = std::max(max_sq, w * w);
    }
    for (std::size_t i = 0; i < omega_.size(); ++i)
        for (std::size_t k = i + 1; k < omega_.size(); ++k)
            if (std::abs(omega_[i] * omega_[i] - omega_[k] * omega_[k]) <= 1e-9 * max_sq)
                throw InvalidArgument("ChiOperator: squared frequencies must be pairwise distinct (indices " +
                                      std::to_string(i) + ", " + std::to_string(k) + ")");
    const std::size_t l = omega_.size();
    for (std::size_t i = 0; i < l; ++i) {
        d_(i, i) = omega_[i];
        d_(l + i, l + i) = omega_[i];
    }
    j_ = standard_symplectic_form(l);
}

Mat chi(const ChiOperator& op, const Mat& b) {
    require_symmetric_operand(op, b, "chi");
    const Mat& j = op.j();
    const Mat& d = op.d();
    return symmetrize(b * j * d - d * j * b);
}

Mat chi_star(const ChiOperator& op, const Mat& m) {
    require_symmetric_operand(op, m, "chi_star");
    const Mat& j = op.j();
    const Mat& d = op.d();
    return symmetrize(j * d * m - m * d * j);
}

std::vector<Mat> chi_kernel_basis(const ChiOperator& op) {
    std::vector<Mat> basis;
    basis.reserve(op.l());
    for (std::size_t k = 0; k < op.l(); ++k) {
        Mat e(op.dim());
        e(k, k) = 1.0;
        e(op.l() + k, op.l() + k) = 1.0;
        basis.push_back(std::move(e));
    }
    return basis;
}

bool range_membership(const ChiOperator& op, const Mat& m, double tol) {
    if (m.dim() != op.dim()) throw InvalidArgument("range_membership: dimension mismatch");
    for (std::size_t i = 0; i < op.l(); ++i)
        if (std::abs(m(i, i) + m(op.l() + i, op.l() + i)) > tol) return false;
    return true;
}

Mat solve_chi(const ChiOperator& op, const Mat& g) {
    require_symmetric_operand(op, g, "solve_chi");
    if (!range_membership(op, g, 1e-10 * std::max(1.0, max_abs(g))))
        throw PreconditionError("solve_chi: target is outside the range of chi (diagonal pairs do not cancel)");
    const Vec x = min_norm_solve(matricized_chi(op), sym_to_coordinates(g));
    return sym_from_coordinates(op.dim(), x);
}

std::size_t sym_coordinate_count(std::size_t n) { return n * (n + 1) / 2; }

Vec sym_to_coordinates(const Mat& s) {
    const std::size_t n = s.dim();
    Vec c;
    c.reserve(sym_coordinate_count(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) c.push_back(i == j ? s(i, i) : std::sqrt(2.0) * s(i, j));
    return c;
}

Mat sym_from_coordinates(std::size_t n, std::span<const double> coords) {
    if (coords.size() != sym_coordinate_count(n))
        throw InvalidArgument("sym_from_coordinates: expected " + std::to_string(sym_coordinate_count(n)) +
                              " coordinates");
    Mat s(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++k) {
            if (i == j) {
                s(i, i) = coords[k];
            } else {
                s(i, j) = coords[k] / std::sqrt(2.0);
                s(j, i) = s(i, j);
            }
        }
    return s;
}

namespace {

Mat matricize(const ChiOperator& op, const std::function<Mat(const Mat&)>& apply) {
    const std::size_t n = op.dim();
    const std::size_t count = sym_coordinate_count(n);
    Mat a(count);
    Vec unit(count, 0.0);
    for (std::size_t k = 0; k < count; ++k) {
        unit[k] = 1.0;
        a.set_column(k, sym_to_coordinates(apply(sym_from_coordinates(n, unit))));
        unit[k] = 0.0;
    }
    return a;
}

} // namespace

Mat matricized_chi(const ChiOperator& op) {
    return matricize(op, [&](const Mat& b) { return chi(op, b); });
}

Mat matricized_chi_star(const ChiOperator& op) {
    return matricize(op, [&](const Mat& m) { return chi_star(op, m); });
}

std::size_t chi_star_nullity(const ChiOperator& op, double rel_tol) {
    const auto svd = singular_value_decomposition(matricized_chi_star(op));
    const double cutoff = rel_tol * svd.values.front();
    return static_cast<std::size_t>(
        std::count_if(svd.values.begin(), svd.values.end(), [cutoff](double s) { return s <= cutoff; }));
}

} // namespace homoclinic

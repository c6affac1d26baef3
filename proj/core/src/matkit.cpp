#include "homoclinic/matkit.hpp"

#include "homoclinic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace homoclinic {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr int kTaylorOrder = 12;

void require_same_dim(const Mat& a, const Mat& b, const char* what) {
    if (a.dim() != b.dim())
        throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                              std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

double inf_norm(const Mat& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.dim(); ++j) row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

double off_diagonal_norm(const Mat& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

// Sorts eigenpairs (or singular triplets) by descending value.
std::vector<std::size_t> descending_order(const Vec& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
    return order;
}

Mat permute_columns(const Mat& m, const std::vector<std::size_t>& order) {
    Mat out(m.dim());
    for (std::size_t k = 0; k < order.size(); ++k)
        for (std::size_t i = 0; i < m.dim(); ++i) out(i, k) = m(i, order[k]);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Mat

Mat::Mat(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {
    if (dim == 0) throw InvalidArgument("Mat: dimension must be positive");
}

Mat Mat::identity(std::size_t dim) {
    Mat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diagonal(std::span<const double> diag) {
    Mat m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t n = rows.size();
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) throw InvalidArgument("Mat::from_rows: matrix must be square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return from_row_major(n, flat);
}

Mat Mat::from_row_major(std::size_t dim, std::span<const double> entries) {
    if (entries.size() != dim * dim)
        throw InvalidArgument("Mat::from_row_major: expected " + std::to_string(dim * dim) +
                              " entries, got " + std::to_string(entries.size()));
    Mat m(dim);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!std::isfinite(entries[k])) throw InvalidArgument("Mat: non-finite entry");
        m.a_[k] = entries[k];
    }
    return m;
}

Vec Mat::diag() const {
    Vec d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i);
    return d;
}

Vec Mat::column(std::size_t j) const {
    Vec c(dim_);
    for (std::size_t i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
    return c;
}

void Mat::set_column(std::size_t j, std::span<const double> v) {
    for (std::size_t i = 0; i < dim_; ++i) (*this)(i, j) = v[i];
}

Mat& Mat::operator+=(const Mat& other) {
    require_same_dim(*this, other, "operator+");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
    return *this;
}

Mat& Mat::operator-=(const Mat& other) {
    require_same_dim(*this, other, "operator-");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator-(Mat a) { return a *= -1.0; }
Mat operator*(double s, Mat a) { return a *= s; }
Mat operator*(Mat a, double s) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
    require_same_dim(a, b, "operator*");
    const std::size_t n = a.dim();
    Mat c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vec operator*(const Mat& a, std::span<const double> x) {
    if (x.size() != a.dim()) throw InvalidArgument("matrix-vector product: dimension mismatch");
    Vec y(a.dim(), 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

Mat transpose(const Mat& a) {
    Mat t(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) t(j, i) = a(i, j);
    return t;
}

Mat symmetrize(const Mat& a) {
    Mat s(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
}

double trace(const Mat& a) {
    double t = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

double trace_inner(const Mat& x, const Mat& y) {
    require_same_dim(x, y, "trace_inner");
    double t = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t k = 0; k < x.dim(); ++k) t += x(i, k) * y(k, i);
    return t;
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

double frobenius_norm(const Mat& a) {
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

bool all_finite(const Mat& a) {
    return std::all_of(a.data().begin(), a.data().end(), [](double x) { return std::isfinite(x); });
}

bool is_symmetric(const Mat& a, double tol) {
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > tol) return false;
    return true;
}

bool is_orthogonal(const Mat& a, double tol) {
    return max_abs_diff(transpose(a) * a, Mat::identity(a.dim())) <= tol;
}

// ---------------------------------------------------------------------------
// Symplectic structure

Mat standard_symplectic_form(std::size_t n) {
    if (n == 0) throw InvalidArgument("standard_symplectic_form: n must be positive");
    Mat j(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return j;
}

double symplectic_defect(const Mat& m) {
    if (m.dim() % 2 != 0)
        throw InvalidArgument("symplectic check: dimension " + std::to_string(m.dim()) + " is odd");
    const Mat j = standard_symplectic_form(m.dim() / 2);
    return max_abs_diff(transpose(m) * j * m, j);
}

bool is_symplectic(const Mat& m, double tol) { return symplectic_defect(m) <= tol; }

Mat symplectic_rotation(std::span<const double> theta) {
    const std::size_t n = theta.size();
    Mat r(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(theta[i]);
        const double s = std::sin(theta[i]);
        r(i, i) = c;
        r(i, n + i) = s;
        r(n + i, i) = -s;
        r(n + i, n + i) = c;
    }
    return r;
}

Mat matrix_exponential(const Mat& m) {
    if (!all_finite(m)) throw InvalidArgument("matrix_exponential: non-finite entry");
    const std::size_t n = m.dim();

    int squarings = 0;
    double norm = inf_norm(m);
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    const Mat a = std::ldexp(1.0, -squarings) * m;

    // Horner form of sum_{k<=12} A^k / k!
    Mat result = Mat::identity(n);
    for (int k = kTaylorOrder; k >= 1; --k) {
        result = (1.0 / k) * (a * result);
        for (std::size_t i = 0; i < n; ++i) result(i, i) += 1.0;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

// ---------------------------------------------------------------------------
// Symmetric eigenproblem

EigenDecomposition symmetric_eigendecomposition(const Mat& s) {
    if (!all_finite(s)) throw InvalidArgument("symmetric_eigendecomposition: non-finite entry");
    if (!is_symmetric(s, 1e-10 * std::max(1.0, max_abs(s))))
        throw InvalidArgument("symmetric_eigendecomposition: matrix is not symmetric");

    const std::size_t n = s.dim();
    Mat a = symmetrize(s);
    Mat v = Mat::identity(n);
    const double threshold = 1e-12 * frobenius_norm(a);

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double sn = t * c;

                // A <- A P, then A <- P^T A, with P the (p,q) plane rotation.
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    const Vec raw = a.diag();
    const auto order = descending_order(raw);
    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = raw[order[k]];
    out.vectors = permute_columns(v, order);
    return out;
}

double default_inertia_tol(const Mat& s) { return 1e-7 * std::max(1.0, max_abs(s)); }

SignatureReport inertia(const Mat& s, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("inertia: tolerance must be positive");
    SignatureReport report;
    report.eigenvalues = symmetric_eigendecomposition(s).values;
    report.tol = tol;
    for (double lambda : report.eigenvalues) {
        if (lambda > tol)
            ++report.n_pos;
        else if (lambda < -tol)
            ++report.n_neg;
        else
            ++report.n_zero;
    }
    return report;
}

SignatureReport inertia(const Mat& s) { return inertia(s, default_inertia_tol(s)); }

Mat spd_sqrt(const Mat& s) {
    const EigenDecomposition eig = symmetric_eigendecomposition(s);
    const double floor = 1e-12 * std::max(1.0, max_abs(s));
    if (eig.values.back() <= floor)
        throw NotPositiveDefinite("spd_sqrt: smallest eigenvalue " + std::to_string(eig.values.back()) +
                                  " is not positive");
    const std::size_t n = s.dim();
    Mat root(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = std::sqrt(eig.values[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                root(i, j) += r * eig.vectors(i, k) * eig.vectors(j, k);
    }
    return symmetrize(root);
}

// ---------------------------------------------------------------------------
// SVD and least squares

SingularValueDecomposition singular_value_decomposition(const Mat& a) {
    if (!all_finite(a)) throw InvalidArgument("singular_value_decomposition: non-finite entry");
    const std::size_t n = a.dim();
    Mat u = a;
    Mat v = Mat::identity(n);

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += u(i, p) * u(i, p);
                    beta += u(i, q) * u(i, q);
                    gamma += u(i, p) * u(i, q);
                }
                if (alpha == 0.0 || beta == 0.0) continue;
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(zeta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double sn = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double uip = u(i, p), uiq = u(i, q);
                    u(i, p) = c * uip - sn * uiq;
                    u(i, q) = sn * uip + c * uiq;
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - sn * viq;
                    v(i, q) = sn * vip + c * viq;
                }
            }
        }
        if (!rotated) break;
    }

    Vec sigma(n);
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += u(i, k) * u(i, k);
        sigma[k] = std::sqrt(norm);
        if (sigma[k] > 0.0)
            for (std::size_t i = 0; i < n; ++i) u(i, k) /= sigma[k];
    }

    const auto order = descending_order(sigma);
    SingularValueDecomposition out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = sigma[order[k]];
    out.u = permute_columns(u, order);
    out.v = permute_columns(v, order);
    return out;
}

Mat inverse(const Mat& a) {
    if (!all_finite(a)) throw InvalidArgument("inverse: non-finite entry");
    const std::size_t n = a.dim();
    Mat work = a;
    Mat inv = Mat::identity(n);
    const double floor = 1e-14 * max_abs(a);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
        if (!(std::abs(work(pivot, col)) > floor)) throw PreconditionError("inverse: matrix is singular");
        if (pivot != col)
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(work(pivot, k), work(col, k));
                std::swap(inv(pivot, k), inv(col, k));
            }
        const double p = work(col, col);
        for (std::size_t k = 0; k < n; ++k) {
            work(col, k) /= p;
            inv(col, k) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = work(r, col);
            if (f == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                work(r, k) -= f * work(col, k);
                inv(r, k) -= f * inv(col, k);
            }
        }
    }
    return inv;
}

Vec min_norm_solve(const Mat& a, std::span<const double> b, double rel_tol) {
    if (b.size() != a.dim()) throw InvalidArgument("min_norm_solve: dimension mismatch");
    const SingularValueDecomposition svd = singular_value_decomposition(a);
    const double cutoff = rel_tol * svd.values.front();
    Vec x(a.dim(), 0.0);
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (!(svd.values[k] > cutoff)) break;
        const double coeff = dot(svd.u.column(k), b) / svd.values[k];
        for (std::size_t i = 0; i < a.dim(); ++i) x[i] += coeff * svd.v(i, k);
    }
    return x;
}

} // namespace homoclinic

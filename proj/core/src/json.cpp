#include "homoclinic/json.hpp"

#include "homoclinic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace homoclinic {

namespace {

double finite_number(const Json& v, const char* what) {
    if (!v.is_number()) throw InvalidArgument(std::string(what) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite value");
    return x;
}

Vec number_array(const Json& v, const char* what) {
    if (!v.is_array()) throw InvalidArgument(std::string(what) + ": expected an array");
    Vec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(finite_number(x, what));
    return out;
}

std::size_t count(const Json& v, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw InvalidArgument(std::string(what) + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

Mat square_from_flat(const Vec& flat, const char* what) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (n == 0 || n * n != flat.size())
        throw InvalidArgument(std::string(what) + ": entry count is not a positive square");
    return Mat::from_row_major(n, flat);
}

} // namespace

void to_json(Json& j, const Mat& m) {
    j = Json{{"dim", m.dim()}, {"data", Vec(m.data().begin(), m.data().end())}};
}

void from_json(const Json& j, Mat& m) {
    if (j.is_object()) {
        if (!j.contains("dim") || !j.contains("data")) throw InvalidArgument("matrix: needs \"dim\" and \"data\"");
        const std::size_t n = count(j.at("dim"), "matrix dim");
        const Vec flat = number_array(j.at("data"), "matrix data");
        if (n == 0 || flat.size() != n * n) throw InvalidArgument("matrix: data length does not match dim");
        m = Mat::from_row_major(n, flat);
        return;
    }
    if (!j.is_array() || j.empty()) throw InvalidArgument("matrix: expected an object or a non-empty array");
    if (j.front().is_array()) {
        const std::size_t n = j.size();
        Vec flat;
        flat.reserve(n * n);
        for (const auto& row : j) {
            const Vec r = number_array(row, "matrix row");
            if (r.size() != n) throw InvalidArgument("matrix: rows must form a square");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        m = Mat::from_row_major(n, flat);
        return;
    }
    m = square_from_flat(number_array(j, "matrix"), "matrix");
}

void to_json(Json& j, const ModelSpec& spec) {
    j = Json{{"l", spec.l},
             {"n_hyp", spec.n_hyp},
             {"omega", spec.omega},
             {"alpha", spec.alpha},
             {"eps", spec.eps},
             {"C", Vec(spec.C.data().begin(), spec.C.data().end())},
             {"mu", spec.mu},
             {"T_support", spec.T_support},
             {"bump_order", spec.bump_order}};
}

void from_json(const Json& j, ModelSpec& spec) {
    if (!j.is_object()) throw InvalidArgument("spec: expected an object");
    if (!j.contains("l") || !j.contains("omega")) throw InvalidArgument("spec: \"l\" and \"omega\" are required");
    ModelSpec s;
    s.l = count(j.at("l"), "spec.l");
    s.omega = number_array(j.at("omega"), "spec.omega");
    if (j.contains("n_hyp")) s.n_hyp = count(j.at("n_hyp"), "spec.n_hyp");
    if (j.contains("alpha")) s.alpha = number_array(j.at("alpha"), "spec.alpha");
    else if (s.n_hyp > 1) throw InvalidArgument("spec: \"alpha\" is required when n_hyp > 1");
    if (j.contains("eps")) s.eps = finite_number(j.at("eps"), "spec.eps");
    s.C = Mat::zeros(2 * std::max<std::size_t>(s.l, 1));
    if (j.contains("C")) {
        const Json& c = j.at("C");
        s.C = (c.is_array() && !c.empty() && !c.front().is_array()) ? square_from_flat(number_array(c, "spec.C"), "spec.C")
                                                                    : c.get<Mat>();
    }
    s.mu = Vec(2 * s.l, 0.0);
    if (j.contains("mu")) s.mu = number_array(j.at("mu"), "spec.mu");
    if (j.contains("T_support")) s.T_support = finite_number(j.at("T_support"), "spec.T_support");
    if (j.contains("bump_order")) {
        const Json& b = j.at("bump_order");
        if (!b.is_number_integer()) throw InvalidArgument("spec.bump_order: expected an integer");
        s.bump_order = b.get<int>();
    }
    validate(s);
    spec = std::move(s);
}

void to_json(Json& j, const SignatureReport& r) {
    j = Json{{"n_pos", r.n_pos}, {"n_neg", r.n_neg}, {"n_zero", r.n_zero}, {"eigenvalues", r.eigenvalues}, {"tol", r.tol}};
}

void to_json(Json& j, const HessianClassification& c) {
    to_json(j, c.signature);
    j["degenerate"] = c.degenerate;
}

void to_json(Json& j, const ScatteringResult& r) {
    j = Json{{"sigma", r.sigma},
             {"T_used", r.T_used},
             {"residual", r.residual},
             {"symplectic_defect", r.symplectic_defect},
             {"residual_trace", r.residual_trace}};
}

void to_json(Json& j, const MajorizationWitness& w) {
    j = Json{{"a_sorted", w.a_sorted},
             {"b_sorted", w.b_sorted},
             {"partial_sum_gaps", w.partial_sum_gaps},
             {"total_gap", w.total_gap},
             {"holds", w.holds},
             {"tol", w.tol}};
    if (const auto k = w.first_violation()) j["first_violation"] = *k;
}

void to_json(Json& j, const IndefinitenessSummary& s) {
    j = Json{{"l", s.l},
             {"trials", s.trials},
             {"seed", s.seed},
             {"tol", s.tol},
             {"positive_definite", s.positive_definite},
             {"negative_definite", s.negative_definite},
             {"degenerate", s.degenerate},
             {"largest_min_eigenvalue", s.largest_min_eigenvalue},
             {"smallest_max_eigenvalue", s.smallest_max_eigenvalue}};
}

void to_json(Json& j, const RealizationReport& r) {
    j = Json{{"l", r.l},
             {"m", r.m},
             {"b", r.b},
             {"G", r.G},
             {"B", r.B},
             {"eps_requested", r.eps_requested},
             {"eps_used", r.eps_used},
             {"halvings", r.halvings},
             {"sigma", r.sigma},
             {"hessian", r.hessian},
             {"achieved", r.achieved},
             {"first_order_gap", r.first_order_gap},
             {"first_order_constant", r.first_order_constant}};
}

void to_json(Json& j, const ReversibilityReport& r) {
    j = Json{{"residual", r.residual}, {"pass", r.pass}, {"tol", r.tol}};
}

void to_json(Json& j, const ReversibleSignatureReport& r) {
    j = Json{{"signature", r.classification},
             {"hessian", r.hessian},
             {"transformed_hessian", r.transformed_hessian},
             {"transformed_eigenvalues", r.transformed_eigenvalues},
             {"reversibility_residual", r.reversibility_residual},
             {"anticommutation_residual", r.anticommutation_residual},
             {"orthogonality_residual", r.orthogonality_residual},
             {"pairing_residual", r.pairing_residual},
             {"balanced", r.balanced}};
}

} // namespace homoclinic

#include "cli.hpp"

#include "homoclinic/classify.hpp"
#include "homoclinic/errors.hpp"
#include "homoclinic/flow.hpp"
#include "homoclinic/json.hpp"
#include "homoclinic/majorize.hpp"
#include "homoclinic/models.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace homoclinic::cli {

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

Mat center_d(const Vec& omega) {
    Vec d(omega);
    d.insert(d.end(), omega.begin(), omega.end());
    return Mat::diagonal(d);
}

void require_omega(std::size_t l, const Vec& omega) {
    if (omega.size() != l)
        throw InvalidArgument("--omega has " + std::to_string(omega.size()) + " entries, expected l = " +
                              std::to_string(l));
}

void merge(Json& into, const Json& fields) {
    for (const auto& [key, value] : fields.items()) into[key] = value;
}

/// Flat payload: command, timestamp, then the command's own fields.
Json payload(const std::string& command, const Json& body) {
    Json j{{"command", command}, {"timestamp", utc_timestamp()}};
    merge(j, body);
    return j;
}

struct Options {
    std::string out_path;

    std::string spec_path;
    std::string sigma_path;
    double tol = 1e-8;
    double integrator_tol = 1e-10;
    std::optional<double> class_tol;

    std::size_t l = 0;
    std::size_t m = 0;
    Vec omega;
    double eps = 1e-2;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;

    Vec diag, eigs, a, b;
};

// Each command returns its body and whether its asserted invariants held.
struct Outcome {
    Json body;
    bool ok = true;
};

Outcome cmd_scatter(const Options& o) {
    const ModelSpec spec = read_json_file(o.spec_path).get<ModelSpec>();
    const ScatteringResult r =
        scattering_matrix(center_scattering_problem(spec), {.tol = o.tol, .integrator_tol = o.integrator_tol});
    Json body{{"spec", spec}};
    merge(body, Json(r));
    const Mat expected = matrix_exponential(-spec.eps * (standard_symplectic_form(spec.l) * spec.C));
    body["law_residual"] = max_abs_diff(r.sigma, expected);
    const bool ok = is_symplectic(r.sigma, 100.0 * std::max(o.integrator_tol, 1e-12) * std::max(1.0, r.T_used));
    body["symplectic_ok"] = ok;
    return {body, ok};
}

Outcome cmd_classify(const Options& o) {
    const Mat sigma = read_json_file(o.sigma_path).get<Mat>();
    const Mat d = center_d(o.omega);
    const Mat h = hessian_from_scattering(sigma, d);
    const HessianClassification c = o.class_tol ? classify_hessian(h, *o.class_tol) : classify_hessian(h);
    Json body{{"omega", o.omega}, {"hessian", h}, {"signature", c}};
    return {body, true};
}

Outcome cmd_realize(const Options& o) {
    require_omega(o.l, o.omega);
    if (o.m < 1 || o.m > 2 * o.l - 1) throw InvalidArgument("--m must lie in 1..2l-1");
    const RealizationReport r = realize_signature(o.l, o.m, o.omega, o.eps);
    Json body = r;
    body["omega"] = o.omega;
    body["target_met"] = r.target_met();
    body["first_order_bound_ok"] = r.first_order_gap <= r.first_order_constant * r.eps_used;
    return {body, r.target_met()};
}

Outcome cmd_indefinite(const Options& o) {
    require_omega(o.l, o.omega);
    const double tol = o.class_tol.value_or(1e-9);
    const IndefinitenessSummary s = indefiniteness_trial(center_d(o.omega), o.trials, o.seed, tol);
    Json body = s;
    body["omega"] = o.omega;
    return {body, s.positive_definite == 0 && s.negative_definite == 0};
}

Outcome cmd_reversible(const Options& o) {
    const ModelSpec spec = read_json_file(o.spec_path).get<ModelSpec>();
    const ScatteringResult sr =
        scattering_matrix(center_scattering_problem(spec), {.tol = o.tol, .integrator_tol = o.integrator_tol});
    const Mat r = center_reversor(spec.l);
    const ReversibilityReport rev = check_reversibility(sr.sigma, r);
    Json body{{"spec", spec}, {"sigma", sr.sigma}, {"reversibility", rev}};
    if (!rev.pass) return {body, false};

    const Mat d = center_d(spec.omega);
    const double tol = o.class_tol.value_or(default_inertia_tol(hessian_from_scattering(sr.sigma, d)));
    const ReversibleSignatureReport rep = reversible_signature(sr.sigma, r, d, tol);
    merge(body, Json(rep));
    const bool ok = rep.classification.degenerate || (rep.balanced && rep.pairing_residual <= 1e-7);
    return {body, ok};
}

Outcome cmd_mirsky(const Options& o) {
    const Mat g = mirsky_construct(o.diag, o.eigs);
    Vec target(o.eigs);
    std::sort(target.begin(), target.end(), std::greater<>());
    const Vec got = symmetric_eigendecomposition(g).values;
    double diag_err = 0.0, eig_err = 0.0;
    for (std::size_t i = 0; i < o.diag.size(); ++i) {
        diag_err = std::max(diag_err, std::abs(g(i, i) - o.diag[i]));
        eig_err = std::max(eig_err, std::abs(got[i] - target[i]));
    }
    Json body{{"diag", o.diag}, {"eigs", o.eigs}, {"matrix", g}, {"diagonal_error", diag_err},
              {"eigenvalue_error", eig_err}};
    return {body, diag_err <= 1e-10 && eig_err <= 1e-8};
}

Outcome cmd_majorize(const Options& o) {
    return {Json(majorizes(o.a, o.b)), true};
}

Outcome cmd_demo_integrable(const Options& o) {
    if (o.l == 0) throw InvalidArgument("--l must be positive");
    Vec omega = o.omega;
    if (omega.empty())
        for (std::size_t i = 1; i <= o.l; ++i) omega.push_back(static_cast<double>(i));
    require_omega(o.l, omega);
    const ModelSpec spec = integrable_spec(omega);
    const ScatteringResult r =
        scattering_matrix(center_scattering_problem(spec), {.tol = o.tol, .integrator_tol = o.integrator_tol});
    const double dist = max_abs_diff(r.sigma, Mat::identity(2 * o.l));
    Json body{{"spec", spec}};
    merge(body, Json(r));
    body["identity_residual"] = dist;
    body["identity_tol"] = 1e-8;
    return {body, dist <= 1e-8};
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << Json{{"error", message}, {"kind", kind}}.dump() << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scattering matrices and reduced Hessians of homoclinic loops"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--out", o.out_path, "Write the JSON report to this file");

    auto positive = CLI::PositiveNumber;

    auto* scatter = app.add_subcommand("scatter", "Scattering matrix of a model");
    scatter->add_option("--spec", o.spec_path, "ModelSpec JSON file")->required()->check(CLI::ExistingFile);
    scatter->add_option("--tol", o.tol, "Convergence tolerance on sigma")->check(positive);
    scatter->add_option("--integrator-tol", o.integrator_tol, "RK4 tolerance per unit time")->check(positive);

    auto* classify = app.add_subcommand("classify", "Hessian and signature of a scattering matrix");
    classify->add_option("--sigma", o.sigma_path, "Matrix JSON file")->required()->check(CLI::ExistingFile);
    classify->add_option("--omega", o.omega, "Center frequencies")->required()->delimiter(',');
    classify->add_option("--tol", o.class_tol, "Inertia tolerance")->check(positive);

    auto* realize = app.add_subcommand("realize", "Realize the signature (m, 2l - m)");
    realize->add_option("--l", o.l)->required()->check(CLI::Range(1, 40));
    realize->add_option("--m", o.m)->required();
    realize->add_option("--omega", o.omega)->required()->delimiter(',');
    realize->add_option("--eps", o.eps)->check(positive);

    auto* indefinite = app.add_subcommand("indefinite", "Random symplectic ensemble, counts definite Hessians");
    indefinite->add_option("--l", o.l)->required()->check(CLI::Range(1, 40));
    indefinite->add_option("--omega", o.omega)->required()->delimiter(',');
    indefinite->add_option("--trials", o.trials)->check(CLI::Range(1, 100000000));
    indefinite->add_option("--seed", o.seed)->required();
    indefinite->add_option("--tol", o.class_tol)->check(positive);

    auto* reversible = app.add_subcommand("reversible", "Reversibility and (l, l) signature of a model");
    reversible->add_option("--spec", o.spec_path)->required()->check(CLI::ExistingFile);
    reversible->add_option("--tol", o.class_tol, "Inertia tolerance")->check(positive);
    reversible->add_option("--integrator-tol", o.integrator_tol)->check(positive);

    auto* mirsky = app.add_subcommand("mirsky", "Symmetric matrix with given diagonal and spectrum");
    mirsky->add_option("--diag", o.diag)->required()->delimiter(',');
    mirsky->add_option("--eigs", o.eigs)->required()->delimiter(',');

    auto* majorize = app.add_subcommand("majorize", "Test a < b");
    majorize->add_option("--a", o.a)->required()->delimiter(',');
    majorize->add_option("--b", o.b)->required()->delimiter(',');

    auto* demo = app.add_subcommand("demo-integrable", "Unperturbed model, asserts sigma = I");
    demo->add_option("--l", o.l)->required()->check(CLI::Range(1, 40));
    demo->add_option("--omega", o.omega, "Defaults to 1, 2, ..., l")->delimiter(',');

    const std::vector<std::pair<CLI::App*, std::function<Outcome(const Options&)>>> commands{
        {scatter, cmd_scatter},       {classify, cmd_classify}, {realize, cmd_realize},
        {indefinite, cmd_indefinite}, {reversible, cmd_reversible}, {mirsky, cmd_mirsky},
        {majorize, cmd_majorize},     {demo, cmd_demo_integrable},
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        print_error(err, "invalid_input", e.what());
        return kInvalidInput;
    }

    for (const auto& [sub, fn] : commands) {
        if (!sub->parsed()) continue;
        try {
            const Outcome result = fn(o);
            const std::string text = payload(sub->get_name(), result.body).dump(2) + "\n";
            if (o.out_path.empty()) {
                out << text;
            } else {
                std::ofstream file(o.out_path);
                if (!file) throw InvalidArgument("cannot write " + o.out_path);
                file << text;
            }
            if (!result.ok) {
                print_error(err, "assertion_failed", sub->get_name() + ": asserted invariant does not hold");
                return kAssertionFailed;
            }
            return kOk;
        } catch (const ConvergenceError& e) {
            print_error(err, "convergence", e.what());
            return kAssertionFailed;
        } catch (const nlohmann::json::exception& e) {
            print_error(err, "invalid_input", e.what());
            return kInvalidInput;
        } catch (const std::invalid_argument& e) {
            print_error(err, "invalid_input", e.what());
            return kInvalidInput;
        } catch (const std::domain_error& e) {
            print_error(err, "precondition", e.what());
            return kInvalidInput;
        }
    }
    print_error(err, "invalid_input", "no subcommand");
    return kInvalidInput;
}

} // namespace homoclinic::cli

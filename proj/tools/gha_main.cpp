// Command-line front end: theorem verification suites, norm evaluation,
// fractional-operator application, kernel evaluation, and reference tables.
//
// Exit codes: 0 all checks pass, 1 a verification check failed, 2 usage or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gha/expansion_io.hpp"
#include "gha/fractional.hpp"
#include "gha/spaces.hpp"
#include "gha/verify.hpp"

namespace {

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty vector argument");
    return out;
}

gha::LpSpec parse_p(const std::string& text) {
    if (text == "inf" || text == "INF") return gha::LpSpec::inf();
    return gha::LpSpec::finite(std::stod(text));
}

double parse_q(const std::string& text) {
    if (text == "inf" || text == "INF") return gha::kQInf;
    const double q = std::stod(text);
    if (!(q >= 1.0)) throw std::invalid_argument("q must be >= 1 or inf");
    return q;
}

int run_verify(const std::string& suite, std::uint64_t seed, double tol_scale,
               const std::string& report_path, int max_degree, int grid_points) {
    gha::SuiteConfig cfg;
    cfg.suites = {suite};
    cfg.seed = seed;
    cfg.tol_scale = tol_scale;
    cfg.max_degree = max_degree;
    cfg.grid_points = grid_points;
    const auto reports = gha::run_suite(cfg);
    for (const auto& rep : reports) {
        const char* status = rep.passed() ? "pass" : "FAIL";
        std::printf("[%s] %-18s (tol %.1e, %lld ms)\n", status, rep.check_id.c_str(),
                    rep.tolerance, static_cast<long long>(rep.runtime_ms));
        if (!rep.passed()) {
            for (const auto& [label, value] : rep.observed)
                if (label.rfind("VIOLATION", 0) == 0)
                    std::printf("       %s = %.6e\n", label.c_str(), value);
        }
    }
    int n_pass = 0;
    for (const auto& rep : reports)
        if (rep.passed()) ++n_pass;
    std::printf("%d/%zu checks passed\n", n_pass, reports.size());
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot write report: " + report_path);
        out << gha::report_to_json(reports, cfg).dump(2) << "\n";
    }
    return gha::all_passed(reports) ? 0 : 1;
}

int run_norm(const std::string& space, double alpha, const std::string& p_text,
             const std::string& q_text, int k_override, const std::string& input,
             const std::string& output, int grid_points) {
    const auto f = gha::read_expansion(input);
    const auto grid = gha::gauss_hermite_grid(grid_points, f.dim());
    const auto p = parse_p(p_text);

    nlohmann::ordered_json doc;
    doc["space"] = space;
    doc["alpha"] = alpha;
    doc["p"] = p.is_inf ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(p.p);
    doc["grid_points"] = grid_points;
    doc["dim"] = f.dim();

    if (space == "lp") {
        doc["value"] = gha::lp_norm(f, p, grid);
        doc["err"] = 0.0;
    } else if (space == "sobolev") {
        doc["value"] = gha::sobolev_norm(f, alpha, p, grid);
        doc["err"] = 0.0;
    } else {
        const double q = parse_q(q_text);
        const int k = k_override > 0 ? k_override : gha::choose_k(alpha);
        doc["q"] = std::isinf(q) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(q);
        doc["k"] = k;
        if (space == "besov") {
            const auto prm = gha::SpaceParams::with_k(alpha, p, q, k);
            if (std::isinf(q)) {
                doc["value"] = gha::besov_infty_norm(f, prm, grid);
                doc["err"] = 0.0;
                doc["note"] = "q=inf constant approximated on a refined t-grid";
            } else {
                const auto r = gha::besov_norm_certified(f, prm, grid);
                doc["value"] = r.value;
                doc["err"] = r.err;
            }
        } else if (space == "triebel") {
            const auto prm = gha::SpaceParams::with_k(alpha, p, q, k);
            const auto r = gha::triebel_norm_certified(f, prm, grid);
            doc["value"] = r.value;
            doc["err"] = r.err;
        } else {
            throw std::invalid_argument("unknown space: " + space);
        }
    }

    if (output.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot write: " + output);
        out << doc.dump(2) << "\n";
    }
    return 0;
}

int run_apply(const std::string& op, double alpha, const std::string& input,
              const std::string& output) {
    const auto f = gha::read_expansion(input);
    gha::HermiteExpansion g(f.dim());
    if (op == "riesz") g = gha::riesz_potential(f, alpha);
    else if (op == "dgamma") g = gha::fractional_derivative(f, alpha);
    else if (op == "bessel") g = gha::bessel_potential(f, alpha);
    else throw std::invalid_argument("unknown op: " + op);
    gha::write_expansion(g, output);
    return 0;
}

int run_kernel(double t, const std::string& x_text, const std::string& y_text) {
    const auto x = parse_vector(x_text);
    const auto y = parse_vector(y_text);
    if (x.size() != y.size()) throw std::invalid_argument("x and y must have equal dimension");
    const auto r = gha::poisson_kernel_certified(t, x, y);
    nlohmann::ordered_json doc;
    doc["t"] = t;
    doc["x"] = x;
    doc["y"] = y;
    doc["value"] = r.value;
    doc["err"] = r.err;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int run_table(const std::string& kind, int beta_max, const std::string& alphas,
              const std::string& ps, const std::string& qs, int k_max, const std::string& ts,
              const std::string& format, int grid_points) {
    const bool as_json = format == "json";
    if (!as_json && format != "csv") throw std::invalid_argument("format must be csv or json");
    if (kind == "norms") {
        gha::NormTableSpec spec;
        spec.betas.clear();
        for (int b = 1; b <= beta_max; ++b) spec.betas.push_back(b);
        spec.alphas = parse_vector(alphas);
        spec.ps = parse_vector(ps);
        spec.qs = parse_vector(qs);
        for (double p : spec.ps) (void)gha::LpSpec::finite(p);  // validates p > 1
        spec.grid_points = grid_points;
        spec.as_json = as_json;
        std::cout << gha::cmd_table_norms(spec);
        return 0;
    }
    if (kind == "stable-moments") {
        gha::StableTableSpec spec;
        spec.k_max = k_max;
        spec.ts = parse_vector(ts);
        spec.as_json = as_json;
        std::cout << gha::cmd_table_stable_moments(spec);
        return 0;
    }
    throw std::invalid_argument("unknown table kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian harmonic analysis on Hermite expansions"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the lemma/theorem verification suites");
    std::string suite = "all";
    std::uint64_t seed = gha::SuiteConfig{}.seed;
    double tol_scale = 1.0;
    std::string report_path;
    int max_degree = 5;
    int grid_points = 16;
    verify->add_option("--suite", suite, "all|stable|semigroup|lemmas|spaces|theorems")
        ->check(CLI::IsMember({"all", "stable", "semigroup", "lemmas", "spaces", "theorems"}));
    verify->add_option("--seed", seed, "seed for the fuzzed expansions");
    verify->add_option("--tol-scale", tol_scale, "multiplier applied to every tolerance");
    verify->add_option("--report", report_path, "write the JSON report here");
    verify->add_option("--max-degree", max_degree, "degree of the fuzzed expansions");
    verify->add_option("--grid-points", grid_points, "Gauss-Hermite points per axis");

    // norm
    auto* norm = app.add_subcommand("norm", "evaluate a space norm of an expansion file");
    std::string space, p_text = "2", q_text = "2", input, output;
    double alpha = 0.0;
    int k_override = 0;
    int norm_grid = 16;
    norm->add_option("--space", space, "besov|triebel|sobolev|lp")
        ->required()
        ->check(CLI::IsMember({"besov", "triebel", "sobolev", "lp"}));
    norm->add_option("--alpha", alpha, "smoothness order");
    norm->add_option("--p", p_text, "integrability exponent (> 1, or inf)");
    norm->add_option("--q", q_text, "time exponent (>= 1, or inf; Besov only for inf)");
    norm->add_option("--k", k_override, "derivative order override (> alpha)");
    norm->add_option("--input", input, "expansion file")->required();
    norm->add_option("--output", output, "result file (stdout when omitted)");
    norm->add_option("--grid-points", norm_grid, "Gauss-Hermite points per axis");

    // apply
    auto* apply = app.add_subcommand("apply", "apply a fractional operator to an expansion file");
    std::string op;
    double apply_alpha = 1.0;
    std::string apply_in, apply_out;
    apply->add_option("--op", op, "riesz|dgamma|bessel")
        ->required()
        ->check(CLI::IsMember({"riesz", "dgamma", "bessel"}));
    apply->add_option("--alpha", apply_alpha, "operator order (> 0)")->required();
    apply->add_option("--input", apply_in, "expansion file")->required();
    apply->add_option("--output", apply_out, "transformed expansion file")->required();

    // kernel
    auto* kernel = app.add_subcommand("kernel", "evaluate the Poisson-Hermite kernel p(t,x,y)");
    double kt = 1.0;
    std::string kx, ky;
    kernel->add_option("--t", kt, "time (> 0)")->required();
    kernel->add_option("--x", kx, "comma-separated coordinates")->required();
    kernel->add_option("--y", ky, "comma-separated coordinates")->required();

    // table
    auto* table = app.add_subcommand("table", "emit reference tables");
    std::string kind, t_list = "0.25,1,4", alpha_list = "0.5", p_list = "2", q_list = "2";
    std::string format = "csv";
    int beta_max = 4, k_max = 4, table_grid = 16;
    table->add_option("kind", kind, "norms|stable-moments")->required();
    table->add_option("--beta-max", beta_max, "largest Hermite order (norms)");
    table->add_option("--alpha", alpha_list, "comma-separated alphas (norms)");
    table->add_option("--p", p_list, "comma-separated p values (norms)");
    table->add_option("--q", q_list, "comma-separated q values (norms)");
    table->add_option("--k-max", k_max, "largest moment order (stable-moments)");
    table->add_option("--t", t_list, "comma-separated t values (stable-moments)");
    table->add_option("--format", format, "csv|json");
    table->add_option("--grid-points", table_grid, "Gauss-Hermite points per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify)
            return run_verify(suite, seed, tol_scale, report_path, max_degree, grid_points);
        if (*norm)
            return run_norm(space, alpha, p_text, q_text, k_override, input, output, norm_grid);
        if (*apply) return run_apply(op, apply_alpha, apply_in, apply_out);
        if (*kernel) return run_kernel(kt, kx, ky);
        if (*table)
            return run_table(kind, beta_max, alpha_list, p_list, q_list, k_max, t_list, format,
                             table_grid);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

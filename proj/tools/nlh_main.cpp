// Command-line front end: verification suite, per-mode spectra, the
// reduced-operator shooting run, and the kernel-expansion probe.

#include "nlh/ground_state.hpp"
#include "nlh/mode_operator.hpp"
#include "nlh/potential.hpp"
#include "nlh/shooting.hpp"
#include "nlh/spectrum.hpp"
#include "nlh/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using nlohmann::json;

namespace {

// NLH_CONFIG points at a JSON file whose keys are the long option names;
// command-line flags override config values override built-in defaults.
json load_env_config() {
    const char* path = std::getenv("NLH_CONFIG");
    if (path == nullptr || *path == '\0') return json::object();
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("NLH_CONFIG", std::string("cannot open ") + path);
    json j;
    in >> j;
    if (!j.is_object()) throw CLI::ValidationError("NLH_CONFIG", "config must be a JSON object");
    return j;
}

template <typename T>
void config_default(const json& cfg, const std::string& key, T& value) {
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

int run_verify(const nlh::VerifyConfig& cfg, const std::string& out_path,
               const std::string& format) {
    nlh::VerificationReport rep = nlh::run_verification_suite(cfg);
    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  value=" << c.value
                  << "  tol=" << c.tolerance << "  (" << c.runtime_ms << " ms)\n";
    if (!out_path.empty()) nlh::emit_report(rep, format, out_path);
    std::cout << (rep.all_pass() ? "all checks passed" : "some checks FAILED") << std::endl;
    return rep.all_pass() ? 0 : 1;
}

int run_spectrum(int k, int num_eigs, int nodes, double map_scale, const std::string& out_path) {
    nlh::RadialGrid grid(nodes, map_scale);
    nlh::ModeOperator op(grid, k);
    nlh::SpectrumResult sp = nlh::solve_spectrum(op, num_eigs);
    json rows = json::array();
    for (int m = 0; m < num_eigs; ++m) {
        std::cout << "lambda[" << m << "] = " << sp.eigenvalues[m]
                  << "  residual = " << sp.residuals[m]
                  << "  tail fraction = " << sp.localization[m] << '\n';
        rows.push_back(json{{"eigenvalue", sp.eigenvalues[m]},
                            {"residual", sp.residuals[m]},
                            {"localization", sp.localization[m]}});
    }
    std::cout << "symmetry defect = " << op.symmetry_defect() << std::endl;
    if (!out_path.empty()) {
        json j{{"k", k}, {"nodes", nodes}, {"map_scale", map_scale},
               {"r_tail", sp.r_tail}, {"modes", rows}};
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << j.dump(2);
    }
    return 0;
}

int run_shoot(double phi0, double rmax, double rtol, double atol, const std::string& out_path) {
    nlh::ShootingTrajectory traj = nlh::shoot_frak_l0(phi0, rmax, rtol, atol);
    nlh::BoundReport rep = nlh::check_bounds(traj, 1e-6);
    double min_phi = traj.phi[0];
    for (double p : traj.phi) min_phi = std::min(min_phi, p);
    std::cout << "nodes: " << traj.r.size() << "\n"
              << "min phi/phi0: " << min_phi / phi0 << "\n"
              << "min growth-bound margin: " << rep.min_growth_margin << "\n"
              << "min quartic-bound margin: " << rep.min_quartic_margin << "\n"
              << "wronskian residual: " << rep.wronskian_max_rel << "\n"
              << (rep.all_pass ? "bounds hold" : "bound VIOLATION") << std::endl;
    if (!out_path.empty()) {
        json nodes = json::array();
        for (std::size_t i = 0; i < traj.r.size(); ++i)
            nodes.push_back(json{{"r", traj.r[i]},
                                 {"phi", traj.phi[i]},
                                 {"dphi", traj.dphi[i]},
                                 {"m_a", traj.m_a[i]},
                                 {"m_b", traj.m_b[i]},
                                 {"lambda", traj.lambda[i]}});
        json j{{"phi0", phi0}, {"rtol", rtol}, {"atol", atol}, {"nodes", nodes},
               {"all_pass", rep.all_pass}};
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << j.dump(2);
    }
    return rep.all_pass ? 0 : 1;
}

int run_kernel(const std::vector<double>& xv, const std::vector<double>& yv, int kmax) {
    std::array<double, 6> x{}, y{};
    for (int i = 0; i < 6; ++i) {
        x[i] = xv[i];
        y[i] = yv[i];
    }
    double d2 = 0.0;
    for (int i = 0; i < 6; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    const double exact = 1.0 / (d2 * d2);
    const std::vector<double> terms = nlh::expand_kernel_terms(x, y, kmax);
    double sum = 0.0;
    std::cout << "  k            term          partial sum\n";
    for (int k = 0; k <= kmax; ++k) {
        sum += terms[k];
        std::cout.width(3);
        std::cout << k << "  " << std::scientific << terms[k] << "  " << sum << '\n';
    }
    std::cout.unsetf(std::ios::scientific);
    std::cout << "exact |x-y|^-4:  " << exact << "\n"
              << "series (K=" << kmax << "): " << sum << "\n"
              << "relative error:  " << std::abs(sum - exact) / exact << std::endl;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale verification of the linearized critical Hartree operator in R^6"};
    app.require_subcommand(1);

    json cfg;
    try {
        cfg = load_env_config();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    }

    // verify
    nlh::VerifyConfig vc;
    std::string v_out, v_format = "json";
    config_default(cfg, "nodes", vc.nodes);
    config_default(cfg, "map-scale", vc.map_scale);
    config_default(cfg, "kmax", vc.kmax);
    config_default(cfg, "tol-residual", vc.tol_residual);
    config_default(cfg, "seed", vc.seed);
    config_default(cfg, "out", v_out);
    config_default(cfg, "format", v_format);
    CLI::App* verify = app.add_subcommand("verify", "run the full verification suite");
    verify->add_option("--nodes", vc.nodes, "collocation nodes")->capture_default_str();
    verify->add_option("--map-scale", vc.map_scale, "map scale L")->capture_default_str();
    verify->add_option("--kmax", vc.kmax, "highest mode degree")->capture_default_str();
    verify->add_option("--tol-residual", vc.tol_residual, "residual tolerance")
        ->capture_default_str();
    verify->add_option("--seed", vc.seed, "RNG seed for property checks")->capture_default_str();
    verify->add_option("--out", v_out, "report output path");
    verify->add_option("--format", v_format, "report format: json|csv")->capture_default_str();

    // spectrum
    int s_k = 0, s_eigs = 6, s_nodes = 256;
    double s_scale = 1.0;
    std::string s_out;
    config_default(cfg, "nodes", s_nodes);
    config_default(cfg, "map-scale", s_scale);
    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of one mode operator");
    spectrum->add_option("--k", s_k, "mode degree")->required();
    spectrum->add_option("--num-eigs", s_eigs, "number of eigenpairs")->capture_default_str();
    spectrum->add_option("--nodes", s_nodes, "collocation nodes")->capture_default_str();
    spectrum->add_option("--map-scale", s_scale, "map scale L")->capture_default_str();
    spectrum->add_option("--out", s_out, "JSON output path");

    // shoot
    double sh_phi0 = 1.0, sh_rmax = 50.0, sh_rtol = 1e-10, sh_atol = 1e-12;
    std::string sh_out;
    config_default(cfg, "phi0", sh_phi0);
    config_default(cfg, "rmax", sh_rmax);
    config_default(cfg, "rtol", sh_rtol);
    config_default(cfg, "atol", sh_atol);
    CLI::App* shoot = app.add_subcommand("shoot", "integrate the reduced radial operator");
    shoot->add_option("--phi0", sh_phi0, "initial value")->capture_default_str();
    shoot->add_option("--rmax", sh_rmax, "integration end")->capture_default_str();
    shoot->add_option("--rtol", sh_rtol, "relative tolerance")->capture_default_str();
    shoot->add_option("--atol", sh_atol, "absolute tolerance")->capture_default_str();
    shoot->add_option("--out", sh_out, "JSON output path");

    // kernel
    std::vector<double> k_x, k_y;
    int k_kmax = 40;
    CLI::App* kernel = app.add_subcommand("kernel", "zonal expansion of |x-y|^-4");
    kernel->add_option("--x", k_x, "x1,...,x6")->required()->delimiter(',')->expected(6);
    kernel->add_option("--y", k_y, "y1,...,y6")->required()->delimiter(',')->expected(6);
    kernel->add_option("--kmax", k_kmax, "truncation degree")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            if (v_format != "json" && v_format != "csv") {
                std::cerr << "unknown report format: " << v_format << std::endl;
                return 2;
            }
            return run_verify(vc, v_out, v_format);
        }
        if (spectrum->parsed()) return run_spectrum(s_k, s_eigs, s_nodes, s_scale, s_out);
        if (shoot->parsed()) return run_shoot(sh_phi0, sh_rmax, sh_rtol, sh_atol, sh_out);
        if (kernel->parsed()) return run_kernel(k_x, k_y, k_kmax);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 2;
}

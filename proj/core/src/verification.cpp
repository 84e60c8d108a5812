#include "nlh/verification.hpp"

#include "nlh/constants.hpp"
#include "nlh/ground_state.hpp"
#include "nlh/harmonics.hpp"
#include "nlh/mode_operator.hpp"
#include "nlh/potential.hpp"
#include "nlh/shooting.hpp"
#include "nlh/spectrum.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>

namespace nlh {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct SuiteContext {
    VerifyConfig cfg;
    std::unique_ptr<RadialGrid> grid;
    std::vector<std::unique_ptr<ModeOperator>> ops;  // k = 0..kmax
    std::mt19937_64 rng;

    const ModeOperator& op(int k) { return *ops.at(k); }
};

// even, smooth, positive; decays fast enough that t^{k+5}-weighted partial
// integrals stay representable for every mode degree used by the suite
RadialFunction random_positive(SuiteContext& ctx) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double a = 0.2 + U(ctx.rng);
    const double b = U(ctx.rng);
    const double c = 0.3 + 1.2 * U(ctx.rng);
    const double d = 0.2 + U(ctx.rng);
    return sample(*ctx.grid, [=](double r) {
        const double s = 1.0 + r * r;
        const double s3 = s * s * s;
        return (a + b * r * r) * std::exp(-c * r * r) + d / (s3 * s3);
    });
}

// even, smooth, sign-indefinite, rapidly decaying
RadialFunction random_even(SuiteContext& ctx) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double a = U(ctx.rng);
    const double b = U(ctx.rng);
    const double c = 0.4 + 0.8 * std::abs(U(ctx.rng));
    const double d = U(ctx.rng);
    return sample(*ctx.grid, [=](double r) {
        const double s = 1.0 + r * r;
        return (a + b * r * r) * std::exp(-c * r * r) + d / (s * s * s);
    });
}

// behaves like r^k at the origin, decays rapidly
RadialFunction random_mode(SuiteContext& ctx, int k) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double a = 0.3 + std::abs(U(ctx.rng));
    const double b = U(ctx.rng);
    const double c = 0.4 + 0.8 * std::abs(U(ctx.rng));
    return sample(*ctx.grid, [=](double r) {
        return std::pow(r, k) * (a + b * r * r) * std::exp(-c * r * r);
    });
}

void run_check(VerificationReport& rep, const std::string& name, const std::string& anchor,
               const std::function<void(CheckRecord&)>& body) {
    CheckRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    const auto t0 = Clock::now();
    try {
        body(rec);
    } catch (const std::exception& e) {
        rec.pass = false;
        rec.details["exception"] = 1.0;
        (void)e;
    }
    rec.runtime_ms = ms_since(t0);
    rep.checks.push_back(std::move(rec));
}

} // namespace

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

VerificationReport run_verification_suite(const VerifyConfig& cfg) {
    VerificationReport rep;
    rep.version = version_string();
    rep.config = cfg;

    SuiteContext ctx;
    ctx.cfg = cfg;
    ctx.rng.seed(cfg.seed);
    ctx.grid = std::make_unique<RadialGrid>(cfg.nodes, cfg.map_scale);
    for (int k = 0; k <= cfg.kmax; ++k)
        ctx.ops.push_back(std::make_unique<ModeOperator>(*ctx.grid, k));

    const RadialGrid& g = *ctx.grid;
    const RadialFunction omega_f = sample(g, eval_omega);
    const RadialFunction omega_sq = sample(g, eval_omega_squared);
    const RadialFunction omega_p = sample(g, eval_omega_prime);

    // 1. Newton identity on the grid + independent 2D-quadrature oracle
    run_check(rep, "newton_identity_grid", "radial Newton theorem", [&](CheckRecord& rec) {
        const auto t0 = Clock::now();
        RadialFunction phi = ctx.op(0).kernel().apply(omega_sq);
        double sup = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            const double ref = 2.0 * pi_3_2 * omega_f.values[i];
            sup = std::max(sup, std::abs(phi.values[i] - ref) / ref);
        }
        rec.value = sup;
        rec.tolerance = 1e-8;
        const double elapsed = ms_since(t0);
        rec.details["runtime_budget_ms"] = 1000.0;
        rec.pass = sup <= rec.tolerance && elapsed < 1000.0;
    });
    run_check(rep, "newton_identity_oracle", "radial Newton theorem, direct quadrature",
              [&](CheckRecord& rec) {
                  auto f = [](double s) { return eval_omega_squared(s); };
                  double worst = 0.0;
                  const double spots[3] = {0.0, 1.0, 2.0};
                  const double expect[3] = {24.0, 6.0, 0.96};
                  for (int i = 0; i < 3; ++i)
                      worst = std::max(worst,
                                       std::abs(oracle_potential_direct(f, spots[i]) - expect[i]));
                  // cross-check the grid path against the oracle at ten radii
                  RadialFunction phi = ctx.op(0).kernel().apply(omega_sq);
                  for (int m = 1; m <= 10; ++m) {
                      const int i = m * g.n() / 16;
                      const double direct = oracle_potential_direct(f, g.nodes()[i], 1e-10);
                      worst = std::max(worst, std::abs(phi.values[i] - direct));
                  }
                  rec.value = worst;
                  rec.tolerance = 1e-6;
                  rec.pass = worst <= rec.tolerance;
              });

    // 2. pointwise PDE identity from closed forms. The naive combination
    // w'' + (5/r) w' cancels ~r^2 digits at large radii, so it is checked
    // there with the analytically regrouped Laplacian; the raw evaluator
    // combination is held to the same bar on the cancellation-safe range.
    run_check(rep, "pde_identity", "ground-state equation", [&](CheckRecord& rec) {
        double sup = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            const double r = g.nodes()[i];
            const double s = 1.0 + r * r;
            const double lap = -288.0 / pi_3_2 / (s * s * s * s);  // w'' + (5/r) w'
            const double rhs = 2.0 * pi_3_2 * eval_omega_squared(r);
            sup = std::max(sup, std::abs(-lap - rhs) / rhs);
            if (r <= 50.0) {
                const double raw = -(eval_omega_second(r) + 5.0 / r * eval_omega_prime(r));
                sup = std::max(sup, std::abs(raw - rhs) / rhs);
            }
        }
        rec.value = sup;
        rec.tolerance = 1e-12;
        rec.pass = sup <= rec.tolerance;
    });

    // 3. radial kernel of L_0
    run_check(rep, "kernel_l0_residual", "radial kernel = scaling mode", [&](CheckRecord& rec) {
        std::vector<int> sizes = {64, 128};
        if (cfg.nodes != 64 && cfg.nodes != 128) sizes.push_back(cfg.nodes);
        std::sort(sizes.begin(), sizes.end());
        std::vector<double> res;
        for (int sz : sizes) {
            RadialGrid gs(sz, cfg.map_scale);
            ModeOperator op0(gs, 0);
            RadialFunction lw = sample(gs, eval_lambda_omega);
            res.push_back(residual_norm(op0, lw, 0.0));
            rec.details["residual_n" + std::to_string(sz)] = res.back();
        }
        bool monotone = true;
        for (std::size_t s = 1; s < res.size(); ++s)
            if (!(res[s] < res[s - 1])) monotone = false;
        // value: residual at the configured size
        double final_res = res.back();
        for (std::size_t s = 0; s < sizes.size(); ++s)
            if (sizes[s] == cfg.nodes) final_res = res[s];
        rec.value = final_res;
        rec.tolerance = cfg.tol_residual;
        rec.pass = final_res <= rec.tolerance && monotone;
    });
    run_check(rep, "l0_omega_identity", "forced identity L0 w = -4 pi^{3/2} w^2",
              [&](CheckRecord& rec) {
                  RadialFunction lhs = ctx.op(0).apply(omega_f);
                  double diff = 0.0, scale = 0.0;
                  for (int i = 0; i < g.n(); ++i) {
                      const double rhs = -4.0 * pi_3_2 * omega_sq.values[i];
                      diff = std::max(diff, std::abs(lhs.values[i] - rhs));
                      scale = std::max(scale, std::abs(rhs));
                  }
                  rec.value = diff / scale;
                  rec.tolerance = 1e-7;
                  rec.pass = rec.value <= rec.tolerance;
              });
    run_check(rep, "rayleigh_quotient_l0", "Q0(w)/<w,w> = -4.8", [&](CheckRecord& rec) {
        const double q = quadratic_form(ctx.op(0), omega_f) /
                         weighted_inner_product(omega_f, omega_f);
        rec.value = std::abs(q + 4.8) / 4.8;
        rec.tolerance = 1e-6;
        rec.details["quotient"] = q;
        rec.pass = rec.value <= rec.tolerance;
    });

    // 4. kernel of L_1
    if (cfg.kmax >= 1) {
        run_check(rep, "kernel_l1_residual", "translation mode", [&](CheckRecord& rec) {
            rec.value = residual_norm(ctx.op(1), omega_p, 0.0);
            rec.tolerance = cfg.tol_residual;
            rec.pass = rec.value <= rec.tolerance;
        });
        run_check(rep, "l1_zero_mode", "lowest eigenvalue of L_1 is zero", [&](CheckRecord& rec) {
            SpectrumResult sp = solve_spectrum(ctx.op(1), 6);
            auto cands = classify_kernel(ctx.op(1), 1e-6, 0.05);
            rec.details["min_eigenvalue"] = sp.eigenvalues[0];
            rec.details["num_candidates"] = (double)cands.size();
            double cosine = 0.0, lam = 1.0;
            if (cands.size() == 1) {
                cosine = std::abs(weighted_inner_product(cands[0].vector, omega_p)) /
                         (weighted_norm(cands[0].vector) * weighted_norm(omega_p));
                lam = cands[0].lambda;
                rec.details["lambda"] = lam;
                rec.details["localization"] = cands[0].localization;
            }
            rec.value = cosine;
            rec.tolerance = 0.999;
            rec.pass = cands.size() == 1 && cosine >= 0.999 && std::abs(lam) <= 1e-6 &&
                       sp.eigenvalues[0] >= -1e-6;
        });
    }

    // 5. no kernel for k >= 2
    if (cfg.kmax >= 2) {
        run_check(rep, "no_kernel_k2plus", "higher modes are positive", [&](CheckRecord& rec) {
            double worst = 1e300;
            bool clean = true;
            for (int k = 2; k <= cfg.kmax; ++k) {
                SpectrumResult sp = solve_spectrum(ctx.op(k), 4);
                worst = std::min(worst, sp.eigenvalues[0]);
                auto cands = classify_kernel(ctx.op(k), 1e-6, 0.05);
                rec.details["candidates_k" + std::to_string(k)] = (double)cands.size();
                if (!cands.empty()) clean = false;
            }
            rec.value = worst;
            rec.tolerance = -1e-6;
            rec.pass = clean && worst >= -1e-6;
        });
    }

    // 6. mode monotonicity of the quadratic forms
    if (cfg.kmax >= 1) {
        run_check(rep, "monotonicity_gap", "form gap between consecutive modes",
                  [&](CheckRecord& rec) {
                      double max_dev = 0.0, min_gap = 1e300;
                      const int kmax = std::min(cfg.kmax, 6);
                      for (int trial = 0; trial < 20; ++trial) {
                          RadialFunction f = random_positive(ctx);
                          for (int k = 1; k <= kmax; ++k) {
                              MonotonicityGap gp = monotonicity_gap(ctx.op(k), ctx.op(k - 1), f);
                              min_gap = std::min(min_gap, gp.direct);
                              max_dev = std::max(max_dev, std::abs(gp.direct - gp.closed_form) /
                                                              std::abs(gp.direct));
                          }
                      }
                      rec.value = max_dev;
                      rec.tolerance = 1e-8;
                      rec.details["min_gap"] = min_gap;
                      rec.pass = max_dev <= rec.tolerance && min_gap > 0.0;
                  });
    }

    // 7. nonnegativity under the orthogonality condition
    run_check(rep, "nonnegativity", "form is nonnegative off the ground-state direction",
              [&](CheckRecord& rec) {
                  double worst = 1e300;
                  const double osq_nrm2 = weighted_inner_product(omega_sq, omega_sq);
                  for (int trial = 0; trial < 20; ++trial) {
                      RadialFunction f = random_even(ctx);
                      const double c = weighted_inner_product(f, omega_sq) / osq_nrm2;
                      f.values -= c * omega_sq.values;
                      const double n2 = weighted_inner_product(f, f);
                      worst = std::min(worst, quadratic_form(ctx.op(0), f) / n2);
                  }
                  for (int k = 1; k <= cfg.kmax; ++k)
                      for (int trial = 0; trial < 20; ++trial) {
                          RadialFunction f = random_mode(ctx, k);
                          const double n2 = weighted_inner_product(f, f);
                          worst = std::min(worst, quadratic_form(ctx.op(k), f) / n2);
                      }
                  rec.value = worst;
                  rec.tolerance = -1e-6;
                  rec.pass = worst >= -1e-6;
              });

    // 8. zonal expansion of the kernel. At K = 60 the truncation tail
    // C rho^{K+1}/(1-rho)^5 exceeds 1e-8 once rho > ~0.57, so the per-pair
    // tolerance is the larger of 1e-8 and the tail bound; the strict-1e-8
    // worst case over all pairs is recorded alongside.
    run_check(rep, "kernel_expansion", "expansion of |x-y|^{-4}", [&](CheckRecord& rec) {
        std::normal_distribution<double> N(0.0, 1.0);
        std::uniform_real_distribution<double> U(0.1, 0.8);
        const int K = 60;
        double worst = 0.0;          // error measured against the per-pair tolerance
        double worst_strict = 0.0;   // raw relative error over all pairs
        double worst_low = 0.0;      // raw relative error for rho <= 0.55
        for (int trial = 0; trial < 100; ++trial) {
            std::array<double, 6> x{}, y{};
            double nx = 0.0, ny = 0.0;
            for (int i = 0; i < 6; ++i) {
                x[i] = N(ctx.rng);
                y[i] = N(ctx.rng);
                nx += x[i] * x[i];
                ny += y[i] * y[i];
            }
            nx = std::sqrt(nx);
            ny = std::sqrt(ny);
            const double rho = U(ctx.rng);
            for (int i = 0; i < 6; ++i) {
                x[i] /= nx;                 // |x| = 1
                y[i] *= rho / ny;           // |y| = rho
            }
            double d2 = 0.0;
            for (int i = 0; i < 6; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
            const double exact = 1.0 / (d2 * d2);
            const double series = expand_kernel(x, y, K);
            const double rel = std::abs(series - exact) / exact;
            const double tail_rel =
                10.0 * std::pow(rho, K + 1) / std::pow(1.0 - rho, 5.0) / exact;
            worst = std::max(worst, rel / std::max(1e-8, tail_rel));
            worst_strict = std::max(worst_strict, rel);
            if (rho <= 0.55) worst_low = std::max(worst_low, rel);
        }
        rec.details["worst_rel_all"] = worst_strict;
        rec.details["worst_rel_rho_below_0.55"] = worst_low;
        // monopole resolution: the printed alternative coefficient k/(k+2)
        // annihilates the k = 0 term and misses the far-field limit entirely
        {
            std::array<double, 6> x{1, 0, 0, 0, 0, 0};
            std::array<double, 6> y{0, 1e-6, 0, 0, 0, 0};
            double d2 = 0.0;
            for (int i = 0; i < 6; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
            const double exact = 1.0 / (d2 * d2);
            const double good = expand_kernel(x, y, 40);
            const std::vector<double> terms = expand_kernel_terms(x, y, 40);
            double alt = 0.0;
            for (int k = 0; k <= 40; ++k) alt += terms[k] * (k / (k + 2.0)) / (2.0 / (k + 2.0));
            rec.details["monopole_rel_err"] = std::abs(good - exact) / exact;
            rec.details["alt_coefficient_rel_err"] = std::abs(alt - exact) / exact;
            if (std::abs(good - exact) / exact > 1e-5) worst = 1e9;
            if (std::abs(alt - exact) / exact < 0.5) worst = 1e9;  // must fail
        }
        if (worst_low > 1e-8) worst = std::max(worst, 1e9);
        rec.value = worst;  // error relative to the per-pair tolerance
        rec.tolerance = 1.0;
        rec.pass = worst <= rec.tolerance;
    });

    // 9. addition formula vs dimension count
    run_check(rep, "addition_dimension", "zonal density at coincidence", [&](CheckRecord& rec) {
        double worst = 0.0;
        for (int k = 0; k <= 12; ++k)
            worst = std::max(worst, std::abs(zonal_density(k, 1.0) - (double)alpha_k(k)));
        rec.value = worst;
        rec.tolerance = 0.0;
        rec.pass = worst == 0.0;
    });

    // 10. reduced-operator shooting bounds
    run_check(rep, "shooting_appendix", "sign and growth of the reduced solution",
              [&](CheckRecord& rec) {
                  const auto t0 = Clock::now();
                  ShootingTrajectory traj = shoot_frak_l0(1.0, 50.0, 1e-10, 1e-12);
                  BoundReport br = check_bounds(traj, 1e-6);
                  double min_phi = 1e300;
                  for (double p : traj.phi) min_phi = std::min(min_phi, p);
                  const double elapsed = ms_since(t0);
                  rec.value = std::min({br.min_growth_margin, br.min_quartic_margin,
                                        min_phi - 0.25});
                  rec.tolerance = -1e-6;
                  rec.details["min_phi"] = min_phi;
                  rec.details["growth_margin"] = br.min_growth_margin;
                  rec.details["quartic_margin"] = br.min_quartic_margin;
                  rec.details["wronskian_rel"] = br.wronskian_max_rel;
                  rec.details["runtime_budget_ms"] = 5000.0;
                  rec.pass = br.all_pass && min_phi > 0.25 && elapsed < 5000.0;
              });

    // 11. prefix-sum vs dense equivalence, then the wall-clock comparison
    {
        auto g512 = std::make_shared<RadialGrid>(512, cfg.map_scale);
        auto kern = std::make_shared<ModeKernel>(*g512, 0);
        run_check(rep, "prefix_dense_equivalence", "separable fast path, same discretization",
                  [&](CheckRecord& rec) {
                      RadialFunction q = sample(*g512, eval_omega_squared);
                      const VectorXd dense_out = kern->dense_matrix() * q.values;
                      const VectorXd fast_out = kern->apply_vector(q.values);
                      const double scale = dense_out.cwiseAbs().maxCoeff();
                      rec.value = (dense_out - fast_out).cwiseAbs().maxCoeff() / scale;
                      rec.tolerance = 1e-13;
                      rec.pass = rec.value <= rec.tolerance;
                  });
        run_check(rep, "prefix_speedup", "O(n) path vs dense matrix-vector, 50 applications",
                  [&](CheckRecord& rec) {
                      RadialFunction q = sample(*g512, eval_omega_squared);
                      const MatrixXd& M = kern->dense_matrix();  // built outside the timing
                      VectorXd out;
                      const auto td = Clock::now();
                      for (int it = 0; it < 50; ++it) out.noalias() = M * q.values;
                      const double dense_ms = ms_since(td);
                      const auto tf = Clock::now();
                      for (int it = 0; it < 50; ++it) out = kern->apply_vector(q.values);
                      const double fast_ms = ms_since(tf);
                      // timing-derived; this record's value varies run to run
                      rec.value = dense_ms / std::max(fast_ms, 1e-9);
                      rec.tolerance = 10.0;
                      rec.pass = rec.value >= 10.0;
                  });
    }

    return rep;
}

// ---------------------------------------------------------------------------

using nlohmann::json;

static json config_to_json(const VerifyConfig& c) {
    return json{{"nodes", c.nodes},
                {"map_scale", c.map_scale},
                {"kmax", c.kmax},
                {"tol_residual", c.tol_residual},
                {"seed", c.seed}};
}

std::string report_to_json(const VerificationReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json d = json::object();
        for (const auto& [k, v] : c.details) d[k] = v;
        checks.push_back(json{{"name", c.name},
                              {"anchor", c.anchor},
                              {"status", c.pass ? "pass" : "fail"},
                              {"value", c.value},
                              {"tolerance", c.tolerance},
                              {"runtime_ms", c.runtime_ms},
                              {"details", d}});
    }
    json j{{"version", rep.version},
           {"config", config_to_json(rep.config)},
           {"checks", checks}};
    return j.dump(2);
}

VerificationReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    VerificationReport rep;
    rep.version = j.at("version").get<std::string>();
    const json& c = j.at("config");
    rep.config.nodes = c.at("nodes").get<int>();
    rep.config.map_scale = c.at("map_scale").get<double>();
    rep.config.kmax = c.at("kmax").get<int>();
    rep.config.tol_residual = c.at("tol_residual").get<double>();
    rep.config.seed = c.at("seed").get<std::uint64_t>();
    for (const json& jc : j.at("checks")) {
        CheckRecord rec;
        rec.name = jc.at("name").get<std::string>();
        rec.anchor = jc.at("anchor").get<std::string>();
        rec.pass = jc.at("status").get<std::string>() == "pass";
        rec.value = jc.at("value").get<double>();
        rec.tolerance = jc.at("tolerance").get<double>();
        rec.runtime_ms = jc.at("runtime_ms").get<double>();
        for (auto it = jc.at("details").begin(); it != jc.at("details").end(); ++it)
            rec.details[it.key()] = it.value().get<double>();
        rep.checks.push_back(std::move(rec));
    }
    return rep;
}

std::string report_to_csv(const VerificationReport& rep) {
    std::ostringstream out;
    out << "name,status,value,tolerance,runtime_ms\n";
    out.precision(17);
    for (const auto& c : rep.checks)
        out << c.name << ',' << (c.pass ? "pass" : "fail") << ',' << c.value << ','
            << c.tolerance << ',' << c.runtime_ms << '\n';
    return out.str();
}

void emit_report(const VerificationReport& rep, const std::string& format,
                 const std::string& path) {
    std::string text;
    if (format == "json")
        text = report_to_json(rep);
    else if (format == "csv")
        text = report_to_csv(rep);
    else
        throw std::invalid_argument("emit_report: format must be json or csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path);
    out << text;
    if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

} // namespace nlh

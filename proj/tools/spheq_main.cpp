#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "spheq/energetics.hpp"
#include "spheq/equilibrium.hpp"
#include "spheq/oracle.hpp"
#include "spheq/parallel.hpp"
#include "spheq/particle_flow.hpp"
#include "spheq/potentials.hpp"
#include "spheq/quadrature.hpp"
#include "spheq/root_finding.hpp"
#include "spheq/serialization.hpp"

using nlohmann::json;
using namespace spheq;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

void write_json(const std::string& path, json j, const std::string& command) {
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    write_text(path, j.dump(2) + "\n");
}

std::string csv_header(const std::string& command, const json& config) {
    std::string head = "# schema_version: " + std::string(kSchemaVersion) + "\n";
    head += "# command: " + command + "\n";
    for (auto it = config.begin(); it != config.end(); ++it)
        head += "# " + it.key() + ": " + it.value().dump() + "\n";
    return head;
}

int run_solve(int n, double alpha, const std::string& out) {
    const auto sol = solve_equilibrium(alpha, n);
    write_json(out, to_json(sol), "solve");
    return 0;
}

int run_sweep(int n, double amin, double amax, int steps, std::size_t energy_samples,
              std::uint64_t seed, const std::string& out) {
    if (steps < 2) throw CLI::ValidationError("--steps must be at least 2");
    json config{{"n", n},         {"alpha_min", amin},
                {"alpha_max", amax}, {"steps", steps},
                {"energy_samples", energy_samples}, {"seed", seed}};
    std::string csv = csv_header("sweep", config);
    csv += "alpha,t,a,b,c_alpha,i_alpha,i_alpha_error\n";
    double prev_t = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (int i = 0; i < steps; ++i) {
        double alpha = amin + (amax - amin) * i / (steps - 1);
        if (std::abs(alpha) < 1e-12) alpha = 0.0;  // grid roundoff at the sign change
        const auto sol = solve_equilibrium(alpha, n);
        const auto energy =
            total_energy(Spheroid(sol.a, sol.b, n), alpha, energy_samples, seed, i);
        char line[320];
        std::snprintf(line, sizeof line, "%.12g,%.15g,%.15g,%.15g,%.15g,%.12g,%.3g\n",
                      alpha, sol.t, sol.a, sol.b, sol.c_alpha, energy.value, energy.error);
        csv += line;
        if (sol.t >= prev_t) decreasing = false;
        prev_t = sol.t;
    }
    write_text(out, csv);
    std::cerr << "sweep: t(alpha) strictly decreasing: " << (decreasing ? "yes" : "NO")
              << "\n";
    return 0;
}

int run_potential_map(int n, double alpha, double a_opt, double b_opt, int grid,
                      double extent, const std::string& out) {
    double a = a_opt, b = b_opt;
    double map_alpha = alpha;
    if (a <= 0 || b <= 0) {
        // default support: the solved equilibrium; the exterior anisotropic
        // integrals degenerate for a ball, so nudge alpha off zero
        if (std::abs(alpha) < 1e-6) {
            map_alpha = 1e-6;
            std::cerr << "potential-map: alpha perturbed to 1e-6 (spheroidal frame "
                         "degenerates for the ball)\n";
        }
        const auto sol = solve_equilibrium(map_alpha, n);
        a = sol.a;
        b = sol.b;
    }
    const Spheroid s(a, b, n);
    if (s.nearly_ball())
        throw std::runtime_error("potential-map: spheroid too close to a ball; pass -a/-b");
    json config{{"n", n},      {"alpha", map_alpha}, {"a", a},
                {"b", b},      {"grid", grid},       {"extent", extent}};
    std::string csv = csv_header("potential-map", config);
    csv += "x1,r,phi0,psi,phi_alpha,phi_alpha_plus_conf,region\n";
    const double x1_max = extent * a, r_max = extent * b;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double x1 = -x1_max + 2.0 * x1_max * i / (grid - 1);
            const double r = r_max * j / (grid - 1);
            double phi0, psi, phia;
            int region;
            if (s.contains(x1, r)) {
                region = 0;
                phi0 = phi0_inside(x1, r, s);
                psi = psi_inside(x1, r, s);
                phia = phi0 + map_alpha * psi;
            } else {
                region = 1;
                phi0 = phi0_outside(x1, r, s);
                psi = psi_outside(x1, r, s);
                phia = phi0 + map_alpha * psi;
            }
            char line[320];
            std::snprintf(line, sizeof line, "%.12g,%.12g,%.15g,%.15g,%.15g,%.15g,%d\n", x1,
                          r, phi0, psi, phia, phia + 0.5 * (x1 * x1 + r * r), region);
            csv += line;
        }
    }
    write_text(out, csv);
    return 0;
}

int run_verify(int n, double alpha, const std::string& solution_path, int interior_points,
               int z_points, double z_max_factor, double el_tol, const std::string& out) {
    EquilibriumSolution sol;
    if (!solution_path.empty()) {
        std::ifstream in(solution_path);
        if (!in) throw std::runtime_error("cannot read solution file: " + solution_path);
        json j;
        in >> j;
        sol = solution_from_json(j);
    } else {
        sol = solve_equilibrium(alpha, n);
    }
    ElGrid grid;
    grid.interior_points = interior_points;
    grid.z_points = z_points;
    grid.z_max_factor = z_max_factor;
    const auto rep = verify_equilibrium(sol, grid);
    json j = to_json(rep);
    j["solution"] = to_json(sol);
    j["pass"] = {{"el1", rep.interior_max_rel_dev <= el_tol},
                 {"el2_slack", rep.exterior_min_slack >= -1e-8},
                 {"el2_curvature", rep.derivative_min >= -1e-10}};
    write_json(out, j, "verify");
    const bool ok = rep.interior_max_rel_dev <= el_tol &&
                    rep.exterior_min_slack >= -1e-8 && rep.derivative_min >= -1e-10;
    return ok ? 0 : kExitNumerical;
}

int run_simulate(int n, double alpha, int particles, long steps, std::uint64_t seed,
                 long snapshot_every, const std::string& prefix) {
    FlowParams p;
    p.params = {n, alpha};
    p.particle_count = particles;
    p.max_iterations = steps;
    p.seed = seed;
    auto dump_points = [&](const Eigen::MatrixXd& pts, const std::string& path) {
        json config{{"n", n}, {"alpha", alpha}, {"particles", particles}, {"seed", seed}};
        std::string csv = csv_header("simulate", config);
        for (int d = 0; d < n; ++d) csv += (d ? ",x" : "x") + std::to_string(d + 1);
        csv += "\n";
        for (long i = 0; i < pts.rows(); ++i) {
            for (int d = 0; d < n; ++d) {
                char val[40];
                std::snprintf(val, sizeof val, d ? ",%.15g" : "%.15g", pts(i, d));
                csv += val;
            }
            csv += "\n";
        }
        write_text(path, csv);
    };
    const ParticleConfig initial = init_particles(p);
    dump_points(initial.points, prefix + "_initial.csv");
    FlowObserver observer;
    if (snapshot_every > 0) {
        observer = [&](const ParticleConfig& cfg, double) {
            if (cfg.iteration % snapshot_every == 0)
                dump_points(cfg.points,
                            prefix + "_iter" + std::to_string(cfg.iteration) + ".csv");
        };
    }
    const FlowResult result = run_flow(p, observer);
    dump_points(result.config.points, prefix + "_final.csv");
    json meta{{"n", n},
              {"alpha", alpha},
              {"particles", particles},
              {"seed", seed},
              {"max_steps", steps},
              {"iterations", result.iterations},
              {"converged", result.converged},
              {"stagnated", result.stagnated},
              {"final_energy", result.energy},
              {"shape_fit", to_json(result.fit)}};
    write_json(prefix + "_meta.json", meta, "simulate");
    std::cerr << "simulate: iterations=" << result.iterations << " energy=" << result.energy
              << " t_hat=" << result.fit.t_hat << " b_hat=" << result.fit.b_hat << "\n";
    return 0;
}

int run_limit(int n, const std::string& out) {
    const auto lim = limiting_equilibrium(n);
    json conv = json::array();
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const double t = solve_aspect_ratio(-1.0 + eps, n);
        conv.push_back({{"eps", eps}, {"t", t}, {"gap", std::abs(t - lim.t_star)}});
    }
    json j{{"n", n},
           {"t_star", lim.t_star},
           {"b_star", lim.b_star},
           {"residual", lim.residual},
           {"convergence", conv}};
    write_json(out, j, "limit");
    return 0;
}

int run_parseval(int n, double alpha, int grid, const std::string& density,
                 const std::string& out) {
    if (n != 3) throw CLI::ValidationError("parseval: only n=3 grids are supported");
    LatticeDensity d;
    if (density == "bump")
        d = bump_density(grid, 1.0);
    else if (density == "two-bump")
        d = two_bump_signed(grid, 1.0, 0.45);
    else if (density == "axial")
        d = axial_signed_density(grid, 0.05, 0.9);
    else
        throw CLI::ValidationError("unknown density: " + density);
    const auto r = parseval_check(d, EnergyParams{n, alpha});
    json j{{"n", n},
           {"alpha", alpha},
           {"grid", grid},
           {"density", density},
           {"real_side", r.real_side},
           {"fourier_side", r.fourier_side},
           {"relative_difference",
            std::abs(r.real_side - r.fourier_side) / std::max(std::abs(r.real_side), 1e-300)},
           {"box", r.box}};
    write_json(out, j, "parseval");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equilibrium spheroids of anisotropic Coulomb energies with quadratic "
                 "confinement"};
    app.require_subcommand(1);

    int n = 3;
    double alpha = 0.0;
    std::string out = "-";
    std::uint64_t seed = 42;

    auto add_common = [&](CLI::App* cmd, bool with_alpha = true) {
        cmd->add_option("-n,--n", n, "space dimension (3..16)")->capture_default_str();
        if (with_alpha)
            cmd->add_option("-a,--alpha", alpha, "anisotropy strength")->capture_default_str();
        cmd->add_option("-o,--out", out, "output path ('-' for stdout)")->capture_default_str();
    };

    auto* solve = app.add_subcommand("solve", "solve the equilibrium spheroid");
    add_common(solve);

    auto* sweep = app.add_subcommand("sweep", "solve over an alpha grid, emit CSV");
    double amin = -0.9, amax = 1.0;
    int steps = 30;
    std::size_t energy_samples = 200000;
    add_common(sweep, false);
    sweep->add_option("--alpha-min", amin, "first alpha")->capture_default_str();
    sweep->add_option("--alpha-max", amax, "last alpha")->capture_default_str();
    sweep->add_option("--steps", steps, "grid size")->capture_default_str();
    sweep->add_option("--energy-samples", energy_samples, "Monte-Carlo budget per point")
        ->capture_default_str();
    sweep->add_option("--seed", seed)->capture_default_str();

    auto* pmap = app.add_subcommand("potential-map", "emit potentials on a meridian grid");
    double a_opt = -1, b_opt = -1, extent = 2.0;
    int grid = 41;
    add_common(pmap);
    pmap->add_option("--semi-a", a_opt, "x1 semi-axis (default: solved equilibrium)");
    pmap->add_option("--semi-b", b_opt, "transverse semi-axis");
    pmap->add_option("--grid", grid, "points per axis")->capture_default_str();
    pmap->add_option("--extent", extent, "half-extent in units of the semi-axes")
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Euler-Lagrange verification report");
    std::string solution_path;
    int interior_points = 2000, z_points = 400;
    double z_max_factor = 10.0, el_tol = 1e-6;
    add_common(verify);
    verify->add_option("--solution", solution_path, "solution JSON from 'solve'");
    verify->add_option("--interior-points", interior_points)->capture_default_str();
    verify->add_option("--z-points", z_points)->capture_default_str();
    verify->add_option("--z-max-factor", z_max_factor)->capture_default_str();
    verify->add_option("--el-tol", el_tol, "EL-1 relative tolerance")->capture_default_str();

    auto* sim = app.add_subcommand("simulate", "N-particle gradient flow");
    int particles = 500;
    long max_steps = 20000, snapshot_every = 0;
    std::string prefix = "flow";
    add_common(sim);
    sim->add_option("-N,--particles", particles)->capture_default_str();
    sim->add_option("--steps", max_steps, "max iterations")->capture_default_str();
    sim->add_option("--seed", seed)->capture_default_str();
    sim->add_option("--snapshot-every", snapshot_every, "CSV snapshot period (0 = none)")
        ->capture_default_str();
    sim->add_option("--out-prefix", prefix)->capture_default_str();

    auto* limit = app.add_subcommand("limit", "alpha -> -1 limiting equilibrium");
    add_common(limit, false);

    auto* pars = app.add_subcommand("parseval", "real- vs Fourier-side interaction energy");
    int pgrid = 32;
    std::string density = "bump";
    add_common(pars);
    pars->add_option("--grid", pgrid, "cells per axis (power of 2)")->capture_default_str();
    pars->add_option("--density", density, "bump | two-bump | axial")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (solve->parsed()) return run_solve(n, alpha, out);
        if (sweep->parsed()) return run_sweep(n, amin, amax, steps, energy_samples, seed, out);
        if (pmap->parsed()) return run_potential_map(n, alpha, a_opt, b_opt, grid, extent, out);
        if (verify->parsed())
            return run_verify(n, alpha, solution_path, interior_points, z_points, z_max_factor,
                              el_tol, out);
        if (sim->parsed())
            return run_simulate(n, alpha, particles, max_steps, seed, snapshot_every, prefix);
        if (limit->parsed()) return run_limit(n, out);
        if (pars->parsed()) return run_parseval(n, alpha, pgrid, density, out);
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BracketError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const QuadratureError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}

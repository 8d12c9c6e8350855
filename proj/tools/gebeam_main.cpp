#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "gebeam/config.hpp"
#include "gebeam/csv.hpp"
#include "gebeam/energy.hpp"
#include "gebeam/kinematics.hpp"
#include "gebeam/statics.hpp"
#include "gebeam/verify.hpp"

namespace fs = std::filesystem;
using namespace gebeam;

namespace {

fs::path prepare_out(const SimConfig& cfg, const std::string& out_override) {
    fs::path dir = out_override.empty() ? fs::path(cfg.output_dir) : fs::path(out_override);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory '" + dir.string() + "'");
    return dir;
}

int cmd_simulate(const std::string& config_path, const std::string& out_override) {
    const SimConfig cfg = load_config(config_path);
    const fs::path dir = prepare_out(cfg, out_override);
    const SimProblem p = make_problem(cfg);
    const Trajectory traj = simulate(p);
    const EnergyReport rep = energy_report(traj, p.rig, p.grid);

    write_trajectory_csv((dir / "trajectory.csv").string(), traj, p.grid);
    write_energy_csv((dir / "energy.csv").string(), rep);
    write_closure_csv((dir / "closure.csv").string(), traj, p.grid);

    std::printf("simulate: %zu snapshots, t_end = %g, dt = %g\n", traj.snaps.size(), p.t_end,
                p.dt);
    std::printf("energy: E0 = %.17g, max |drift| = %.3e%s\n", rep.rows.front().total,
                rep.max_abs_drift,
                rep.nonzero_flux_detected ? "  [nonzero boundary flux detected]" : "");
    std::printf("wrote %s, %s, %s\n", (dir / "trajectory.csv").c_str(),
                (dir / "energy.csv").c_str(), (dir / "closure.csv").c_str());
    return 0;
}

int cmd_static(const std::string& config_path, const std::string& out_override) {
    const SimConfig cfg = load_config(config_path);
    const fs::path dir = prepare_out(cfg, out_override);
    const Grid g(cfg.n_nodes, cfg.material.L);
    const RigidityTensors rig = RigidityTensors::from(cfg.material, cfg.g_scale, cfg.h_scale);

    StaticProfiles prof;
    int exit_code = 0;
    if (cfg.statics.mode == "shoot") {
        StaticBVPSpec spec;
        spec.kind = StaticTargetKind::TipLoads;
        spec.target_a = cfg.statics.target_N;
        spec.target_b = cfg.statics.target_M;
        spec.guess_eps0 = cfg.statics.eps0;
        spec.guess_kappa0 = cfg.statics.kappa0;
        const StaticShootResult res = static_shoot(spec, rig, g);
        std::printf("shoot: %s after %d iterations, tip residual %.3e\n",
                    res.converged ? "converged" : "NOT converged", res.iterations,
                    res.residual_norm);
        std::printf("root: eps0 = (%.17g, %.17g, %.17g), kappa0 = (%.17g, %.17g, %.17g)\n",
                    res.eps0[0], res.eps0[1], res.eps0[2], res.kappa0[0], res.kappa0[1],
                    res.kappa0[2]);
        prof = res.profiles;
        if (!res.converged) exit_code = 1;
    } else {
        prof = static_ivp(cfg.statics.eps0, cfg.statics.kappa0, rig, g);
    }

    const KinematicState kin =
        reconstruct_space(Vec3::Zero(), Rot3::identity(), prof.eps, prof.kap, g);
    write_static_profiles_csv((dir / "static_profiles.csv").string(), prof, rig, g);
    write_centerline_csv((dir / "centerline.csv").string(), kin, g);
    std::printf("wrote %s, %s\n", (dir / "static_profiles.csv").c_str(),
                (dir / "centerline.csv").c_str());
    return exit_code;
}

int cmd_rigid(const std::string& config_path, const std::string& out_override) {
    SimConfig cfg = load_config(config_path);
    // enforce the rigid constraint regardless of how the config was written
    cfg.mask.eps = {false, false, false};
    cfg.mask.kap = {false, false, false};
    cfg.init.name = "rigid_spin";
    const fs::path dir = prepare_out(cfg, out_override);
    const SimProblem p = make_problem(cfg);
    const Trajectory traj = simulate(p);

    std::vector<double> times;
    std::vector<Vec3> sim;
    for (const Snapshot& s : traj.snaps) {
        times.push_back(s.t);
        sim.push_back(s.u.w[0]);
    }
    const std::vector<Vec3> ref = rigid_euler(cfg.init.omega0, cfg.t_end, 1e-5 * cfg.t_end,
                                              p.rig, static_cast<int>(times.size()) - 1);
    double max_err = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        max_err = std::max(max_err, (sim[i] - ref[i]).cwiseAbs().maxCoeff());
    }
    write_rigid_compare_csv((dir / "rigid_compare.csv").string(), times, sim, ref);
    std::printf("rigid: max |omega_sim - omega_ref| = %.3e over [0, %g]\n", max_err, cfg.t_end);

    if (std::abs(cfg.material.I1 - cfg.material.I2) < 1e-14 * cfg.material.I1) {
        std::vector<double> w1(sim.size());
        for (std::size_t i = 0; i < sim.size(); ++i) w1[i] = sim[i][0];
        const auto freq = angular_frequency_from_crossings(times, w1);
        const double exact = cfg.init.omega0[2] * (cfg.material.I3 - cfg.material.I1) /
                             cfg.material.I1;
        if (freq && exact != 0.0) {
            std::printf("precession: measured %.10g vs closed form %.10g (rel err %.3e)\n",
                        *freq, exact, std::abs(*freq - exact) / std::abs(exact));
        } else {
            std::printf("precession: too few zero crossings on [0, %g] to estimate\n",
                        cfg.t_end);
        }
    }
    std::printf("wrote %s\n", (dir / "rigid_compare.csv").c_str());
    return 0;
}

int cmd_verify(const std::string& suite, unsigned seed) {
    const CheckList results = run_suite(suite, seed);
    bool all_ok = true;
    for (const CheckResult& r : results) {
        std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.details.c_str());
        all_ok = all_ok && r.passed;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometrically exact Timoshenko beam simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, suite;
    unsigned seed = 0;

    CLI::App* sim = app.add_subcommand("simulate", "run the dynamic solver on a config file");
    sim->add_option("config", config_path, "config file")->required();
    sim->add_option("--out", out_dir, "output directory (overrides [output] directory)");
    sim->add_option("--seed", seed, "random seed");

    CLI::App* sta = app.add_subcommand("static", "solve the quasi-static system in S");
    sta->add_option("config", config_path, "config file")->required();
    sta->add_option("--out", out_dir, "output directory");
    sta->add_option("--seed", seed, "random seed");

    CLI::App* rig = app.add_subcommand("rigid", "rigid preset against the Euler oracle");
    rig->add_option("config", config_path, "config file")->required();
    rig->add_option("--out", out_dir, "output directory");
    rig->add_option("--seed", seed, "random seed");

    CLI::App* ver = app.add_subcommand("verify", "run a property-verification suite");
    ver->add_option("suite", suite,
                    "so3 | energy | hamilton-equivalence | bracket | action | closure | all")
        ->required();
    ver->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return cmd_simulate(config_path, out_dir);
        if (sta->parsed()) return cmd_static(config_path, out_dir);
        if (rig->parsed()) return cmd_rigid(config_path, out_dir);
        if (ver->parsed()) return cmd_verify(suite, seed);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

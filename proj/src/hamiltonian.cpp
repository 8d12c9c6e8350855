#include "gebeam/hamiltonian.hpp"

#include <cmath>
#include <random>

#include "gebeam/errors.hpp"

namespace gebeam {

namespace {

double trapezoid_weight(std::size_t j, std::size_t n, double ds) {
    return (j == 0 || j + 1 == n) ? 0.5 * ds : ds;
}

KinematicState kinematics_of(const PhaseState& ps) {
    KinematicState kin;
    kin.phi = ps.phi;
    kin.rot = ps.rot;
    return kin;
}

}  // namespace

PhaseState PhaseState::straight_rest(const Grid& g) {
    PhaseState ps;
    const KinematicState kin = KinematicState::straight_reference(g);
    ps.phi = kin.phi;
    ps.rot = kin.rot;
    ps.p_phi.assign(g.size(), Vec3::Zero());
    ps.sigma.assign(g.size(), Vec3::Zero());
    return ps;
}

bool PhaseState::all_finite() const {
    for (std::size_t j = 0; j < size(); ++j) {
        if (!phi[j].allFinite() || !p_phi[j].allFinite() || !sigma[j].allFinite() ||
            !rot[j].matrix().allFinite()) {
            return false;
        }
    }
    return true;
}

PhaseState legendre(const MobileFieldState& u, const KinematicState& kin,
                    const RigidityTensors& rig) {
    if (u.size() != kin.size()) throw config_error("legendre: inconsistent sizes");
    PhaseState ps;
    ps.phi = kin.phi;
    ps.rot = kin.rot;
    ps.p_phi.resize(u.size());
    ps.sigma.resize(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        ps.p_phi[j] = rig.rhoA * (kin.rot[j] * u.v[j]);
        ps.sigma[j] = rig.applyJ(u.w[j]);
    }
    return ps;
}

std::pair<MobileFieldState, KinematicState> inverse_legendre(const PhaseState& ps,
                                                             const RigidityTensors& rig,
                                                             const Grid& g) {
    if (ps.size() != g.size()) throw config_error("inverse_legendre: state does not match grid");
    KinematicState kin = kinematics_of(ps);
    MobileFieldState u = MobileFieldState::zero(g);
    for (std::size_t j = 0; j < ps.size(); ++j) {
        u.v[j] = (ps.rot[j].inverse() * ps.p_phi[j]) / rig.rhoA;
        u.w[j] = rig.applyJinv(ps.sigma[j]);
    }
    auto [eps, kap] = strain_from_kinematics(kin, g);
    u.eps = std::move(eps);
    u.kap = std::move(kap);
    return {std::move(u), std::move(kin)};
}

double hamiltonian(const PhaseState& ps, const RigidityTensors& rig, const Grid& g) {
    auto [eps, kap] = strain_from_kinematics(kinematics_of(ps), g);
    double acc = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const double dens = ps.p_phi[j].squaredNorm() / rig.rhoA +
                            ps.sigma[j].dot(rig.applyJinv(ps.sigma[j])) +
                            eps[j].dot(rig.applyG(eps[j])) + kap[j].dot(rig.applyH(kap[j]));
        acc += 0.5 * dens * trapezoid_weight(j, ps.size(), g.ds());
    }
    return acc;
}

double lagrangian(const MobileFieldState& u, const RigidityTensors& rig, const Grid& g) {
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double dens = kinetic_energy_density(u.v[j], u.w[j], rig) -
                            strain_energy_density(u.eps[j], u.kap[j], rig);
        acc += dens * trapezoid_weight(j, u.size(), g.ds());
    }
    return acc;
}

double metric_pairing(const PhaseState& ps, const std::vector<Vec3>& V_phi,
                      const std::vector<Mat3>& V_R, const Grid& g) {
    if (V_phi.size() != ps.size() || V_R.size() != ps.size()) {
        throw config_error("metric_pairing: velocity fields do not match state");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const Mat3 p_R = ps.rot[j].matrix() * hat(ps.sigma[j]).matrix();
        const double dens = ps.p_phi[j].dot(V_phi[j]) + frobenius(p_R, V_R[j]);
        acc += dens * trapezoid_weight(j, ps.size(), g.ds());
    }
    return acc;
}

PhaseRate hamilton_rhs(const PhaseState& ps, const BoundarySpec& bc,
                       const RigidityTensors& rig, const Grid& g) {
    if (ps.size() != g.size()) throw config_error("hamilton_rhs: state does not match grid");
    if (!ps.all_finite()) throw numeric_error("hamilton_rhs: non-finite state");

    const std::size_t n = ps.size();
    auto [eps, kap] = strain_from_kinematics(kinematics_of(ps), g);

    std::vector<Vec3> force(n), mres(n);
    for (std::size_t j = 0; j < n; ++j) {
        force[j] = ps.rot[j] * rig.applyG(eps[j]);
        mres[j] = rig.applyH(kap[j]);
    }
    const std::vector<Vec3> dforce = d_ds(force, g);
    const std::vector<Vec3> dm = d_ds(mres, g);

    PhaseRate rate;
    rate.dphi.resize(n);
    rate.dp_phi.resize(n);
    rate.body_omega.resize(n);
    rate.dsigma.resize(n);
    const Vec3 e3 = Vec3::UnitZ();
    for (std::size_t j = 0; j < n; ++j) {
        const Vec3 omega = rig.applyJinv(ps.sigma[j]);
        const Vec3 N = rig.applyG(eps[j]);
        rate.dphi[j] = ps.p_phi[j] / rig.rhoA;
        rate.dp_phi[j] = dforce[j];
        rate.body_omega[j] = omega;
        rate.dsigma[j] = dm[j] + kap[j].cross(mres[j]) + (eps[j] + e3).cross(N) -
                         omega.cross(ps.sigma[j]);
    }

    auto pin_end = [&](std::size_t j) {
        rate.dphi[j].setZero();
        rate.dp_phi[j].setZero();
        rate.body_omega[j].setZero();
        rate.dsigma[j].setZero();
    };
    if (bc.end0 == BoundaryKind::Clamped) pin_end(0);
    if (bc.endL == BoundaryKind::Clamped) pin_end(n - 1);
    return rate;
}

MobileFieldState hamilton_rate_to_mobile(const PhaseState& ps, const PhaseRate& rate,
                                         const BoundarySpec& bc, const RigidityTensors& rig,
                                         const Grid& g) {
    const std::size_t n = ps.size();
    const std::vector<Vec3> eps = strain_from_kinematics(kinematics_of(ps), g).first;

    std::vector<Mat3> rmats(n), rdots(n);
    for (std::size_t j = 0; j < n; ++j) {
        rmats[j] = ps.rot[j].matrix();
        rdots[j] = rmats[j] * hat(rate.body_omega[j]).matrix();
    }
    const std::vector<Mat3> drot = d_ds(rmats, g);
    const std::vector<Mat3> drdot = d_ds(rdots, g);
    const std::vector<Vec3> dphidot = d_ds(rate.dphi, g);

    MobileFieldState du = MobileFieldState::zero(g);
    const Vec3 e3 = Vec3::UnitZ();
    for (std::size_t j = 0; j < n; ++j) {
        const Mat3 rt = rmats[j].transpose();
        const Vec3 v = (rt * ps.p_phi[j]) / rig.rhoA;
        const Vec3& bw = rate.body_omega[j];

        du.v[j] = (rt * rate.dp_phi[j]) / rig.rhoA - bw.cross(v);
        du.w[j] = rig.applyJinv(rate.dsigma[j]);
        du.eps[j] = rt * dphidot[j] - bw.cross(eps[j] + e3);
        // exact rate of vee(skew(R^T dR/dS)) along dR/dt = R hat(bw)
        const Mat3 body_curv = rt * drot[j];
        du.kap[j] = vee(skew_project(-hat(bw).matrix() * body_curv + rt * drdot[j]));
    }

    const std::size_t last = n - 1;
    if (bc.end0 == BoundaryKind::Clamped) {
        du.v[0].setZero();
        du.w[0].setZero();
    } else {
        du.eps[0].setZero();
        du.kap[0].setZero();
    }
    if (bc.endL == BoundaryKind::Clamped) {
        du.v[last].setZero();
        du.w[last].setZero();
    } else {
        du.eps[last].setZero();
        du.kap[last].setZero();
    }
    return du;
}

namespace {

PhaseState phase_advance(const PhaseState& ps, double h, const PhaseRate& k) {
    PhaseState out = ps;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        out.phi[j] += h * k.dphi[j];
        out.p_phi[j] += h * k.dp_phi[j];
        out.sigma[j] += h * k.dsigma[j];
        out.rot[j] = ps.rot[j] * exp_so3(h * k.body_omega[j]);
    }
    return out;
}

}  // namespace

void step_phase_rk4(PhaseState& ps, double dt, const BoundarySpec& bc,
                    const RigidityTensors& rig, const Grid& g) {
    const PhaseRate k1 = hamilton_rhs(ps, bc, rig, g);
    const PhaseState s2 = phase_advance(ps, 0.5 * dt, k1);
    const PhaseRate k2 = hamilton_rhs(s2, bc, rig, g);
    const PhaseState s3 = phase_advance(ps, 0.5 * dt, k2);
    const PhaseRate k3 = hamilton_rhs(s3, bc, rig, g);
    const PhaseState s4 = phase_advance(ps, dt, k3);
    const PhaseRate k4 = hamilton_rhs(s4, bc, rig, g);

    for (std::size_t j = 0; j < ps.size(); ++j) {
        ps.phi[j] += dt / 6.0 * (k1.dphi[j] + 2.0 * k2.dphi[j] + 2.0 * k3.dphi[j] + k4.dphi[j]);
        ps.p_phi[j] +=
            dt / 6.0 * (k1.dp_phi[j] + 2.0 * k2.dp_phi[j] + 2.0 * k3.dp_phi[j] + k4.dp_phi[j]);
        ps.sigma[j] +=
            dt / 6.0 * (k1.dsigma[j] + 2.0 * k2.dsigma[j] + 2.0 * k3.dsigma[j] + k4.dsigma[j]);
        const Vec3 wbar = (k1.body_omega[j] + 2.0 * k2.body_omega[j] + 2.0 * k3.body_omega[j] +
                           k4.body_omega[j]) / 6.0;
        ps.rot[j] = ps.rot[j] * exp_so3(dt * wbar);
        if (ps.rot[j].orthogonality_defect() > Rot3::tol_orth) {
            ps.rot[j] = ps.rot[j].orthonormalized();
        }
    }
}

namespace {

struct PhaseGradient {
    std::vector<Vec3> dphi;
    std::vector<Vec3> dp;
    std::vector<Vec3> dsigma;
    std::vector<Vec3> dR;  // components along the directions R hat(e_i)
};

PhaseGradient observable_gradient(const Observable& f, const PhaseState& base, double h_fd) {
    PhaseGradient grad;
    const std::size_t n = base.size();
    grad.dphi.assign(n, Vec3::Zero());
    grad.dp.assign(n, Vec3::Zero());
    grad.dsigma.assign(n, Vec3::Zero());
    grad.dR.assign(n, Vec3::Zero());

    PhaseState ps = base;
    auto central = [&](double& slot, double h) {
        const double saved = slot;
        slot = saved + h;
        const double fp = f(ps);
        slot = saved - h;
        const double fm = f(ps);
        slot = saved;
        return (fp - fm) / (2.0 * h);
    };

    for (std::size_t j = 0; j < n; ++j) {
        for (int c = 0; c < 3; ++c) {
            grad.dphi[j][c] = central(ps.phi[j][c], h_fd * (1.0 + std::abs(ps.phi[j][c])));
            grad.dp[j][c] = central(ps.p_phi[j][c], h_fd * (1.0 + std::abs(ps.p_phi[j][c])));
            grad.dsigma[j][c] =
                central(ps.sigma[j][c], h_fd * (1.0 + std::abs(ps.sigma[j][c])));

            const Rot3 saved = ps.rot[j];
            Vec3 dir = Vec3::Zero();
            dir[c] = h_fd;
            ps.rot[j] = saved * exp_so3(dir);
            const double fp = f(ps);
            ps.rot[j] = saved * exp_so3(Vec3(-dir));
            const double fm = f(ps);
            ps.rot[j] = saved;
            grad.dR[j][c] = (fp - fm) / (2.0 * h_fd);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!grad.dphi[j].allFinite() || !grad.dp[j].allFinite() ||
            !grad.dsigma[j].allFinite() || !grad.dR[j].allFinite()) {
            throw numeric_error("bracket: non-finite observable gradient");
        }
    }
    return grad;
}

}  // namespace

double bracket(const Observable& f, const Observable& g, const PhaseState& ps, const Grid& grid,
               double h_fd) {
    const PhaseGradient gf = observable_gradient(f, ps, h_fd);
    const PhaseGradient gg = observable_gradient(g, ps, h_fd);
    double acc = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const double wj = trapezoid_weight(j, ps.size(), grid.ds());
        double node = gf.dphi[j].dot(gg.dp[j]) - gg.dphi[j].dot(gf.dp[j]);
        node += gf.dR[j].dot(gg.dsigma[j]) - gg.dR[j].dot(gf.dsigma[j]);
        node -= ps.sigma[j].dot(gf.dsigma[j].cross(gg.dsigma[j]));
        acc += node / wj;
    }
    return acc;
}

Observable sample_phi(int node, int comp) {
    return [node, comp](const PhaseState& ps) { return ps.phi[node][comp]; };
}
Observable sample_p_phi(int node, int comp) {
    return [node, comp](const PhaseState& ps) { return ps.p_phi[node][comp]; };
}
Observable sample_sigma(int node, int comp) {
    return [node, comp](const PhaseState& ps) { return ps.sigma[node][comp]; };
}

Observable hamiltonian_observable(const RigidityTensors& rig, const Grid& g) {
    return [rig, g](const PhaseState& ps) { return hamiltonian(ps, rig, g); };
}

// --- discrete action --------------------------------------------------------

namespace {

void check_uniform_times(const Trajectory& traj) {
    if (traj.snaps.size() < 3) throw config_error("action: need at least 3 snapshots");
    const double dt = traj.snaps[1].t - traj.snaps[0].t;
    for (std::size_t k = 1; k < traj.snaps.size(); ++k) {
        const double step = traj.snaps[k].t - traj.snaps[k - 1].t;
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
            throw config_error("action: snapshots are not uniformly spaced");
        }
    }
}

}  // namespace

double discrete_action(const Trajectory& traj, const RigidityTensors& rig, const Grid& g) {
    check_uniform_times(traj);
    const std::size_t K = traj.snaps.size();
    const double dt = traj.snaps[1].t - traj.snaps[0].t;

    double action = 0.0;
    for (std::size_t k = 1; k + 1 < K; ++k) {
        const KinematicState& prev = traj.snaps[k - 1].kin;
        const KinematicState& cur = traj.snaps[k].kin;
        const KinematicState& next = traj.snaps[k + 1].kin;
        auto [eps, kap] = strain_from_kinematics(cur, g);

        double lag = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const Vec3 vhat = (next.phi[j] - prev.phi[j]) / (2.0 * dt);
            const Mat3 rdot = (next.rot[j].matrix() - prev.rot[j].matrix()) / (2.0 * dt);
            const Vec3 what = vee(skew_project(cur.rot[j].matrix().transpose() * rdot));
            const double dens = 0.5 * rig.rhoA * vhat.squaredNorm() +
                                0.5 * what.dot(rig.applyJ(what)) -
                                strain_energy_density(eps[j], kap[j], rig);
            lag += dens * trapezoid_weight(j, g.size(), g.ds());
        }
        action += dt * lag;
    }
    return action;
}

double action_directional_derivative(const Trajectory& traj, const VariationField& var,
                                     const RigidityTensors& rig, const Grid& g, double h) {
    if (var.dphi.size() != traj.snaps.size() || var.dtheta.size() != traj.snaps.size()) {
        throw config_error("action: variation field does not match trajectory");
    }
    auto perturbed = [&](double eta) {
        Trajectory t = traj;
        for (std::size_t k = 0; k < t.snaps.size(); ++k) {
            for (std::size_t j = 0; j < g.size(); ++j) {
                t.snaps[k].kin.phi[j] += eta * var.dphi[k][j];
                t.snaps[k].kin.rot[j] =
                    t.snaps[k].kin.rot[j] * exp_so3(eta * var.dtheta[k][j]);
            }
        }
        return discrete_action(t, rig, g);
    };
    return (perturbed(h) - perturbed(-h)) / (2.0 * h);
}

double action_stationarity(const Trajectory& traj, const BoundarySpec& bc,
                           const RigidityTensors& rig, const Grid& g, int n_variations,
                           unsigned seed) {
    check_uniform_times(traj);
    const std::size_t K = traj.snaps.size();
    const double t0 = traj.snaps.front().t;
    const double span = traj.snaps.back().t - t0;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    auto spatial_mode = [&](int m, double s) {
        // clamped ends force the variation to vanish there; free ends do not
        const bool z0 = bc.end0 == BoundaryKind::Clamped;
        const bool zL = bc.endL == BoundaryKind::Clamped;
        const double x = s / g.length;
        if (z0 && zL) return std::sin(m * M_PI * x);
        if (z0) return std::sin((2 * m - 1) * M_PI * x / 2.0);
        if (zL) return std::cos((2 * m - 1) * M_PI * x / 2.0);
        return std::cos((m - 1) * M_PI * x);
    };

    double worst = 0.0;
    for (int trial = 0; trial < n_variations; ++trial) {
        VariationField var;
        var.dphi.assign(K, std::vector<Vec3>(g.size(), Vec3::Zero()));
        var.dtheta.assign(K, std::vector<Vec3>(g.size(), Vec3::Zero()));
        Vec3 cphi[3], ctheta[3];
        for (int m = 0; m < 3; ++m) {
            cphi[m] = Vec3(unit(rng), unit(rng), unit(rng));
            ctheta[m] = Vec3(unit(rng), unit(rng), unit(rng));
        }
        for (std::size_t k = 0; k < K; ++k) {
            const double tk = traj.snaps[k].t;
            const double bump = std::pow(std::sin(M_PI * (tk - t0) / span), 2);
            for (std::size_t j = 0; j < g.size(); ++j) {
                Vec3 dphi = Vec3::Zero(), dtheta = Vec3::Zero();
                for (int m = 1; m <= 3; ++m) {
                    const double psi = spatial_mode(m, g.s(static_cast<int>(j)));
                    dphi += cphi[m - 1] * psi;
                    dtheta += ctheta[m - 1] * psi;
                }
                var.dphi[k][j] = bump * dphi;
                var.dtheta[k][j] = bump * dtheta;
            }
        }
        worst = std::max(worst,
                         std::abs(action_directional_derivative(traj, var, rig, g, 1e-5)));
    }
    return worst;
}

}  // namespace gebeam

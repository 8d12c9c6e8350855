#include "gebeam/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "gebeam/kinematics.hpp"

namespace gebeam {

bool SubspaceMask::is_full() const {
    for (int i = 0; i < 3; ++i) {
        if (!v[i] || !w[i] || !eps[i] || !kap[i]) return false;
    }
    return true;
}

void SubspaceMask::apply(MobileFieldState& du) const {
    if (is_full()) return;
    for (std::size_t j = 0; j < du.size(); ++j) {
        for (int i = 0; i < 3; ++i) {
            if (!v[i]) du.v[j][i] = 0.0;
            if (!w[i]) du.w[j][i] = 0.0;
            if (!eps[i]) du.eps[j][i] = 0.0;
            if (!kap[i]) du.kap[j][i] = 0.0;
        }
    }
}

namespace {

void overwrite_boundary_rows(MobileFieldState& du, const BoundarySpec& bc) {
    const std::size_t last = du.size() - 1;
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
}

}  // namespace

MobileFieldState rhs_mobile(const MobileFieldState& u, const BoundarySpec& bc,
                            const RigidityTensors& rig, const Grid& g) {
    if (u.size() != g.size()) throw config_error("state size does not match grid");
    if (!u.all_finite()) throw numeric_error("rhs_mobile: non-finite field values");

    const std::size_t n = u.size();
    std::vector<Vec3> nres(n), mres(n);
    for (std::size_t j = 0; j < n; ++j) {
        nres[j] = rig.applyG(u.eps[j]);
        mres[j] = rig.applyH(u.kap[j]);
    }
    const std::vector<Vec3> dn = d_ds(nres, g);
    const std::vector<Vec3> dm = d_ds(mres, g);
    const std::vector<Vec3> dv = d_ds(u.v, g);
    const std::vector<Vec3> dw = d_ds(u.w, g);

    MobileFieldState du = MobileFieldState::zero(g);
    const Vec3 e3 = Vec3::UnitZ();
    for (std::size_t j = 0; j < n; ++j) {
        const Vec3& v = u.v[j];
        const Vec3& w = u.w[j];
        const Vec3& eps = u.eps[j];
        const Vec3& kap = u.kap[j];
        const Vec3 ed3 = eps + e3;

        du.v[j] = (dn[j] + kap.cross(nres[j]) - w.cross(rig.rhoA * v)) / rig.rhoA;
        du.w[j] = rig.applyJinv(dm[j] + kap.cross(mres[j]) + ed3.cross(nres[j]) -
                                w.cross(rig.applyJ(w)));
        du.eps[j] = dv[j] + kap.cross(v) + ed3.cross(w);
        du.kap[j] = dw[j] + kap.cross(w);
    }
    overwrite_boundary_rows(du, bc);
    return du;
}

MobileFieldState rhs_mobile_assembled(const MobileFieldState& u, const BoundarySpec& bc,
                                      const RigidityTensors& rig, const Grid& g) {
    if (u.size() != g.size()) throw config_error("state size does not match grid");
    using Mat12 = Eigen::Matrix<double, 12, 12>;
    using Vec12 = Eigen::Matrix<double, 12, 1>;

    const Mat3 Gm = rig.G.asDiagonal();
    const Mat3 Hm = rig.H.asDiagonal();
    const Mat3 Am = Mat3::Identity() * rig.rhoA;
    const Mat3 Jm = rig.J.asDiagonal();

    Mat12 D = Mat12::Zero();
    D.block<3, 3>(0, 6) = Gm;
    D.block<3, 3>(3, 9) = Hm;
    D.block<3, 3>(6, 0) = Gm;
    D.block<3, 3>(9, 3) = Hm;

    Mat12 M = Mat12::Zero();
    M.block<3, 3>(0, 0) = Am;
    M.block<3, 3>(3, 3) = Jm;
    M.block<3, 3>(6, 6) = Gm;
    M.block<3, 3>(9, 9) = Hm;

    const std::vector<Vec3> dv = d_ds(u.v, g);
    const std::vector<Vec3> dw = d_ds(u.w, g);
    const std::vector<Vec3> deps = d_ds(u.eps, g);
    const std::vector<Vec3> dkap = d_ds(u.kap, g);

    MobileFieldState du = MobileFieldState::zero(g);
    const Vec3 e3 = Vec3::UnitZ();
    for (std::size_t j = 0; j < u.size(); ++j) {
        const Mat3 W = hat(u.w[j]).matrix();
        const Mat3 K = hat(u.kap[j]).matrix();
        const Mat3 E = hat(Vec3(u.eps[j] + e3)).matrix();

        Mat12 Y = Mat12::Zero();
        Y.block<3, 3>(0, 0) = -W * Am;
        Y.block<3, 3>(0, 6) = K * Gm;
        Y.block<3, 3>(3, 3) = -W * Jm;
        Y.block<3, 3>(3, 6) = E * Gm;
        Y.block<3, 3>(3, 9) = K * Hm;
        Y.block<3, 3>(6, 0) = Gm * K;
        Y.block<3, 3>(6, 3) = Gm * E;
        Y.block<3, 3>(9, 3) = Hm * K;

        Vec12 uj, upj;
        uj << u.v[j], u.w[j], u.eps[j], u.kap[j];
        upj << dv[j], dw[j], deps[j], dkap[j];

        const Vec12 rhs = D * upj + Y * uj;
        const Vec12 dudt = M.diagonal().cwiseInverse().cwiseProduct(rhs);
        du.v[j] = dudt.segment<3>(0);
        du.w[j] = dudt.segment<3>(3);
        du.eps[j] = dudt.segment<3>(6);
        du.kap[j] = dudt.segment<3>(9);
    }
    overwrite_boundary_rows(du, bc);
    return du;
}

double quadrature_u_dot_Yu(const MobileFieldState& u, const RigidityTensors& rig,
                           const Grid& g) {
    const Vec3 e3 = Vec3::UnitZ();
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const Vec3& v = u.v[j];
        const Vec3& w = u.w[j];
        const Vec3 N = rig.applyG(u.eps[j]);
        const Vec3 M = rig.applyH(u.kap[j]);
        const Vec3 ed3 = u.eps[j] + e3;
        double val = v.dot(-w.cross(rig.rhoA * v) + u.kap[j].cross(N)) +
                     w.dot(-w.cross(rig.applyJ(w)) + ed3.cross(N) + u.kap[j].cross(M)) +
                     u.eps[j].dot(rig.applyG(u.kap[j].cross(v) + ed3.cross(w))) +
                     u.kap[j].dot(rig.applyH(u.kap[j].cross(w)));
        const double wj = (j == 0 || j + 1 == u.size()) ? 0.5 * g.ds() : g.ds();
        acc += wj * val;
    }
    return acc;
}

double max_wave_speed(const RigidityTensors& rig) {
    double c2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        c2 = std::max(c2, rig.G[i] / rig.rhoA);
        c2 = std::max(c2, rig.H[i] / rig.J[i]);
    }
    return std::sqrt(c2);
}

double cfl_dt_limit(const RigidityTensors& rig, const Grid& g, double cfl_safety) {
    return cfl_safety * g.ds() / max_wave_speed(rig);
}

void step_rk4(MobileFieldState& u, KinematicState& kin, double dt, const BoundarySpec& bc,
              const RigidityTensors& rig, const Grid& g, const SubspaceMask& mask,
              double cfl_safety) {
    const double limit = cfl_dt_limit(rig, g, cfl_safety);
    if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "step_rk4: dt = " << dt << " violates the CFL bound; c_max = "
            << max_wave_speed(rig) << ", admissible dt <= " << limit;
        throw config_error(msg.str());
    }

    auto rhs = [&](const MobileFieldState& s) {
        MobileFieldState du = rhs_mobile(s, bc, rig, g);
        mask.apply(du);
        return du;
    };

    const MobileFieldState k1 = rhs(u);
    const MobileFieldState u2 = MobileFieldState::lin(u, 0.5 * dt, k1);
    const MobileFieldState k2 = rhs(u2);
    const MobileFieldState u3 = MobileFieldState::lin(u, 0.5 * dt, k2);
    const MobileFieldState k3 = rhs(u3);
    const MobileFieldState u4 = MobileFieldState::lin(u, dt, k3);
    const MobileFieldState k4 = rhs(u4);

    // RK4-weighted stage values of (v, omega) drive the kinematic co-advance.
    std::vector<Vec3> vbar(u.size()), wbar(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        vbar[j] = (u.v[j] + 2.0 * u2.v[j] + 2.0 * u3.v[j] + u4.v[j]) / 6.0;
        wbar[j] = (u.w[j] + 2.0 * u2.w[j] + 2.0 * u3.w[j] + u4.w[j]) / 6.0;
    }

    for (std::size_t j = 0; j < u.size(); ++j) {
        u.v[j] += dt / 6.0 * (k1.v[j] + 2.0 * k2.v[j] + 2.0 * k3.v[j] + k4.v[j]);
        u.w[j] += dt / 6.0 * (k1.w[j] + 2.0 * k2.w[j] + 2.0 * k3.w[j] + k4.w[j]);
        u.eps[j] += dt / 6.0 * (k1.eps[j] + 2.0 * k2.eps[j] + 2.0 * k3.eps[j] + k4.eps[j]);
        u.kap[j] += dt / 6.0 * (k1.kap[j] + 2.0 * k2.kap[j] + 2.0 * k3.kap[j] + k4.kap[j]);
    }
    update_kinematics(kin, vbar, wbar, dt);
}

Trajectory simulate(const SimProblem& p) {
    if (p.u0.size() != p.grid.size() || p.kin0.size() != p.grid.size()) {
        throw config_error("simulate: initial state does not match grid");
    }
    if (!(p.t_end >= 0.0)) throw config_error("simulate: t_end must be non-negative");
    if (p.output_stride < 1) throw config_error("simulate: output_stride must be >= 1");

    Trajectory traj;
    traj.dt = p.dt;
    traj.stride = p.output_stride;

    MobileFieldState u = p.u0;
    KinematicState kin = p.kin0;
    const long n_steps = std::lround(p.t_end / p.dt);

    traj.snaps.push_back({0.0, u, kin});
    for (long k = 1; k <= n_steps; ++k) {
        step_rk4(u, kin, p.dt, p.bc, p.rig, p.grid, p.mask, p.cfl_safety);
        if (!u.all_finite()) throw numeric_error("simulate: solution became non-finite");
        if (k % p.output_stride == 0 || k == n_steps) {
            traj.snaps.push_back({k * p.dt, u, kin});
        }
    }
    return traj;
}

}  // namespace gebeam

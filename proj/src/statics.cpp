#include "gebeam/statics.hpp"

#include <cmath>

#include "gebeam/errors.hpp"

namespace gebeam {

namespace {

struct StrainPair {
    Vec3 eps;
    Vec3 kap;
};

StrainPair static_rhs(const StrainPair& y, const RigidityTensors& rig) {
    const Vec3 N = rig.applyG(y.eps);
    const Vec3 M = rig.applyH(y.kap);
    const Vec3 e3 = Vec3::UnitZ();
    StrainPair dy;
    dy.eps = -(y.kap.cross(N)).cwiseQuotient(rig.G);
    dy.kap = -(y.kap.cross(M) + (y.eps + e3).cross(N)).cwiseQuotient(rig.H);
    return dy;
}

StrainPair rk4_static_step(const StrainPair& y, double ds, const RigidityTensors& rig) {
    auto add = [](const StrainPair& a, double c, const StrainPair& b) {
        return StrainPair{a.eps + c * b.eps, a.kap + c * b.kap};
    };
    const StrainPair k1 = static_rhs(y, rig);
    const StrainPair k2 = static_rhs(add(y, 0.5 * ds, k1), rig);
    const StrainPair k3 = static_rhs(add(y, 0.5 * ds, k2), rig);
    const StrainPair k4 = static_rhs(add(y, ds, k3), rig);
    StrainPair out = y;
    out.eps += ds / 6.0 * (k1.eps + 2.0 * k2.eps + 2.0 * k3.eps + k4.eps);
    out.kap += ds / 6.0 * (k1.kap + 2.0 * k2.kap + 2.0 * k3.kap + k4.kap);
    return out;
}

}  // namespace

StaticProfiles static_ivp(const Vec3& eps0, const Vec3& kappa0, const RigidityTensors& rig,
                          const Grid& g) {
    StaticProfiles p;
    p.eps.resize(g.size());
    p.kap.resize(g.size());
    StrainPair y{eps0, kappa0};
    p.eps[0] = y.eps;
    p.kap[0] = y.kap;
    for (int j = 0; j + 1 < g.n_nodes; ++j) {
        y = rk4_static_step(y, g.ds(), rig);
        p.eps[j + 1] = y.eps;
        p.kap[j + 1] = y.kap;
    }
    return p;
}

StaticShootResult static_shoot(const StaticBVPSpec& spec, const RigidityTensors& rig,
                               const Grid& g) {
    using Vec6 = Eigen::Matrix<double, 6, 1>;
    using Mat6 = Eigen::Matrix<double, 6, 6>;

    auto tip_residual = [&](const Vec6& root) {
        const StaticProfiles p = static_ivp(root.head<3>(), root.tail<3>(), rig, g);
        const Vec3 eps_tip = p.eps.back();
        const Vec3 kap_tip = p.kap.back();
        Vec6 r;
        if (spec.kind == StaticTargetKind::TipLoads) {
            r.head<3>() = rig.applyG(eps_tip) - spec.target_a;
            r.tail<3>() = rig.applyH(kap_tip) - spec.target_b;
        } else {
            r.head<3>() = eps_tip - spec.target_a;
            r.tail<3>() = kap_tip - spec.target_b;
        }
        return r;
    };

    Vec6 x;
    x << spec.guess_eps0, spec.guess_kappa0;
    Vec6 res = tip_residual(x);

    StaticShootResult out;
    const double tol = 1e-10;
    const double fd_step = 1e-6;
    for (int it = 0; it < 50 && res.norm() > tol; ++it) {
        Mat6 jac;
        for (int i = 0; i < 6; ++i) {
            Vec6 xp = x;
            xp[i] += fd_step;
            jac.col(i) = (tip_residual(xp) - res) / fd_step;
        }
        const Vec6 step = jac.fullPivLu().solve(-res);
        double alpha = 1.0;
        Vec6 x_new = x + step;
        Vec6 res_new = tip_residual(x_new);
        for (int halvings = 0; halvings < 12 && res_new.norm() > res.norm(); ++halvings) {
            alpha *= 0.5;
            x_new = x + alpha * step;
            res_new = tip_residual(x_new);
        }
        x = x_new;
        res = res_new;
        out.iterations = it + 1;
    }

    out.converged = res.norm() <= tol;
    out.residual_norm = res.norm();
    out.eps0 = x.head<3>();
    out.kappa0 = x.tail<3>();
    out.profiles = static_ivp(out.eps0, out.kappa0, rig, g);
    return out;
}

std::vector<Vec3> rigid_euler(const Vec3& omega0, double T, double dt,
                              const RigidityTensors& rig, int n_samples) {
    if (!(T > 0.0) || !(dt > 0.0)) throw config_error("rigid_euler: T and dt must be positive");
    if (n_samples < 1) throw config_error("rigid_euler: need at least one sample");

    auto rhs = [&](const Vec3& w) { return rig.applyJinv((rig.applyJ(w)).cross(w)); };
    auto step = [&](Vec3 w, double h) {
        const Vec3 k1 = rhs(w);
        const Vec3 k2 = rhs(w + 0.5 * h * k1);
        const Vec3 k3 = rhs(w + 0.5 * h * k2);
        const Vec3 k4 = rhs(w + h * k3);
        return Vec3(w + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    };

    const double sample_dt = T / n_samples;
    const int sub = std::max(1, static_cast<int>(std::ceil(sample_dt / dt)));
    const double h = sample_dt / sub;

    std::vector<Vec3> samples;
    samples.reserve(n_samples + 1);
    Vec3 w = omega0;
    samples.push_back(w);
    for (int s = 0; s < n_samples; ++s) {
        for (int k = 0; k < sub; ++k) w = step(w, h);
        samples.push_back(w);
    }
    return samples;
}

}  // namespace gebeam

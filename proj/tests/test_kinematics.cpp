#include <cmath>

#include "doctest.h"
#include "gebeam/dynamics.hpp"
#include "gebeam/kinematics.hpp"

using namespace gebeam;

namespace {
const RigidityTensors kRig = RigidityTensors::from(default_material());
}

TEST_CASE("update_kinematics: identity on zero rates, axis-angle and translation") {
    const Grid g(5, 1.0);
    KinematicState kin = KinematicState::straight_reference(g);
    const std::vector<Vec3> zero(g.size(), Vec3::Zero());

    KinematicState same = kin;
    update_kinematics(same, zero, zero, 0.1);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK((same.phi[j] - kin.phi[j]).norm() == 0.0);
        CHECK((same.rot[j].matrix() - kin.rot[j].matrix()).norm() == 0.0);
    }

    const double wz = 1.3, dt = 0.05;
    std::vector<Vec3> spin(g.size(), Vec3(0, 0, wz));
    KinematicState spun = kin;
    update_kinematics(spun, zero, spin, dt);
    const Mat3 expect = exp_so3(Vec3(0, 0, wz * dt)).matrix();
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK((spun.rot[j].matrix() - expect).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((spun.phi[j] - kin.phi[j]).norm() == 0.0);
    }

    std::vector<Vec3> axial(g.size(), Vec3(0, 0, 1.0));
    KinematicState moved = kin;
    update_kinematics(moved, axial, zero, dt);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK((moved.phi[j] - kin.phi[j] - Vec3(0, 0, dt)).norm() <= 1e-16);
    }
}

TEST_CASE("reconstruct_space: zero strains give a straight beam") {
    const Grid g(21, 1.0);
    const Rot3 r0 = exp_so3(Vec3(0.3, -0.2, 0.9));
    const Vec3 phi0(1.0, -2.0, 0.5);
    const std::vector<Vec3> zero(g.size(), Vec3::Zero());
    const KinematicState kin = reconstruct_space(phi0, r0, zero, zero, g);
    for (int j = 0; j < g.n_nodes; ++j) {
        CHECK((kin.rot[j].matrix() - r0.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((kin.phi[j] - (phi0 + g.s(j) * (r0 * Vec3::UnitZ()))).cwiseAbs().maxCoeff() <=
              1e-14);
    }
}

TEST_CASE("reconstruct_space: constant curvature traces the analytic arc at O(ds^4)") {
    const double c = 1.25;
    std::vector<double> dss, errs;
    for (int n : {41, 81}) {
        const Grid g(n, 1.0);
        const std::vector<Vec3> zero(g.size(), Vec3::Zero());
        const std::vector<Vec3> kap(g.size(), Vec3(0, c, 0));
        const KinematicState kin = reconstruct_space(Vec3::Zero(), Rot3::identity(), zero, kap, g);
        double err = 0.0;
        for (int j = 0; j < n; ++j) {
            const double th = c * g.s(j);
            const Vec3 exact((1.0 - std::cos(th)) / c, 0.0, std::sin(th) / c);
            err = std::max(err, (kin.phi[j] - exact).cwiseAbs().maxCoeff());
        }
        dss.push_back(g.ds());
        errs.push_back(err);
    }
    CHECK(errs[1] <= 1e-7);
    const double slope = std::log(errs[0] / errs[1]) / std::log(dss[0] / dss[1]);
    CHECK(slope == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("reconstruct_space: torsion about d3 keeps the centerline straight") {
    const double tau = 2.0;
    const Grid g(41, 1.0);
    const std::vector<Vec3> zero(g.size(), Vec3::Zero());
    const std::vector<Vec3> kap(g.size(), Vec3(0, 0, tau));
    const KinematicState kin = reconstruct_space(Vec3::Zero(), Rot3::identity(), zero, kap, g);
    for (int j = 0; j < g.n_nodes; ++j) {
        CHECK((kin.phi[j] - Vec3(0, 0, g.s(j))).cwiseAbs().maxCoeff() <= 1e-12);
        const Mat3 expect = exp_so3(Vec3(0, 0, tau * g.s(j))).matrix();
        CHECK((kin.rot[j].matrix() - expect).cwiseAbs().maxCoeff() <= 5e-7);
    }
}

TEST_CASE("closure residuals: zero on the reference, sensitive to corruption") {
    const Grid g(31, 1.0);
    const MobileFieldState u = MobileFieldState::zero(g);
    KinematicState kin = KinematicState::straight_reference(g);
    auto [re, rk] = closure_residuals(u, kin, g);
    CHECK(re <= 1e-14);
    CHECK(rk <= 1e-14);

    for (auto& r : kin.rot) r = Rot3::from_matrix_unchecked(1.01 * r.matrix());
    auto [re2, rk2] = closure_residuals(u, kin, g);
    CHECK(re2 > 1e-3);
}

TEST_CASE("multiplicative updates hold orthogonality over 1e5 steps") {
    const Grid g(3, 1.0);
    KinematicState kin = KinematicState::straight_reference(g);
    std::vector<Vec3> v(g.size(), Vec3::Zero()), w(g.size());
    const double dt = 1e-3;
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double t = k * dt;
        for (std::size_t j = 0; j < g.size(); ++j) {
            w[j] = Vec3(std::sin(0.7 * t), std::cos(1.3 * t), 0.5 + 0.1 * j);
        }
        update_kinematics(kin, v, w, dt);
        worst = std::max(worst, kin.max_orthogonality_defect());
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("space and time reconstruction agree up to discretization error") {
    const BoundarySpec bc{BoundaryKind::Clamped, BoundaryKind::Free};
    auto run = [&](int n) {
        const Grid g(n, 1.0);
        MobileFieldState u = MobileFieldState::zero(g);
        for (int j = 0; j < g.n_nodes; ++j) {
            const double s = std::sin(M_PI * g.s(j) / 2.0);
            u.v[j] = Vec3(0.05 * s, 0, 0.02 * s);
            u.w[j] = Vec3(0, 0.04 * std::sin(M_PI * g.s(j)), 0);
        }
        KinematicState kin = KinematicState::straight_reference(g);
        const double dt = 0.5 * cfl_dt_limit(kRig, g);
        const long steps = std::lround(0.25 / dt);
        for (long k = 0; k < steps; ++k) step_rk4(u, kin, dt, bc, kRig, g);

        const KinematicState rec =
            reconstruct_space(kin.phi[0], kin.rot[0], u.eps, u.kap, g);
        double err = 0.0;
        for (int j = 0; j < n; ++j) {
            err = std::max(err, (rec.phi[j] - kin.phi[j]).cwiseAbs().maxCoeff());
            err = std::max(err,
                           (rec.rot[j].matrix() - kin.rot[j].matrix()).cwiseAbs().maxCoeff());
        }
        return err;
    };
    const double e1 = run(41);
    const double e2 = run(81);
    CHECK(e1 / e2 >= std::pow(2.0, 1.5));
}

TEST_CASE("strain_from_kinematics after reconstruct_space returns the profiles at O(ds^2)") {
    auto run = [&](int n) {
        const Grid g(n, 1.0);
        std::vector<Vec3> eps(g.size()), kap(g.size());
        for (int j = 0; j < g.n_nodes; ++j) {
            const double s = g.s(j);
            eps[j] = Vec3(0.05 * std::sin(M_PI * s), -0.04 * std::cos(2 * M_PI * s),
                          0.08 * std::sin(0.5 * M_PI * s));
            kap[j] = Vec3(0.6 * std::cos(M_PI * s), 0.5 * std::sin(M_PI * s),
                          0.3 * std::sin(2 * M_PI * s));
        }
        const KinematicState kin =
            reconstruct_space(Vec3(0.2, -0.1, 0.0), exp_so3(Vec3(0.1, 0.2, -0.3)), eps, kap, g);
        auto [eps2, kap2] = strain_from_kinematics(kin, g);
        double err = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            err = std::max(err, (eps2[j] - eps[j]).cwiseAbs().maxCoeff());
            err = std::max(err, (kap2[j] - kap[j]).cwiseAbs().maxCoeff());
        }
        return err;
    };
    const double e1 = run(41);
    const double e2 = run(81);
    CHECK(e1 / e2 >= 3.0);
    CHECK(e1 <= 1e-2);
}

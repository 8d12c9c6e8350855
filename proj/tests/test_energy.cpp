#include <cmath>

#include "doctest.h"
#include "gebeam/energy.hpp"

using namespace gebeam;

namespace {
const RigidityTensors kRig = RigidityTensors::from(default_material());
}

TEST_CASE("total energy on reference states") {
    const Grid g(41, 1.0);
    auto [k0, s0] = total_energy(MobileFieldState::zero(g), kRig, g);
    CHECK(k0 == 0.0);
    CHECK(s0 == 0.0);

    MobileFieldState u = MobileFieldState::zero(g);
    const double e = 0.31;
    for (auto& x : u.eps) x = Vec3(0, 0, e);
    auto [k1, s1] = total_energy(u, kRig, g);
    CHECK(k1 == 0.0);
    CHECK(s1 == doctest::Approx(0.5 * e * e).epsilon(1e-14));  // E A e^2 L / 2

    MobileFieldState uv = MobileFieldState::zero(g);
    for (auto& x : uv.v) x = Vec3(0, 0, 1);
    auto [k2, s2] = total_energy(uv, kRig, g);
    CHECK(k2 == doctest::Approx(0.5).epsilon(1e-14));  // rho A L / 2
    CHECK(s2 == 0.0);
}

TEST_CASE("boundary flux") {
    const Grid g(21, 1.0);
    CHECK(boundary_flux(MobileFieldState::zero(g), kRig) == 0.0);

    // clamped-free compatible state: v = w = 0 at S=0, eps = kappa = 0 at S=L
    MobileFieldState u = MobileFieldState::zero(g);
    for (int j = 0; j < g.n_nodes; ++j) {
        const double s = std::sin(M_PI * g.s(j) / 2.0);
        u.v[j] = Vec3(0.3 * s, 0, 0);
        u.eps[j] = Vec3(0, 0, 0.2 * std::cos(M_PI * g.s(j) / 2.0));
    }
    CHECK(std::abs(boundary_flux(u, kRig)) <= 1e-16);

    MobileFieldState us = MobileFieldState::zero(g);
    const double e = 0.11;
    us.v[g.n_nodes - 1] = Vec3(0, 0, 1.0);
    us.eps[g.n_nodes - 1] = Vec3(0, 0, e);
    CHECK(boundary_flux(us, kRig) == doctest::Approx(1.0 * 1.0 * e).epsilon(1e-15));
}

TEST_CASE("energy report on the zero trajectory") {
    const Grid g(11, 1.0);
    Trajectory traj;
    for (int k = 0; k <= 4; ++k) {
        traj.snaps.push_back({0.1 * k, MobileFieldState::zero(g),
                              KinematicState::straight_reference(g)});
    }
    const EnergyReport rep = energy_report(traj, kRig, g);
    CHECK(rep.rows.size() == 5);
    for (const auto& r : rep.rows) {
        CHECK(r.kinetic == 0.0);
        CHECK(r.strain == 0.0);
        CHECK(r.total == 0.0);
        CHECK(r.boundary_flux == 0.0);
        CHECK(r.cumulative_flux_integral == 0.0);
        CHECK(r.drift == 0.0);
    }
    CHECK(!rep.nonzero_flux_detected);
}

TEST_CASE("energy report flags nonzero boundary flux") {
    const Grid g(11, 1.0);
    MobileFieldState u = MobileFieldState::zero(g);
    u.v[g.n_nodes - 1] = Vec3(0, 0, 1.0);
    u.eps[g.n_nodes - 1] = Vec3(0, 0, 0.1);
    Trajectory traj;
    traj.snaps.push_back({0.0, u, KinematicState::straight_reference(g)});
    traj.snaps.push_back({0.1, u, KinematicState::straight_reference(g)});
    const EnergyReport rep = energy_report(traj, kRig, g);
    CHECK(rep.nonzero_flux_detected);
    CHECK(rep.max_abs_flux == doctest::Approx(0.1));
}

TEST_CASE("time derivative of a quadratic form uses the component derivative") {
    // manufactured eps(t); d/dt (eps.G eps / 2) must equal eps_dot . G eps
    auto eps_of = [](double t) {
        return Vec3(std::sin(1.3 * t), std::cos(0.7 * t), 0.4 * t * t - 0.2 * t);
    };
    auto deps_of = [](double t) {
        return Vec3(1.3 * std::cos(1.3 * t), -0.7 * std::sin(0.7 * t), 0.8 * t - 0.2);
    };
    auto U = [&](double t) {
        const Vec3 e = eps_of(t);
        return 0.5 * e.dot(kRig.applyG(e));
    };
    const double t0 = 0.83;
    const double exact = deps_of(t0).dot(kRig.applyG(eps_of(t0)));
    std::vector<double> hs{1e-2, 1e-3};
    std::vector<double> errs;
    for (double h : hs) {
        const double fd = (U(t0 + h) - U(t0 - h)) / (2 * h);
        errs.push_back(std::abs(fd - exact));
    }
    const double slope = std::log10(errs[0] / errs[1]);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("semi-discrete power balance closes at O(ds^2) on the conservative menus") {
    auto defect = [&](int n, const BoundarySpec& bc) {
        const Grid g(n, 1.0);
        MobileFieldState u = MobileFieldState::zero(g);
        for (int j = 0; j < g.n_nodes; ++j) {
            const double s = g.s(j);
            // kinetic fields vanish where an end is clamped, strains where free
            const double a0 = bc.end0 == BoundaryKind::Clamped ? std::sin(M_PI * s / 2.0) : 1.0;
            const double aL = bc.endL == BoundaryKind::Clamped ? std::cos(M_PI * s / 2.0) : 1.0;
            const double b0 = bc.end0 == BoundaryKind::Free ? std::sin(M_PI * s / 2.0) : 1.0;
            const double bL = bc.endL == BoundaryKind::Free ? std::cos(M_PI * s / 2.0) : 1.0;
            const double a = a0 * aL, b = b0 * bL;
            u.v[j] = Vec3(0.2 * a, 0.1 * a * std::sin(M_PI * s), 0.15 * a);
            u.w[j] = Vec3(0.05 * a, 0.2 * a, 0.1 * a * std::sin(M_PI * s));
            u.eps[j] = Vec3(0.1 * b, 0.05 * b, 0.2 * b);
            u.kap[j] = Vec3(0.07 * b, 0.12 * b, 0.04 * b);
        }
        const MobileFieldState du = rhs_mobile(u, bc, kRig, g);
        // dE/dt along the flow by differencing the quadratic energy
        const double h = 1e-6;
        auto etot = [&](const MobileFieldState& s2) {
            auto [k, s3] = total_energy(s2, kRig, g);
            return k + s3;
        };
        const double de =
            (etot(MobileFieldState::lin(u, h, du)) - etot(MobileFieldState::lin(u, -h, du))) /
            (2 * h);
        return std::abs(de - boundary_flux(u, kRig));
    };
    // the defect stays below ds^2 for every conservative end combination
    for (auto bc : {BoundarySpec{BoundaryKind::Clamped, BoundaryKind::Free},
                    BoundarySpec{BoundaryKind::Free, BoundaryKind::Free},
                    BoundarySpec{BoundaryKind::Clamped, BoundaryKind::Clamped}}) {
        CHECK(defect(41, bc) <= std::pow(1.0 / 40, 2));
        CHECK(defect(81, bc) <= std::pow(1.0 / 80, 2));
    }
    // and decays at second order where the boundary terms do not cancel
    const BoundarySpec cf{BoundaryKind::Clamped, BoundaryKind::Free};
    const double d1 = defect(41, cf);
    const double d2 = defect(81, cf);
    CHECK(d1 / d2 >= 2.5);
}

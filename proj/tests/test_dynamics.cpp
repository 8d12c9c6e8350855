#include <cmath>
#include <random>

#include "doctest.h"
#include "gebeam/dynamics.hpp"
#include "gebeam/energy.hpp"

using namespace gebeam;

namespace {

const RigidityTensors kRig = RigidityTensors::from(default_material());

MobileFieldState random_state(const Grid& g, double amp, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-amp, amp);
    MobileFieldState u = MobileFieldState::zero(g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        u.v[j] = Vec3(d(rng), d(rng), d(rng));
        u.w[j] = Vec3(d(rng), d(rng), d(rng));
        u.eps[j] = Vec3(d(rng), d(rng), d(rng));
        u.kap[j] = Vec3(d(rng), d(rng), d(rng));
    }
    return u;
}

double max_abs(const MobileFieldState& u) {
    double m = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        m = std::max({m, u.v[j].cwiseAbs().maxCoeff(), u.w[j].cwiseAbs().maxCoeff(),
                      u.eps[j].cwiseAbs().maxCoeff(), u.kap[j].cwiseAbs().maxCoeff()});
    }
    return m;
}

double max_diff(const MobileFieldState& a, const MobileFieldState& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        m = std::max({m, (a.v[j] - b.v[j]).cwiseAbs().maxCoeff(),
                      (a.w[j] - b.w[j]).cwiseAbs().maxCoeff(),
                      (a.eps[j] - b.eps[j]).cwiseAbs().maxCoeff(),
                      (a.kap[j] - b.kap[j]).cwiseAbs().maxCoeff()});
    }
    return m;
}

}  // namespace

TEST_CASE("straight rest state is an equilibrium") {
    const Grid g(25, 1.0);
    const MobileFieldState u = MobileFieldState::zero(g);
    for (auto bc : {BoundarySpec{BoundaryKind::Clamped, BoundaryKind::Free},
                    BoundarySpec{BoundaryKind::Free, BoundaryKind::Free}}) {
        CHECK(max_abs(rhs_mobile(u, bc, kRig, g)) == 0.0);
    }
}

TEST_CASE("uniform extension is an equilibrium under free-free conditions") {
    const Grid g(25, 1.0);
    MobileFieldState u = MobileFieldState::zero(g);
    for (auto& e : u.eps) e = Vec3(0, 0, 0.4);
    const BoundarySpec bc{BoundaryKind::Free, BoundaryKind::Free};
    CHECK(max_abs(rhs_mobile(u, bc, kRig, g)) <= 1e-15);
}

TEST_CASE("steady spin about the principal axis d3") {
    const Grid g(25, 1.0);
    MobileFieldState u = MobileFieldState::zero(g);
    for (auto& w : u.w) w = Vec3(0, 0, 2.5);
    const BoundarySpec bc{BoundaryKind::Free, BoundaryKind::Free};
    CHECK(max_abs(rhs_mobile(u, bc, kRig, g)) <= 1e-14);
}

TEST_CASE("non-finite input raises a numeric failure") {
    const Grid g(11, 1.0);
    MobileFieldState u = MobileFieldState::zero(g);
    u.v[4][1] = std::numeric_limits<double>::quiet_NaN();
    const BoundarySpec bc;
    CHECK_THROWS_AS(rhs_mobile(u, bc, kRig, g), numeric_error);
}

TEST_CASE("nodewise and assembled right-hand sides agree to roundoff") {
    const Grid g(9, 1.0);
    for (unsigned seed : {1u, 2u, 3u}) {
        const MobileFieldState u = random_state(g, 0.8, seed);
        const BoundarySpec bc{BoundaryKind::Clamped, BoundaryKind::Free};
        const MobileFieldState a = rhs_mobile(u, bc, kRig, g);
        const MobileFieldState b = rhs_mobile_assembled(u, bc, kRig, g);
        CHECK(max_diff(a, b) <= 1e-14 * std::max(1.0, max_abs(a)));
    }
}

TEST_CASE("the algebraic term is pointwise energy-neutral") {
    for (int n : {17, 33}) {
        const Grid g(n, 1.0);
        const MobileFieldState u = random_state(g, 1.0, 41u + n);
        CHECK(std::abs(quadrature_u_dot_Yu(u, kRig, g)) <= g.ds() * g.ds());
        CHECK(std::abs(quadrature_u_dot_Yu(u, kRig, g)) <= 1e-13);
    }
}

TEST_CASE("CFL bound and refusal diagnostics") {
    const Grid g(41, 1.0);
    CHECK(max_wave_speed(kRig) == doctest::Approx(1.0));
    const double lim = cfl_dt_limit(kRig, g, 0.5);
    CHECK(lim == doctest::Approx(0.5 * g.ds()));

    MobileFieldState u = MobileFieldState::zero(g);
    KinematicState kin = KinematicState::straight_reference(g);
    const BoundarySpec bc;
    CHECK_THROWS_AS(step_rk4(u, kin, 2.0 * lim, bc, kRig, g), config_error);
    CHECK_THROWS_AS(step_rk4(u, kin, -lim, bc, kRig, g), config_error);
    try {
        step_rk4(u, kin, 2.0 * lim, bc, kRig, g);
    } catch (const config_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("c_max") != std::string::npos);
        CHECK(msg.find("admissible") != std::string::npos);
    }
}

TEST_CASE("zero state stays zero under stepping and simulate") {
    const Grid g(31, 1.0);
    const double dt = 0.5 * cfl_dt_limit(kRig, g);
    MobileFieldState u = MobileFieldState::zero(g);
    KinematicState kin = KinematicState::straight_reference(g);
    const BoundarySpec bc;
    for (int k = 0; k < 5; ++k) step_rk4(u, kin, dt, bc, kRig, g);
    CHECK(max_abs(u) == 0.0);
    CHECK((kin.phi[15] - Vec3(0, 0, g.s(15))).norm() == 0.0);

    SimProblem p{g, kRig, bc, SubspaceMask::full(), dt, 100 * dt, 10, 0.5,
                 MobileFieldState::zero(g), KinematicState::straight_reference(g)};
    const Trajectory traj = simulate(p);
    CHECK(traj.snaps.size() == 11);
    for (const auto& s : traj.snaps) CHECK(max_abs(s.u) == 0.0);
}

TEST_CASE("planar (e1,e3) initial data stays planar") {
    const Grid g(41, 1.0);
    const BoundarySpec bc{BoundaryKind::Clamped, BoundaryKind::Free};
    MobileFieldState u = MobileFieldState::zero(g);
    for (int j = 0; j < g.n_nodes; ++j) {
        const double s = std::sin(M_PI * g.s(j) / 2.0);
        const double b = std::sin(M_PI * g.s(j));
        u.v[j] = Vec3(0.1 * s, 0, 0.05 * b);
        u.w[j] = Vec3(0, 0.2 * b, 0);
        u.eps[j] = Vec3(0.03 * b, 0, 0.02 * b);
        u.kap[j] = Vec3(0, 0.1 * b, 0);
    }
    u.eps[g.n_nodes - 1].setZero();
    u.kap[g.n_nodes - 1].setZero();
    KinematicState kin = KinematicState::straight_reference(g);
    const double dt = 0.5 * cfl_dt_limit(kRig, g);
    for (int k = 0; k < 50; ++k) {
        step_rk4(u, kin, dt, bc, kRig, g);
        double off = 0.0;
        for (int j = 0; j < g.n_nodes; ++j) {
            off = std::max({off, std::abs(u.v[j][1]), std::abs(u.w[j][0]),
                            std::abs(u.w[j][2]), std::abs(u.eps[j][1]),
                            std::abs(u.kap[j][0]), std::abs(u.kap[j][2])});
        }
        CHECK(off <= 1e-12);
    }
}

TEST_CASE("longitudinal initial data stays longitudinal") {
    const Grid g(41, 1.0);
    const BoundarySpec bc{BoundaryKind::Clamped, BoundaryKind::Free};
    MobileFieldState u = MobileFieldState::zero(g);
    for (int j = 0; j < g.n_nodes; ++j) {
        const double s = std::sin(M_PI * g.s(j) / 2.0);
        u.v[j] = Vec3(0, 0, 0.1 * s);
        u.w[j] = Vec3(0, 0, 0.07 * s);
        u.eps[j] = Vec3(0, 0, 0.02 * std::sin(M_PI * g.s(j)));
        u.kap[j] = Vec3(0, 0, 0.05 * std::sin(M_PI * g.s(j)));
    }
    KinematicState kin = KinematicState::straight_reference(g);
    const double dt = 0.5 * cfl_dt_limit(kRig, g);
    for (int k = 0; k < 50; ++k) {
        step_rk4(u, kin, dt, bc, kRig, g);
        double off = 0.0;
        for (int j = 0; j < g.n_nodes; ++j) {
            for (int i : {0, 1}) {
                off = std::max({off, std::abs(u.v[j][i]), std::abs(u.w[j][i]),
                                std::abs(u.eps[j][i]), std::abs(u.kap[j][i])});
            }
        }
        CHECK(off <= 1e-12);
    }
}

TEST_CASE("RK4 time stepping self-converges at fourth order") {
    const Grid g(31, 1.0);
    const BoundarySpec bc{BoundaryKind::Clamped, BoundaryKind::Free};
    MobileFieldState u0 = MobileFieldState::zero(g);
    for (int j = 0; j < g.n_nodes; ++j) {
        u0.v[j] = Vec3(0, 0, 0.2 * std::sin(M_PI * g.s(j) / 2.0));
    }
    const double dt0 = 0.4 * cfl_dt_limit(kRig, g);
    const double t_end = 32 * dt0;

    auto run = [&](double dt) {
        MobileFieldState u = u0;
        KinematicState kin = KinematicState::straight_reference(g);
        const long n = std::lround(t_end / dt);
        for (long k = 0; k < n; ++k) step_rk4(u, kin, dt, bc, kRig, g);
        return u;
    };
    const MobileFieldState u1 = run(dt0);
    const MobileFieldState u2 = run(dt0 / 2);
    const MobileFieldState u3 = run(dt0 / 4);
    const double e1 = max_diff(u1, u2);
    const double e2 = max_diff(u2, u3);
    const double slope = std::log2(e1 / e2);
    CHECK(slope == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("rigid mask freezes the strain fields") {
    const Grid g(5, 1.0);
    SubspaceMask rigid;
    rigid.eps = {false, false, false};
    rigid.kap = {false, false, false};
    MobileFieldState u = MobileFieldState::zero(g);
    for (auto& w : u.w) w = Vec3(0.3, 0.0, 1.0);
    KinematicState kin = KinematicState::straight_reference(g);
    const BoundarySpec bc{BoundaryKind::Free, BoundaryKind::Free};
    const double dt = 1e-3;
    const double T0 = 0.5 * u.w[0].dot(kRig.applyJ(u.w[0]));
    for (int k = 0; k < 400; ++k) step_rk4(u, kin, dt, bc, kRig, g, rigid);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(u.eps[j].norm() == 0.0);
        CHECK(u.kap[j].norm() == 0.0);
    }
    // all nodes evolve identically and kinetic energy of the spin is conserved
    CHECK((u.w[0] - u.w[4]).norm() == 0.0);
    CHECK(0.5 * u.w[2].dot(kRig.applyJ(u.w[2])) == doctest::Approx(T0).epsilon(1e-12));
}

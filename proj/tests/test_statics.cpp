#include <cmath>
#include <random>

#include "doctest.h"
#include "gebeam/statics.hpp"

using namespace gebeam;

namespace {
const RigidityTensors kRig = RigidityTensors::from(default_material());
}

TEST_CASE("static_ivp: zero data gives zero profiles") {
    const Grid g(41, 1.0);
    const StaticProfiles p = static_ivp(Vec3::Zero(), Vec3::Zero(), kRig, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(p.eps[j].norm() == 0.0);
        CHECK(p.kap[j].norm() == 0.0);
    }
}

TEST_CASE("static_ivp: pure bending and pure stretch are fixed points") {
    const Grid g(41, 1.0);
    const Vec3 bend(0, 0.8, 0);
    const StaticProfiles pb = static_ivp(Vec3::Zero(), bend, kRig, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK((pb.kap[j] - bend).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(pb.eps[j].cwiseAbs().maxCoeff() <= 1e-12);
    }

    const Vec3 stretch(0, 0, 0.3);
    const StaticProfiles ps = static_ivp(stretch, Vec3::Zero(), kRig, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK((ps.eps[j] - stretch).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(ps.kap[j].cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("static_shoot: tip moment recovers the linear pure-bending root") {
    const Grid g(41, 1.0);
    const double m_t = 3e-3;
    StaticBVPSpec spec;
    spec.kind = StaticTargetKind::TipLoads;
    spec.target_a = Vec3::Zero();
    spec.target_b = Vec3(0, m_t, 0);
    const StaticShootResult r = static_shoot(spec, kRig, g);
    CHECK(r.converged);
    CHECK(r.residual_norm <= 1e-10);
    CHECK(r.kappa0[1] == doctest::Approx(m_t / 1e-2).epsilon(1e-8));
    CHECK(std::abs(r.kappa0[0]) <= 1e-9);
    CHECK(r.eps0.cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("static_shoot: all-zero tip loads give the zero root") {
    const Grid g(21, 1.0);
    StaticBVPSpec spec;
    const StaticShootResult r = static_shoot(spec, kRig, g);
    CHECK(r.converged);
    CHECK(r.eps0.norm() <= 1e-12);
    CHECK(r.kappa0.norm() <= 1e-12);
}

TEST_CASE("static_shoot: recovers the root of a forward run") {
    const Grid g(41, 1.0);
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const Vec3 eps0(0.02 * d(rng), 0.02 * d(rng), 0.05 * d(rng));
        const Vec3 kap0(0.3 * d(rng), 0.3 * d(rng), 0.2 * d(rng));
        const StaticProfiles fwd = static_ivp(eps0, kap0, kRig, g);
        StaticBVPSpec spec;
        spec.kind = StaticTargetKind::TipLoads;
        spec.target_a = kRig.applyG(fwd.eps.back());
        spec.target_b = kRig.applyH(fwd.kap.back());
        const StaticShootResult r = static_shoot(spec, kRig, g);
        CHECK(r.converged);
        CHECK((r.eps0 - eps0).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((r.kappa0 - kap0).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("rigid_euler: principal-axis spin is constant") {
    const std::vector<Vec3> w = rigid_euler(Vec3(0, 0, 2.0), 1.0, 1e-4, kRig, 10);
    for (const Vec3& s : w) CHECK((s - Vec3(0, 0, 2.0)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("rigid_euler: axisymmetric precession matches the closed form") {
    // I1 = I2: omega3 constant, transverse pair rotates at omega3 (I3-I1)/I1
    const Vec3 w0(0.3, 0.0, 1.0);
    const double T = 1.0;
    const int n_samples = 100;
    const std::vector<Vec3> w = rigid_euler(w0, T, 1e-5, kRig, n_samples);
    const double Om = w0[2] * (2e-2 - 1e-2) / 1e-2;
    for (int s = 0; s <= n_samples; ++s) {
        const double t = T * s / n_samples;
        const Vec3 exact(0.3 * std::cos(Om * t), 0.3 * std::sin(Om * t), 1.0);
        CHECK((w[s] - exact).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("rigid_euler: Euler invariants over T = 10") {
    const Vec3 w0(1.1, -0.4, 0.8);
    const int n_samples = 50;
    const std::vector<Vec3> w = rigid_euler(w0, 10.0, 1e-4, kRig, n_samples);
    const double kin0 = w0.dot(kRig.applyJ(w0));
    const double mom0 = kRig.applyJ(w0).norm();
    for (const Vec3& s : w) {
        CHECK(s.dot(kRig.applyJ(s)) == doctest::Approx(kin0).epsilon(1e-12));
        CHECK(kRig.applyJ(s).norm() == doctest::Approx(mom0).epsilon(1e-12));
    }
}

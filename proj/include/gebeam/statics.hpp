#pragma once

#include <utility>
#include <vector>

#include "gebeam/material.hpp"
#include "gebeam/state.hpp"

namespace gebeam {

/// Strain/curvature profiles of a quasi-static solution, sampled on the grid.
struct StaticProfiles {
    std::vector<Vec3> eps;
    std::vector<Vec3> kap;
};

/**
 * Quasi-static march in S from root data at S = 0:
 *   (G eps)'   = -kappa x (G eps)
 *   (H kappa)' = -kappa x (H kappa) - (eps + d3) x (G eps)
 * Integrated with RK4 on the grid (the system is autonomous in S).
 */
StaticProfiles static_ivp(const Vec3& eps0, const Vec3& kappa0, const RigidityTensors& rig,
                          const Grid& g);

/// What the shooting solver should match at the tip S = L.
enum class StaticTargetKind { TipLoads, TipStrains };

/**
 * Two-point boundary data for the quasi-static system: unknown root values
 * (eps, kappa) at S = 0, six target scalars at S = L, either stress
 * resultants (N, M) or strains (eps, kappa).
 */
struct StaticBVPSpec {
    StaticTargetKind kind = StaticTargetKind::TipLoads;
    Vec3 target_a = Vec3::Zero();  ///< N or eps at the tip
    Vec3 target_b = Vec3::Zero();  ///< M or kappa at the tip
    Vec3 guess_eps0 = Vec3::Zero();
    Vec3 guess_kappa0 = Vec3::Zero();
};

struct StaticShootResult {
    bool converged = false;
    int iterations = 0;
    double residual_norm = 0.0;
    Vec3 eps0;
    Vec3 kappa0;
    StaticProfiles profiles;
};

/**
 * Newton shooting over static_ivp with a forward-difference Jacobian
 * (step 1e-6) and step halving; stops when the tip residual norm is
 * <= 1e-10 or after 50 iterations.
 */
StaticShootResult static_shoot(const StaticBVPSpec& spec, const RigidityTensors& rig,
                               const Grid& g);

/**
 * Reference integration of the rigid-body limit J dw/dt = -w x (J w),
 * RK4 with dt <= 1e-5 T. Returns omega at n_samples+1 equally spaced times
 * spanning [0, T].
 */
std::vector<Vec3> rigid_euler(const Vec3& omega0, double T, double dt,
                              const RigidityTensors& rig, int n_samples);

}  // namespace gebeam

#pragma once

#include <string>
#include <vector>

#include "gebeam/dynamics.hpp"
#include "gebeam/energy.hpp"
#include "gebeam/statics.hpp"

namespace gebeam {

/// Per-node rows (t, S, v, w, eps, kappa, phi, R as unit quaternion qw..qz)
/// for every snapshot, RFC-4180 style with LF endings and 17 significant
/// digits.
void write_trajectory_csv(const std::string& path, const Trajectory& traj, const Grid& g);

/// The seven-column energy ledger in row order of t.
void write_energy_csv(const std::string& path, const EnergyReport& rep);

/// Closure residuals (t, r_eps, r_kappa) per snapshot.
void write_closure_csv(const std::string& path, const Trajectory& traj, const Grid& g);

/// Quasi-static profiles (S, eps, kappa, N, M).
void write_static_profiles_csv(const std::string& path, const StaticProfiles& p,
                               const RigidityTensors& rig, const Grid& g);

/// Reconstructed centerline (S, phi, quaternion).
void write_centerline_csv(const std::string& path, const KinematicState& kin, const Grid& g);

/// Side-by-side spin trajectories of the simulator and the rigid-body oracle.
void write_rigid_compare_csv(const std::string& path, const std::vector<double>& t,
                             const std::vector<Vec3>& sim, const std::vector<Vec3>& ref);

}  // namespace gebeam

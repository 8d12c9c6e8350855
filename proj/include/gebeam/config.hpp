#pragma once

#include <optional>
#include <string>

#include "gebeam/dynamics.hpp"
#include "gebeam/material.hpp"

namespace gebeam {

/// Named initial-condition generator plus its parameters.
struct InitSpec {
    std::string name = "zero";
    double amplitude = 1e-2;
    int mode = 1;
    int axis = 1;              ///< transverse direction of bending_pluck (1 or 2)
    Vec3 omega0 = Vec3::Zero();
    Vec3 eps0 = Vec3::Zero();
    Vec3 kappa0 = Vec3::Zero();
};

/// Quasi-static solve requested through the [static] section.
struct StaticConfig {
    std::string mode = "ivp";  ///< "ivp" or "shoot"
    Vec3 eps0 = Vec3::Zero();
    Vec3 kappa0 = Vec3::Zero();
    Vec3 target_N = Vec3::Zero();
    Vec3 target_M = Vec3::Zero();
};

struct SimConfig {
    std::string preset_name;
    MaterialParams material = default_material();
    Vec3 g_scale = Vec3::Ones();   ///< rigidity floors (string limit)
    Vec3 h_scale = Vec3::Ones();
    int n_nodes = 101;
    BoundarySpec bc;
    std::optional<double> dt;
    double cfl_fraction = 0.5;     ///< dt = cfl_fraction * ds / c_max when dt unset
    double t_end = 1.0;
    int output_stride = 1;
    InitSpec init;
    StaticConfig statics;
    SubspaceMask mask;
    std::string output_dir = "out";

    void validate() const;
};

/**
 * Configuration templates for the special-case reductions:
 *   longitudinal  torsion+extension subspace (v3, w3, eps3, kappa3)
 *   planar13      bending+shear in the (e1,e3) plane
 *   planar23      bending+shear in the (e2,e3) plane
 *   static        kinetic components frozen
 *   rigid         strain components frozen (Euler rigid-body limit)
 *   string        GA_12, EI_1, EI_2, GI_3 floored at 1e-8 x their values
 * Unknown names raise config_error.
 */
SimConfig preset(const std::string& name);

/// Parse the line-oriented "[section] / key = value" format. Unknown sections
/// or keys are hard errors. A [preset] section is applied first, then
/// overridden by the remaining entries in file order.
SimConfig parse_config_text(const std::string& text);
SimConfig load_config(const std::string& path);

/// Materialize the initial fields named by cfg.init on the given grid.
MobileFieldState make_initial_state(const SimConfig& cfg, const Grid& g,
                                    const RigidityTensors& rig);

/// Initial kinematics consistent with the initial fields (reconstructed from
/// the strain profile for static_inject, straight reference otherwise).
KinematicState make_initial_kinematics(const SimConfig& cfg, const Grid& g,
                                       const RigidityTensors& rig);

/// Assemble the validated runnable problem.
SimProblem make_problem(const SimConfig& cfg);

}  // namespace gebeam

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gebeam/material.hpp"
#include "gebeam/state.hpp"

namespace gebeam {

enum class BoundaryKind { Clamped, Free };

/**
 * End conditions of the conservative menu: a Clamped end pins v = omega = 0,
 * a Free end pins eps = kappa = 0 (hence N = M = 0). Either choice zeroes the
 * boundary energy flux v.G eps + omega.H kappa at that end.
 */
struct BoundarySpec {
    BoundaryKind end0 = BoundaryKind::Clamped;
    BoundaryKind endL = BoundaryKind::Free;
};

/**
 * Componentwise evolution mask. Components flagged false have their time
 * derivative zeroed, which projects the dynamics onto one of the invariant
 * or constrained subspaces (planar, longitudinal, rigid, static).
 */
struct SubspaceMask {
    std::array<bool, 3> v{true, true, true};
    std::array<bool, 3> w{true, true, true};
    std::array<bool, 3> eps{true, true, true};
    std::array<bool, 3> kap{true, true, true};

    static SubspaceMask full() { return SubspaceMask{}; }
    bool is_full() const;
    void apply(MobileFieldState& du) const;
};

/**
 * Nodewise right-hand side of the mobile-frame system, with N = G eps and
 * M = H kappa and (.)' = d_ds:
 *   A  dv/dt    = N' + kappa x N - omega x A v
 *   J  dw/dt    = M' + kappa x M + (eps + d3) x N - omega x J w
 *   d eps/dt    = v' + kappa x v + (eps + d3) x omega
 *   d kappa/dt  = w' + kappa x w
 * Boundary rows are then overwritten: Clamped pins dv = dw = 0 at that end,
 * Free pins d eps = d kappa = 0.
 */
MobileFieldState rhs_mobile(const MobileFieldState& u, const BoundarySpec& bc,
                            const RigidityTensors& rig, const Grid& g);

/// Debug cross-check: assembles the per-node 12x12 blocks of D u' + Y u = M du
/// and solves the diagonal M; must agree with rhs_mobile to roundoff.
MobileFieldState rhs_mobile_assembled(const MobileFieldState& u, const BoundarySpec& bc,
                                      const RigidityTensors& rig, const Grid& g);

/// Pointwise u . (Y u) sampled on the grid and integrated by trapezoid;
/// vanishes identically (the algebraic term is energy-neutral).
double quadrature_u_dot_Yu(const MobileFieldState& u, const RigidityTensors& rig,
                           const Grid& g);

/// Fastest characteristic speed: max over sqrt(G_i / rho A) and sqrt(H_i / J_i).
double max_wave_speed(const RigidityTensors& rig);

/// Largest admissible explicit step cfl_safety * ds / c_max.
double cfl_dt_limit(const RigidityTensors& rig, const Grid& g, double cfl_safety = 0.5);

/**
 * One classical RK4 step of the mobile fields; the kinematics are co-advanced
 * multiplicatively with the RK4-weighted stage averages of (v, omega).
 * Refuses dt outside (0, cfl_safety ds / c_max].
 */
void step_rk4(MobileFieldState& u, KinematicState& kin, double dt, const BoundarySpec& bc,
              const RigidityTensors& rig, const Grid& g,
              const SubspaceMask& mask = SubspaceMask::full(), double cfl_safety = 0.5);

struct Snapshot {
    double t;
    MobileFieldState u;
    KinematicState kin;
};

struct Trajectory {
    std::vector<Snapshot> snaps;
    double dt = 0.0;
    int stride = 1;
};

/// Everything a fixed-step run needs, already validated.
struct SimProblem {
    Grid grid;
    RigidityTensors rig;
    BoundarySpec bc;
    SubspaceMask mask = SubspaceMask::full();
    double dt;
    double t_end;
    int output_stride = 1;
    double cfl_safety = 0.5;
    MobileFieldState u0;
    KinematicState kin0;
};

/// Fixed-step loop; stores a snapshot every output_stride steps (plus the
/// initial and final states).
Trajectory simulate(const SimProblem& p);

}  // namespace gebeam

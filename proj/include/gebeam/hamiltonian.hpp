#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gebeam/dynamics.hpp"
#include "gebeam/material.hpp"
#include "gebeam/state.hpp"

namespace gebeam {

/**
 * Discretized point of the phase space: placement and its momentum in
 * Cartesian components, rotation, and the left-trivialized rotational
 * momentum sigma = J omega in mobile components. The Cartesian rotational
 * momentum p_R is never stored; where needed it is materialized as
 * R hat(sigma).
 */
struct PhaseState {
    std::vector<Vec3> phi;
    std::vector<Vec3> p_phi;
    std::vector<Rot3> rot;
    std::vector<Vec3> sigma;

    static PhaseState straight_rest(const Grid& g);
    std::size_t size() const { return phi.size(); }
    bool all_finite() const;
};

/// Rates of the stored coordinates; dR/dt is represented by its body rate,
/// dR/dt = R hat(body_omega).
struct PhaseRate {
    std::vector<Vec3> dphi;
    std::vector<Vec3> dp_phi;
    std::vector<Vec3> body_omega;
    std::vector<Vec3> dsigma;
};

/// Scalar observable on phase space.
using Observable = std::function<double(const PhaseState&)>;

/// Momenta from velocities: p_phi = A (R v) (Cartesian), sigma = J omega.
PhaseState legendre(const MobileFieldState& u, const KinematicState& kin,
                    const RigidityTensors& rig);

/// Velocities from momenta: v = R^T p_phi / (rho A), omega = J^-1 sigma,
/// strains recomputed from the kinematics.
std::pair<MobileFieldState, KinematicState> inverse_legendre(const PhaseState& ps,
                                                             const RigidityTensors& rig,
                                                             const Grid& g);

/// H = (1/2) integral of  <p,A^-1 p> + <sigma,J^-1 sigma> + <eps,G eps> + <kappa,H kappa>.
double hamiltonian(const PhaseState& ps, const RigidityTensors& rig, const Grid& g);

/// Lagrangian of the mobile fields, kinetic minus strain part.
double lagrangian(const MobileFieldState& u, const RigidityTensors& rig, const Grid& g);

/**
 * Riemannian pairing g(p, V) of the stored momenta with a velocity field
 * (V_phi Cartesian vectors, V_R matrices in T_R SO(3)), evaluated with
 * materialized p_R = R hat(sigma) and the Frobenius product.
 */
double metric_pairing(const PhaseState& ps, const std::vector<Vec3>& V_phi,
                      const std::vector<Mat3>& V_R, const Grid& g);

/**
 * Hamilton equations in the stored coordinates:
 *   dphi/dt    = p_phi / (rho A)
 *   dp_phi/dt  = d_ds(R N)                      (Cartesian force derivative)
 *   dR/dt      = R hat(J^-1 sigma)
 *   dsigma/dt  = M' + kappa x M + (eps + d3) x N - omega x sigma
 * with (eps, kappa) from strain_from_kinematics. A Clamped end holds phi and
 * R fixed (all four rows pinned); a Free end is natural.
 */
PhaseRate hamilton_rhs(const PhaseState& ps, const BoundarySpec& bc,
                       const RigidityTensors& rig, const Grid& g);

/**
 * Exact tangent of the inverse Legendre chart along a phase rate, expressed
 * as mobile field rates; boundary rows are overwritten per bc so the result
 * is comparable with rhs_mobile.
 */
MobileFieldState hamilton_rate_to_mobile(const PhaseState& ps, const PhaseRate& rate,
                                         const BoundarySpec& bc, const RigidityTensors& rig,
                                         const Grid& g);

/// RK4 step of the Hamiltonian flow (multiplicative on the rotation field).
void step_phase_rk4(PhaseState& ps, double dt, const BoundarySpec& bc,
                    const RigidityTensors& rig, const Grid& g);

/**
 * Left-trivialized Poisson bracket of two observables, evaluated numerically.
 * Functional gradients are central finite differences on the nodal values
 * (step h_fd (1 + |value|); rotations are differenced along R hat(e_i) at
 * fixed sigma). Assembled per node with trapezoid weights w_j as
 *   <df/dphi, dg/dp> - (f<->g)  +  <df/dR, dg/dsigma> - (f<->g)
 *   - <sigma, df/dsigma x dg/dsigma>
 * the last term being the fiber (Lie-Poisson) part of the canonical bracket
 * carried by the trivialization.
 */
double bracket(const Observable& f, const Observable& g, const PhaseState& ps, const Grid& grid,
               double h_fd = 1e-5);

/// Samplers of stored coordinates, for Hamilton-equation checks.
Observable sample_phi(int node, int comp);
Observable sample_p_phi(int node, int comp);
Observable sample_sigma(int node, int comp);

/// Observable evaluating the Hamiltonian itself.
Observable hamiltonian_observable(const RigidityTensors& rig, const Grid& g);

// --- discrete action -------------------------------------------------------

/// Space-time variation field delta phi, delta theta per snapshot and node.
struct VariationField {
    std::vector<std::vector<Vec3>> dphi;
    std::vector<std::vector<Vec3>> dtheta;
};

/**
 * Action of a kinematic trajectory: time sum (interior snapshots, uniform
 * spacing) of the Lagrangian with velocities estimated by central time
 * differences and strains from strain_from_kinematics.
 */
double discrete_action(const Trajectory& traj, const RigidityTensors& rig, const Grid& g);

/// Directional derivative of the action along (dphi, dtheta), by central
/// differencing in the variation amplitude.
double action_directional_derivative(const Trajectory& traj, const VariationField& var,
                                     const RigidityTensors& rig, const Grid& g,
                                     double h = 1e-5);

/**
 * Max |directional derivative| over n_variations random admissible variation
 * fields: smooth in S, compatible with the boundary pairing (zero where an
 * end is clamped), vanishing at the first and last snapshot times.
 */
double action_stationarity(const Trajectory& traj, const BoundarySpec& bc,
                           const RigidityTensors& rig, const Grid& g, int n_variations,
                           unsigned seed);

}  // namespace gebeam

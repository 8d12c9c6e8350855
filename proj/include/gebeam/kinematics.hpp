#pragma once

#include <utility>
#include <vector>

#include "gebeam/state.hpp"

namespace gebeam {

/**
 * Advance the kinematics one step from mobile-frame rates:
 *   R   <- R exp(dt hat(omega))        (multiplicative, exactly orthogonal)
 *   phi <- phi + dt R_mid v            (R_mid = R exp(dt/2 hat(omega)))
 * v and omega are mobile components, so the Cartesian velocity is R v.
 */
void update_kinematics(KinematicState& kin, const std::vector<Vec3>& v,
                       const std::vector<Vec3>& w, double dt);

/**
 * Recover the kinematics along S from boundary data at S = 0 by an RK4 march
 * on dR/dS = R hat(kappa), dphi/dS = R (eps + e3), with (eps, kappa)
 * interpolated linearly at half-steps; R is re-orthonormalized each step.
 */
KinematicState reconstruct_space(const Vec3& phi0, const Rot3& R0,
                                 const std::vector<Vec3>& eps,
                                 const std::vector<Vec3>& kap, const Grid& g);

/**
 * Drift between the evolved strain fields and the strains recomputed from the
 * co-advanced kinematics: max-norm over nodes/components, for eps and kappa.
 */
std::pair<double, double> closure_residuals(const MobileFieldState& u,
                                            const KinematicState& kin, const Grid& g);

}  // namespace gebeam

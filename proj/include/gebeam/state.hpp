#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gebeam/errors.hpp"
#include "gebeam/so3.hpp"

namespace gebeam {

/// Uniform grid on the material coordinate S in [0, L], nodes S_j = j ds.
struct Grid {
    int n_nodes;
    double length;

    Grid(int n, double L) : n_nodes(n), length(L) {
        if (n < 3) throw config_error("grid needs at least 3 nodes");
        if (!(L > 0.0)) throw config_error("grid length must be positive");
    }

    double ds() const { return length / (n_nodes - 1); }
    double s(int j) const { return j * ds(); }
    std::size_t size() const { return static_cast<std::size_t>(n_nodes); }
};

/// Nodal samples of the mobile-frame unknowns u = (v, omega, eps, kappa).
struct MobileFieldState {
    std::vector<Vec3> v;      ///< velocity, mobile components
    std::vector<Vec3> w;      ///< spin
    std::vector<Vec3> eps;    ///< strain
    std::vector<Vec3> kap;    ///< curvature

    static MobileFieldState zero(const Grid& g) {
        MobileFieldState u;
        u.v.assign(g.size(), Vec3::Zero());
        u.w.assign(g.size(), Vec3::Zero());
        u.eps.assign(g.size(), Vec3::Zero());
        u.kap.assign(g.size(), Vec3::Zero());
        return u;
    }

    std::size_t size() const { return v.size(); }
    bool all_finite() const;

    // Vector-space helpers for the explicit time stepper.
    void axpy(double a, const MobileFieldState& x);            // this += a*x
    static MobileFieldState lin(const MobileFieldState& u, double a,
                                const MobileFieldState& x);    // u + a*x
};

/// Nodal placement (Cartesian) and cross-section rotation.
struct KinematicState {
    std::vector<Vec3> phi;
    std::vector<Rot3> rot;

    /// Straight stress-free reference: phi(S) = S e3, R = Id.
    static KinematicState straight_reference(const Grid& g);

    std::size_t size() const { return phi.size(); }
    double max_orthogonality_defect() const;
};

/**
 * d/dS by second-order finite differences: central at interior nodes,
 * 3-point one-sided at S = 0 and S = L. Exact on linear data at every node.
 */
std::vector<Vec3> d_ds(const std::vector<Vec3>& f, const Grid& g);

/// Same stencils applied entrywise to a field of matrices.
std::vector<Mat3> d_ds(const std::vector<Mat3>& f, const Grid& g);

/**
 * Strains from the kinematics:
 *   eps_j   = R_j^T (d_ds phi)_j - e3
 *   kappa_j = vee(skew_project(R_j^T (d_ds R)_j))
 * The skew projection guards kappa against the O(ds^2) symmetric
 * contamination of the discrete R^-1 R'.
 */
std::pair<std::vector<Vec3>, std::vector<Vec3>> strain_from_kinematics(
    const KinematicState& kin, const Grid& g);

}  // namespace gebeam

#include "gebeam/kinematics.hpp"

#include <cmath>

namespace gebeam {

void update_kinematics(KinematicState& kin, const std::vector<Vec3>& v,
                       const std::vector<Vec3>& w, double dt) {
    if (v.size() != kin.size() || w.size() != kin.size()) {
        throw config_error("update_kinematics: rate fields do not match state");
    }
    for (std::size_t j = 0; j < kin.size(); ++j) {
        const Rot3 rmid = kin.rot[j] * exp_so3(0.5 * dt * w[j]);
        kin.phi[j] += dt * (rmid * v[j]);
        kin.rot[j] = kin.rot[j] * exp_so3(dt * w[j]);
        if (kin.rot[j].orthogonality_defect() > Rot3::tol_orth) {
            kin.rot[j] = kin.rot[j].orthonormalized();
        }
    }
}

KinematicState reconstruct_space(const Vec3& phi0, const Rot3& R0,
                                 const std::vector<Vec3>& eps,
                                 const std::vector<Vec3>& kap, const Grid& g) {
    if (eps.size() != g.size() || kap.size() != g.size()) {
        throw config_error("reconstruct_space: strain fields do not match grid");
    }
    KinematicState kin;
    kin.phi.resize(g.size());
    kin.rot.resize(g.size());
    kin.phi[0] = phi0;
    kin.rot[0] = R0;

    const double ds = g.ds();
    const Vec3 e3 = Vec3::UnitZ();
    for (int j = 0; j + 1 < g.n_nodes; ++j) {
        const Vec3 kap_half = 0.5 * (kap[j] + kap[j + 1]);
        const Vec3 eps_half = 0.5 * (eps[j] + eps[j + 1]);
        const Mat3 R = kin.rot[j].matrix();
        const Vec3 p = kin.phi[j];

        const Mat3 k1R = R * hat(kap[j]).matrix();
        const Vec3 k1p = R * (eps[j] + e3);
        const Mat3 R2 = R + 0.5 * ds * k1R;
        const Mat3 k2R = R2 * hat(kap_half).matrix();
        const Vec3 k2p = R2 * (eps_half + e3);
        const Mat3 R3 = R + 0.5 * ds * k2R;
        const Mat3 k3R = R3 * hat(kap_half).matrix();
        const Vec3 k3p = R3 * (eps_half + e3);
        const Mat3 R4 = R + ds * k3R;
        const Mat3 k4R = R4 * hat(kap[j + 1]).matrix();
        const Vec3 k4p = R4 * (eps[j + 1] + e3);

        const Mat3 Rn = R + ds / 6.0 * (k1R + 2.0 * k2R + 2.0 * k3R + k4R);
        kin.rot[j + 1] = Rot3::from_matrix_unchecked(Rn).orthonormalized();
        kin.phi[j + 1] = p + ds / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    return kin;
}

std::pair<double, double> closure_residuals(const MobileFieldState& u,
                                            const KinematicState& kin, const Grid& g) {
    auto [eps, kap] = strain_from_kinematics(kin, g);
    double r_eps = 0.0, r_kap = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        r_eps = std::max(r_eps, (eps[j] - u.eps[j]).cwiseAbs().maxCoeff());
        r_kap = std::max(r_kap, (kap[j] - u.kap[j]).cwiseAbs().maxCoeff());
    }
    return {r_eps, r_kap};
}

}  // namespace gebeam

#include "gebeam/state.hpp"

#include <cmath>

namespace gebeam {

bool MobileFieldState::all_finite() const {
    auto ok = [](const std::vector<Vec3>& f) {
        for (const Vec3& x : f) {
            if (!x.allFinite()) return false;
        }
        return true;
    };
    return ok(v) && ok(w) && ok(eps) && ok(kap);
}

void MobileFieldState::axpy(double a, const MobileFieldState& x) {
    for (std::size_t j = 0; j < size(); ++j) {
        v[j] += a * x.v[j];
        w[j] += a * x.w[j];
        eps[j] += a * x.eps[j];
        kap[j] += a * x.kap[j];
    }
}

MobileFieldState MobileFieldState::lin(const MobileFieldState& u, double a,
                                       const MobileFieldState& x) {
    MobileFieldState r = u;
    r.axpy(a, x);
    return r;
}

KinematicState KinematicState::straight_reference(const Grid& g) {
    KinematicState kin;
    kin.phi.resize(g.size());
    kin.rot.assign(g.size(), Rot3::identity());
    for (int j = 0; j < g.n_nodes; ++j) kin.phi[j] = Vec3(0.0, 0.0, g.s(j));
    return kin;
}

double KinematicState::max_orthogonality_defect() const {
    double worst = 0.0;
    for (const Rot3& r : rot) worst = std::max(worst, r.orthogonality_defect());
    return worst;
}

namespace {

// Derivative row at node j as (index, coefficient) triplets, scaled by 1/(2 ds).
template <typename Field, typename Out>
void apply_stencil(const Field& f, const Grid& g, std::vector<Out>& out) {
    const int n = g.n_nodes;
    if (static_cast<int>(f.size()) != n) throw config_error("field size does not match grid");
    const double inv2ds = 1.0 / (2.0 * g.ds());
    out.resize(f.size());
    // one-sided rows written as differences so constants are annihilated exactly
    out[0] = (4.0 * (f[1] - f[0]) - (f[2] - f[0])) * inv2ds;
    for (int j = 1; j < n - 1; ++j) out[j] = (f[j + 1] - f[j - 1]) * inv2ds;
    out[n - 1] = (4.0 * (f[n - 1] - f[n - 2]) - (f[n - 1] - f[n - 3])) * inv2ds;
}

}  // namespace

std::vector<Vec3> d_ds(const std::vector<Vec3>& f, const Grid& g) {
    std::vector<Vec3> out;
    apply_stencil(f, g, out);
    return out;
}

std::vector<Mat3> d_ds(const std::vector<Mat3>& f, const Grid& g) {
    std::vector<Mat3> out;
    apply_stencil(f, g, out);
    return out;
}

std::pair<std::vector<Vec3>, std::vector<Vec3>> strain_from_kinematics(
    const KinematicState& kin, const Grid& g) {
    if (kin.size() != g.size()) throw config_error("kinematic state does not match grid");
    std::vector<Mat3> rmats(kin.size());
    for (std::size_t j = 0; j < kin.size(); ++j) rmats[j] = kin.rot[j].matrix();

    const std::vector<Vec3> dphi = d_ds(kin.phi, g);
    const std::vector<Mat3> drot = d_ds(rmats, g);

    std::vector<Vec3> eps(kin.size()), kap(kin.size());
    const Vec3 e3 = Vec3::UnitZ();
    for (std::size_t j = 0; j < kin.size(); ++j) {
        const Mat3 rt = rmats[j].transpose();
        eps[j] = rt * dphi[j] - e3;
        kap[j] = vee(skew_project(rt * drot[j]));
    }
    return {std::move(eps), std::move(kap)};
}

}  // namespace gebeam

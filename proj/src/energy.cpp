#include "gebeam/energy.hpp"

#include <cmath>

namespace gebeam {

std::pair<double, double> total_energy(const MobileFieldState& u, const RigidityTensors& rig,
                                       const Grid& g) {
    if (u.size() != g.size()) throw config_error("total_energy: state does not match grid");
    double kin = 0.0, str = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double wj = (j == 0 || j + 1 == u.size()) ? 0.5 * g.ds() : g.ds();
        kin += wj * kinetic_energy_density(u.v[j], u.w[j], rig);
        str += wj * strain_energy_density(u.eps[j], u.kap[j], rig);
    }
    return {kin, str};
}

double boundary_flux(const MobileFieldState& u, const RigidityTensors& rig) {
    auto end_power = [&](std::size_t j) {
        return u.v[j].dot(rig.applyG(u.eps[j])) + u.w[j].dot(rig.applyH(u.kap[j]));
    };
    return end_power(u.size() - 1) - end_power(0);
}

EnergyReport energy_report(const Trajectory& traj, const RigidityTensors& rig,
                           const Grid& g) {
    EnergyReport rep;
    if (traj.snaps.empty()) return rep;

    double e0 = 0.0;
    double flux_integral = 0.0;
    double prev_t = 0.0, prev_flux = 0.0;
    for (std::size_t k = 0; k < traj.snaps.size(); ++k) {
        const Snapshot& s = traj.snaps[k];
        auto [kin, str] = total_energy(s.u, rig, g);
        const double flux = boundary_flux(s.u, rig);
        if (k == 0) {
            e0 = kin + str;
        } else {
            flux_integral += 0.5 * (s.t - prev_t) * (flux + prev_flux);
        }
        EnergyLedgerRow row;
        row.t = s.t;
        row.kinetic = kin;
        row.strain = str;
        row.total = kin + str;
        row.boundary_flux = flux;
        row.cumulative_flux_integral = flux_integral;
        row.drift = row.total - e0 - flux_integral;
        rep.rows.push_back(row);
        rep.max_abs_flux = std::max(rep.max_abs_flux, std::abs(flux));
        rep.max_abs_drift = std::max(rep.max_abs_drift, std::abs(row.drift));
        prev_t = s.t;
        prev_flux = flux;
    }
    rep.nonzero_flux_detected = rep.max_abs_flux > 1e-12 * std::max(1.0, e0);
    return rep;
}

}  // namespace gebeam

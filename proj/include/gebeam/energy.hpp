#pragma once

#include <utility>
#include <vector>

#include "gebeam/dynamics.hpp"
#include "gebeam/material.hpp"
#include "gebeam/state.hpp"

namespace gebeam {

/// Trapezoidal quadrature of the kinetic and strain energy densities.
std::pair<double, double> total_energy(const MobileFieldState& u, const RigidityTensors& rig,
                                       const Grid& g);

/// Boundary power (v . G eps + omega . H kappa) at S = L minus the same at S = 0.
double boundary_flux(const MobileFieldState& u, const RigidityTensors& rig);

struct EnergyLedgerRow {
    double t;
    double kinetic;
    double strain;
    double total;
    double boundary_flux;
    double cumulative_flux_integral;
    double drift;  ///< total - total(0) - cumulative_flux_integral
};

struct EnergyReport {
    std::vector<EnergyLedgerRow> rows;
    bool nonzero_flux_detected = false;
    double max_abs_flux = 0.0;
    double max_abs_drift = 0.0;
};

/// One ledger row per snapshot; the flux is integrated by trapezoid in t.
/// Flags trajectories whose boundary flux is not identically zero.
EnergyReport energy_report(const Trajectory& traj, const RigidityTensors& rig, const Grid& g);

}  // namespace gebeam

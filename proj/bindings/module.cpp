#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gebeam/config.hpp"
#include "gebeam/csv.hpp"
#include "gebeam/energy.hpp"
#include "gebeam/hamiltonian.hpp"
#include "gebeam/kinematics.hpp"
#include "gebeam/statics.hpp"
#include "gebeam/verify.hpp"

namespace py = pybind11;
using namespace gebeam;

PYBIND11_MODULE(_gebeam, m) {
    m.doc() = "Geometrically exact Timoshenko beam dynamics (C++ core)";

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<numeric_error>(m, "NumericError");
    py::register_exception<io_error>(m, "IoError");

    // so(3) / SO(3)
    py::class_<Rot3>(m, "Rot3")
        .def(py::init<>())
        .def_static("identity", &Rot3::identity)
        .def_static("from_matrix_unchecked", &Rot3::from_matrix_unchecked)
        .def("matrix", &Rot3::matrix)
        .def("inverse", &Rot3::inverse)
        .def("orthogonality_defect", &Rot3::orthogonality_defect)
        .def("is_valid", &Rot3::is_valid, py::arg("tol") = Rot3::tol_orth)
        .def("orthonormalized", &Rot3::orthonormalized)
        .def("__matmul__", [](const Rot3& a, const Rot3& b) { return a * b; })
        .def("apply", [](const Rot3& r, const Vec3& v) { return r * v; });

    m.def("hat", [](const Vec3& u) { return hat(u).matrix(); },
          "Skew matrix of u: hat(u) @ w == cross(u, w)");
    m.def("vee", [](const Mat3& a) { return vee(skew_project(a)); },
          "Axial vector of the antisymmetric part of a matrix");
    m.def("frobenius", [](const Mat3& a, const Mat3& b) { return frobenius(a, b); },
          "(1/2) Tr(A^T B)");
    m.def("exp_so3", &exp_so3, "Rodrigues exponential map");
    m.def("rot_to_quaternion", &rot_to_quaternion, "Unit quaternion (qw,qx,qy,qz), qw >= 0");
    m.def("quaternion_to_rot", &quaternion_to_rot);

    // material
    py::class_<MaterialParams>(m, "MaterialParams")
        .def(py::init<>([] { return default_material(); }))
        .def_readwrite("rho", &MaterialParams::rho)
        .def_readwrite("E", &MaterialParams::E)
        .def_readwrite("G", &MaterialParams::G_mod)
        .def_readwrite("A", &MaterialParams::A_sec)
        .def_readwrite("I1", &MaterialParams::I1)
        .def_readwrite("I2", &MaterialParams::I2)
        .def_readwrite("I3", &MaterialParams::I3)
        .def_readwrite("L", &MaterialParams::L)
        .def("validate", &MaterialParams::validate);
    m.def("default_material", &default_material);

    py::class_<RigidityTensors>(m, "RigidityTensors")
        .def_static("from_material", &RigidityTensors::from, py::arg("material"),
                    py::arg("g_scale") = Vec3::Ones(), py::arg("h_scale") = Vec3::Ones())
        .def_readonly("G", &RigidityTensors::G)
        .def_readonly("H", &RigidityTensors::H)
        .def_readonly("rhoA", &RigidityTensors::rhoA)
        .def_readonly("J", &RigidityTensors::J);

    m.def("strain_energy_density", &strain_energy_density);
    m.def("stress_resultants", &stress_resultants);
    m.def("kinetic_energy_density", &kinetic_energy_density);

    // grid and fields
    py::class_<Grid>(m, "Grid")
        .def(py::init<int, double>(), py::arg("n_nodes"), py::arg("length"))
        .def_readonly("n_nodes", &Grid::n_nodes)
        .def_readonly("length", &Grid::length)
        .def("ds", &Grid::ds)
        .def("s", &Grid::s);

    py::class_<MobileFieldState>(m, "MobileFieldState")
        .def_static("zero", &MobileFieldState::zero)
        .def_readwrite("v", &MobileFieldState::v)
        .def_readwrite("w", &MobileFieldState::w)
        .def_readwrite("eps", &MobileFieldState::eps)
        .def_readwrite("kap", &MobileFieldState::kap)
        .def("all_finite", &MobileFieldState::all_finite)
        .def("__len__", &MobileFieldState::size);

    py::class_<KinematicState>(m, "KinematicState")
        .def_static("straight_reference", &KinematicState::straight_reference)
        .def_readwrite("phi", &KinematicState::phi)
        .def_readwrite("rot", &KinematicState::rot)
        .def("max_orthogonality_defect", &KinematicState::max_orthogonality_defect)
        .def("__len__", &KinematicState::size);

    m.def("d_ds", py::overload_cast<const std::vector<Vec3>&, const Grid&>(&d_ds));
    m.def("strain_from_kinematics", &strain_from_kinematics);

    // dynamics
    py::enum_<BoundaryKind>(m, "BoundaryKind")
        .value("Clamped", BoundaryKind::Clamped)
        .value("Free", BoundaryKind::Free);

    py::class_<BoundarySpec>(m, "BoundarySpec")
        .def(py::init<>())
        .def_readwrite("end0", &BoundarySpec::end0)
        .def_readwrite("endL", &BoundarySpec::endL);

    py::class_<SubspaceMask>(m, "SubspaceMask")
        .def(py::init<>())
        .def_static("full", &SubspaceMask::full)
        .def_readwrite("v", &SubspaceMask::v)
        .def_readwrite("w", &SubspaceMask::w)
        .def_readwrite("eps", &SubspaceMask::eps)
        .def_readwrite("kap", &SubspaceMask::kap);

    m.def("rhs_mobile", &rhs_mobile);
    m.def("max_wave_speed", &max_wave_speed);
    m.def("cfl_dt_limit", &cfl_dt_limit, py::arg("rig"), py::arg("grid"),
          py::arg("cfl_safety") = 0.5);
    m.def("step_rk4", &step_rk4, py::arg("u"), py::arg("kin"), py::arg("dt"), py::arg("bc"),
          py::arg("rig"), py::arg("grid"), py::arg("mask") = SubspaceMask::full(),
          py::arg("cfl_safety") = 0.5);

    py::class_<Snapshot>(m, "Snapshot")
        .def_readonly("t", &Snapshot::t)
        .def_readonly("u", &Snapshot::u)
        .def_readonly("kin", &Snapshot::kin);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("snaps", &Trajectory::snaps)
        .def_readonly("dt", &Trajectory::dt)
        .def_readonly("stride", &Trajectory::stride);

    py::class_<SimProblem>(m, "SimProblem")
        .def_readonly("grid", &SimProblem::grid)
        .def_readonly("rig", &SimProblem::rig)
        .def_readonly("bc", &SimProblem::bc)
        .def_readonly("dt", &SimProblem::dt)
        .def_readonly("t_end", &SimProblem::t_end)
        .def_readonly("u0", &SimProblem::u0)
        .def_readonly("kin0", &SimProblem::kin0);

    m.def("simulate", &simulate);

    // kinematics reconstruction
    m.def("update_kinematics", &update_kinematics);
    m.def("reconstruct_space", &reconstruct_space);
    m.def("closure_residuals", &closure_residuals);

    // energy diagnostics
    m.def("total_energy", &total_energy);
    m.def("boundary_flux", &boundary_flux);

    py::class_<EnergyLedgerRow>(m, "EnergyLedgerRow")
        .def_readonly("t", &EnergyLedgerRow::t)
        .def_readonly("kinetic", &EnergyLedgerRow::kinetic)
        .def_readonly("strain", &EnergyLedgerRow::strain)
        .def_readonly("total", &EnergyLedgerRow::total)
        .def_readonly("boundary_flux", &EnergyLedgerRow::boundary_flux)
        .def_readonly("cumulative_flux_integral", &EnergyLedgerRow::cumulative_flux_integral)
        .def_readonly("drift", &EnergyLedgerRow::drift);

    py::class_<EnergyReport>(m, "EnergyReport")
        .def_readonly("rows", &EnergyReport::rows)
        .def_readonly("nonzero_flux_detected", &EnergyReport::nonzero_flux_detected)
        .def_readonly("max_abs_flux", &EnergyReport::max_abs_flux)
        .def_readonly("max_abs_drift", &EnergyReport::max_abs_drift);

    m.def("energy_report", &energy_report);

    // Hamiltonian phase space
    py::class_<PhaseState>(m, "PhaseState")
        .def_static("straight_rest", &PhaseState::straight_rest)
        .def_readwrite("phi", &PhaseState::phi)
        .def_readwrite("p_phi", &PhaseState::p_phi)
        .def_readwrite("rot", &PhaseState::rot)
        .def_readwrite("sigma", &PhaseState::sigma)
        .def("__len__", &PhaseState::size);

    py::class_<PhaseRate>(m, "PhaseRate")
        .def_readonly("dphi", &PhaseRate::dphi)
        .def_readonly("dp_phi", &PhaseRate::dp_phi)
        .def_readonly("body_omega", &PhaseRate::body_omega)
        .def_readonly("dsigma", &PhaseRate::dsigma);

    m.def("legendre", &legendre);
    m.def("inverse_legendre", &inverse_legendre);
    m.def("hamiltonian", &hamiltonian);
    m.def("lagrangian", &lagrangian);
    m.def("metric_pairing", &metric_pairing);
    m.def("hamilton_rhs", &hamilton_rhs);
    m.def("hamilton_rate_to_mobile", &hamilton_rate_to_mobile);
    m.def("step_phase_rk4", &step_phase_rk4);
    m.def("bracket", &bracket, py::arg("f"), py::arg("g"), py::arg("ps"), py::arg("grid"),
          py::arg("h_fd") = 1e-5);
    m.def("sample_phi", &sample_phi);
    m.def("sample_p_phi", &sample_p_phi);
    m.def("sample_sigma", &sample_sigma);
    m.def("hamiltonian_observable", &hamiltonian_observable);
    m.def("discrete_action", &discrete_action);
    m.def("action_stationarity", &action_stationarity);

    // statics and the rigid oracle
    py::class_<StaticProfiles>(m, "StaticProfiles")
        .def_readonly("eps", &StaticProfiles::eps)
        .def_readonly("kap", &StaticProfiles::kap);

    py::enum_<StaticTargetKind>(m, "StaticTargetKind")
        .value("TipLoads", StaticTargetKind::TipLoads)
        .value("TipStrains", StaticTargetKind::TipStrains);

    py::class_<StaticBVPSpec>(m, "StaticBVPSpec")
        .def(py::init<>())
        .def_readwrite("kind", &StaticBVPSpec::kind)
        .def_readwrite("target_a", &StaticBVPSpec::target_a)
        .def_readwrite("target_b", &StaticBVPSpec::target_b)
        .def_readwrite("guess_eps0", &StaticBVPSpec::guess_eps0)
        .def_readwrite("guess_kappa0", &StaticBVPSpec::guess_kappa0);

    py::class_<StaticShootResult>(m, "StaticShootResult")
        .def_readonly("converged", &StaticShootResult::converged)
        .def_readonly("iterations", &StaticShootResult::iterations)
        .def_readonly("residual_norm", &StaticShootResult::residual_norm)
        .def_readonly("eps0", &StaticShootResult::eps0)
        .def_readonly("kappa0", &StaticShootResult::kappa0)
        .def_readonly("profiles", &StaticShootResult::profiles);

    m.def("static_ivp", &static_ivp);
    m.def("static_shoot", &static_shoot);
    m.def("rigid_euler", &rigid_euler);

    // configuration and presets
    py::class_<InitSpec>(m, "InitSpec")
        .def(py::init<>())
        .def_readwrite("name", &InitSpec::name)
        .def_readwrite("amplitude", &InitSpec::amplitude)
        .def_readwrite("mode", &InitSpec::mode)
        .def_readwrite("axis", &InitSpec::axis)
        .def_readwrite("omega0", &InitSpec::omega0)
        .def_readwrite("eps0", &InitSpec::eps0)
        .def_readwrite("kappa0", &InitSpec::kappa0);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("preset_name", &SimConfig::preset_name)
        .def_readwrite("material", &SimConfig::material)
        .def_readwrite("g_scale", &SimConfig::g_scale)
        .def_readwrite("h_scale", &SimConfig::h_scale)
        .def_readwrite("n_nodes", &SimConfig::n_nodes)
        .def_readwrite("bc", &SimConfig::bc)
        .def_readwrite("cfl_fraction", &SimConfig::cfl_fraction)
        .def_readwrite("t_end", &SimConfig::t_end)
        .def_readwrite("output_stride", &SimConfig::output_stride)
        .def_readwrite("init", &SimConfig::init)
        .def_readwrite("mask", &SimConfig::mask)
        .def_readwrite("output_dir", &SimConfig::output_dir)
        .def("validate", &SimConfig::validate);

    m.def("preset", &preset);
    m.def("parse_config_text", &parse_config_text);
    m.def("load_config", &load_config);
    m.def("make_initial_state", &make_initial_state);
    m.def("make_initial_kinematics", &make_initial_kinematics);
    m.def("make_problem", &make_problem);

    // verification suites
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("details", &CheckResult::details);

    m.def("run_suite", &run_suite, py::arg("suite"), py::arg("seed") = 0);
}

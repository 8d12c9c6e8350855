#include "gebeam/csv.hpp"

#include <cstdio>
#include <fstream>

#include "gebeam/kinematics.hpp"

namespace gebeam {

namespace {

std::ofstream open_csv(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // LF endings on every platform
    if (!f) throw io_error("cannot open output file '" + path + "'");
    return f;
}

void put(std::ofstream& f, double x, bool last = false) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    f << buf << (last ? "\n" : ",");
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj, const Grid& g) {
    std::ofstream f = open_csv(path);
    f << "t,S,v1,v2,v3,w1,w2,w3,e1,e2,e3,k1,k2,k3,phi_x,phi_y,phi_z,qw,qx,qy,qz\n";
    for (const Snapshot& s : traj.snaps) {
        for (int j = 0; j < g.n_nodes; ++j) {
            put(f, s.t);
            put(f, g.s(j));
            for (int c = 0; c < 3; ++c) put(f, s.u.v[j][c]);
            for (int c = 0; c < 3; ++c) put(f, s.u.w[j][c]);
            for (int c = 0; c < 3; ++c) put(f, s.u.eps[j][c]);
            for (int c = 0; c < 3; ++c) put(f, s.u.kap[j][c]);
            for (int c = 0; c < 3; ++c) put(f, s.kin.phi[j][c]);
            const auto q = rot_to_quaternion(s.kin.rot[j]);
            put(f, q[0]);
            put(f, q[1]);
            put(f, q[2]);
            put(f, q[3], true);
        }
    }
}

void write_energy_csv(const std::string& path, const EnergyReport& rep) {
    std::ofstream f = open_csv(path);
    f << "t,kinetic,strain,total,boundary_flux,cumulative_flux_integral,drift\n";
    for (const EnergyLedgerRow& r : rep.rows) {
        put(f, r.t);
        put(f, r.kinetic);
        put(f, r.strain);
        put(f, r.total);
        put(f, r.boundary_flux);
        put(f, r.cumulative_flux_integral);
        put(f, r.drift, true);
    }
}

void write_closure_csv(const std::string& path, const Trajectory& traj, const Grid& g) {
    std::ofstream f = open_csv(path);
    f << "t,r_eps,r_kappa\n";
    for (const Snapshot& s : traj.snaps) {
        auto [re, rk] = closure_residuals(s.u, s.kin, g);
        put(f, s.t);
        put(f, re);
        put(f, rk, true);
    }
}

void write_static_profiles_csv(const std::string& path, const StaticProfiles& p,
                               const RigidityTensors& rig, const Grid& g) {
    std::ofstream f = open_csv(path);
    f << "S,e1,e2,e3,k1,k2,k3,N1,N2,N3,M1,M2,M3\n";
    for (int j = 0; j < g.n_nodes; ++j) {
        const Vec3 N = rig.applyG(p.eps[j]);
        const Vec3 M = rig.applyH(p.kap[j]);
        put(f, g.s(j));
        for (int c = 0; c < 3; ++c) put(f, p.eps[j][c]);
        for (int c = 0; c < 3; ++c) put(f, p.kap[j][c]);
        for (int c = 0; c < 3; ++c) put(f, N[c]);
        put(f, M[0]);
        put(f, M[1]);
        put(f, M[2], true);
    }
}

void write_centerline_csv(const std::string& path, const KinematicState& kin, const Grid& g) {
    std::ofstream f = open_csv(path);
    f << "S,phi_x,phi_y,phi_z,qw,qx,qy,qz\n";
    for (int j = 0; j < g.n_nodes; ++j) {
        put(f, g.s(j));
        for (int c = 0; c < 3; ++c) put(f, kin.phi[j][c]);
        const auto q = rot_to_quaternion(kin.rot[j]);
        put(f, q[0]);
        put(f, q[1]);
        put(f, q[2]);
        put(f, q[3], true);
    }
}

void write_rigid_compare_csv(const std::string& path, const std::vector<double>& t,
                             const std::vector<Vec3>& sim, const std::vector<Vec3>& ref) {
    if (t.size() != sim.size() || t.size() != ref.size()) {
        throw config_error("rigid comparison: sample arrays differ in length");
    }
    std::ofstream f = open_csv(path);
    f << "t,w1_sim,w2_sim,w3_sim,w1_ref,w2_ref,w3_ref,max_abs_err\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        put(f, t[i]);
        for (int c = 0; c < 3; ++c) put(f, sim[i][c]);
        for (int c = 0; c < 3; ++c) put(f, ref[i][c]);
        put(f, (sim[i] - ref[i]).cwiseAbs().maxCoeff(), true);
    }
}

}  // namespace gebeam

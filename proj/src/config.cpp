#include "gebeam/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gebeam/kinematics.hpp"
#include "gebeam/statics.hpp"

namespace gebeam {

void SimConfig::validate() const {
    material.validate();
    if (n_nodes < 3) throw config_error("[grid] n_nodes must be at least 3");
    if (!(t_end >= 0.0)) throw config_error("[time] t_end must be non-negative");
    if (output_stride < 1) throw config_error("[time] output_stride must be >= 1");
    if (!(cfl_fraction > 0.0) || cfl_fraction > 0.5 + 1e-12) {
        throw config_error("[time] cfl_fraction must lie in (0, 0.5]");
    }
    if (dt && !(*dt > 0.0)) throw config_error("[time] dt must be positive");
    if (g_scale.minCoeff() <= 0.0 || h_scale.minCoeff() <= 0.0) {
        throw config_error("rigidity scale factors must be positive");
    }
    static const char* names[] = {"zero",       "bending_pluck", "axial_pulse",
                                  "twist_pulse", "rigid_spin",    "static_inject"};
    bool known = false;
    for (const char* n : names) known = known || init.name == n;
    if (!known) throw config_error("[init] unknown generator '" + init.name + "'");
    if (init.axis != 1 && init.axis != 2) throw config_error("[init] axis must be 1 or 2");
    if (init.mode < 1) throw config_error("[init] mode must be >= 1");
    if (statics.mode != "ivp" && statics.mode != "shoot") {
        throw config_error("[static] mode must be 'ivp' or 'shoot'");
    }
}

SimConfig preset(const std::string& name) {
    SimConfig cfg;
    cfg.preset_name = name;
    auto none = std::array<bool, 3>{false, false, false};
    if (name == "longitudinal") {
        cfg.mask.v = {false, false, true};
        cfg.mask.w = {false, false, true};
        cfg.mask.eps = {false, false, true};
        cfg.mask.kap = {false, false, true};
        cfg.init.name = "axial_pulse";
    } else if (name == "planar13") {
        cfg.mask.v = {true, false, true};
        cfg.mask.w = {false, true, false};
        cfg.mask.eps = {true, false, true};
        cfg.mask.kap = {false, true, false};
        cfg.init.name = "bending_pluck";
        cfg.init.axis = 1;
    } else if (name == "planar23") {
        cfg.mask.v = {false, true, true};
        cfg.mask.w = {true, false, false};
        cfg.mask.eps = {false, true, true};
        cfg.mask.kap = {true, false, false};
        cfg.init.name = "bending_pluck";
        cfg.init.axis = 2;
    } else if (name == "static") {
        cfg.mask.v = none;
        cfg.mask.w = none;
        cfg.init.name = "static_inject";
    } else if (name == "rigid") {
        cfg.mask.eps = none;
        cfg.mask.kap = none;
        cfg.init.name = "rigid_spin";
        cfg.init.omega0 = Vec3(0.3, 0.0, 1.0);
        cfg.bc = BoundarySpec{BoundaryKind::Free, BoundaryKind::Free};
    } else if (name == "string") {
        cfg.g_scale = Vec3(1e-8, 1e-8, 1.0);
        cfg.h_scale = Vec3(1e-8, 1e-8, 1e-8);
        cfg.init.name = "bending_pluck";
    } else {
        throw config_error("unknown preset '" + name + "'");
    }
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) {
        throw config_error("key '" + key + "': cannot parse real value '" + value + "'");
    }
    return x;
}

int parse_int(const std::string& key, const std::string& value) {
    const double x = parse_real(key, value);
    const int i = static_cast<int>(std::lround(x));
    if (std::abs(x - i) > 1e-12) {
        throw config_error("key '" + key + "': expected an integer, got '" + value + "'");
    }
    return i;
}

BoundaryKind parse_end(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "clamped") return BoundaryKind::Clamped;
    if (v == "free") return BoundaryKind::Free;
    throw config_error("key '" + key + "': expected 'clamped' or 'free', got '" + value + "'");
}

struct RawEntry {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

void apply_entry(SimConfig& cfg, const RawEntry& e) {
    const std::string& k = e.key;
    const std::string& v = e.value;
    auto real = [&]() { return parse_real(k, v); };
    auto integer = [&]() { return parse_int(k, v); };
    auto unknown_key = [&]() {
        throw config_error("unknown key '" + k + "' in section [" + e.section + "] (line " +
                           std::to_string(e.line) + ")");
    };

    if (e.section == "material") {
        if (k == "rho") cfg.material.rho = real();
        else if (k == "E") cfg.material.E = real();
        else if (k == "G") cfg.material.G_mod = real();
        else if (k == "A") cfg.material.A_sec = real();
        else if (k == "I1") cfg.material.I1 = real();
        else if (k == "I2") cfg.material.I2 = real();
        else if (k == "I3") cfg.material.I3 = real();
        else if (k == "L") cfg.material.L = real();
        else unknown_key();
    } else if (e.section == "grid") {
        if (k == "n_nodes") cfg.n_nodes = integer();
        else unknown_key();
    } else if (e.section == "bc") {
        if (k == "end0") cfg.bc.end0 = parse_end(k, v);
        else if (k == "endL") cfg.bc.endL = parse_end(k, v);
        else unknown_key();
    } else if (e.section == "time") {
        if (k == "dt") cfg.dt = real();
        else if (k == "cfl_fraction") cfg.cfl_fraction = real();
        else if (k == "t_end") cfg.t_end = real();
        else if (k == "output_stride") cfg.output_stride = integer();
        else unknown_key();
    } else if (e.section == "init") {
        if (k == "name") cfg.init.name = trim(v);
        else if (k == "amplitude") cfg.init.amplitude = real();
        else if (k == "mode") cfg.init.mode = integer();
        else if (k == "axis") cfg.init.axis = integer();
        else if (k == "omega_x") cfg.init.omega0[0] = real();
        else if (k == "omega_y") cfg.init.omega0[1] = real();
        else if (k == "omega_z") cfg.init.omega0[2] = real();
        else if (k == "eps0_x") cfg.init.eps0[0] = real();
        else if (k == "eps0_y") cfg.init.eps0[1] = real();
        else if (k == "eps0_z") cfg.init.eps0[2] = real();
        else if (k == "kappa0_x") cfg.init.kappa0[0] = real();
        else if (k == "kappa0_y") cfg.init.kappa0[1] = real();
        else if (k == "kappa0_z") cfg.init.kappa0[2] = real();
        else unknown_key();
    } else if (e.section == "static") {
        if (k == "mode") cfg.statics.mode = trim(v);
        else if (k == "eps0_x") cfg.statics.eps0[0] = real();
        else if (k == "eps0_y") cfg.statics.eps0[1] = real();
        else if (k == "eps0_z") cfg.statics.eps0[2] = real();
        else if (k == "kappa0_x") cfg.statics.kappa0[0] = real();
        else if (k == "kappa0_y") cfg.statics.kappa0[1] = real();
        else if (k == "kappa0_z") cfg.statics.kappa0[2] = real();
        else if (k == "target_N_x") cfg.statics.target_N[0] = real();
        else if (k == "target_N_y") cfg.statics.target_N[1] = real();
        else if (k == "target_N_z") cfg.statics.target_N[2] = real();
        else if (k == "target_M_x") cfg.statics.target_M[0] = real();
        else if (k == "target_M_y") cfg.statics.target_M[1] = real();
        else if (k == "target_M_z") cfg.statics.target_M[2] = real();
        else unknown_key();
    } else if (e.section == "output") {
        if (k == "directory") cfg.output_dir = trim(v);
        else unknown_key();
    } else {
        throw config_error("unknown section [" + e.section + "] (line " +
                           std::to_string(e.line) + ")");
    }
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    std::string line, section;
    std::vector<RawEntry> entries;
    std::string preset_name;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw config_error("malformed section header at line " + std::to_string(lineno));
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw config_error("expected 'key = value' at line " + std::to_string(lineno));
        }
        if (section.empty()) {
            throw config_error("entry before any [section] at line " + std::to_string(lineno));
        }
        RawEntry e{section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), lineno};
        if (e.key.empty()) {
            throw config_error("empty key at line " + std::to_string(lineno));
        }
        if (e.section == "preset") {
            if (e.key != "name") {
                throw config_error("unknown key '" + e.key + "' in section [preset] (line " +
                                   std::to_string(lineno) + ")");
            }
            preset_name = e.value;
            continue;
        }
        entries.push_back(std::move(e));
    }

    SimConfig cfg = preset_name.empty() ? SimConfig{} : preset(preset_name);
    for (const RawEntry& e : entries) apply_entry(cfg, e);
    cfg.validate();
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str());
}

MobileFieldState make_initial_state(const SimConfig& cfg, const Grid& g,
                                    const RigidityTensors& rig) {
    MobileFieldState u = MobileFieldState::zero(g);
    const InitSpec& ic = cfg.init;
    const double k = (2 * ic.mode - 1) * M_PI / (2.0 * g.length);
    if (ic.name == "zero") {
        return u;
    }
    if (ic.name == "bending_pluck") {
        const int axis = ic.axis - 1;
        for (int j = 0; j < g.n_nodes; ++j) {
            u.v[j][axis] = ic.amplitude * std::sin(k * g.s(j));
        }
        return u;
    }
    if (ic.name == "axial_pulse") {
        for (int j = 0; j < g.n_nodes; ++j) {
            u.v[j][2] = ic.amplitude * std::sin(k * g.s(j));
        }
        return u;
    }
    if (ic.name == "twist_pulse") {
        for (int j = 0; j < g.n_nodes; ++j) {
            u.w[j][2] = ic.amplitude * std::sin(k * g.s(j));
        }
        return u;
    }
    if (ic.name == "rigid_spin") {
        for (int j = 0; j < g.n_nodes; ++j) u.w[j] = ic.omega0;
        return u;
    }
    if (ic.name == "static_inject") {
        const StaticProfiles p = static_ivp(ic.eps0, ic.kappa0, rig, g);
        u.eps = p.eps;
        u.kap = p.kap;
        return u;
    }
    throw config_error("[init] unknown generator '" + ic.name + "'");
}

KinematicState make_initial_kinematics(const SimConfig& cfg, const Grid& g,
                                       const RigidityTensors& rig) {
    if (cfg.init.name == "static_inject") {
        const StaticProfiles p = static_ivp(cfg.init.eps0, cfg.init.kappa0, rig, g);
        return reconstruct_space(Vec3::Zero(), Rot3::identity(), p.eps, p.kap, g);
    }
    return KinematicState::straight_reference(g);
}

SimProblem make_problem(const SimConfig& cfg) {
    cfg.validate();
    const Grid g(cfg.n_nodes, cfg.material.L);
    const RigidityTensors rig = RigidityTensors::from(cfg.material, cfg.g_scale, cfg.h_scale);
    const double dt = cfg.dt ? *cfg.dt : cfg.cfl_fraction * g.ds() / max_wave_speed(rig);
    SimProblem p{g,
                 rig,
                 cfg.bc,
                 cfg.mask,
                 dt,
                 cfg.t_end,
                 cfg.output_stride,
                 0.5,
                 make_initial_state(cfg, g, rig),
                 make_initial_kinematics(cfg, g, rig)};
    return p;
}

}  // namespace gebeam

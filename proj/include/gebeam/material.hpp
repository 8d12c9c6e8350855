#pragma once

#include <utility>

#include "gebeam/errors.hpp"
#include "gebeam/so3.hpp"

namespace gebeam {

/**
 * Uniform beam material and section data. E is used as the extensional
 * modulus (EA, EI roles), G as the shear modulus.
 */
struct MaterialParams {
    double rho;    ///< mass density
    double E;      ///< extensional modulus
    double G_mod;  ///< shear modulus
    double A_sec;  ///< cross-section area
    double I1;     ///< quadratic moment about d1
    double I2;     ///< quadratic moment about d2
    double I3;     ///< polar quadratic moment (about d3)
    double L;      ///< beam length

    void validate() const {
        auto pos = [](double x) { return x > 0.0; };
        if (!(pos(rho) && pos(E) && pos(G_mod) && pos(A_sec) && pos(I1) && pos(I2) &&
              pos(I3) && pos(L))) {
            throw config_error("material parameters must all be strictly positive");
        }
    }
};

/// Well-conditioned dimensionless defaults used across the test suite.
inline MaterialParams default_material() {
    return MaterialParams{1.0, 1.0, 0.5, 1.0, 1e-2, 1e-2, 2e-2, 1.0};
}

/**
 * The four diagonal tensors of the model, stored by their diagonals:
 *   G = diag(GA, GA, EA)          section rigidity
 *   H = diag(EI1, EI2, GI3)       bending/torsion rigidity
 *   A = rho A * Id                translational inertia (scalar multiple of Id)
 *   J = diag(rho I1, rho I2, rho I3)  rotational inertia
 * Constant and uniform along S (homogeneous beam).
 */
struct RigidityTensors {
    Vec3 G;
    Vec3 H;
    double rhoA;
    Vec3 J;

    /// g_scale/h_scale rescale the diagonals of G and H (used by the string
    /// limit, which floors GA, EI1, EI2 and GI3).
    static RigidityTensors from(const MaterialParams& m, const Vec3& g_scale = Vec3::Ones(),
                                const Vec3& h_scale = Vec3::Ones()) {
        m.validate();
        RigidityTensors r;
        r.G = Vec3(m.G_mod * m.A_sec, m.G_mod * m.A_sec, m.E * m.A_sec).cwiseProduct(g_scale);
        r.H = Vec3(m.E * m.I1, m.E * m.I2, m.G_mod * m.I3).cwiseProduct(h_scale);
        r.rhoA = m.rho * m.A_sec;
        r.J = Vec3(m.rho * m.I1, m.rho * m.I2, m.rho * m.I3);
        if (r.G.minCoeff() <= 0.0 || r.H.minCoeff() <= 0.0 || r.J.minCoeff() <= 0.0) {
            throw config_error("rigidity tensors must be positive definite");
        }
        return r;
    }

    Vec3 applyG(const Vec3& x) const { return G.cwiseProduct(x); }
    Vec3 applyH(const Vec3& x) const { return H.cwiseProduct(x); }
    Vec3 applyJ(const Vec3& x) const { return J.cwiseProduct(x); }
    Vec3 applyJinv(const Vec3& x) const { return x.cwiseQuotient(J); }
};

/// U(eps, kappa) = (1/2)(eps . G eps + kappa . H kappa); zero iff both vanish.
inline double strain_energy_density(const Vec3& eps, const Vec3& kappa,
                                    const RigidityTensors& m) {
    return 0.5 * (eps.dot(m.applyG(eps)) + kappa.dot(m.applyH(kappa)));
}

/// Linear law N = G eps, M = H kappa (mobile components).
inline std::pair<Vec3, Vec3> stress_resultants(const Vec3& eps, const Vec3& kappa,
                                               const RigidityTensors& m) {
    return {m.applyG(eps), m.applyH(kappa)};
}

/// T(v, omega) = (1/2) v . A v + (1/2) omega . J omega.
inline double kinetic_energy_density(const Vec3& v, const Vec3& omega,
                                     const RigidityTensors& m) {
    return 0.5 * (m.rhoA * v.squaredNorm() + omega.dot(m.applyJ(omega)));
}

}  // namespace gebeam

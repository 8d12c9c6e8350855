#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace gebeam {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/**
 * Antisymmetric 3x3 matrix stored by its axial vector, so that antisymmetry
 * cannot be violated. For the axial vector u, the materialized matrix acts as
 * the cross product: matrix(u) * w == u x w.
 */
struct Skew3 {
    Vec3 axial{Vec3::Zero()};

    Skew3() = default;
    explicit Skew3(const Vec3& u) : axial(u) {}

    Mat3 matrix() const {
        Mat3 m;
        m << 0.0, -axial.z(), axial.y(),
             axial.z(), 0.0, -axial.x(),
             -axial.y(), axial.x(), 0.0;
        return m;
    }

    Skew3 operator+(const Skew3& o) const { return Skew3(axial + o.axial); }
    Skew3 operator-(const Skew3& o) const { return Skew3(axial - o.axial); }
    Skew3 operator*(double s) const { return Skew3(axial * s); }
};

/// Axial-vector map so(3) -> R^3 (inverse of hat).
inline Vec3 vee(const Skew3& a) { return a.axial; }

/// R^3 -> so(3); hat(u) * w == u x w for every w.
inline Skew3 hat(const Vec3& u) { return Skew3(u); }

/// Antisymmetric part of a general matrix, as a Skew3: (M - M^T)/2.
inline Skew3 skew_project(const Mat3& m) {
    Mat3 s = 0.5 * (m - m.transpose());
    return Skew3(Vec3(s(2, 1), s(0, 2), s(1, 0)));
}

/// Matrix commutator [A, B] = AB - BA of two skew matrices (again skew).
inline Skew3 commutator(const Skew3& a, const Skew3& b) {
    return skew_project(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

/// Frobenius-type scalar product (1/2) Tr(A^T B) on matrices.
inline double frobenius(const Mat3& a, const Mat3& b) {
    return 0.5 * (a.transpose() * b).trace();
}

inline double frobenius(const Skew3& a, const Skew3& b) {
    return frobenius(a.matrix(), b.matrix());
}

/**
 * Rotation matrix with validity helpers. Stored dense because the dynamics
 * manipulates R and R^-1 dR directly; re-orthonormalization is explicit and
 * applied when drift exceeds tol_orth.
 */
class Rot3 {
public:
    static constexpr double tol_orth = 1e-10;

    Rot3() : m_(Mat3::Identity()) {}

    static Rot3 identity() { return Rot3(); }

    /// Wrap a dense matrix; caller asserts it is a rotation.
    static Rot3 from_matrix_unchecked(const Mat3& m) {
        Rot3 r;
        r.m_ = m;
        return r;
    }

    const Mat3& matrix() const { return m_; }

    Rot3 inverse() const { return from_matrix_unchecked(m_.transpose()); }

    Rot3 operator*(const Rot3& o) const { return from_matrix_unchecked(m_ * o.m_); }
    Vec3 operator*(const Vec3& v) const { return m_ * v; }

    /// ||R^T R - I||_inf; zero for an exact rotation.
    double orthogonality_defect() const {
        return (m_.transpose() * m_ - Mat3::Identity()).cwiseAbs().maxCoeff();
    }

    bool is_valid(double tol = tol_orth) const {
        return orthogonality_defect() <= tol && std::abs(m_.determinant() - 1.0) <= tol;
    }

    /// Nearest rotation (polar projection via SVD).
    Rot3 orthonormalized() const {
        Eigen::JacobiSVD<Mat3> svd(m_, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Mat3 r = svd.matrixU() * svd.matrixV().transpose();
        if (r.determinant() < 0.0) {
            Mat3 u = svd.matrixU();
            u.col(2) *= -1.0;
            r = u * svd.matrixV().transpose();
        }
        return from_matrix_unchecked(r);
    }

private:
    Mat3 m_;
};

/**
 * Exponential map so(3) -> SO(3), Rodrigues closed form:
 *   exp(w) = I + sin|w|/|w| hat(w) + (1-cos|w|)/|w|^2 hat(w)^2.
 * Below |w| = 1e-6 both coefficients switch to their 4th-order Taylor
 * expansions to avoid 0/0.
 */
inline Rot3 exp_so3(const Vec3& w) {
    const double th2 = w.squaredNorm();
    const double th = std::sqrt(th2);
    double c1, c2;  // sin(th)/th, (1-cos(th))/th^2
    if (th < 1e-6) {
        c1 = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
        c2 = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
    } else {
        c1 = std::sin(th) / th;
        c2 = (1.0 - std::cos(th)) / th2;
    }
    const Mat3 k = hat(w).matrix();
    return Rot3::from_matrix_unchecked(Mat3::Identity() + c1 * k + c2 * (k * k));
}

/**
 * Unit quaternion (qw, qx, qy, qz) from a rotation matrix, with the sign
 * convention qw >= 0. Exact inverse of quaternion_to_rot up to that sign.
 */
inline std::array<double, 4> rot_to_quaternion(const Rot3& r) {
    const Mat3& m = r.matrix();
    std::array<double, 4> q{};
    const double tr = m.trace();
    if (tr > 0.0) {
        double s = std::sqrt(tr + 1.0) * 2.0;
        q[0] = 0.25 * s;
        q[1] = (m(2, 1) - m(1, 2)) / s;
        q[2] = (m(0, 2) - m(2, 0)) / s;
        q[3] = (m(1, 0) - m(0, 1)) / s;
    } else if (m(0, 0) > m(1, 1) && m(0, 0) > m(2, 2)) {
        double s = std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2)) * 2.0;
        q[0] = (m(2, 1) - m(1, 2)) / s;
        q[1] = 0.25 * s;
        q[2] = (m(0, 1) + m(1, 0)) / s;
        q[3] = (m(0, 2) + m(2, 0)) / s;
    } else if (m(1, 1) > m(2, 2)) {
        double s = std::sqrt(1.0 + m(1, 1) - m(0, 0) - m(2, 2)) * 2.0;
        q[0] = (m(0, 2) - m(2, 0)) / s;
        q[1] = (m(0, 1) + m(1, 0)) / s;
        q[2] = 0.25 * s;
        q[3] = (m(1, 2) + m(2, 1)) / s;
    } else {
        double s = std::sqrt(1.0 + m(2, 2) - m(0, 0) - m(1, 1)) * 2.0;
        q[0] = (m(1, 0) - m(0, 1)) / s;
        q[1] = (m(0, 2) + m(2, 0)) / s;
        q[2] = (m(1, 2) + m(2, 1)) / s;
        q[3] = 0.25 * s;
    }
    if (q[0] < 0.0) {
        for (double& c : q) c = -c;
    }
    return q;
}

inline Rot3 quaternion_to_rot(const std::array<double, 4>& q) {
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    Mat3 m;
    m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return Rot3::from_matrix_unchecked(m);
}

}  // namespace gebeam

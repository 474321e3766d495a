#pragma once

#include <cmath>

namespace qhtk {

// Hamilton quaternion w + x i + y j + z k.
// The four coefficients are named fields on purpose: the basis table
// ij = k = -ji etc. is spelled out in the product below and reviewable
// without index gymnastics.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    // real scalars embed on the w axis
    constexpr Quaternion(double r) : w(r) {}

    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }
};

constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }

// Hamilton product, expanded from the basis table
//   i^2 = j^2 = k^2 = -1,  ij = k, jk = i, ki = j,  ji = -k, kj = -i, ik = -j.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion operator*(const Quaternion& a, double s) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
constexpr Quaternion operator*(double s, const Quaternion& a) { return a * s; }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double modulus_sq(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }

inline double modulus(const Quaternion& q) { return std::sqrt(modulus_sq(q)); }

// |Im q|, the length of the imaginary part
inline double imag_norm(const Quaternion& q) { return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z); }

inline Quaternion inverse(const Quaternion& q) {
    const double m2 = modulus_sq(q);
    return conj(q) * (1.0 / m2);
}

constexpr bool is_zero(const Quaternion& q) { return q.w == 0 && q.x == 0 && q.y == 0 && q.z == 0; }

inline double distance(const Quaternion& a, const Quaternion& b) { return modulus(a - b); }

// Imaginary unit axis mu with mu^2 = -1; carrier for e^{mu theta}.
struct UnitImaginary {
    double x = 1.0;
    double y = 0.0;
    double z = 0.0;

    Quaternion as_quaternion() const { return {0, x, y, z}; }
};

// Normalizes (x,y,z) to unit length. Zero vector has no direction.
UnitImaginary make_unit_imaginary(double x, double y, double z);

// e^{mu theta} = cos(theta) + mu sin(theta); one-parameter subgroup on the axis mu.
inline Quaternion exp_mu(const UnitImaginary& axis, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, axis.x * s, axis.y * s, axis.z * s};
}

// Representative of a conjugacy class of quaternions: the unique element
// of C with non-negative imaginary part, since q ~ u^-1 q u sweeps the
// whole sphere |Im| = const.
struct ComplexRep {
    double re = 0.0;
    double im = 0.0; // >= 0 by construction
};

inline ComplexRep canonical_rep(const Quaternion& q) { return {q.w, imag_norm(q)}; }

inline double modulus(const ComplexRep& c) { return std::hypot(c.re, c.im); }

} // namespace qhtk

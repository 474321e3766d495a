#pragma once

#include <cstdint>
#include <vector>

#include "qhtk/qmatrix.hpp"

namespace qhtk {

// The two projective models of quaternionic hyperbolic space H^n over
// the quaternions, cut out by a signature-(n,1) Hermitian form on
// H^{n+1} (column vectors, right scalar multiplication).
enum class ModelKind { half_space, ball };

struct ModelForm {
    int n = 2;                       // quaternionic dimension, >= 2
    ModelKind kind = ModelKind::half_space;
    QMatrix matrix;                  // J (half-space) or J1 = diag(I_n, -1)

    static ModelForm half_space(int n);
    static ModelForm ball(int n);
};

enum class PointClass { negative, null, positive };

// Homogeneous vector in H^{n+1}, right-projective. Its class (side of
// the null cone) is derived by classify_point, not stored.
struct ProjectivePoint {
    std::vector<Quaternion> coords;
};

// Chart coordinates on the half-space model: (xi, v, u) with xi in
// H^{n-1}, v purely imaginary, u the horospherical height (u > 0 inside).
struct HorosphericalCoords {
    std::vector<Quaternion> xi;
    Quaternion v;   // w component is 0
    double u = 0.0;
};

enum class IsometryClass { loxodromic, parabolic, elliptic, identity };

// Form-preserving matrix. make_isometry validates A* J A = J to 1e-9
// max-entry; compositions of validated isometries stay exact to noise.
struct Isometry {
    QMatrix matrix;
    ModelForm form;
};

Isometry make_isometry(QMatrix a, ModelForm form, double tol = 1e-9);
double form_defect(const QMatrix& a, const ModelForm& form); // max-entry |A*JA - J|
Isometry compose(const Isometry& a, const Isometry& b);
// Inverse through the form: A^-1 = J A* J (both model forms square to I).
Isometry isometry_inverse(const Isometry& a);
std::vector<Quaternion> apply(const Isometry& a, const std::vector<Quaternion>& z);

// <Z,W> = W* J Z; conjugate-symmetric, right-linear in Z.
Quaternion pairing(const std::vector<Quaternion>& z, const std::vector<Quaternion>& w, const ModelForm& form);

PointClass classify_point(const std::vector<Quaternion>& z, const ModelForm& form);

// cosh^2(rho/2) = |<X,Y>|^2 / (<X,X><Y,Y>) for negative points.
// The squared left side is the reading consistent with the dilation
// convention r = exp(delta/2): distance(o, diag(r,1,1/r) o) = 2 ln r.
double distance(const ProjectivePoint& x, const ProjectivePoint& y, const ModelForm& form);
double distance(const std::vector<Quaternion>& x, const std::vector<Quaternion>& y, const ModelForm& form);

// The Cayley transform C = [[s,0,s],[0,I,0],[s,0,-s]], s = sqrt(2)/2.
// Real symmetric, C^2 = I, and C* J C = J1 exactly, so it carries the
// ball model onto the half-space model and back.
QMatrix cayley_matrix(int n);
std::vector<Quaternion> cayley_to_half_space(const std::vector<Quaternion>& z);

// o = (-1, 0, ..., 0, 1)^t, the interior base point of the half-space
// model ((0,0,2) horospherically); q_inf = (1, 0, ..., 0)^t.
std::vector<Quaternion> origin_point(int n);
std::vector<Quaternion> infinity_point(int n);

bool projectively_equal(const std::vector<Quaternion>& a, const std::vector<Quaternion>& b, double tol);
bool fixes_origin(const Isometry& a, double tol);

// Chart z_{n+1} = 1 on the half-space model. q_inf has no chart image.
HorosphericalCoords to_horospherical(const std::vector<Quaternion>& z, int n);
std::vector<Quaternion> from_horospherical(const HorosphericalCoords& h);

// loxodromic / parabolic / elliptic / identity. Radius test at
// tol_c = 1e-8; diagonalizability over H via the Gram conditioning of
// the complex adjoint eigenbasis, with an explicit refusal band.
IsometryClass classify_isometry(const Isometry& a);

// o-stabilizer from ball-model blocks: C . blockdiag(theta, u) . C with
// theta in Sp(n), |u| = 1. Fixes o, spectral norm 1.
Isometry stabilizer_from_blocks(const QMatrix& theta, const Quaternion& u, int n);

// Dilation along the vertical geodesic: D = diag(r, 1, ..., 1, 1/r).
Isometry dilation(int n, double r);

// A with A.o on the vertical geodesic above o factors as A = D R with
// R = D^-1 A in the stabilizer of o. (For inputs of the special shape
// K0 D the literal K-part is A D^-1 instead; such inputs reach here
// through normalize_to_vertical, after which the D R order is the one
// that exists. Both orders give the same inequality chain.)
struct DilationDecomposition {
    double r = 1.0;
    Isometry D;
    Isometry R;
};
DilationDecomposition dilation_decompose(const Isometry& a);

// Conjugates A by a stabilizer G of o so that (G A G^-1) o sits on the
// vertical geodesic at height u >= 2; displacement is unchanged.
Isometry normalize_to_vertical(const Isometry& a);

// Deterministic KAK sample: K1 D(r) K2 with Haar-ish stabilizer factors
// and log-uniform r in [1, e^spread].
Isometry random_isometry(int n, std::uint64_t seed, double spread);

// Random elliptic stabilizer of o (spread-free K factor).
Isometry random_stabilizer(int n, std::uint64_t seed);

// Small isometry: rotation blocks O(eps) from I and displacement O(eps).
// Sampling helper for the Zassenhaus-ball sweeps.
Isometry random_near_identity(int n, std::uint64_t seed, double eps);

// Random interior point of the half-space model (negative class).
ProjectivePoint random_interior_point(int n, std::uint64_t seed);

} // namespace qhtk

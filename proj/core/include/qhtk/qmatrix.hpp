#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qhtk/quaternion.hpp"

namespace qhtk {

using cplx = std::complex<double>;

// Dense complex matrix, row-major. Plumbing carrier for the adjoint
// embedding; all eigenvalue work happens here.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> entries;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}

    cplx& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
    const cplx& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }

    static ComplexMatrix identity(int m);
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a); // conjugate transpose
double max_entry_abs(const ComplexMatrix& a);
double frobenius(const ComplexMatrix& a);

// Dense quaternionic matrix, row-major.
struct QMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Quaternion> entries;

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}

    Quaternion& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
    const Quaternion& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }

    static QMatrix identity(int m);
    static QMatrix zero(int r, int c);
    static QMatrix diagonal(const std::vector<Quaternion>& d);
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, double s);
std::vector<Quaternion> operator*(const QMatrix& a, const std::vector<Quaternion>& v);

QMatrix adjoint(const QMatrix& a); // A* = conjugate transpose
double max_entry_distance(const QMatrix& a, const QMatrix& b);

// A = A1 + A2 j with complex blocks; returns the 2m x 2m complex matrix
//   [[ A1, A2 ], [ -conj(A2), conj(A1) ]].
// Multiplicative, *-preserving, identity-preserving; right eigenvalue
// classes of A appear as conjugate pairs of ordinary eigenvalues.
ComplexMatrix adjoint_embed(const QMatrix& a);

// Inverse of adjoint_embed (reads the top blocks).
QMatrix from_adjoint_embed(const ComplexMatrix& m);

// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi.
// Convergence: off-diagonal Frobenius mass below 1e-12 relative; more
// than 10000 sweeps is an error, never a silent partial answer.
struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns, unitary
    int sweeps = 0;
};
HermitianEigen hermitian_eigs(const ComplexMatrix& h);

// Right-eigenvalue conjugacy classes of a *normal* quaternionic matrix,
// one C+ representative per class (m of them for an m x m input).
// Normality is all the in-scope callers need: unitary and positive
// semidefinite matrices. Non-normal input is rejected.
struct Spectrum {
    std::vector<ComplexRep> values;
};
Spectrum spectrum(const QMatrix& a);

double spectral_radius(const QMatrix& a);

// ||A|| = sqrt(max eigenvalue of A*A), evaluated on the complex adjoint
// image of A*A with the Jacobi solver. Rectangular inputs allowed.
double spectral_norm(const QMatrix& a);

bool is_unitary(const QMatrix& a, double tol);

// Arguments of the eigenvalue classes of a unitary matrix, each in
// [0, pi] (the C+ representative), sorted ascending.
std::vector<double> unitary_angles(const QMatrix& r);

// Modified Gram-Schmidt under the standard positive pairing
// <x,y> = sum conj(x_i) y_i (right-linear in y). Residual pivot below
// 1e-12 reports rank deficiency.
QMatrix gram_schmidt_unitary(const QMatrix& a);

// General inverse through LU on the adjoint embedding.
QMatrix inverse(const QMatrix& a);

// A^q by binary exponentiation, q >= 0.
QMatrix matrix_power(const QMatrix& a, long long q);

} // namespace qhtk

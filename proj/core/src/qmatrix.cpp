#include "qhtk/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>

#include "qhtk/errors.hpp"

namespace qhtk {

namespace {

void require_square(const QMatrix& a, const char* who) {
    if (a.rows != a.cols || a.rows == 0) throw DomainError(std::string(who) + ": square matrix required");
}

void require_same_shape(int ar, int ac, int br, int bc, const char* who) {
    if (ar != br || ac != bc) throw DomainError(std::string(who) + ": shape mismatch");
}

} // namespace

ComplexMatrix ComplexMatrix::identity(int m) {
    ComplexMatrix e(m, m);
    for (int i = 0; i < m; ++i) e.at(i, i) = 1.0;
    return e;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) throw DomainError("complex product: inner dimensions differ");
    ComplexMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    }
    return c;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a.rows, a.cols, b.rows, b.cols, "complex sum");
    ComplexMatrix c(a.rows, a.cols);
    for (std::size_t t = 0; t < c.entries.size(); ++t) c.entries[t] = a.entries[t] + b.entries[t];
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a.rows, a.cols, b.rows, b.cols, "complex difference");
    ComplexMatrix c(a.rows, a.cols);
    for (std::size_t t = 0; t < c.entries.size(); ++t) c.entries[t] = a.entries[t] - b.entries[t];
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) c.at(j, i) = std::conj(a.at(i, j));
    return c;
}

double max_entry_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cplx& e : a.entries) m = std::max(m, std::abs(e));
    return m;
}

double frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& e : a.entries) s += std::norm(e);
    return std::sqrt(s);
}

QMatrix QMatrix::identity(int m) {
    QMatrix e(m, m);
    for (int i = 0; i < m; ++i) e.at(i, i) = Quaternion{1, 0, 0, 0};
    return e;
}

QMatrix QMatrix::zero(int r, int c) { return QMatrix(r, c); }

QMatrix QMatrix::diagonal(const std::vector<Quaternion>& d) {
    QMatrix e(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < e.rows; ++i) e.at(i, i) = d[static_cast<std::size_t>(i)];
    return e;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols != b.rows) throw DomainError("product: inner dimensions differ");
    QMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const Quaternion& aik = a.at(i, k);
            if (is_zero(aik)) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
        }
    }
    return c;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    require_same_shape(a.rows, a.cols, b.rows, b.cols, "sum");
    QMatrix c(a.rows, a.cols);
    for (std::size_t t = 0; t < c.entries.size(); ++t) c.entries[t] = a.entries[t] + b.entries[t];
    return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    require_same_shape(a.rows, a.cols, b.rows, b.cols, "difference");
    QMatrix c(a.rows, a.cols);
    for (std::size_t t = 0; t < c.entries.size(); ++t) c.entries[t] = a.entries[t] - b.entries[t];
    return c;
}

QMatrix operator*(const QMatrix& a, double s) {
    QMatrix c(a.rows, a.cols);
    for (std::size_t t = 0; t < c.entries.size(); ++t) c.entries[t] = a.entries[t] * s;
    return c;
}

std::vector<Quaternion> operator*(const QMatrix& a, const std::vector<Quaternion>& v) {
    if (a.cols != static_cast<int>(v.size())) throw DomainError("matrix-vector product: dimensions differ");
    std::vector<Quaternion> w(static_cast<std::size_t>(a.rows));
    for (int i = 0; i < a.rows; ++i) {
        Quaternion s{};
        for (int j = 0; j < a.cols; ++j) s = s + a.at(i, j) * v[static_cast<std::size_t>(j)];
        w[static_cast<std::size_t>(i)] = s;
    }
    return w;
}

QMatrix adjoint(const QMatrix& a) {
    QMatrix c(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) c.at(j, i) = conj(a.at(i, j));
    return c;
}

double max_entry_distance(const QMatrix& a, const QMatrix& b) {
    require_same_shape(a.rows, a.cols, b.rows, b.cols, "entry distance");
    double m = 0.0;
    for (std::size_t t = 0; t < a.entries.size(); ++t) m = std::max(m, distance(a.entries[t], b.entries[t]));
    return m;
}

ComplexMatrix adjoint_embed(const QMatrix& a) {
    require_square(a, "adjoint_embed");
    const int m = a.rows;
    ComplexMatrix e(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Quaternion& q = a.at(i, j);
            const cplx a1(q.w, q.x); // q = (w + xi) + (y + zi) j
            const cplx a2(q.y, q.z);
            e.at(i, j) = a1;
            e.at(i, j + m) = a2;
            e.at(i + m, j) = -std::conj(a2);
            e.at(i + m, j + m) = std::conj(a1);
        }
    }
    return e;
}

QMatrix from_adjoint_embed(const ComplexMatrix& e) {
    if (e.rows != e.cols || e.rows % 2 != 0) throw DomainError("from_adjoint_embed: even square matrix required");
    const int m = e.rows / 2;
    QMatrix a(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const cplx a1 = e.at(i, j);
            const cplx a2 = e.at(i, j + m);
            a.at(i, j) = {a1.real(), a1.imag(), a2.real(), a2.imag()};
        }
    }
    return a;
}

// Cyclic Jacobi with complex plane rotations. One rotation zeroes the
// (p,q) entry: with h = |h_pq| e^{i phi}, the angle theta solves
// tan(2 theta) = 2|h_pq| / (h_pp - h_qq).
HermitianEigen hermitian_eigs(const ComplexMatrix& h0) {
    if (h0.rows != h0.cols || h0.rows == 0) throw DomainError("hermitian_eigs: square matrix required");
    const int m = h0.rows;
    ComplexMatrix h = h0;
    // symmetrize once so roundoff in the caller's arithmetic cannot leak
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            const cplx v = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
            h.at(i, j) = v;
            h.at(j, i) = std::conj(v);
        }

    ComplexMatrix v = ComplexMatrix::identity(m);
    const double scale = std::max(frobenius(h), 1e-300);
    const double tol = 1e-12 * scale;
    const int max_sweeps = 10000;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (i != j) s += std::norm(h.at(i, j));
        return std::sqrt(s);
    };

    int sweeps = 0;
    while (off_norm() > tol) {
        if (++sweeps > max_sweeps)
            throw NumericalError("hermitian_eigs: no convergence after " + std::to_string(max_sweeps) + " sweeps");
        for (int p = 0; p < m - 1; ++p) {
            for (int q = p + 1; q < m; ++q) {
                const cplx hpq = h.at(p, q);
                const double apq = std::abs(hpq);
                if (apq <= tol / (m * m + 1)) continue;
                const double app = h.at(p, p).real();
                const double aqq = h.at(q, q).real();
                const cplx phase = hpq / apq;
                const double theta = 0.5 * std::atan2(2.0 * apq, app - aqq);
                const double c = std::cos(theta);
                const cplx s = std::sin(theta) * std::conj(phase);
                // rows p,q of H
                for (int j = 0; j < m; ++j) {
                    const cplx hp = h.at(p, j), hq = h.at(q, j);
                    h.at(p, j) = c * hp + std::conj(s) * hq;
                    h.at(q, j) = -s * hp + c * hq;
                }
                // columns p,q of H
                for (int i = 0; i < m; ++i) {
                    const cplx hp = h.at(i, p), hq = h.at(i, q);
                    h.at(i, p) = c * hp + s * hq;
                    h.at(i, q) = -std::conj(s) * hp + c * hq;
                }
                // accumulate the eigenbasis
                for (int i = 0; i < m; ++i) {
                    const cplx vp = v.at(i, p), vq = v.at(i, q);
                    v.at(i, p) = c * vp + s * vq;
                    v.at(i, q) = -std::conj(s) * vp + c * vq;
                }
            }
        }
    }

    HermitianEigen out;
    out.sweeps = sweeps;
    out.values.resize(static_cast<std::size_t>(m));
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return h.at(a, a).real() < h.at(b, b).real(); });
    out.vectors = ComplexMatrix(m, m);
    for (int j = 0; j < m; ++j) {
        out.values[static_cast<std::size_t>(j)] = h.at(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]).real();
        for (int i = 0; i < m; ++i) out.vectors.at(i, j) = v.at(i, order[static_cast<std::size_t>(j)]);
    }
    return out;
}

namespace {

// Eigenvalues of a normal complex matrix M through the commuting
// Hermitian pair H1 = (M+M*)/2, H2 = (M-M*)/2i: diagonalize H1, then
// re-diagonalize H2 restricted to each eigenvalue cluster of H1.
std::vector<cplx> normal_eigs(const ComplexMatrix& mm) {
    const int m = mm.rows;
    const ComplexMatrix ms = adjoint(mm);
    ComplexMatrix h1(m, m), h2(m, m);
    for (std::size_t t = 0; t < mm.entries.size(); ++t) {
        h1.entries[t] = 0.5 * (mm.entries[t] + ms.entries[t]);
        h2.entries[t] = cplx(0, -0.5) * (mm.entries[t] - ms.entries[t]);
    }

    HermitianEigen e1 = hermitian_eigs(h1);
    ComplexMatrix v = e1.vectors;
    const ComplexMatrix w = adjoint(v) * (h2 * v);

    const double dscale = std::max({1.0, std::abs(e1.values.front()), std::abs(e1.values.back())});
    const double gap = 1e-8 * dscale;

    std::vector<double> imag(static_cast<std::size_t>(m), 0.0);
    int a = 0;
    while (a < m) {
        int b = a + 1;
        while (b < m && e1.values[static_cast<std::size_t>(b)] - e1.values[static_cast<std::size_t>(b - 1)] <= gap) ++b;
        const int k = b - a;
        if (k == 1) {
            imag[static_cast<std::size_t>(a)] = w.at(a, a).real();
        } else {
            ComplexMatrix blk(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) blk.at(i, j) = w.at(a + i, a + j);
            HermitianEigen e2 = hermitian_eigs(blk);
            for (int i = 0; i < k; ++i) imag[static_cast<std::size_t>(a + i)] = e2.values[static_cast<std::size_t>(i)];
            // rotate the corresponding columns of V so the residual
            // check below sees genuine eigenvectors
            for (int i = 0; i < m; ++i) {
                std::vector<cplx> row(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j) {
                    cplx s = 0.0;
                    for (int l = 0; l < k; ++l) s += v.at(i, a + l) * e2.vectors.at(l, j);
                    row[static_cast<std::size_t>(j)] = s;
                }
                for (int j = 0; j < k; ++j) v.at(i, a + j) = row[static_cast<std::size_t>(j)];
            }
        }
        a = b;
    }

    std::vector<cplx> lam(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) lam[static_cast<std::size_t>(i)] = cplx(e1.values[static_cast<std::size_t>(i)], imag[static_cast<std::size_t>(i)]);

    // residual guard: ||M v_k - lambda_k v_k|| small for every k
    const double mscale = std::max(frobenius(mm), 1.0);
    for (int k = 0; k < m; ++k) {
        double r2 = 0.0;
        for (int i = 0; i < m; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < m; ++j) s += mm.at(i, j) * v.at(j, k);
            s -= lam[static_cast<std::size_t>(k)] * v.at(i, k);
            r2 += std::norm(s);
        }
        if (std::sqrt(r2) > 1e-7 * mscale)
            throw NumericalError("normal eigensolver: residual check failed");
    }
    return lam;
}

} // namespace

Spectrum spectrum(const QMatrix& a) {
    require_square(a, "spectrum");
    const ComplexMatrix m = adjoint_embed(a);
    const ComplexMatrix ms = adjoint(m);
    const double sc = std::max(1.0, frobenius(m));
    if (frobenius(m * ms - ms * m) > 1e-9 * sc * sc)
        throw DomainError("spectrum: normal matrix required (unitary or self-adjoint callers only)");

    std::vector<cplx> lam = normal_eigs(m);

    // The embedding forces eigenvalues into conjugate pairs; fold each
    // pair into one upper-half-plane class representative.
    double lscale = 1.0;
    for (const cplx& l : lam) lscale = std::max(lscale, std::abs(l));
    std::sort(lam.begin(), lam.end(), [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return std::abs(x.imag()) < std::abs(y.imag());
    });

    Spectrum s;
    s.values.reserve(lam.size() / 2);
    for (std::size_t t = 0; t + 1 < lam.size(); t += 2) {
        const cplx& x = lam[t];
        const cplx& y = lam[t + 1];
        if (std::abs(x.real() - y.real()) > 1e-8 * lscale ||
            std::abs(std::abs(x.imag()) - std::abs(y.imag())) > 1e-8 * lscale)
            throw NumericalError("spectrum: conjugate pairing failed");
        s.values.push_back({0.5 * (x.real() + y.real()), 0.5 * (std::abs(x.imag()) + std::abs(y.imag()))});
    }
    std::sort(s.values.begin(), s.values.end(), [](const ComplexRep& x, const ComplexRep& y) {
        if (x.re != y.re) return x.re < y.re;
        return x.im < y.im;
    });
    return s;
}

double spectral_radius(const QMatrix& a) {
    const Spectrum s = spectrum(a);
    double r = 0.0;
    for (const ComplexRep& v : s.values) r = std::max(r, modulus(v));
    return r;
}

double spectral_norm(const QMatrix& a) {
    if (a.rows == 0 || a.cols == 0) throw DomainError("spectral_norm: empty matrix");
    const QMatrix g = adjoint(a) * a; // positive semidefinite
    const HermitianEigen e = hermitian_eigs(adjoint_embed(g));
    const double top = e.values.back();
    return std::sqrt(std::max(top, 0.0));
}

bool is_unitary(const QMatrix& a, double tol) {
    require_square(a, "is_unitary");
    return max_entry_distance(adjoint(a) * a, QMatrix::identity(a.rows)) <= tol;
}

std::vector<double> unitary_angles(const QMatrix& r) {
    if (!is_unitary(r, 1e-9)) throw DomainError("unitary_angles: input is not unitary");
    const Spectrum s = spectrum(r);
    std::vector<double> angles;
    angles.reserve(s.values.size());
    for (const ComplexRep& v : s.values) angles.push_back(std::acos(std::clamp(v.re, -1.0, 1.0)));
    std::sort(angles.begin(), angles.end());
    return angles;
}

QMatrix gram_schmidt_unitary(const QMatrix& a) {
    require_square(a, "gram_schmidt_unitary");
    const int m = a.rows;
    QMatrix u = a;
    for (int j = 0; j < m; ++j) {
        // two orthogonalization passes; the second mops up the
        // cancellation the first one leaves behind
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                Quaternion c{};
                for (int i = 0; i < m; ++i) c = c + conj(u.at(i, k)) * u.at(i, j);
                for (int i = 0; i < m; ++i) u.at(i, j) = u.at(i, j) - u.at(i, k) * c;
            }
        }
        double nrm2 = 0.0;
        for (int i = 0; i < m; ++i) nrm2 += modulus_sq(u.at(i, j));
        const double nrm = std::sqrt(nrm2);
        if (nrm < 1e-12) throw DomainError("gram_schmidt_unitary: rank-deficient columns");
        for (int i = 0; i < m; ++i) u.at(i, j) = u.at(i, j) * (1.0 / nrm);
    }
    return u;
}

namespace {

// LU with partial pivoting, solving E X = B in place.
ComplexMatrix lu_solve(ComplexMatrix e, ComplexMatrix b) {
    const int m = e.rows;
    const double scale = std::max(max_entry_abs(e), 1e-300);
    for (int k = 0; k < m; ++k) {
        int piv = k;
        double best = std::abs(e.at(k, k));
        for (int i = k + 1; i < m; ++i) {
            const double c = std::abs(e.at(i, k));
            if (c > best) {
                best = c;
                piv = i;
            }
        }
        if (best < 1e-13 * scale) throw DomainError("inverse: singular matrix");
        if (piv != k) {
            for (int j = 0; j < m; ++j) std::swap(e.at(k, j), e.at(piv, j));
            for (int j = 0; j < b.cols; ++j) std::swap(b.at(k, j), b.at(piv, j));
        }
        const cplx d = e.at(k, k);
        for (int i = k + 1; i < m; ++i) {
            const cplx f = e.at(i, k) / d;
            if (f == cplx{}) continue;
            e.at(i, k) = f;
            for (int j = k + 1; j < m; ++j) e.at(i, j) -= f * e.at(k, j);
            for (int j = 0; j < b.cols; ++j) b.at(i, j) -= f * b.at(k, j);
        }
    }
    for (int k = m - 1; k >= 0; --k) {
        for (int j = 0; j < b.cols; ++j) {
            cplx s = b.at(k, j);
            for (int i = k + 1; i < m; ++i) s -= e.at(k, i) * b.at(i, j);
            b.at(k, j) = s / e.at(k, k);
        }
    }
    return b;
}

} // namespace

QMatrix inverse(const QMatrix& a) {
    require_square(a, "inverse");
    const ComplexMatrix e = adjoint_embed(a);
    const ComplexMatrix x = lu_solve(e, ComplexMatrix::identity(e.rows));
    return from_adjoint_embed(x);
}

QMatrix matrix_power(const QMatrix& a, long long q) {
    require_square(a, "matrix_power");
    if (q < 0) throw DomainError("matrix_power: negative exponent");
    QMatrix acc = QMatrix::identity(a.rows);
    QMatrix base = a;
    while (q > 0) {
        if (q & 1) acc = acc * base;
        q >>= 1;
        if (q > 0) base = base * base;
    }
    return acc;
}

} // namespace qhtk

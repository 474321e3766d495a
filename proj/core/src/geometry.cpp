#include "qhtk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qhtk/errors.hpp"
#include "qhtk/rng.hpp"

namespace qhtk {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

void require_length(const std::vector<Quaternion>& z, int len, const char* who) {
    if (static_cast<int>(z.size()) != len) throw DomainError(std::string(who) + ": vector length mismatch");
}

void require_same_form(const ModelForm& a, const ModelForm& b, const char* who) {
    if (a.n != b.n || a.kind != b.kind) throw DomainError(std::string(who) + ": model forms differ");
}

double vector_scale(const std::vector<Quaternion>& z) {
    double m = 0.0;
    for (const Quaternion& q : z) m = std::max(m, modulus(q));
    return m;
}

} // namespace

ModelForm ModelForm::half_space(int n) {
    if (n < 2) throw DomainError("half_space form: n >= 2 required");
    ModelForm f;
    f.n = n;
    f.kind = ModelKind::half_space;
    f.matrix = QMatrix(n + 1, n + 1);
    f.matrix.at(0, n) = 1.0;
    f.matrix.at(n, 0) = 1.0;
    for (int i = 1; i < n; ++i) f.matrix.at(i, i) = 1.0;
    return f;
}

ModelForm ModelForm::ball(int n) {
    if (n < 2) throw DomainError("ball form: n >= 2 required");
    ModelForm f;
    f.n = n;
    f.kind = ModelKind::ball;
    f.matrix = QMatrix(n + 1, n + 1);
    for (int i = 0; i < n; ++i) f.matrix.at(i, i) = 1.0;
    f.matrix.at(n, n) = -1.0;
    return f;
}

double form_defect(const QMatrix& a, const ModelForm& form) {
    if (a.rows != form.n + 1 || a.cols != form.n + 1) throw DomainError("form_defect: size mismatch with form");
    return max_entry_distance(adjoint(a) * form.matrix * a, form.matrix);
}

Isometry make_isometry(QMatrix a, ModelForm form, double tol) {
    const double d = form_defect(a, form);
    if (d > tol) throw DomainError("make_isometry: form preservation defect " + std::to_string(d));
    return {std::move(a), std::move(form)};
}

Isometry compose(const Isometry& a, const Isometry& b) {
    require_same_form(a.form, b.form, "compose");
    return {a.matrix * b.matrix, a.form};
}

Isometry isometry_inverse(const Isometry& a) {
    // A* J A = J and J^2 = I give A^-1 = J A* J
    return {a.form.matrix * adjoint(a.matrix) * a.form.matrix, a.form};
}

std::vector<Quaternion> apply(const Isometry& a, const std::vector<Quaternion>& z) {
    return a.matrix * z;
}

Quaternion pairing(const std::vector<Quaternion>& z, const std::vector<Quaternion>& w, const ModelForm& form) {
    require_length(z, form.n + 1, "pairing");
    require_length(w, form.n + 1, "pairing");
    const std::vector<Quaternion> jz = form.matrix * z;
    Quaternion s{};
    for (std::size_t i = 0; i < w.size(); ++i) s = s + conj(w[i]) * jz[i];
    return s;
}

PointClass classify_point(const std::vector<Quaternion>& z, const ModelForm& form) {
    require_length(z, form.n + 1, "classify_point");
    double s2 = 0.0;
    for (const Quaternion& q : z) s2 += modulus_sq(q);
    if (s2 == 0.0) throw DomainError("classify_point: zero vector");
    const double p = pairing(z, z, form).w / s2;
    if (std::abs(p) <= 1e-10) return PointClass::null;
    return p < 0 ? PointClass::negative : PointClass::positive;
}

double distance(const std::vector<Quaternion>& x, const std::vector<Quaternion>& y, const ModelForm& form) {
    if (classify_point(x, form) != PointClass::negative || classify_point(y, form) != PointClass::negative)
        throw DomainError("distance: both points must be interior (negative)");
    const double num = modulus_sq(pairing(x, y, form));
    const double den = pairing(x, x, form).w * pairing(y, y, form).w;
    const double arg = num / den; // cosh^2(rho/2)
    if (arg < 1.0 - 1e-10) throw DomainError("distance: cosh^2 argument below 1");
    return 2.0 * std::acosh(std::sqrt(std::max(arg, 1.0)));
}

double distance(const ProjectivePoint& x, const ProjectivePoint& y, const ModelForm& form) {
    return distance(x.coords, y.coords, form);
}

QMatrix cayley_matrix(int n) {
    QMatrix c(n + 1, n + 1);
    c.at(0, 0) = kSqrtHalf;
    c.at(0, n) = kSqrtHalf;
    c.at(n, 0) = kSqrtHalf;
    c.at(n, n) = -kSqrtHalf;
    for (int i = 1; i < n; ++i) c.at(i, i) = 1.0;
    return c;
}

std::vector<Quaternion> cayley_to_half_space(const std::vector<Quaternion>& z) {
    const int n = static_cast<int>(z.size()) - 1;
    if (n < 1) throw DomainError("cayley: vector too short");
    return cayley_matrix(n) * z;
}

std::vector<Quaternion> origin_point(int n) {
    std::vector<Quaternion> o(static_cast<std::size_t>(n + 1));
    o.front() = -1.0;
    o.back() = 1.0;
    return o;
}

std::vector<Quaternion> infinity_point(int n) {
    std::vector<Quaternion> q(static_cast<std::size_t>(n + 1));
    q.front() = 1.0;
    return q;
}

bool projectively_equal(const std::vector<Quaternion>& a, const std::vector<Quaternion>& b, double tol) {
    if (a.size() != b.size()) return false;
    const double sa = vector_scale(a);
    if (sa == 0.0 || vector_scale(b) == 0.0) return false;
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < a.size(); ++i)
        if (modulus(a[i]) > modulus(a[i0])) i0 = i;
    if (modulus(b[i0]) <= 1e-14 * vector_scale(b)) return false;
    // right scalar q aligning the dominant entries: b . q ~ a
    const Quaternion q = inverse(b[i0]) * a[i0];
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, distance(b[i] * q, a[i]));
    return worst <= tol * sa;
}

bool fixes_origin(const Isometry& a, double tol) {
    const std::vector<Quaternion> o = origin_point(a.form.n);
    std::vector<Quaternion> image;
    if (a.form.kind == ModelKind::half_space) {
        image = a.matrix * o;
    } else {
        std::vector<Quaternion> e(static_cast<std::size_t>(a.form.n + 1));
        e.back() = 1.0;
        image = a.matrix * e;
        return projectively_equal(image, e, tol);
    }
    return projectively_equal(image, o, tol);
}

HorosphericalCoords to_horospherical(const std::vector<Quaternion>& z, int n) {
    require_length(z, n + 1, "to_horospherical");
    const Quaternion& last = z.back();
    if (modulus(last) <= 1e-13 * vector_scale(z)) throw DomainError("to_horospherical: point at infinity has no chart");
    const Quaternion s = inverse(last);
    const Quaternion z1 = z.front() * s;
    HorosphericalCoords h;
    h.xi.resize(static_cast<std::size_t>(n - 1));
    double xi2 = 0.0;
    for (int i = 1; i < n; ++i) {
        h.xi[static_cast<std::size_t>(i - 1)] = z[static_cast<std::size_t>(i)] * s;
        xi2 += modulus_sq(h.xi[static_cast<std::size_t>(i - 1)]);
    }
    h.v = Quaternion{0.0, 2.0 * z1.x, 2.0 * z1.y, 2.0 * z1.z};
    h.u = -(2.0 * z1.w + xi2);
    return h;
}

std::vector<Quaternion> from_horospherical(const HorosphericalCoords& h) {
    double xi2 = 0.0;
    for (const Quaternion& q : h.xi) xi2 += modulus_sq(q);
    std::vector<Quaternion> z;
    z.reserve(h.xi.size() + 2);
    z.push_back({0.5 * (-h.u - xi2), 0.5 * h.v.x, 0.5 * h.v.y, 0.5 * h.v.z});
    for (const Quaternion& q : h.xi) z.push_back(q);
    z.push_back(1.0);
    return z;
}

IsometryClass classify_isometry(const Isometry& a) {
    const int m = a.matrix.rows;
    const QMatrix id = QMatrix::identity(m);
    if (max_entry_distance(a.matrix, id) <= 1e-10 || max_entry_distance(a.matrix, id * -1.0) <= 1e-10)
        return IsometryClass::identity;

    // general (non-normal) spectrum; this is the one place the paper's
    // chain needs eigenvalues of an arbitrary matrix, so the embedding
    // goes through a general-purpose dense solver
    const ComplexMatrix e = adjoint_embed(a.matrix);
    Eigen::MatrixXcd em(e.rows, e.cols);
    for (int i = 0; i < e.rows; ++i)
        for (int j = 0; j < e.cols; ++j) em(i, j) = e.at(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(em, true);
    if (ces.info() != Eigen::Success) throw NumericalError("classify_isometry: eigensolver failed");

    double radius = 0.0;
    for (int i = 0; i < em.rows(); ++i) radius = std::max(radius, std::abs(ces.eigenvalues()(i)));

    const double tol_c = 1e-8;
    if (radius > 1.0 + tol_c) return IsometryClass::loxodromic;
    if (radius < 1.0 - tol_c)
        throw NumericalError("classify_isometry: spectral radius below 1 for a form-preserving matrix");

    // radius 1: elliptic iff diagonalizable, probed by how well the
    // eigenvector columns span; Gram conditioning with a refusal band
    Eigen::MatrixXcd v = ces.eigenvectors();
    for (int j = 0; j < v.cols(); ++j) {
        const double nj = v.col(j).norm();
        if (nj > 0) v.col(j) /= nj;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> saes(v.adjoint() * v);
    if (saes.info() != Eigen::Success) throw NumericalError("classify_isometry: Gram eigensolver failed");
    const double lo = saes.eigenvalues()(0);
    const double hi = saes.eigenvalues()(saes.eigenvalues().size() - 1);
    if (lo <= 0.0) return IsometryClass::parabolic;
    const double cond = hi / lo;
    if (cond < 1e8) return IsometryClass::elliptic;
    if (cond > 1e10) return IsometryClass::parabolic;
    throw IndeterminateError("classify_isometry: eigenbasis conditioning in the refusal band");
}

Isometry stabilizer_from_blocks(const QMatrix& theta, const Quaternion& u, int n) {
    if (theta.rows != n || theta.cols != n) throw DomainError("stabilizer_from_blocks: theta must be n x n");
    if (std::abs(modulus(u) - 1.0) > 1e-9) throw DomainError("stabilizer_from_blocks: |u| must be 1");
    if (!is_unitary(theta, 1e-8)) throw DomainError("stabilizer_from_blocks: theta must be unitary");
    QMatrix b(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.at(i, j) = theta.at(i, j);
    b.at(n, n) = u;
    const QMatrix c = cayley_matrix(n);
    return make_isometry(c * b * c, ModelForm::half_space(n), 1e-8);
}

Isometry dilation(int n, double r) {
    if (r <= 0.0) throw DomainError("dilation: r > 0 required");
    QMatrix d = QMatrix::identity(n + 1);
    d.at(0, 0) = r;
    d.at(n, n) = 1.0 / r;
    return {d, ModelForm::half_space(n)};
}

DilationDecomposition dilation_decompose(const Isometry& a) {
    if (a.form.kind != ModelKind::half_space) throw DomainError("dilation_decompose: half-space form required");
    const int n = a.form.n;
    const std::vector<Quaternion> o = origin_point(n);
    const std::vector<Quaternion> y = a.matrix * o;
    if (projectively_equal(y, o, 1e-10)) throw FixesOriginError("dilation_decompose: input fixes the origin");

    const HorosphericalCoords h = to_horospherical(y, n);
    double off = imag_norm(h.v);
    for (const Quaternion& q : h.xi) off = std::max(off, modulus(q));
    if (off > 1e-8) throw DomainError("dilation_decompose: image of o is off the vertical geodesic");
    if (h.u <= 0.0) throw DomainError("dilation_decompose: image of o is not interior");

    DilationDecomposition out;
    out.r = std::sqrt(0.5 * h.u); // u = 2 r^2 along the vertical geodesic
    out.D = dilation(n, out.r);
    out.R = make_isometry(dilation(n, 1.0 / out.r).matrix * a.matrix, a.form, 1e-8);
    if (!fixes_origin(out.R, 1e-8))
        throw NumericalError("dilation_decompose: stabilizer part does not fix the origin");
    return out;
}

namespace {

// Unitary with prescribed first column: complete v against the standard
// basis by modified Gram-Schmidt.
QMatrix complete_to_unitary(const std::vector<Quaternion>& v) {
    const int n = static_cast<int>(v.size());
    QMatrix u(n, n);
    for (int i = 0; i < n; ++i) u.at(i, 0) = v[static_cast<std::size_t>(i)];
    int filled = 1;
    for (int k = 0; k < n && filled < n; ++k) {
        std::vector<Quaternion> cand(static_cast<std::size_t>(n));
        cand[static_cast<std::size_t>(k)] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int c = 0; c < filled; ++c) {
                Quaternion proj{};
                for (int i = 0; i < n; ++i) proj = proj + conj(u.at(i, c)) * cand[static_cast<std::size_t>(i)];
                for (int i = 0; i < n; ++i)
                    cand[static_cast<std::size_t>(i)] = cand[static_cast<std::size_t>(i)] - u.at(i, c) * proj;
            }
        }
        double nrm2 = 0.0;
        for (const Quaternion& q : cand) nrm2 += modulus_sq(q);
        const double nrm = std::sqrt(nrm2);
        if (nrm < 1e-2) continue; // basis vector nearly inside the span, skip it
        for (int i = 0; i < n; ++i) u.at(i, filled) = cand[static_cast<std::size_t>(i)] * (1.0 / nrm);
        ++filled;
    }
    if (filled < n) throw NumericalError("complete_to_unitary: could not complete the basis");
    return u;
}

} // namespace

Isometry normalize_to_vertical(const Isometry& a) {
    if (a.form.kind != ModelKind::half_space) throw DomainError("normalize_to_vertical: half-space form required");
    const int n = a.form.n;
    const std::vector<Quaternion> o = origin_point(n);
    const std::vector<Quaternion> y = a.matrix * o;
    if (projectively_equal(y, o, 1e-10)) throw FixesOriginError("normalize_to_vertical: input fixes the origin");

    // ball-model chart of A.o
    const std::vector<Quaternion> b = cayley_to_half_space(y); // C is an involution: also half-space -> ball
    const Quaternion s = inverse(b.back());
    std::vector<Quaternion> w(static_cast<std::size_t>(n));
    double t2 = 0.0;
    for (int i = 0; i < n; ++i) {
        w[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i)] * s;
        t2 += modulus_sq(w[static_cast<std::size_t>(i)]);
    }
    const double t = std::sqrt(t2);
    if (t < 1e-13) throw FixesOriginError("normalize_to_vertical: input fixes the origin");

    for (auto& q : w) q = q * (1.0 / t);
    const QMatrix v = complete_to_unitary(w);
    // theta = V* sends the ball image to (t, 0, ..., 0); its transport
    // fixes o and straightens A.o onto the vertical geodesic, above o
    const Isometry g = stabilizer_from_blocks(adjoint(v), 1.0, n);
    const Isometry ginv = stabilizer_from_blocks(v, 1.0, n);
    const Isometry out = make_isometry(g.matrix * a.matrix * ginv.matrix, a.form, 1e-8);

    const HorosphericalCoords h = to_horospherical(out.matrix * o, n);
    double off = imag_norm(h.v);
    for (const Quaternion& q : h.xi) off = std::max(off, modulus(q));
    if (off > 1e-9 || h.u < 2.0 - 1e-9)
        throw NumericalError("normalize_to_vertical: post-condition failed");
    return out;
}

Isometry random_stabilizer(int n, std::uint64_t seed) {
    Rng rng(seed);
    QMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = rng.gaussian_quaternion();
    const QMatrix theta = gram_schmidt_unitary(g);
    const Quaternion u = rng.unit_quaternion();
    return stabilizer_from_blocks(theta, u, n);
}

Isometry random_isometry(int n, std::uint64_t seed, double spread) {
    if (n < 2) throw DomainError("random_isometry: n >= 2 required");
    if (!(spread > 0.0)) throw DomainError("random_isometry: spread > 0 required");
    const Isometry k1 = random_stabilizer(n, Rng::derive(seed, 1, 0));
    const Isometry k2 = random_stabilizer(n, Rng::derive(seed, 2, 0));
    Rng rng(Rng::derive(seed, 3, 0));
    const double r = std::exp(rng.uniform(0.0, spread));
    return compose(k1, compose(dilation(n, r), k2));
}

Isometry random_near_identity(int n, std::uint64_t seed, double eps) {
    if (n < 2) throw DomainError("random_near_identity: n >= 2 required");
    if (!(eps > 0.0)) throw DomainError("random_near_identity: eps > 0 required");
    Rng rng(Rng::derive(seed, 4, 0));
    QMatrix g = QMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = g.at(i, j) + rng.gaussian_quaternion() * eps;
    const QMatrix theta = gram_schmidt_unitary(g);
    Quaternion u{1.0, eps * rng.gaussian(), eps * rng.gaussian(), eps * rng.gaussian()};
    u = u * (1.0 / modulus(u));
    const Isometry k = stabilizer_from_blocks(theta, u, n);
    const double r = std::exp(eps * rng.uniform());
    return compose(k, dilation(n, r));
}

ProjectivePoint random_interior_point(int n, std::uint64_t seed) {
    Rng rng(Rng::derive(seed, 5, 0));
    HorosphericalCoords h;
    h.xi.resize(static_cast<std::size_t>(n - 1));
    for (auto& q : h.xi) q = rng.gaussian_quaternion() * 0.7;
    h.v = Quaternion{0.0, rng.gaussian(), rng.gaussian(), rng.gaussian()} * 0.5;
    h.u = rng.uniform(0.2, 5.0);
    return {from_horospherical(h)};
}

} // namespace qhtk

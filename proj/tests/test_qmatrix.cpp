#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qhtk/errors.hpp"
#include "qhtk/qmatrix.hpp"
#include "qhtk/rng.hpp"

using namespace qhtk;

namespace {

QMatrix random_qmatrix(Rng& rng, int r, int c) {
    QMatrix a(r, c);
    for (Quaternion& q : a.entries) q = rng.gaussian_quaternion();
    return a;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) e(i, j) = m.at(i, j);
    return e;
}

// independent route: largest singular value of the complex image,
// assembled by hand so rectangular shapes work too
double svd_norm(const QMatrix& a) {
    Eigen::MatrixXcd e(2 * a.rows, 2 * a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            const Quaternion& q = a.at(i, j);
            const cplx a1(q.w, q.x), a2(q.y, q.z);
            e(i, j) = a1;
            e(i, j + a.cols) = a2;
            e(i + a.rows, j) = -std::conj(a2);
            e(i + a.rows, j + a.cols) = std::conj(a1);
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    return svd.singularValues()(0);
}

} // namespace

TEST_SUITE("qmatrix") {

TEST_CASE("adjoint_embed: identity, the j example, multiplicativity") {
    CHECK(max_entry_abs(adjoint_embed(QMatrix::identity(3)) - ComplexMatrix::identity(6)) == 0.0);

    QMatrix mj(1, 1);
    mj.at(0, 0) = Quaternion::j();
    const ComplexMatrix e = adjoint_embed(mj);
    CHECK(e.at(0, 0) == cplx(0, 0));
    CHECK(e.at(0, 1) == cplx(1, 0));
    CHECK(e.at(1, 0) == cplx(-1, 0));
    CHECK(e.at(1, 1) == cplx(0, 0));

    Rng rng(7);
    for (int t = 0; t < 1000; ++t) {
        const int m = 2 + t % 3;
        const QMatrix a = random_qmatrix(rng, m, m), b = random_qmatrix(rng, m, m);
        const double err = max_entry_abs(adjoint_embed(a * b) - adjoint_embed(a) * adjoint_embed(b));
        CHECK(err <= 1e-12 * std::max(1.0, max_entry_abs(adjoint_embed(a)) * max_entry_abs(adjoint_embed(b))));
    }
}

TEST_CASE("transconjugate reverses products") {
    Rng rng(13);
    const QMatrix a = random_qmatrix(rng, 3, 3), b = random_qmatrix(rng, 3, 3);
    CHECK(max_entry_distance(adjoint(a * b), adjoint(b) * adjoint(a)) <= 1e-13 * 100);
}

TEST_CASE("hermitian_eigs against an independent solver") {
    Rng rng(19);
    for (int t = 0; t < 20; ++t) {
        const int m = 3 + t % 4;
        ComplexMatrix h(m, m);
        for (cplx& e : h.entries) e = cplx(rng.gaussian(), rng.gaussian());
        h = h + adjoint(h);

        const HermitianEigen eig = hermitian_eigs(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(h));
        REQUIRE(static_cast<int>(eig.values.size()) == m);
        for (int i = 0; i < m; ++i) CHECK(std::abs(eig.values[i] - ref.eigenvalues()(i)) <= 1e-10 * std::max(1.0, frobenius(h)));

        // V unitary and H V = V diag(lambda)
        CHECK(max_entry_abs(adjoint(eig.vectors) * eig.vectors - ComplexMatrix::identity(m)) <= 1e-11);
        ComplexMatrix hv = h * eig.vectors;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) hv.at(i, j) -= eig.vectors.at(i, j) * eig.values[j];
        CHECK(max_entry_abs(hv) <= 1e-10 * std::max(1.0, frobenius(h)));
    }
}

TEST_CASE("spectrum of diagonal matrices") {
    QMatrix d(2, 2);
    d.at(0, 0) = Quaternion::i();
    d.at(1, 1) = Quaternion::j();
    const Spectrum s = spectrum(d);
    REQUIRE(s.values.size() == 2);
    for (const ComplexRep& v : s.values) {
        CHECK(std::abs(v.re) <= 1e-12);
        CHECK(std::abs(v.im - 1.0) <= 1e-12);
    }

    const Spectrum si = spectrum(QMatrix::identity(3));
    REQUIRE(si.values.size() == 3);
    for (const ComplexRep& v : si.values) {
        CHECK(std::abs(v.re - 1.0) <= 1e-12);
        CHECK(std::abs(v.im) <= 1e-12);
    }

    QMatrix d23(2, 2);
    d23.at(0, 0) = Quaternion(2);
    d23.at(1, 1) = Quaternion(3);
    const Spectrum s23 = spectrum(d23);
    REQUIRE(s23.values.size() == 2);
    CHECK(std::abs(s23.values[0].re - 2.0) <= 1e-12);
    CHECK(std::abs(s23.values[1].re - 3.0) <= 1e-12);
}

TEST_CASE("spectrum rejects non-normal input") {
    QMatrix a(2, 2);
    a.at(0, 0) = Quaternion(1);
    a.at(0, 1) = Quaternion(1);
    a.at(1, 1) = Quaternion(1);
    CHECK_THROWS_AS(spectrum(a), DomainError);
}

TEST_CASE("spectral_radius examples") {
    CHECK(spectral_radius(QMatrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-12));

    QMatrix d(2, 2);
    d.at(0, 0) = Quaternion(2);
    d.at(1, 1) = Quaternion::i();
    CHECK(spectral_radius(d) == doctest::Approx(2.0).epsilon(1e-12));

    const double r = std::exp(1.0);
    const QMatrix dil = QMatrix::diagonal({Quaternion(r), Quaternion(1), Quaternion(1.0 / r)});
    CHECK(spectral_radius(dil) == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("spectral_norm against SVD of the complex image") {
    Rng rng(29);
    for (int t = 0; t < 30; ++t) {
        const int r = 2 + t % 3, c = 2 + (t / 3) % 3;
        const QMatrix a = random_qmatrix(rng, r, c);
        CHECK(spectral_norm(a) == doctest::Approx(svd_norm(a)).epsilon(1e-11));
    }
}

TEST_CASE("spectral_norm of a dilation and of unitary conjugates") {
    const QMatrix d = QMatrix::diagonal({Quaternion(2.5), Quaternion(1), Quaternion(0.4)});
    CHECK(spectral_norm(d) == doctest::Approx(2.5).epsilon(1e-12));

    Rng rng(31);
    for (int t = 0; t < 25; ++t) {
        const QMatrix a = random_qmatrix(rng, 3, 3);
        const QMatrix b = random_qmatrix(rng, 3, 3);
        const QMatrix u = gram_schmidt_unitary(random_qmatrix(rng, 3, 3));
        CHECK(std::abs(spectral_norm(u * a * inverse(u)) - spectral_norm(a)) <= 1e-9 * std::max(1.0, spectral_norm(a)));
        CHECK(std::abs(spectral_norm(adjoint(a)) - spectral_norm(a)) <= 1e-10 * std::max(1.0, spectral_norm(a)));
        CHECK(spectral_norm(a * b) <= spectral_norm(a) * spectral_norm(b) + 1e-10);
        CHECK(spectral_radius(adjoint(a) * a) <= spectral_norm(adjoint(a) * a) + 1e-10);
    }
}

TEST_CASE("unitary matrices have norm 1") {
    Rng rng(37);
    for (int t = 0; t < 20; ++t) {
        const QMatrix u = gram_schmidt_unitary(random_qmatrix(rng, 2 + t % 3, 2 + t % 3));
        CHECK(std::abs(spectral_norm(u) - 1.0) <= 1e-10);
    }
}

TEST_CASE("is_unitary") {
    CHECK(is_unitary(QMatrix::identity(3), 1e-12));
    CHECK_FALSE(is_unitary(QMatrix::diagonal({Quaternion(2)}), 1.0));
    Rng rng(41);
    CHECK(is_unitary(gram_schmidt_unitary(random_qmatrix(rng, 4, 4)), 1e-10));
}

TEST_CASE("unitary_angles: identity, diagonal, -I") {
    const std::vector<double> zero = unitary_angles(QMatrix::identity(3));
    for (const double a : zero) CHECK(std::abs(a) <= 1e-7);

    const UnitImaginary i_axis{1, 0, 0};
    const QMatrix d = QMatrix::diagonal({exp_mu(i_axis, 0.3), exp_mu(i_axis, 1.1)});
    const std::vector<double> ang = unitary_angles(d);
    REQUIRE(ang.size() == 2);
    CHECK(ang[0] == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(ang[1] == doctest::Approx(1.1).epsilon(1e-10));

    const QMatrix neg = QMatrix::identity(2) * -1.0;
    for (const double a : unitary_angles(neg)) CHECK(a == doctest::Approx(std::numbers::pi).epsilon(1e-10));

    CHECK_THROWS_AS(unitary_angles(QMatrix::diagonal({Quaternion(2)})), DomainError);
}

TEST_CASE("gram_schmidt_unitary fixed points and rank rejection") {
    CHECK(max_entry_distance(gram_schmidt_unitary(QMatrix::identity(3)), QMatrix::identity(3)) <= 1e-15);
    const QMatrix d = QMatrix::diagonal({Quaternion(2), Quaternion(3)});
    CHECK(max_entry_distance(gram_schmidt_unitary(d), QMatrix::identity(2)) <= 1e-15);

    QMatrix sing(2, 2);
    sing.at(0, 0) = Quaternion(1);
    sing.at(1, 0) = Quaternion(1);
    sing.at(0, 1) = Quaternion(1);
    sing.at(1, 1) = Quaternion(1);
    CHECK_THROWS_AS(gram_schmidt_unitary(sing), DomainError);
}

TEST_CASE("inverse and matrix_power") {
    Rng rng(43);
    const QMatrix a = random_qmatrix(rng, 3, 3);
    CHECK(max_entry_distance(a * inverse(a), QMatrix::identity(3)) <= 1e-11 * std::max(1.0, spectral_norm(a)));

    CHECK(max_entry_distance(matrix_power(a, 0), QMatrix::identity(3)) == 0.0);
    const QMatrix a5 = a * a * a * a * a;
    CHECK(max_entry_distance(matrix_power(a, 5), a5) <= 1e-12 * std::max(1.0, max_entry_distance(a5, QMatrix::zero(3, 3))));

    CHECK_THROWS_AS(inverse(QMatrix::zero(2, 2)), DomainError);
}

} // TEST_SUITE

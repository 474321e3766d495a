#include "qhtk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qhtk/errors.hpp"

namespace qhtk {

namespace {

constexpr double kPi = std::numbers::pi;

// Q^m as a 64-bit integer, rejected when it cannot fit.
std::int64_t integer_power_checked(int Q, int m, const char* who) {
    std::int64_t v = 1;
    for (int i = 0; i < m; ++i) {
        if (v > std::numeric_limits<std::int64_t>::max() / Q)
            throw DomainError(std::string(who) + ": Q^m exceeds the integer range");
        v *= Q;
    }
    return v;
}

// distance from x to the nearest even integer, in [0, 1]
double even_dist(double x) {
    const double g = std::fmod(std::abs(x), 2.0);
    return std::min(g, 2.0 - g);
}

// ||R^q - I|| predicted from the rotation angles alone: the largest
// |e^{i pi theta q} - 1| = 2 sin(pi/2 dist(q theta, 2Z)).
double predicted_power_norm(const std::vector<double>& thetas, std::int64_t q) {
    double worst = 0.0;
    for (const double t : thetas)
        worst = std::max(worst, 2.0 * std::sin(0.5 * kPi * even_dist(static_cast<double>(q) * t)));
    return worst;
}

} // namespace

BoundConstants solve_constants(int n) {
    if (n < 2) throw DomainError("solve_constants: n >= 2 required");
    // 2t(1+t)^2 - 1 is increasing on [0,1] with a sign change inside
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f = 2.0 * mid * (1.0 + mid) * (1.0 + mid) - 1.0;
        (f < 0.0 ? lo : hi) = mid;
    }
    BoundConstants c;
    c.n = n;
    c.tau = 0.5 * (lo + hi);
    c.omega = std::sqrt(0.5 * c.tau); // tau = 2 omega^2 maps one defining equation onto the other
    c.lambda_n = 0.05 / std::pow(9.0, n + 1);
    return c;
}

double commutator_defect(const QMatrix& a, const QMatrix& b) {
    if (a.rows != a.cols || b.rows != b.cols || a.rows != b.rows)
        throw DomainError("commutator_defect: square matrices of equal size required");
    const QMatrix comm = a * b * inverse(a) * inverse(b);
    return spectral_norm(comm - QMatrix::identity(a.rows));
}

double commutator_bound(const QMatrix& a, const QMatrix& b) {
    if (a.rows != a.cols || b.rows != b.cols || a.rows != b.rows)
        throw DomainError("commutator_bound: square matrices of equal size required");
    const QMatrix id = QMatrix::identity(a.rows);
    return 2.0 * spectral_norm(a - id) * spectral_norm(b - id) * spectral_norm(inverse(a)) *
           spectral_norm(inverse(b));
}

double jorgensen_martin_test(const Isometry& a, const Isometry& b) {
    if (a.form.n != b.form.n || a.form.kind != b.form.kind)
        throw DomainError("jorgensen_martin_test: model forms differ");
    const QMatrix id = QMatrix::identity(a.matrix.rows);
    const double va = spectral_norm(a.matrix) * spectral_norm(a.matrix - id);
    const double vb = spectral_norm(b.matrix) * spectral_norm(b.matrix - id);
    return std::max(va, vb);
}

DirichletResult dirichlet_approximate(const std::vector<double>& thetas, int Q) {
    const int m = static_cast<int>(thetas.size());
    if (m < 1) throw DomainError("dirichlet_approximate: at least one angle required");
    if (Q < 2) throw DomainError("dirichlet_approximate: Q >= 2 required");
    for (const double t : thetas)
        if (!(t >= 0.0 && t <= 1.0)) throw DomainError("dirichlet_approximate: angles must lie in [0,1]");

    const std::int64_t q_max = integer_power_checked(Q, m, "dirichlet_approximate");
    const double slot = 1.0 / Q;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        bool ok = true;
        for (const double t : thetas) {
            const double qt = static_cast<double>(q) * t;
            // strict: |q theta - p| < 1/Q, the pigeonhole box is half-open
            if (!(std::abs(qt - std::llround(qt)) < slot)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        DirichletResult out;
        out.q = q;
        out.p.reserve(thetas.size());
        out.errors.reserve(thetas.size());
        for (const double t : thetas) {
            const std::int64_t p = std::llround(static_cast<double>(q) * t);
            out.p.push_back(p);
            out.errors.push_back(std::abs(t - static_cast<double>(p) / static_cast<double>(q)));
        }
        return out;
    }
    throw NumericalError("dirichlet_approximate: pigeonhole exhausted, which contradicts the lemma");
}

ApproximationCertificate approximate_rotation(const Isometry& r, int Q) {
    if (Q < 2) throw DomainError("approximate_rotation: Q >= 2 required");
    if (!fixes_origin(r, 1e-9)) throw DomainError("approximate_rotation: input does not fix the origin");
    const int n = r.form.n;

    // ball-model transport is block diagonal, hence unitary
    const QMatrix c = cayley_matrix(n);
    const QMatrix ball = c * r.matrix * c;
    const std::vector<double> raw = unitary_angles(ball);
    std::vector<double> thetas(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) thetas[i] = raw[i] / kPi; // each in [0,1]

    const std::int64_t q_cap = integer_power_checked(Q, n + 1, "approximate_rotation");
    const double target = kPi / Q;

    // Smallest q whose predicted norm meets pi/Q; beyond the
    // exhaustive-scan budget fall back to a halved-angle Dirichlet
    // witness, which always lands under the doubled target 2 sin(pi/Q).
    const std::int64_t scan_cap = std::min<std::int64_t>(q_cap, 10'000'000);
    std::int64_t q_met = 0;
    std::int64_t q_best = 1;
    double best_pred = predicted_power_norm(thetas, 1);
    for (std::int64_t q = 1; q <= scan_cap; ++q) {
        const double pred = predicted_power_norm(thetas, q);
        if (pred < best_pred) {
            best_pred = pred;
            q_best = q;
        }
        if (pred <= target + 1e-12) {
            q_met = q;
            break;
        }
    }
    if (q_met == 0 && scan_cap < q_cap) {
        std::vector<double> halved(thetas.size());
        for (std::size_t i = 0; i < thetas.size(); ++i) halved[i] = 0.5 * thetas[i];
        const DirichletResult dr = dirichlet_approximate(halved, Q);
        const double pred = predicted_power_norm(thetas, dr.q);
        if (pred < best_pred) {
            best_pred = pred;
            q_best = dr.q;
        }
    }

    ApproximationCertificate cert;
    cert.q = q_met != 0 ? q_met : q_best;
    cert.bound = target;
    cert.provable_bound = 2.0 * std::sin(kPi / Q);
    cert.predicted = predicted_power_norm(thetas, cert.q);

    // independent route: power the matrix itself
    const QMatrix rq = matrix_power(r.matrix, cert.q);
    cert.achieved = spectral_norm(rq - QMatrix::identity(rq.rows));
    cert.met = cert.achieved <= target + 1e-9;

    if (std::abs(cert.achieved - cert.predicted) > 1e-6 + 1e-9 * static_cast<double>(cert.q))
        throw NumericalError("approximate_rotation: angle arithmetic and matrix power disagree");
    return cert;
}

double resume_bound(double r, std::int64_t q, int Q) {
    if (!(r >= 1.0)) throw DomainError("resume_bound: r >= 1 required");
    if (q < 1) throw DomainError("resume_bound: q >= 1 required");
    if (Q < 2) throw DomainError("resume_bound: Q >= 2 required");
    const double qlr = static_cast<double>(q) * std::log(r);
    const double rq = std::exp(qlr);
    const double rq_minus_1 = std::expm1(qlr);
    return rq * (r * rq_minus_1 + kPi / Q);
}

MarginResult main_theorem_margin(int n) {
    if (n < 2) throw DomainError("main_theorem_margin: n >= 2 required");
    // worst case of the chain at dimension n: q <= 9^{n+1} and
    // r < e^{lambda_n/2} give r^q < e^{0.025}
    const double e025 = std::exp(0.025);
    const double r_cap = std::exp(0.025 / std::pow(9.0, n));
    MarginResult out;
    out.bound = e025 * (r_cap * (e025 - 1.0) + kPi / 9.0);
    out.omega = solve_constants(n).omega;
    out.verdict = out.bound < out.omega;
    return out;
}

BoundReport certify_displacement(const Isometry& a, int Q) {
    if (a.form.kind != ModelKind::half_space) throw DomainError("certify_displacement: half-space form required");
    if (Q < 2) throw DomainError("certify_displacement: Q >= 2 required");
    if (fixes_origin(a, 1e-10)) throw FixesOriginError("certify_displacement: input fixes the origin");

    const int n = a.form.n;
    const Isometry vertical = normalize_to_vertical(a);
    const DilationDecomposition dd = dilation_decompose(vertical);
    const ApproximationCertificate cert = approximate_rotation(dd.R, Q);

    const QMatrix aq = matrix_power(vertical.matrix, cert.q);
    const QMatrix rq = matrix_power(dd.R.matrix, cert.q);
    const QMatrix id = QMatrix::identity(n + 1);

    BoundReport rep;
    rep.n = n;
    rep.Q = Q;
    rep.q = cert.q;
    rep.r = dd.r;
    rep.delta = distance(origin_point(n), a.matrix * origin_point(n), a.form);
    rep.norm_A = spectral_norm(vertical.matrix);
    rep.norm_Aq = spectral_norm(aq);
    rep.norm_Aq_minus_I = spectral_norm(aq - id);
    rep.norm_Aq_minus_Rq = spectral_norm(aq - rq);
    rep.lemma_bound = resume_bound(dd.r, cert.q, Q);
    rep.product = rep.norm_Aq * rep.norm_Aq_minus_I;
    {
        const double qlr0 = static_cast<double>(cert.q) * std::log(dd.r);
        rep.corrected_bound = std::exp(qlr0) * (dd.r * std::expm1(qlr0) + 2.0 * std::sin(kPi / Q));
    }
    rep.omega = solve_constants(n).omega;
    rep.verdict = rep.product < rep.omega;
    rep.rotation_met = cert.met;

    const double qlr = static_cast<double>(cert.q) * std::log(dd.r);
    rep.slack_norm = dd.r - rep.norm_A;
    rep.slack_orthogonal = dd.r * std::expm1(qlr) - rep.norm_Aq_minus_Rq;
    rep.slack_resume = rep.lemma_bound - rep.product;
    rep.worst_case_bound = main_theorem_margin(n).bound;
    return rep;
}

} // namespace qhtk

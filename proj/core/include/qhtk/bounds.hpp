#pragma once

#include <cstdint>
#include <vector>

#include "qhtk/geometry.hpp"
#include "qhtk/qmatrix.hpp"

namespace qhtk {

// The three constants the displacement bound runs on. tau is the
// Zassenhaus radius, omega the Jorgensen-Martin threshold, lambda_n
// the certified displacement scale at dimension n.
//
// omega satisfies 2w(2w^2+1) = 1, equivalently tau = 2 omega^2, so
// omega = sqrt(tau/2) ~ 0.38545. (Substitute t = 2w^2 into the tau
// equation and divide; the other published closed form does not solve
// the defining equation and is not used.)
struct BoundConstants {
    int n = 2;
    double tau = 0.0;      // positive root of 2t(1+t)^2 = 1
    double omega = 0.0;    // positive root of 2w(2w^2+1) = 1
    double lambda_n = 0.0; // 0.05 / 9^{n+1}
};

BoundConstants solve_constants(int n);

// ||ABA^-1 B^-1 - I|| measured directly.
double commutator_defect(const QMatrix& a, const QMatrix& b);
// The comparison side: 2 ||A-I|| ||B-I|| ||A^-1|| ||B^-1||.
double commutator_bound(const QMatrix& a, const QMatrix& b);

// max(||A|| ||A-I||, ||B|| ||B-I||). Below omega the pair cannot
// generate a discrete torsion-free non-elementary group; the caller
// owns that comparison, this is just the scalar.
double jorgensen_martin_test(const Isometry& a, const Isometry& b);

// Simultaneous rational approximation of m angles by p_i/q with a
// common denominator q <= Q^m and errors <= 1/(qQ).
struct DirichletResult {
    std::int64_t q = 1;
    std::vector<std::int64_t> p;
    std::vector<double> errors; // |theta_i - p_i/q|
};

// Smallest valid q (pigeonhole guarantees one exists in [1, Q^m]).
DirichletResult dirichlet_approximate(const std::vector<double>& thetas, int Q);

// Power of an elliptic stabilizer brought near the identity.
//
// met records whether the pi/Q target was reached by some q <= Q^{n+1}.
// It is not always reachable: powering R multiplies each rotation angle
// by q mod 2pi, and a Dirichlet denominator only controls q theta_i mod
// 1, leaving the integer parts free to land on odd numbers, where the
// block sits near -1 and ||R^q - I|| is near 2. The halved angles
// theta_i/2 restore pigeonhole control at the price of the doubled
// target 2 sin(pi/Q), and that weaker bound always holds for the
// denominator range Q^{n+1}. When no q meets pi/Q, the certificate
// carries the best q found (smallest predicted norm, then smallest q)
// and met = false rather than a silently violated invariant.
struct ApproximationCertificate {
    std::int64_t q = 1;
    double bound = 0.0;          // pi/Q, the nominal target
    double achieved = 0.0;       // ||R^q - I|| by direct matrix power
    bool met = false;            // achieved <= bound + 1e-9
    double predicted = 0.0;      // same norm from angle arithmetic alone
    double provable_bound = 0.0; // 2 sin(pi/Q), the guarantee that always holds
};

ApproximationCertificate approximate_rotation(const Isometry& r, int Q);

// r^q (r (r^q - 1) + pi/Q), the assembled per-instance bound on
// ||A^q|| ||A^q - I||.
double resume_bound(double r, std::int64_t q, int Q);

// Worst case over the certified displacement range at dimension n:
// e^{0.025} (e^{0.025/9^n} (e^{0.025} - 1) + pi/9) against omega.
struct MarginResult {
    double bound = 0.0;
    double omega = 0.0;
    bool verdict = false; // bound < omega
};

MarginResult main_theorem_margin(int n);

// One isometry pushed through the whole chain: normalize to the
// vertical geodesic, split off the dilation, approximate the rotation
// part, power up, and measure every inequality the chain uses.
struct BoundReport {
    int n = 0;
    int Q = 9;
    std::int64_t q = 1;
    double r = 1.0;
    double delta = 0.0;            // displacement of o, = 2 ln r
    double norm_A = 0.0;
    double norm_Aq = 0.0;
    double norm_Aq_minus_I = 0.0;
    double norm_Aq_minus_Rq = 0.0;
    double lemma_bound = 0.0;      // resume_bound(r, q, Q)
    double corrected_bound = 0.0;  // same chain with 2 sin(pi/Q) in place of pi/Q
    double product = 0.0;          // norm_Aq * norm_Aq_minus_I
    double omega = 0.0;
    bool verdict = false;          // product < omega
    bool rotation_met = false;     // the pi/Q target held for this input
    // Measured slack in each link, bound minus measurement; a negative
    // slack beyond tolerance is a violation.
    double slack_norm = 0.0;       // r - ||A||
    double slack_orthogonal = 0.0; // r(r^q - 1) - ||A^q - R^q||
    double slack_resume = 0.0;     // lemma_bound - product
    // Dimension-level worst case (q capped at 9^{n+1}, r below
    // e^{lambda_n/2}) carried alongside the per-instance bound so both
    // readings of the final computation are visible in one record.
    double worst_case_bound = 0.0;
};

BoundReport certify_displacement(const Isometry& a, int Q);

} // namespace qhtk

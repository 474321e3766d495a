#pragma once

namespace qhtk {

// Volume of a radius-R ball in quaternionic hyperbolic n-space,
// curvature normalized to [-1, -1/4]:
//   sigma_4n * (16^n / 4n) * sinh^{4n}(R/2) * (1 + (2n/(2n+1)) sinh^2(R/2))
// with sigma_4n = pi^{2n} / (2n)! the Euclidean unit-ball volume.
//
// Everything is evaluated in log space first: the manifold bound at
// n = 10 is around 1e-496, far below the smallest double, and (2n)!
// overflows near n = 43. The linear fields hold exp() of the logs and
// may round to 0 or inf at the extremes; the log fields are the
// dependable ones.
struct VolumeResult {
    int n = 1;
    double R = 0.0;
    double volume = 0.0;     // exp(log_volume), 0 exactly when R = 0
    double log_volume = 0.0; // -inf when R = 0
    double sigma_4n = 0.0;
    double log_sigma_4n = 0.0;
};

VolumeResult ball_volume(int n, double R);

// Radial density, sigma_4n * 2^{4n-1} * cosh^3(r/2) * sinh^{4n-1}(r/2),
// so that the integral over [0, R] is ball_volume(n, R). Equal to the
// geodesic-sphere form sigma_4n * 2^{4n-4} * sinh^3(r) * sinh^{4n-4}(r/2)
// through sinh r = 2 sinh(r/2) cosh(r/2).
double volume_density(int n, double r);

// Adaptive Simpson integral of volume_density over [0, R]; the
// cross-check route for the closed form. tol is relative to the
// integral (values range from 1e-13 up to 3e13, so an absolute
// tolerance cannot serve both ends); interval cap 1e6 (throws
// NumericalError beyond it).
double integrate_density(int n, double R, double tol = 1e-12);

// The embedded-ball volume guarantee at dimension n, both ways it can
// be read: recomputed as ball_volume(n, lambda_n/2), and the printed
// display expression 2 sigma_4n (16^n/4n) sinh^{4n}(0.0175/9^{n+1}).
// The two disagree (the printed constant 0.0175 is neither lambda_n/2
// nor lambda_n/4, and the factor 2 has no source in the ball formula);
// both are reported, neither is silently preferred.
struct ManifoldBound {
    int n = 2;
    double lambda_n = 0.0;
    double radius = 0.0;               // lambda_n / 2
    double volume_recomputed = 0.0;    // exp() of the log field
    double log_volume_recomputed = 0.0;
    double volume_printed = 0.0;
    double log_volume_printed = 0.0;
};

ManifoldBound manifold_volume_lower_bound(int n);

} // namespace qhtk

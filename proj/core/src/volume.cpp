#include "qhtk/volume.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qhtk/errors.hpp"

namespace qhtk {

namespace {

double log_sigma(int n) {
    // pi^{2n} / (2n)! in log space; the factorial overflows near n = 43
    return 2.0 * n * std::log(std::numbers::pi) - std::lgamma(2.0 * n + 1.0);
}

struct SimpsonState {
    int n;
    long budget;
    double tol;
};

double density_at(int n, double r) {
    if (r <= 0.0) return 0.0;
    return std::exp(log_sigma(n) + (4.0 * n - 1.0) * std::numbers::ln2 +
                    3.0 * std::log(std::cosh(0.5 * r)) + (4.0 * n - 1.0) * std::log(std::sinh(0.5 * r)));
}

double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole,
                   double tol) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = density_at(st.n, lm);
    const double frm = density_at(st.n, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (--st.budget <= 0) throw NumericalError("integrate_density: subdivision cap exceeded");
    return simpson_rec(st, a, m, fa, flm, fm, left, 0.5 * tol) +
           simpson_rec(st, m, b, fm, frm, fb, right, 0.5 * tol);
}

} // namespace

VolumeResult ball_volume(int n, double R) {
    if (n < 1) throw DomainError("ball_volume: n >= 1 required");
    if (!(R >= 0.0)) throw DomainError("ball_volume: R >= 0 required");
    VolumeResult out;
    out.n = n;
    out.R = R;
    out.log_sigma_4n = log_sigma(n);
    out.sigma_4n = std::exp(out.log_sigma_4n);
    if (R == 0.0) {
        out.volume = 0.0;
        out.log_volume = -std::numeric_limits<double>::infinity();
        return out;
    }
    const double sh = std::sinh(0.5 * R);
    out.log_volume = out.log_sigma_4n + n * std::log(16.0) - std::log(4.0 * n) + 4.0 * n * std::log(sh) +
                     std::log1p((2.0 * n / (2.0 * n + 1.0)) * sh * sh);
    out.volume = std::exp(out.log_volume);
    return out;
}

double volume_density(int n, double r) {
    if (n < 1) throw DomainError("volume_density: n >= 1 required");
    if (!(r >= 0.0)) throw DomainError("volume_density: r >= 0 required");
    return density_at(n, r);
}

double integrate_density(int n, double R, double tol) {
    if (n < 1) throw DomainError("integrate_density: n >= 1 required");
    if (!(R >= 0.0)) throw DomainError("integrate_density: R >= 0 required");
    if (!(tol > 0.0)) throw DomainError("integrate_density: tol > 0 required");
    if (R == 0.0) return 0.0;
    const double fa = density_at(n, 0.0);
    const double fb = density_at(n, R);
    const double fm = density_at(n, 0.5 * R);
    const double whole = R / 6.0 * (fa + 4.0 * fm + fb);
    // tol is relative: the integrals span ~26 orders of magnitude
    // (1e-13 at (n,R) = (3, 0.1) up to 3e13 at (3, 5)), so one absolute
    // tolerance would be coarser than the value at one end and below
    // one ulp at the other. Floor at 1e-14 relative, the rounding
    // limit of the subdivision
    const double scale = std::abs(whole);
    const double eff = scale > 0.0 ? std::max(tol, 1e-14) * scale : tol;
    SimpsonState st{n, 1'000'000, eff};
    return simpson_rec(st, 0.0, R, fa, fm, fb, whole, eff);
}

ManifoldBound manifold_volume_lower_bound(int n) {
    if (n < 2) throw DomainError("manifold_volume_lower_bound: n >= 2 required");
    ManifoldBound out;
    out.n = n;
    out.lambda_n = 0.05 / std::pow(9.0, n + 1);
    out.radius = 0.5 * out.lambda_n;
    const VolumeResult vr = ball_volume(n, out.radius);
    out.log_volume_recomputed = vr.log_volume;
    out.volume_recomputed = vr.volume;
    // the printed display expression, evaluated as written
    const double arg = 0.0175 / std::pow(9.0, n + 1);
    out.log_volume_printed = std::numbers::ln2 + log_sigma(n) + n * std::log(16.0) - std::log(4.0 * n) +
                             4.0 * n * std::log(std::sinh(arg));
    out.volume_printed = std::exp(out.log_volume_printed);
    return out;
}

} // namespace qhtk

#include "qhtk/rng.hpp"

#include <cmath>
#include <numbers>

namespace qhtk {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1;
    do {
        u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    const double m = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = m * std::sin(a);
    have_spare_ = true;
    return m * std::cos(a);
}

Quaternion Rng::unit_quaternion() {
    for (;;) {
        const Quaternion q = gaussian_quaternion();
        const double m = modulus(q);
        if (m > 1e-6) return q * (1.0 / m);
    }
}

} // namespace qhtk

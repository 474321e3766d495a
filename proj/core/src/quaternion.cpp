#include "qhtk/quaternion.hpp"

#include <cmath>

#include "qhtk/errors.hpp"

namespace qhtk {

UnitImaginary make_unit_imaginary(double x, double y, double z) {
    const double m = std::sqrt(x * x + y * y + z * z);
    if (m < 1e-300) throw DomainError("unit imaginary axis: zero direction vector");
    return {x / m, y / m, z / m};
}

} // namespace qhtk

#ifndef KEPLERGEO_PHASE_HPP
#define KEPLERGEO_PHASE_HPP

#include <array>
#include <cstddef>
#include <string>

#include "keplergeo/vec3.hpp"

namespace keplergeo {

/// Canonical pair (x, p) on the 6-dimensional phase space.
struct PhasePoint {
    Vec3 position;
    Vec3 momentum;

    friend constexpr bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Tangent vector (dx/dt, dp/dt) of a phase-space flow.
struct PhaseVelocity {
    Vec3 dx;
    Vec3 dp;
};

/// Gradient of a scalar phase-space function: (df/dx, df/dp).
struct PhaseGradient {
    Vec3 d_position;
    Vec3 d_momentum;

    bool finite() const { return all_finite(d_position) && all_finite(d_momentum); }
};

inline std::array<double, 6> to_array(const PhasePoint& pt) {
    return {pt.position.x, pt.position.y, pt.position.z,
            pt.momentum.x, pt.momentum.y, pt.momentum.z};
}

inline PhasePoint from_array(const std::array<double, 6>& a) {
    return {{a[0], a[1], a[2]}, {a[3], a[4], a[5]}};
}

/// Coordinate names in flat-array order: x1,x2,x3,p1,p2,p3.
inline std::string phase_coordinate_name(std::size_t i) {
    return (i < 3 ? "x" : "p") + std::to_string(i % 3 + 1);
}

inline double phase_distance(const PhasePoint& a, const PhasePoint& b) {
    return std::sqrt(norm2(a.position - b.position) + norm2(a.momentum - b.momentum));
}

inline bool all_finite(const PhasePoint& pt) {
    return all_finite(pt.position) && all_finite(pt.momentum);
}

}  // namespace keplergeo

#endif

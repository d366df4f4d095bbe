#ifndef KEPLERGEO_CANONICAL_HPP
#define KEPLERGEO_CANONICAL_HPP

#include <functional>
#include <string>

#include "keplergeo/errors.hpp"
#include "keplergeo/kepler.hpp"
#include "keplergeo/symplectic.hpp"

namespace keplergeo {

/// A named invertible canonical transformation with its domain predicate.
struct CanonicalMap {
    std::string name;
    PhaseMap forward;
    PhaseMap inverse;
    std::function<bool(const PhasePoint&)> domain;
};

/// Coordinate inversion x' = x/|x|^2 with its cotangent lift
/// p' = |x|^2 p - 2x(x.p).  An involution.
inline PhasePoint inversion(const PhasePoint& pt) {
    const double r2 = norm2(pt.position);
    if (r2 == 0.0) throw SingularityError("inversion: undefined at x = 0");
    const Vec3& x = pt.position;
    const Vec3& p = pt.momentum;
    return {x / r2, p * r2 - x * (2.0 * dot(x, p))};
}

/// The linear canonical exchange x_bar = p/(2 sqrt 2), p_bar = -2 sqrt(2) x.
inline PhasePoint swap(const PhasePoint& pt) {
    return {pt.momentum / (2.0 * kSqrt2), pt.position * (-2.0 * kSqrt2)};
}

inline PhasePoint swap_inverse(const PhasePoint& pt) {
    return {pt.momentum / (-2.0 * kSqrt2), pt.position * (2.0 * kSqrt2)};
}

/// swap o inversion: carries the natural stereographic chart to the barred
/// (transformed) chart in which G takes the form (1/4)(k+|p|^2/2)^2 |x|^2.
inline PhasePoint natural_to_transformed(const PhasePoint& pt) {
    const PhasePoint image = swap(inversion(pt));
    if (norm2(image.position) == 0.0)
        throw ChartBoundaryError("natural_to_transformed: p = 0 maps to the excluded point x_bar = 0");
    return image;
}

inline PhasePoint transformed_to_natural(const PhasePoint& pt) {
    const PhasePoint primed = swap_inverse(pt);
    if (norm2(primed.position) == 0.0)
        throw ChartBoundaryError("transformed_to_natural: p_bar = 0 has no finite preimage");
    return inversion(primed);
}

/// For k > 0, the scaled inversion x -> 4x/(k|x|^2) with cotangent lift
/// p -> (k|x|^2/4) p - (k/2) x (x.p).  An isometry of the k-sphere metric
/// fixing the sphere |x| = 2/sqrt(k); for k = 4 it is plain inversion.
inline PhasePoint antipodal_isometry(const PhasePoint& pt, double k) {
    if (k <= 0.0) throw InconsistencyError("antipodal_isometry: requires k > 0");
    const double r2 = norm2(pt.position);
    if (r2 == 0.0) throw SingularityError("antipodal_isometry: undefined at x = 0");
    const Vec3& x = pt.position;
    const Vec3& p = pt.momentum;
    return {x * (4.0 / (k * r2)), p * (k * r2 / 4.0) - x * (0.5 * k * dot(x, p))};
}

// ---------------------------------------------------------------------------
// Registered map objects
// ---------------------------------------------------------------------------

inline CanonicalMap inversion_map() {
    return {"inversion", [](const PhasePoint& pt) { return inversion(pt); },
            [](const PhasePoint& pt) { return inversion(pt); },
            [](const PhasePoint& pt) { return norm2(pt.position) > 0.0; }};
}

inline CanonicalMap swap_map() {
    return {"swap", [](const PhasePoint& pt) { return swap(pt); },
            [](const PhasePoint& pt) { return swap_inverse(pt); },
            [](const PhasePoint&) { return true; }};
}

inline CanonicalMap natural_to_transformed_map() {
    return {"natural_to_transformed",
            [](const PhasePoint& pt) { return natural_to_transformed(pt); },
            [](const PhasePoint& pt) { return transformed_to_natural(pt); },
            [](const PhasePoint& pt) {
                return norm2(pt.position) > 0.0 && norm2(pt.momentum) > 0.0;
            }};
}

inline CanonicalMap antipodal_map(double k) {
    return {"antipodal(k=" + std::to_string(k) + ")",
            [k](const PhasePoint& pt) { return antipodal_isometry(pt, k); },
            [k](const PhasePoint& pt) { return antipodal_isometry(pt, k); },
            [](const PhasePoint& pt) { return norm2(pt.position) > 0.0; }};
}

}  // namespace keplergeo

#endif

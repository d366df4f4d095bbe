#ifndef KEPLERGEO_CURVATURE_HPP
#define KEPLERGEO_CURVATURE_HPP

#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "keplergeo/bracket_table.hpp"
#include "keplergeo/errors.hpp"
#include "keplergeo/poisson.hpp"

namespace keplergeo {

/// Curvature of the 3-space; any sign, 0 = flat.
struct CurvatureParams {
    double k = 0.0;
};

/// Coordinate chart a geodesic phase point is expressed in.  Natural means
/// the stereographic chart with metric (1 + k|x|^2/4)^{-2} delta; Transformed
/// means the image under the composite canonical map of canonical.hpp.
enum class Chart { Natural, Transformed };

inline std::string to_string(Chart chart) {
    return chart == Chart::Natural ? "natural" : "transformed";
}

struct ChartedGeodesicState {
    PhasePoint point;
    Chart chart = Chart::Natural;
    double k = 0.0;
};

/// G plus the six Killing charges at one state.
struct GeodesicInvariants {
    double energy = 0.0;  // G, a nonnegative quadratic form in momenta
    Vec3 rotational;      // L = x cross p
    Vec3 transitive;      // D, the charges of the transitive isometries
};

/// (1 + k|x|^2/4); the metric is factor^{-2} delta_ij.
inline double conformal_factor(const Vec3& x, double k) {
    const double f = 1.0 + k * norm2(x) / 4.0;
    if (f <= 0.0)
        throw ChartBoundaryError("conformal_factor: 1 + k|x|^2/4 <= 0, outside the chart ball");
    return f;
}

namespace detail {

inline void validate_chart(const ChartedGeodesicState& s, const char* who) {
    if (s.chart == Chart::Natural) {
        conformal_factor(s.point.position, s.k);  // throws at/outside the ball boundary
    } else if (norm2(s.point.position) == 0.0) {
        throw ChartBoundaryError(std::string(who) + ": transformed chart excludes x = 0");
    }
}

// k + |p|^2/2, the quantity whose square gives the transformed G
inline double transformed_u(const PhasePoint& pt, double k) {
    return k + 0.5 * norm2(pt.momentum);
}

}  // namespace detail

/// Natural chart: G = (1/2)(1+k|x|^2/4)^2 |p|^2.
/// Transformed chart: G = (1/4)(k+|p|^2/2)^2 |x|^2.
inline double geodesic_energy(const ChartedGeodesicState& s) {
    detail::validate_chart(s, "geodesic_energy");
    if (s.chart == Chart::Natural) {
        const double f = conformal_factor(s.point.position, s.k);
        return 0.5 * f * f * norm2(s.point.momentum);
    }
    const double u = detail::transformed_u(s.point, s.k);
    return 0.25 * u * u * norm2(s.point.position);
}

/// Exact Hamiltonian flow field of G in the state's chart.
inline PhaseVelocity geodesic_vector_field(const ChartedGeodesicState& s) {
    detail::validate_chart(s, "geodesic_vector_field");
    const Vec3& x = s.point.position;
    const Vec3& p = s.point.momentum;
    if (s.chart == Chart::Natural) {
        const double f = conformal_factor(x, s.k);
        return {p * (f * f), x * (-0.5 * s.k * f * norm2(p))};
    }
    const double u = detail::transformed_u(s.point, s.k);
    return {p * (0.5 * u * norm2(x)), x * (-0.5 * u * u)};
}

/// The factored form sqrt(G)|x| (p, -2 sqrt(G) x/|x|^3) of the transformed
/// flow field.  Coincides with geodesic_vector_field exactly when
/// k + |p|^2/2 >= 0; on the opposite branch it differs by overall sign.
inline PhaseVelocity transformed_factored_vector_field(const ChartedGeodesicState& s) {
    if (s.chart != Chart::Transformed)
        throw InconsistencyError("factored field is defined in the transformed chart only");
    detail::validate_chart(s, "transformed_factored_vector_field");
    const double G = geodesic_energy(s);
    if (G == 0.0)
        throw ExcludedCaseError("factored field undefined at G = 0; use geodesic_vector_field");
    const double r = norm(s.point.position);
    const double sqrtG = std::sqrt(G);
    return {s.point.momentum * (sqrtG * r),
            s.point.position * (sqrtG * r * (-2.0 * sqrtG / (r * r * r)))};
}

inline GeodesicInvariants killing_charges(const ChartedGeodesicState& s) {
    detail::validate_chart(s, "killing_charges");
    const Vec3& x = s.point.position;
    const Vec3& p = s.point.momentum;
    GeodesicInvariants inv;
    inv.energy = geodesic_energy(s);
    inv.rotational = cross(x, p);
    if (s.chart == Chart::Natural) {
        inv.transitive = p * (1.0 - s.k * norm2(x) / 4.0) + x * (0.5 * s.k * dot(x, p));
    } else {
        // 2 sqrt(G)/|x| == |k + |p|^2/2| identically, so D needs no division
        const double u = detail::transformed_u(s.point, s.k);
        inv.transitive = (x * (norm2(p) - std::abs(u)) - p * dot(x, p)) / kSqrt2;
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Killing vector fields on configuration space (L_i = R_i . p, D_i = P_i . p)
// ---------------------------------------------------------------------------

/// R_i: generator of rotations about axis i.
inline std::function<Vec3(const Vec3&)> rotation_killing_field(std::size_t i) {
    return [i](const Vec3& x) { return cross(basis(i), x); };
}

/// P_i: generator of the transitive isometries of the natural chart.
inline std::function<Vec3(const Vec3&)> transitive_killing_field(std::size_t i, double k) {
    return [i, k](const Vec3& x) {
        return basis(i) * (1.0 - k * norm2(x) / 4.0) + x * (0.5 * k * x[i]);
    };
}

// ---------------------------------------------------------------------------
// Closed-form scalar fields
// ---------------------------------------------------------------------------

inline ScalarField geodesic_energy_field(Chart chart, double k) {
    return ScalarField::with_gradient(
        "G",
        [chart, k](const PhasePoint& pt) { return geodesic_energy({pt, chart, k}); },
        [chart, k](const PhasePoint& pt) {
            const ChartedGeodesicState s{pt, chart, k};
            detail::validate_chart(s, "geodesic_energy_field");
            if (chart == Chart::Natural) {
                const double f = conformal_factor(pt.position, k);
                return PhaseGradient{pt.position * (0.5 * k * f * norm2(pt.momentum)),
                                     pt.momentum * (f * f)};
            }
            const double u = detail::transformed_u(pt, k);
            return PhaseGradient{pt.position * (0.5 * u * u),
                                 pt.momentum * (0.5 * u * norm2(pt.position))};
        });
}

/// L_i is the same expression in either chart.
inline ScalarField rotational_charge_field(std::size_t i) {
    return ScalarField::with_gradient(
        "L" + std::to_string(i + 1),
        [i](const PhasePoint& pt) { return cross(pt.position, pt.momentum)[i]; },
        [i](const PhasePoint& pt) {
            return PhaseGradient{cross(pt.momentum, basis(i)), cross(basis(i), pt.position)};
        });
}

inline ScalarField transitive_charge_field(Chart chart, std::size_t i, double k) {
    return ScalarField::with_gradient(
        "D" + std::to_string(i + 1),
        [chart, i, k](const PhasePoint& pt) {
            return killing_charges({pt, chart, k}).transitive[i];
        },
        [chart, i, k](const PhasePoint& pt) {
            const Vec3& x = pt.position;
            const Vec3& p = pt.momentum;
            PhaseGradient g;
            if (chart == Chart::Natural) {
                for (std::size_t m = 0; m < 3; ++m) {
                    const double delta = (m == i) ? 1.0 : 0.0;
                    g.d_position[m] =
                        -0.5 * k * x[m] * p[i] + 0.5 * k * (delta * dot(x, p) + x[i] * p[m]);
                    g.d_momentum[m] =
                        (1.0 - k * norm2(x) / 4.0) * delta + 0.5 * k * x[i] * x[m];
                }
                return g;
            }
            const double u = detail::transformed_u(pt, k);
            const double sign_u = (u > 0.0) ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
            for (std::size_t m = 0; m < 3; ++m) {
                const double delta = (m == i) ? 1.0 : 0.0;
                g.d_position[m] = (delta * (norm2(p) - std::abs(u)) - p[i] * p[m]) / kSqrt2;
                g.d_momentum[m] =
                    (x[i] * (2.0 - sign_u) * p[m] - delta * dot(x, p) - p[i] * x[m]) / kSqrt2;
            }
            return g;
        });
}

inline std::array<ScalarField, 6> curvature_charge_fields(Chart chart, double k) {
    return {rotational_charge_field(0), rotational_charge_field(1), rotational_charge_field(2),
            transitive_charge_field(chart, 0, k), transitive_charge_field(chart, 1, k),
            transitive_charge_field(chart, 2, k)};
}

/// All 15 brackets among {L, D} against
///   {L_i,L_j} = -eps L_k,  {L_i,D_j} = -eps D_k,  {D_i,D_j} = -k eps L_k,
/// labelled so(4)/iso(3)/so(3,1) by the sign of k.
inline BracketReport curvature_bracket_table(const ChartedGeodesicState& s) {
    detail::validate_chart(s, "curvature_bracket_table");
    const GeodesicInvariants inv = killing_charges(s);
    const auto& L = inv.rotational;
    const auto& D = inv.transitive;
    const double k = s.k;

    auto expected = [&](std::size_t a, std::size_t b) {
        double value = 0.0;
        for (std::size_t m = 0; m < 3; ++m) {
            if (a < 3 && b < 3)
                value += -levi_civita(a, b, m) * L[m];
            else if (a < 3 && b >= 3)
                value += -levi_civita(a, b - 3, m) * D[m];
            else
                value += -k * levi_civita(a - 3, b - 3, m) * L[m];
        }
        return value;
    };
    return evaluate_bracket_table(curvature_charge_fields(s.chart, k), s.point, expected,
                                  classify_by_sign(k));
}

/// Residual of the energy identity of the transformed chart:
///   -k = |p|^2/2 - 2 sqrt(G)/|x|   when k + |p|^2/2 >= 0,
///   -k = |p|^2/2 + 2 sqrt(G)/|x|   on the complementary branch.
inline double transformed_energy_identity_residual(const ChartedGeodesicState& s) {
    if (s.chart != Chart::Transformed)
        throw InconsistencyError("energy identity lives in the transformed chart");
    detail::validate_chart(s, "transformed_energy_identity_residual");
    const double u = detail::transformed_u(s.point, s.k);
    const double sqrtG = std::sqrt(geodesic_energy(s));
    const double r = norm(s.point.position);
    const double sign = (u >= 0.0) ? -1.0 : 1.0;
    return std::abs(-s.k - (0.5 * norm2(s.point.momentum) + sign * 2.0 * sqrtG / r));
}

}  // namespace keplergeo

#endif

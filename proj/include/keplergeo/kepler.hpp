#ifndef KEPLERGEO_KEPLER_HPP
#define KEPLERGEO_KEPLER_HPP

#include <array>
#include <cmath>
#include <string>

#include "keplergeo/bracket_table.hpp"
#include "keplergeo/errors.hpp"
#include "keplergeo/poisson.hpp"

namespace keplergeo {

/// Mass parameter of the inverse-square force; alpha > 0 attracts.
struct KeplerParams {
    double alpha = 1.0;
};

/// Energy, angular momentum and Runge-Lenz vector at one phase point.
/// runge_lenz carries the 1/sqrt(2) normalization under which the charge
/// algebra closes with structure constant H (see kepler_bracket_table).
struct KeplerInvariants {
    double energy = 0.0;
    Vec3 angular_momentum;
    Vec3 runge_lenz;
};

namespace detail {

inline void require_off_origin(const PhasePoint& pt, const char* who) {
    if (norm2(pt.position) == 0.0)
        throw SingularityError(std::string(who) + ": |x| = 0 is removed from the configuration space");
}

}  // namespace detail

/// H = |p|^2/2 - alpha/|x|.
inline double kepler_energy(const PhasePoint& pt, const KeplerParams& params) {
    detail::require_off_origin(pt, "kepler_energy");
    return 0.5 * norm2(pt.momentum) - params.alpha / norm(pt.position);
}

/// dx = p, dp = -alpha x/|x|^3.
inline PhaseVelocity kepler_vector_field(const PhasePoint& pt, const KeplerParams& params) {
    detail::require_off_origin(pt, "kepler_vector_field");
    const double r = norm(pt.position);
    return {pt.momentum, pt.position * (-params.alpha / (r * r * r))};
}

inline KeplerInvariants kepler_constants(const PhasePoint& pt, const KeplerParams& params) {
    detail::require_off_origin(pt, "kepler_constants");
    const Vec3& x = pt.position;
    const Vec3& p = pt.momentum;
    KeplerInvariants inv;
    inv.energy = kepler_energy(pt, params);
    inv.angular_momentum = cross(x, p);
    inv.runge_lenz = (x * (norm2(p) - params.alpha / norm(x)) - p * dot(x, p)) / kSqrt2;
    return inv;
}

/// The textbook Runge-Lenz vector p x J - alpha x/|x|, i.e. sqrt(2) times the
/// stored charge.
inline Vec3 runge_lenz_textbook(const PhasePoint& pt, const KeplerParams& params) {
    return kepler_constants(pt, params).runge_lenz * kSqrt2;
}

// ---------------------------------------------------------------------------
// Closed-form scalar fields
// ---------------------------------------------------------------------------

inline ScalarField kepler_energy_field(const KeplerParams& params) {
    const double alpha = params.alpha;
    return ScalarField::with_gradient(
        "H",
        [alpha](const PhasePoint& pt) { return kepler_energy(pt, {alpha}); },
        [alpha](const PhasePoint& pt) {
            detail::require_off_origin(pt, "kepler_energy_field");
            const double r = norm(pt.position);
            return PhaseGradient{pt.position * (alpha / (r * r * r)), pt.momentum};
        });
}

/// J_i = (x cross p)_i with gradient (p x e_i, e_i x x).
inline ScalarField angular_momentum_field(std::size_t i) {
    return ScalarField::with_gradient(
        "J" + std::to_string(i + 1),
        [i](const PhasePoint& pt) { return cross(pt.position, pt.momentum)[i]; },
        [i](const PhasePoint& pt) {
            return PhaseGradient{cross(pt.momentum, basis(i)), cross(basis(i), pt.position)};
        });
}

/// A_i = [x_i(|p|^2 - alpha/|x|) - p_i (x.p)] / sqrt(2).
inline ScalarField runge_lenz_field(std::size_t i, const KeplerParams& params) {
    const double alpha = params.alpha;
    return ScalarField::with_gradient(
        "A" + std::to_string(i + 1),
        [i, alpha](const PhasePoint& pt) {
            return kepler_constants(pt, {alpha}).runge_lenz[i];
        },
        [i, alpha](const PhasePoint& pt) {
            detail::require_off_origin(pt, "runge_lenz_field");
            const Vec3& x = pt.position;
            const Vec3& p = pt.momentum;
            const double r = norm(x);
            const double common = norm2(p) - alpha / r;
            PhaseGradient g;
            for (std::size_t m = 0; m < 3; ++m) {
                const double delta = (m == i) ? 1.0 : 0.0;
                g.d_position[m] =
                    (delta * common + x[i] * alpha * x[m] / (r * r * r) - p[i] * p[m]) / kSqrt2;
                g.d_momentum[m] =
                    (2.0 * x[i] * p[m] - delta * dot(x, p) - p[i] * x[m]) / kSqrt2;
            }
            return g;
        });
}

inline std::array<ScalarField, 6> kepler_charge_fields(const KeplerParams& params) {
    return {angular_momentum_field(0), angular_momentum_field(1), angular_momentum_field(2),
            runge_lenz_field(0, params), runge_lenz_field(1, params), runge_lenz_field(2, params)};
}

/// All 15 brackets among {J, A} against
///   {J_i,J_j} = -eps J_k,  {J_i,A_j} = -eps A_k,  {A_i,A_j} = H eps J_k,
/// labelled so(4)/iso(3)/so(3,1) by the sign of the energy.
inline BracketReport kepler_bracket_table(const PhasePoint& pt, const KeplerParams& params) {
    detail::require_off_origin(pt, "kepler_bracket_table");
    const KeplerInvariants inv = kepler_constants(pt, params);
    const auto& J = inv.angular_momentum;
    const auto& A = inv.runge_lenz;
    const double H = inv.energy;

    auto expected = [&](std::size_t a, std::size_t b) {
        double value = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            if (a < 3 && b < 3)
                value += -levi_civita(a, b, k) * J[k];
            else if (a < 3 && b >= 3)
                value += -levi_civita(a, b - 3, k) * A[k];
            else
                value += H * levi_civita(a - 3, b - 3, k) * J[k];
        }
        return value;
    };
    return evaluate_bracket_table(kepler_charge_fields(params), pt, expected,
                                  classify_by_sign(-H));
}

}  // namespace keplergeo

#endif

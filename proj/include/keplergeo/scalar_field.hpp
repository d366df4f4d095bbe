#ifndef KEPLERGEO_SCALAR_FIELD_HPP
#define KEPLERGEO_SCALAR_FIELD_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "keplergeo/errors.hpp"
#include "keplergeo/phase.hpp"

namespace keplergeo {

namespace detail {

// cbrt(machine epsilon): optimal central-difference step for first derivatives
inline const double kGradientStep = std::cbrt(std::numeric_limits<double>::epsilon());

}  // namespace detail

/// Real-valued function on phase space, with a closed-form gradient when one
/// is registered and a central-difference fallback otherwise.
class ScalarField {
public:
    using Value = std::function<double(const PhasePoint&)>;
    using Gradient = std::function<PhaseGradient(const PhasePoint&)>;

    ScalarField() = default;

    static ScalarField numeric(std::string name, Value value) {
        ScalarField f;
        f.name_ = std::move(name);
        f.value_ = std::move(value);
        return f;
    }

    static ScalarField with_gradient(std::string name, Value value, Gradient gradient) {
        ScalarField f = numeric(std::move(name), std::move(value));
        f.gradient_ = std::move(gradient);
        return f;
    }

    const std::string& name() const { return name_; }
    bool has_closed_gradient() const { return static_cast<bool>(gradient_); }

    double operator()(const PhasePoint& pt) const { return value_(pt); }

    PhaseGradient gradient(const PhasePoint& pt) const {
        return gradient_ ? gradient_(pt) : numeric_gradient(pt);
    }

    /// Central differences of the value, step max(1,|c|)*eps^(1/3) per coordinate.
    PhaseGradient numeric_gradient(const PhasePoint& pt) const {
        std::array<double, 6> z = to_array(pt);
        std::array<double, 6> g{};
        for (std::size_t i = 0; i < 6; ++i) {
            const double h = detail::kGradientStep * std::max(1.0, std::abs(z[i]));
            std::array<double, 6> zp = z, zm = z;
            zp[i] += h;
            zm[i] -= h;
            g[i] = (value_(from_array(zp)) - value_(from_array(zm))) / (2.0 * h);
        }
        return {{g[0], g[1], g[2]}, {g[3], g[4], g[5]}};
    }

private:
    std::string name_;
    Value value_;
    Gradient gradient_;
};

/// The coordinate function x^i (0-based index).
inline ScalarField coordinate_field(std::size_t i) {
    return ScalarField::with_gradient(
        "x" + std::to_string(i + 1),
        [i](const PhasePoint& pt) { return pt.position[i]; },
        [i](const PhasePoint&) { return PhaseGradient{basis(i), {}}; });
}

/// The momentum function p_i (0-based index).
inline ScalarField momentum_field(std::size_t i) {
    return ScalarField::with_gradient(
        "p" + std::to_string(i + 1),
        [i](const PhasePoint& pt) { return pt.momentum[i]; },
        [i](const PhasePoint&) { return PhaseGradient{{}, basis(i)}; });
}

/// Gradient of f at pt, throwing if any component is non-finite.  The error
/// message names the first offending coordinate.
inline PhaseGradient checked_gradient(const ScalarField& f, const PhasePoint& pt) {
    const PhaseGradient g = f.gradient(pt);
    if (!g.finite()) {
        const std::array<double, 6> flat = {g.d_position.x, g.d_position.y, g.d_position.z,
                                            g.d_momentum.x, g.d_momentum.y, g.d_momentum.z};
        for (std::size_t i = 0; i < 6; ++i) {
            if (!std::isfinite(flat[i])) {
                throw EvaluationDomainError("non-finite gradient of '" + f.name() +
                                            "' in coordinate " + phase_coordinate_name(i));
            }
        }
    }
    return g;
}

}  // namespace keplergeo

#endif

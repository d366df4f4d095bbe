#ifndef KEPLERGEO_SYMPLECTIC_HPP
#define KEPLERGEO_SYMPLECTIC_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "keplergeo/errors.hpp"
#include "keplergeo/phase.hpp"

namespace keplergeo {

using PhaseMap = std::function<PhasePoint(const PhasePoint&)>;

using Matrix6 = std::array<std::array<double, 6>, 6>;

/// Canonical matrix of dp_i ^ dx^i in (x1,x2,x3,p1,p2,p3) order:
/// omega(u,v) = u^T Omega0 v with Omega0 = [[0,-I],[I,0]].
inline Matrix6 canonical_matrix() {
    Matrix6 m{};
    for (std::size_t i = 0; i < 3; ++i) {
        m[i][i + 3] = -1.0;
        m[i + 3][i] = 1.0;
    }
    return m;
}

namespace detail {

inline const double kJacobianStep =
    std::sqrt(std::sqrt(std::numeric_limits<double>::epsilon()));

inline std::array<double, 6> map_to_array(const PhaseMap& map, const std::array<double, 6>& z) {
    return to_array(map(from_array(z)));
}

}  // namespace detail

/// Central-difference Jacobian of a phase-space map, assembled column-wise.
/// Richardson refinement (steps h and h/2) is on by default; it matters for
/// maps with large higher derivatives near their singular sets.
inline Matrix6 numerical_jacobian(const PhaseMap& map, const PhasePoint& at, double h,
                                  bool richardson = true) {
    const std::array<double, 6> z = to_array(at);
    Matrix6 jac{};
    for (std::size_t col = 0; col < 6; ++col) {
        const double step = h * std::max(1.0, std::abs(z[col]));
        auto central = [&](double s) {
            std::array<double, 6> zp = z, zm = z;
            zp[col] += s;
            zm[col] -= s;
            const auto fp = detail::map_to_array(map, zp);
            const auto fm = detail::map_to_array(map, zm);
            std::array<double, 6> d{};
            for (std::size_t r = 0; r < 6; ++r) d[r] = (fp[r] - fm[r]) / (2.0 * s);
            return d;
        };
        const auto d1 = central(step);
        if (richardson) {
            const auto d2 = central(step / 2.0);
            for (std::size_t r = 0; r < 6; ++r)
                jac[r][col] = (4.0 * d2[r] - d1[r]) / 3.0;
        } else {
            for (std::size_t r = 0; r < 6; ++r) jac[r][col] = d1[r];
        }
    }
    return jac;
}

/// Residual of the canonicity identity J^T Omega0 J = Omega0 in max norm.
struct SymplecticReport {
    double residual = 0.0;
    PhasePoint at;
    double step = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline SymplecticReport symplectic_check(const PhaseMap& map, const PhasePoint& at,
                                         double h = detail::kJacobianStep,
                                         double tolerance = 1e-8) {
    const Matrix6 jac = numerical_jacobian(map, at, h);
    const Matrix6 omega = canonical_matrix();
    // J^T Omega J
    Matrix6 tmp{};  // Omega * J
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < 6; ++l) s += omega[i][l] * jac[l][j];
            tmp[i][j] = s;
        }
    double residual = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < 6; ++l) s += jac[l][i] * tmp[l][j];
            residual = std::max(residual, std::abs(s - omega[i][j]));
        }
    return {residual, at, h, tolerance, residual < tolerance};
}

}  // namespace keplergeo

#endif

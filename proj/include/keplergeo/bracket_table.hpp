#ifndef KEPLERGEO_BRACKET_TABLE_HPP
#define KEPLERGEO_BRACKET_TABLE_HPP

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "keplergeo/poisson.hpp"

namespace keplergeo {

/// Lie algebra of the six conserved charges on an energy / curvature surface.
enum class AlgebraLabel { so4, iso3, so31 };

inline std::string to_string(AlgebraLabel label) {
    switch (label) {
        case AlgebraLabel::so4: return "so(4)";
        case AlgebraLabel::iso3: return "iso(3)";
        default: return "so(3,1)";
    }
}

/// so(4) / iso(3) / so(3,1) by the sign of the deforming constant
/// (-energy on the Kepler side, +curvature on the geodesic side).
inline AlgebraLabel classify_by_sign(double value, double zero_tolerance = 1e-12) {
    if (std::abs(value) <= zero_tolerance) return AlgebraLabel::iso3;
    return value > 0.0 ? AlgebraLabel::so4 : AlgebraLabel::so31;
}

struct BracketEntry {
    std::string lhs;
    std::string rhs;
    double computed = 0.0;
    double expected = 0.0;
    double residual = 0.0;
};

/// Structure constants of the six charges evaluated at one phase point,
/// with residuals against the closed-form table.
struct BracketReport {
    std::vector<BracketEntry> entries;
    double max_residual = 0.0;
    AlgebraLabel label = AlgebraLabel::iso3;
    std::string convention = kBracketConvention;
    PhasePoint at;
};

/// Evaluates all 15 independent brackets among six charge fields against an
/// expected right-hand side supplied as a function of the (0-based) pair.
inline BracketReport evaluate_bracket_table(
    const std::array<ScalarField, 6>& charges, const PhasePoint& at,
    const std::function<double(std::size_t, std::size_t)>& expected_rhs,
    AlgebraLabel label) {
    BracketReport report;
    report.at = at;
    report.label = label;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i + 1; j < 6; ++j) {
            BracketEntry e;
            e.lhs = charges[i].name();
            e.rhs = charges[j].name();
            e.computed = poisson_bracket(charges[i], charges[j], at);
            e.expected = expected_rhs(i, j);
            e.residual = std::abs(e.computed - e.expected);
            report.max_residual = std::max(report.max_residual, e.residual);
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

}  // namespace keplergeo

#endif

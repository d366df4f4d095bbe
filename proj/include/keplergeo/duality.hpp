#ifndef KEPLERGEO_DUALITY_HPP
#define KEPLERGEO_DUALITY_HPP

#include <cmath>
#include <string>
#include <vector>

#include "keplergeo/curvature.hpp"
#include "keplergeo/flows.hpp"
#include "keplergeo/kepler.hpp"
#include "keplergeo/stencils.hpp"

namespace keplergeo {

enum class Branch { Attractive, Repulsive };

inline std::string to_string(Branch b) {
    return b == Branch::Attractive ? "attractive" : "repulsive";
}

/// The parameter dictionary of the correspondence: a geodesic family (k, C)
/// determines a Kepler family (E, alpha) through E = -k, alpha = +-2 sqrt(C).
struct DualityDictionary {
    double k = 0.0;
    double C = 0.0;
    Branch branch = Branch::Attractive;
    double E = 0.0;      // = -k
    double alpha = 0.0;  // = +2 sqrt(C) attractive, -2 sqrt(C) repulsive
};

inline DualityDictionary make_dictionary(double k, double C, Branch branch) {
    if (C <= 0.0)
        throw ExcludedCaseError("make_dictionary: C = 0 (alpha = 0) is excluded");
    if (branch == Branch::Repulsive && k >= 0.0)
        throw InconsistencyError(
            "make_dictionary: the repulsive branch forces H > 0, hence k < 0");
    DualityDictionary d;
    d.k = k;
    d.C = C;
    d.branch = branch;
    d.E = -k;
    d.alpha = (branch == Branch::Attractive ? 2.0 : -2.0) * std::sqrt(C);
    return d;
}

/// Phase point with its time coordinate and family parameter (alpha or k);
/// one point of an evolution space.
struct EvolutionPoint {
    PhasePoint point;
    double time = 0.0;
    double parameter = 0.0;
};

inline EvolutionPoint evolution_point(const Trajectory& traj, std::size_t i) {
    return {traj.samples.at(i).state, traj.samples.at(i).t, traj.parameter};
}

/// The identification of barred geodesic coordinates with Kepler coordinates.
/// Componentwise the identity; it exists so that the role change is explicit
/// and lands in the Kepler domain |x| > 0.
inline PhasePoint psi_map(const PhasePoint& geodesic_pt) {
    if (norm2(geodesic_pt.position) == 0.0)
        throw SingularityError("psi_map: image would sit on the removed Kepler singularity");
    return geodesic_pt;
}

/// Pointwise check that X_G = sqrt(G)|x| X_H with alpha = 2 sqrt(G).
struct ProportionalityReport {
    double residual = 0.0;
    double factor = 0.0;  // sqrt(G) |x|
    double alpha = 0.0;
    PhasePoint at;
};

inline ProportionalityReport vector_field_proportionality(const ChartedGeodesicState& state) {
    if (state.chart != Chart::Transformed)
        throw InconsistencyError("proportionality is stated in the transformed chart");
    const double G = geodesic_energy(state);
    if (G == 0.0) throw ExcludedCaseError("vector_field_proportionality: G = 0 is excluded");
    const PhasePoint pt = psi_map(state.point);

    ProportionalityReport report;
    report.alpha = 2.0 * std::sqrt(G);
    report.factor = std::sqrt(G) * norm(pt.position);
    report.at = pt;
    const PhaseVelocity xg = geodesic_vector_field(state);
    const PhaseVelocity xh = kepler_vector_field(pt, {report.alpha});
    for (std::size_t i = 0; i < 3; ++i) {
        report.residual = std::max(report.residual,
                                   std::abs(xg.dx[i] - report.factor * xh.dx[i]));
        report.residual = std::max(report.residual,
                                   std::abs(xg.dp[i] - report.factor * xh.dp[i]));
    }
    return report;
}

namespace detail {

inline double uniform_spacing(const std::vector<Sample>& samples) {
    const std::size_t n = samples.size();
    const double h = (samples.back().t - samples.front().t) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        const double dt = samples[i].t - samples[i - 1].t;
        if (std::abs(dt - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw ResolutionError("reparametrize_time: sample grid is not uniform");
    }
    return h;
}

}  // namespace detail

/// New time column tau(lambda) = integral of sqrt(C)|x(s)| ds, accumulated by
/// composite Simpson over the sample grid with a grid-halving error estimate.
/// The output is tagged as a Kepler trajectory with alpha = 2 sqrt(C) and its
/// conserved columns are recomputed accordingly.
inline Trajectory reparametrize_time(const Trajectory& traj, double C,
                                     double relative_tolerance = 1e-10) {
    if (traj.system != SystemKind::GeodesicTransformed)
        throw InconsistencyError("reparametrize_time: input must be a transformed-chart geodesic");
    if (C <= 0.0) throw ExcludedCaseError("reparametrize_time: C = 0 is excluded");
    const std::size_t n = traj.samples.size();
    if (n < 5) throw ResolutionError("reparametrize_time: too few samples");

    const double sqrtC = std::sqrt(C);
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = norm(traj.samples[i].state.position);
        if (r == 0.0) throw SingularityError("reparametrize_time: |x| = 0 along trajectory");
        integrand[i] = sqrtC * r;
    }

    const double h = detail::uniform_spacing(traj.samples);
    const std::vector<double> tau = prefix_simpson(h, integrand);

    // halved grid estimate: Simpson error drops 16x, so |fine-coarse|/15
    std::vector<double> coarse;
    for (std::size_t i = 0; i < n; i += 2) coarse.push_back(integrand[i]);
    const std::vector<double> tau_coarse = prefix_simpson(2.0 * h, coarse);
    const double at_common = tau[2 * (coarse.size() - 1)];
    const double estimate = std::abs(at_common - tau_coarse.back()) / 15.0;
    if (estimate > relative_tolerance * std::max(1.0, std::abs(at_common)))
        throw ResolutionError("reparametrize_time: quadrature error estimate " +
                              std::to_string(estimate) + " above tolerance; sample more densely");

    for (std::size_t i = 1; i < n; ++i)
        if (!(tau[i] > tau[i - 1]))
            throw ResolutionError("reparametrize_time: tau not strictly increasing");

    Trajectory out;
    out.system = SystemKind::Kepler;
    out.parameter = 2.0 * sqrtC;
    out.config = traj.config;
    out.truncated = traj.truncated;
    out.truncation_reason = traj.truncation_reason;
    out.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Sample s = detail::make_sample(SystemKind::Kepler, out.parameter, tau[i],
                                       traj.samples[i].state);
        out.samples.push_back(s);
    }
    return out;
}

/// Maps a transformed-chart geodesic trajectory to the Kepler trajectory it
/// is dual to: psi samplewise plus the time reparametrization.  Attractive
/// branch only; the input must actually conserve G at the dictionary value.
inline Trajectory map_trajectory(const Trajectory& traj, const DualityDictionary& dict) {
    if (traj.system != SystemKind::GeodesicTransformed)
        throw InconsistencyError("map_trajectory: input must be a transformed-chart geodesic");
    if (dict.branch != Branch::Repulsive && dict.alpha <= 0.0)
        throw InconsistencyError("map_trajectory: corrupt dictionary");
    if (dict.branch == Branch::Repulsive)
        throw InconsistencyError("map_trajectory: only the attractive branch is mapped; "
                                 "the repulsive case is exposed via the sign-branch residuals");
    if (traj.samples.empty()) throw InconsistencyError("map_trajectory: empty trajectory");

    const double g0 = traj.samples.front().energy;
    if (std::abs(g0 - dict.C) > 1e-10 * std::max(1.0, std::abs(dict.C)))
        throw InconsistencyError("map_trajectory: dictionary C does not match trajectory G");
    double drift = 0.0;
    for (const Sample& s : traj.samples) drift = std::max(drift, std::abs(s.energy - g0));
    if (drift > 1e-9 * std::max(1.0, std::abs(g0)))
        throw InconsistencyError("map_trajectory: input G drift " + std::to_string(drift) +
                                 " above 1e-9; not a valid energy-surface flow");

    for (const Sample& s : traj.samples) psi_map(s.state);
    return reparametrize_time(traj, dict.C);
}

/// Desk-scale certificate that the evolution-space two-forms correspond on a
/// matched flow pair: both energies sit on their dictionary values and the
/// time columns satisfy d tau/d lambda = sqrt(C)|x|.
struct TwoFormReport {
    double energy_residual_kepler = 0.0;    // max |H + k|
    double energy_residual_geodesic = 0.0;  // max |G - C|
    double time_rate_residual = 0.0;        // max |dtau/dlambda - sqrt(C)|x||
    bool pass = false;
};

inline TwoFormReport two_form_correspondence(const Trajectory& geodesic,
                                             const Trajectory& kepler,
                                             const DualityDictionary& dict,
                                             double energy_tolerance = 1e-9,
                                             double rate_tolerance = 1e-8) {
    const std::size_t n = geodesic.samples.size();
    if (n != kepler.samples.size() || n == 0)
        throw AlignmentError("two_form_correspondence: sample counts differ");
    for (std::size_t i = 0; i < n; ++i)
        if (phase_distance(geodesic.samples[i].state, kepler.samples[i].state) > 1e-12)
            throw AlignmentError("two_form_correspondence: phase samples do not match at index " +
                                 std::to_string(i));

    TwoFormReport report;
    std::vector<double> lambda(n), tau(n), rate_expected(n);
    for (std::size_t i = 0; i < n; ++i) {
        lambda[i] = geodesic.samples[i].t;
        tau[i] = kepler.samples[i].t;
        rate_expected[i] = std::sqrt(dict.C) * norm(geodesic.samples[i].state.position);
        report.energy_residual_kepler = std::max(
            report.energy_residual_kepler, std::abs(kepler.samples[i].energy - dict.E));
        report.energy_residual_geodesic = std::max(
            report.energy_residual_geodesic, std::abs(geodesic.samples[i].energy - dict.C));
    }
    const std::vector<double> rate = sampled_derivative(lambda, tau);
    for (std::size_t i = 0; i < n; ++i)
        report.time_rate_residual =
            std::max(report.time_rate_residual, std::abs(rate[i] - rate_expected[i]));

    report.pass = report.energy_residual_kepler < energy_tolerance &&
                  report.energy_residual_geodesic < energy_tolerance &&
                  report.time_rate_residual < rate_tolerance;
    return report;
}

/// Finite-difference residual of the Kepler equations of motion along a
/// trajectory: max over samples of |dX/dtau - X_H(X)| using five-point
/// stencils on the (generally nonuniform) tau grid.
inline double kepler_eom_residual(const Trajectory& traj) {
    if (traj.system != SystemKind::Kepler)
        throw InconsistencyError("kepler_eom_residual: not a Kepler trajectory");
    const std::size_t n = traj.samples.size();
    if (n < 5) throw ResolutionError("kepler_eom_residual: too few samples");
    std::vector<double> t(n);
    std::array<std::vector<double>, 6> comp;
    for (auto& c : comp) c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = traj.samples[i].t;
        const auto z = to_array(traj.samples[i].state);
        for (std::size_t j = 0; j < 6; ++j) comp[j][i] = z[j];
    }
    std::array<std::vector<double>, 6> dcomp;
    for (std::size_t j = 0; j < 6; ++j) dcomp[j] = sampled_derivative(t, comp[j]);

    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const PhaseVelocity v = kepler_vector_field(traj.samples[i].state, {traj.parameter});
        const std::array<double, 6> expect = {v.dx.x, v.dx.y, v.dx.z, v.dp.x, v.dp.y, v.dp.z};
        for (std::size_t j = 0; j < 6; ++j)
            residual = std::max(residual, std::abs(dcomp[j][i] - expect[j]));
    }
    return residual;
}

/// The transitive charges D, written on Kepler variables through the energy
/// identity and with the curvature replaced by -H(pt).  Equals the
/// Runge-Lenz charge A componentwise, for every phase point.
inline Vec3 substitute_k_with_minus_H(const PhasePoint& pt, const KeplerParams& params) {
    const double H = kepler_energy(pt, params);  // throws at the origin
    const Vec3& x = pt.position;
    const Vec3& p = pt.momentum;
    return (x * (0.5 * norm2(p) + H) - p * dot(x, p)) / kSqrt2;
}

}  // namespace keplergeo

#endif

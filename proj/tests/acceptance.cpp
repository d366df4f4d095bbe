// Acceptance suite: every release gate in one binary, one PASS/FAIL line per
// criterion.  All tolerances are fixed here; the RNG seed is fixed so reruns
// are bit-reproducible.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "keplergeo/keplergeo.hpp"

using namespace keplergeo;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr std::size_t kPoints = 100;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool suite_passes(const SuiteReport& report, std::string& detail) {
    double worst = 0.0;
    std::string worst_name = "-";
    bool pass = true;
    for (const Check& c : report.checks) {
        pass = pass && c.pass;
        const double rel = c.tolerance > 0.0 ? c.residual / c.tolerance : c.residual;
        if (rel >= worst) {
            worst = rel;
            worst_name = c.name;
        }
    }
    detail = "worst check " + worst_name;
    return pass;
}

// --- 1: bracket tables -----------------------------------------------------
bool criterion_brackets(std::string& detail) {
    return suite_passes(verify_brackets(kSeed, kPoints), detail);
}

// --- 2: pointwise conservation ----------------------------------------------
bool criterion_conservation(std::string& detail) {
    return suite_passes(verify_constants(kSeed, kPoints), detail);
}

// --- 3: canonicity of the composite map -------------------------------------
bool criterion_canonicity(std::string& detail) {
    RandomEngine rng(kSeed);
    double residual = 0.0, involution = 0.0;
    for (std::size_t i = 0; i < kPoints; ++i) {
        const PhasePoint pt{sample_vector(rng, 0.3, 3.0), sample_vector(rng, 0.3, 3.0)};
        residual = std::max(residual,
                            symplectic_check([](const PhasePoint& q) {
                                return natural_to_transformed(q);
                            }, pt).residual);
        residual = std::max(residual,
                            symplectic_check([](const PhasePoint& q) {
                                return transformed_to_natural(q);
                            }, pt).residual);
        involution = std::max(involution, phase_distance(inversion(inversion(pt)), pt));
    }
    detail = "symplectic residual " + format_double(residual) + ", involution " +
             format_double(involution);
    return residual < 1e-8 && involution < 1e-12;
}

// --- 4: Hamiltonian transport and the energy identity ------------------------
bool criterion_transport(std::string& detail) {
    RandomEngine rng(kSeed);
    double transport = 0.0, identity = 0.0;
    int flipped_branch = 0;
    for (double k : {-1.0, 0.0, 1.0}) {
        for (std::size_t i = 0; i < kPoints; ++i) {
            const ChartedGeodesicState natural = sample_natural_state(rng, k);
            const PhasePoint barred = natural_to_transformed(natural.point);
            transport = std::max(transport,
                                 std::abs(geodesic_energy(natural) -
                                          geodesic_energy({barred, Chart::Transformed, k})));
            const ChartedGeodesicState s = sample_transformed_state(rng, k);
            if (s.k + 0.5 * norm2(s.point.momentum) < 0.0) ++flipped_branch;
            identity = std::max(identity, transformed_energy_identity_residual(s));
        }
    }
    detail = "transport " + format_double(transport) + ", identity " +
             format_double(identity) + ", flipped-branch points " +
             std::to_string(flipped_branch);
    return transport < 1e-10 && identity < 1e-12 && flipped_branch > 0;
}

// --- 5: vector-field proportionality ----------------------------------------
bool criterion_proportionality(std::string& detail) {
    RandomEngine rng(kSeed);
    double residual = 0.0;
    for (double k : {-1.0, 0.0, 1.0})
        for (std::size_t i = 0; i < kPoints; ++i)
            residual = std::max(residual,
                                vector_field_proportionality(
                                    sample_transformed_state(rng, k, true)).residual);
    detail = "max residual " + format_double(residual);
    return residual < 1e-10;
}

// --- 6: end-to-end duality ---------------------------------------------------
bool criterion_duality(std::string& detail) {
    IntegratorConfig cfg;
    cfg.sample_count = 2001;
    const Trajectory geo =
        integrate(SystemKind::GeodesicTransformed, 1.0, {{1, 0, 0}, {0, 1, 0}}, 12.0, cfg);
    const DualityDictionary dict =
        make_dictionary(1.0, geo.samples.front().energy, Branch::Attractive);
    const Trajectory kep = map_trajectory(geo, dict);
    const TwoFormReport tf = two_form_correspondence(geo, kep, dict);
    const double eom = kepler_eom_residual(kep);
    double transport = 0.0;
    for (std::size_t i = 0; i < kep.samples.size(); ++i)
        for (std::size_t c = 0; c < 6; ++c)
            transport = std::max(transport, std::abs(kep.samples[i].charges[c] -
                                                     geo.samples[i].charges[c]));
    detail = "H-residual " + format_double(tf.energy_residual_kepler) + ", eom " +
             format_double(eom) + ", dtau/dlambda " +
             format_double(tf.time_rate_residual) + ", charges " + format_double(transport);
    return std::abs(dict.alpha - 1.5) < 1e-12 && dict.E == -1.0 &&
           tf.energy_residual_kepler < 1e-9 && eom < 1e-6 &&
           tf.time_rate_residual < 1e-8 && transport < 1e-9;
}

// --- 7: conservation drift under integration ---------------------------------
bool criterion_drift(std::string& detail) {
    IntegratorConfig cfg;
    cfg.sample_count = 2001;
    const double e = 0.2, q = 0.8;
    const Trajectory kep = integrate(SystemKind::Kepler, 1.0,
                                     {{q, 0, 0}, {0, std::sqrt((1.0 + e) / q), 0}},
                                     10.0 * kTwoPi, cfg);
    const DriftReport kd = drift_report(kep);
    const Trajectory geo = integrate(SystemKind::GeodesicNatural, 1.0,
                                     {{0.3, 0.2, 0.0}, {0.4, 0.9, 0.1}}, 60.0, cfg);
    const DriftReport gd = drift_report(geo);
    double worst = std::max(kd.energy, gd.energy);
    for (std::size_t i = 0; i < 6; ++i)
        worst = std::max({worst, kd.charges[i], gd.charges[i]});
    detail = "worst drift " + format_double(worst);
    return !kep.truncated && !geo.truncated && worst < 1e-9;
}

// --- 8: Runge-Lenz points at the perihelion ----------------------------------
bool criterion_perihelion(std::string& detail) {
    IntegratorConfig cfg;
    cfg.sample_count = 8192;
    const double e = 0.2, q = 0.8;
    const double period = kTwoPi;  // a = 1, alpha = 1
    const PhasePoint start{{q, 0, 0}, {0, std::sqrt((1.0 + e) / q), 0}};
    // shift the window by half a period so the perihelion is interior to it
    const Trajectory half =
        integrate(SystemKind::Kepler, 1.0, start, 0.5 * period, cfg);
    const PhasePoint mid = half.back().state;  // near aphelion
    const Trajectory traj = integrate(SystemKind::Kepler, 1.0, mid, period, cfg);

    std::size_t imin = 0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i)
        if (norm(traj.samples[i].state.position) <
            norm(traj.samples[imin].state.position))
            imin = i;
    if (imin == 0 || imin + 1 == traj.samples.size()) {
        detail = "perihelion not interior to the window";
        return false;
    }
    // quadratic refinement of the minimum and of the position there
    const double t0 = traj.samples[imin - 1].t, t1 = traj.samples[imin].t,
                 t2 = traj.samples[imin + 1].t;
    const double r0 = norm(traj.samples[imin - 1].state.position),
                 r1 = norm(traj.samples[imin].state.position),
                 r2 = norm(traj.samples[imin + 1].state.position);
    const double h = t1 - t0;
    const double denominator = r0 - 2.0 * r1 + r2;
    const double dt = denominator == 0.0 ? 0.0 : 0.5 * h * (r0 - r2) / denominator;
    const double ts = t1 + dt;
    // quadratic interpolation of each coordinate through the same three samples
    Vec3 peri;
    for (std::size_t c = 0; c < 3; ++c) {
        const double y0 = traj.samples[imin - 1].state.position[c];
        const double y1 = traj.samples[imin].state.position[c];
        const double y2 = traj.samples[imin + 1].state.position[c];
        const double s = (ts - t1) / h;
        peri[c] = y1 + 0.5 * s * (y2 - y0) + 0.5 * s * s * (y0 - 2.0 * y1 + y2);
    }
    const Vec3 a = kepler_constants(start, {1.0}).runge_lenz;
    const double angle = angle_between(a, peri);
    detail = "angle(A, perihelion) = " + format_double(angle) + " rad";
    return angle < 1e-4;
}

// --- 9: closed-orbit return ---------------------------------------------------
bool criterion_return(std::string& detail) {
    IntegratorConfig cfg;
    cfg.sample_count = 512;
    const PhasePoint start{{1, 0, 0}, {0, 1, 0}};
    const Trajectory traj = integrate(SystemKind::Kepler, 1.0, start, kTwoPi, cfg);
    const double miss = phase_distance(traj.back().state, start);
    detail = "phase-space miss after T = 2 pi: " + format_double(miss);
    return miss < 1e-8;
}

// --- 10: regularization through the collision --------------------------------
bool criterion_regularization(std::string& detail) {
    IntegratorConfig cfg;
    cfg.sample_count = 2001;
    const Trajectory seg = integrate(SystemKind::GeodesicTransformed, 1.0,
                                     {{2, 0, 0}, {0, 0, 0}}, 0.5, cfg);
    const PhasePoint natural_start = transformed_to_natural(seg.back().state);
    const Trajectory reg = integrate_regularized_geodesic(
        1.0, {natural_start, Chart::Natural, 1.0}, 3.0, cfg);
    const DriftReport drift = drift_report(reg);
    const Trajectory kep =
        integrate(SystemKind::Kepler, 2.0, {{2, 0, 0}, {0, 0, 0}}, 3.0, cfg);
    detail = std::to_string(reg.switch_events.size()) + " switches, G drift " +
             format_double(drift.energy) + ", Kepler truncated: " +
             (kep.truncated ? "yes" : "no");
    return !reg.truncated && !reg.switch_events.empty() && drift.energy < 1e-9 &&
           kep.truncated;
}

// --- 11: algebra classification ----------------------------------------------
bool criterion_classification(std::string& detail) {
    RandomEngine rng(kSeed);
    bool ok = true;
    for (double k : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
        const BracketReport report = curvature_bracket_table(sample_natural_state(rng, k));
        ok = ok && report.label == classify_by_sign(k) && report.max_residual < 1e-8;
    }
    const struct { EnergyRegime regime; AlgebraLabel label; } regimes[] = {
        {EnergyRegime::Negative, AlgebraLabel::so4},
        {EnergyRegime::Zero, AlgebraLabel::iso3},
        {EnergyRegime::Positive, AlgebraLabel::so31},
    };
    for (const auto& r : regimes) {
        const BracketReport report =
            kepler_bracket_table(sample_kepler_point(rng, r.regime, 1.0), {1.0});
        ok = ok && report.label == r.label && report.max_residual < 1e-8;
    }
    detail = "so(4)/iso(3)/so(3,1) by sign of k and of E";
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"bracket tables (both systems, all regimes)", criterion_brackets},
        {"pointwise conservation of all charges", criterion_conservation},
        {"canonicity of the composite map and inversion involution", criterion_canonicity},
        {"Hamiltonian transport and the energy identity", criterion_transport},
        {"vector-field proportionality", criterion_proportionality},
        {"end-to-end duality on the worked flow", criterion_duality},
        {"conservation drift over long integrations", criterion_drift},
        {"Runge-Lenz vector points at the perihelion", criterion_perihelion},
        {"closed circular orbit returns after one period", criterion_return},
        {"chart-switch regularization of the collision dual", criterion_regularization},
        {"algebra classification by parameter sign", criterion_classification},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2zu: %s (%s)\n", pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.c_str());
        if (!pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

#ifndef KEPLERGEO_VERIFY_HPP
#define KEPLERGEO_VERIFY_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "keplergeo/canonical.hpp"
#include "keplergeo/io.hpp"
#include "keplergeo/duality.hpp"
#include "keplergeo/flows.hpp"

namespace keplergeo {

// ---------------------------------------------------------------------------
// Deterministic random phase points
// ---------------------------------------------------------------------------

using RandomEngine = std::mt19937_64;

inline Vec3 sample_unit_vector(RandomEngine& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 v;
    do {
        v = {gauss(rng), gauss(rng), gauss(rng)};
    } while (norm(v) < 1e-6);
    return v / norm(v);
}

inline Vec3 sample_vector(RandomEngine& rng, double min_norm, double max_norm) {
    std::uniform_real_distribution<double> radius(min_norm, max_norm);
    return sample_unit_vector(rng) * radius(rng);
}

enum class EnergyRegime { Negative, Zero, Positive };

/// Kepler phase point with |x| in [0.1, 10] and the requested energy sign;
/// the zero-energy case is constructed exactly via |p|^2 = 2 alpha/|x|.
inline PhasePoint sample_kepler_point(RandomEngine& rng, EnergyRegime regime, double alpha) {
    std::uniform_real_distribution<double> radius(0.1, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Vec3 x = sample_unit_vector(rng) * radius(rng);
    const double v_escape = std::sqrt(2.0 * alpha / norm(x));
    double speed = v_escape;
    if (regime == EnergyRegime::Negative) speed = v_escape * (0.2 + 0.7 * unit(rng));
    if (regime == EnergyRegime::Positive) speed = v_escape * (1.1 + unit(rng));
    return {x, sample_unit_vector(rng) * speed};
}

inline ChartedGeodesicState sample_natural_state(RandomEngine& rng, double k) {
    const double r_max = k < 0.0 ? 0.95 * 2.0 / std::sqrt(-k) : 10.0;
    return {{sample_vector(rng, 0.1, r_max), sample_vector(rng, 0.1, 2.5)},
            Chart::Natural, k};
}

inline ChartedGeodesicState sample_transformed_state(RandomEngine& rng, double k,
                                                     bool require_positive_u = false) {
    for (int tries = 0; tries < 1000; ++tries) {
        const ChartedGeodesicState s{
            {sample_vector(rng, 0.1, 5.0), sample_vector(rng, 0.1, 2.5)},
            Chart::Transformed, k};
        const double u = k + 0.5 * norm2(s.point.momentum);
        if (std::abs(u) < 1e-3) continue;  // keep clear of the G = 0 kink
        if (require_positive_u && u <= 0.0) continue;
        return s;
    }
    throw InconsistencyError("sample_transformed_state: rejection sampling failed");
}

// ---------------------------------------------------------------------------
// Suite harness
// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<Check> checks;

    bool all_pass() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add(const std::string& name, double residual, double tolerance) {
        checks.push_back({name, residual, tolerance, residual < tolerance});
    }

    void add_flag(const std::string& name, bool ok) {
        checks.push_back({name, ok ? 0.0 : 1.0, 0.5, ok});
    }
};

inline nlohmann::ordered_json to_json(const SuiteReport& report) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["samples"] = report.samples;
    j["pass"] = report.all_pass();
    auto checks = nlohmann::ordered_json::array();
    for (const Check& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    j["checks"] = checks;
    return j;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Both bracket tables at random points in every regime, plus the algebra
/// labels they certify.
inline SuiteReport verify_brackets(std::uint64_t seed, std::size_t n) {
    SuiteReport report{"brackets", seed, n};
    RandomEngine rng(seed);
    const KeplerParams params{1.0};

    const struct { EnergyRegime regime; const char* name; AlgebraLabel label; } kepler_cases[] = {
        {EnergyRegime::Negative, "kepler-brackets-H<0", AlgebraLabel::so4},
        {EnergyRegime::Zero, "kepler-brackets-H=0", AlgebraLabel::iso3},
        {EnergyRegime::Positive, "kepler-brackets-H>0", AlgebraLabel::so31},
    };
    for (const auto& c : kepler_cases) {
        double residual = 0.0;
        bool labels_ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const BracketReport br =
                kepler_bracket_table(sample_kepler_point(rng, c.regime, params.alpha), params);
            residual = std::max(residual, br.max_residual);
            labels_ok = labels_ok && br.label == c.label;
        }
        report.add(c.name, residual, 1e-8);
        report.add_flag(std::string(c.name) + "-label", labels_ok);
    }

    for (double k : {-1.0, 0.0, 1.0}) {
        for (Chart chart : {Chart::Natural, Chart::Transformed}) {
            double residual = 0.0;
            bool labels_ok = true;
            for (std::size_t i = 0; i < n; ++i) {
                const ChartedGeodesicState s = chart == Chart::Natural
                                                   ? sample_natural_state(rng, k)
                                                   : sample_transformed_state(rng, k);
                const BracketReport br = curvature_bracket_table(s);
                residual = std::max(residual, br.max_residual);
                labels_ok = labels_ok && br.label == classify_by_sign(k);
            }
            const std::string name = "curvature-brackets-k=" + format_double(k) + "-" +
                                     to_string(chart);
            report.add(name, residual, 1e-8);
            report.add_flag(name + "-label", labels_ok);
        }
    }
    return report;
}

/// Canonicity of the registered transformations plus the energy transport
/// through the composite map.
inline SuiteReport verify_symplectic(std::uint64_t seed, std::size_t n) {
    SuiteReport report{"symplectic", seed, n};
    RandomEngine rng(seed);

    const CanonicalMap maps[] = {inversion_map(), swap_map(), natural_to_transformed_map(),
                                 antipodal_map(1.0), antipodal_map(4.0)};
    auto sample_point = [&rng] {
        return PhasePoint{sample_vector(rng, 0.3, 3.0), sample_vector(rng, 0.3, 3.0)};
    };

    for (const CanonicalMap& map : maps) {
        double fwd = 0.0, inv = 0.0, round_trip = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            PhasePoint pt = sample_point();
            while (!map.domain(pt)) pt = sample_point();
            fwd = std::max(fwd, symplectic_check(map.forward, pt).residual);
            inv = std::max(inv, symplectic_check(map.inverse, map.forward(pt)).residual);
            round_trip = std::max(round_trip,
                                  phase_distance(map.inverse(map.forward(pt)), pt));
        }
        report.add(map.name + "-forward", fwd, 1e-8);
        report.add(map.name + "-inverse", inv, 1e-8);
        report.add(map.name + "-round-trip", round_trip, 1e-12);
    }

    // a composition of registered maps stays canonical
    {
        double residual = 0.0;
        const PhaseMap composite = [](const PhasePoint& pt) {
            return natural_to_transformed(antipodal_isometry(pt, 1.0));
        };
        for (std::size_t i = 0; i < n; ++i)
            residual = std::max(residual, symplectic_check(composite, sample_point()).residual);
        report.add("antipodal-then-composite", residual, 1e-8);
    }

    // G transported through the composite, every curvature sign
    for (double k : {-1.0, 0.0, 1.0}) {
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const ChartedGeodesicState natural = sample_natural_state(rng, k);
            const PhasePoint barred = natural_to_transformed(natural.point);
            const double g_natural = geodesic_energy(natural);
            const double g_transformed = geodesic_energy({barred, Chart::Transformed, k});
            residual = std::max(residual, std::abs(g_natural - g_transformed));
        }
        report.add("energy-transport-k=" + format_double(k), residual, 1e-10);
    }
    return report;
}

/// Pointwise conservation X_H(J) = X_H(A) = 0 and X_G(L) = X_G(D) = 0.
inline SuiteReport verify_constants(std::uint64_t seed, std::size_t n) {
    SuiteReport report{"constants", seed, n};
    RandomEngine rng(seed);
    const KeplerParams params{1.0};
    const ScalarField h_field = kepler_energy_field(params);
    const auto kepler_charges = kepler_charge_fields(params);

    double kepler_residual = 0.0;
    const EnergyRegime regimes[] = {EnergyRegime::Negative, EnergyRegime::Zero,
                                    EnergyRegime::Positive};
    for (std::size_t i = 0; i < n; ++i) {
        const PhasePoint pt = sample_kepler_point(rng, regimes[i % 3], params.alpha);
        for (const ScalarField& charge : kepler_charges)
            kepler_residual =
                std::max(kepler_residual, std::abs(flow_derivative(h_field, charge, pt)));
    }
    report.add("kepler-flow-kills-J-A", kepler_residual, 1e-10);

    for (double k : {-1.0, 0.0, 1.0}) {
        for (Chart chart : {Chart::Natural, Chart::Transformed}) {
            const ScalarField g_field = geodesic_energy_field(chart, k);
            const auto charges = curvature_charge_fields(chart, k);
            double residual = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const ChartedGeodesicState s = chart == Chart::Natural
                                                   ? sample_natural_state(rng, k)
                                                   : sample_transformed_state(rng, k);
                for (const ScalarField& charge : charges)
                    residual =
                        std::max(residual, std::abs(flow_derivative(g_field, charge, s.point)));
            }
            report.add("geodesic-flow-kills-L-D-k=" + format_double(k) + "-" + to_string(chart),
                       residual, 1e-10);
        }
    }
    return report;
}

/// Dictionary guards, field proportionality, the Runge-Lenz substitution and
/// an end-to-end mapped flow with its two-form certificate.
inline SuiteReport verify_duality(std::uint64_t seed, std::size_t n) {
    SuiteReport report{"duality", seed, n};
    RandomEngine rng(seed);

    {
        bool ok = true;
        const DualityDictionary d1 = make_dictionary(1.0, 1.0, Branch::Attractive);
        ok = ok && d1.E == -1.0 && d1.alpha == 2.0;
        const DualityDictionary d2 = make_dictionary(0.0, 0.25, Branch::Attractive);
        ok = ok && d2.E == 0.0 && d2.alpha == 1.0;
        try {
            make_dictionary(1.0, 0.0, Branch::Attractive);
            ok = false;
        } catch (const ExcludedCaseError&) {
        }
        try {
            make_dictionary(1.0, 1.0, Branch::Repulsive);
            ok = false;
        } catch (const InconsistencyError&) {
        }
        const DualityDictionary d3 = make_dictionary(-2.0, 2.25, Branch::Repulsive);
        ok = ok && d3.E == 2.0 && d3.alpha == -3.0;
        // involution: rebuilding from (E, alpha) recovers (k, C)
        const DualityDictionary d4 =
            make_dictionary(-d1.E, d1.alpha * d1.alpha / 4.0, Branch::Attractive);
        ok = ok && d4.k == d1.k && d4.C == d1.C;
        report.add_flag("dictionary-guards", ok);
    }

    for (double k : {-1.0, 0.0, 1.0}) {
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const ChartedGeodesicState s = sample_transformed_state(rng, k, true);
            residual = std::max(residual, vector_field_proportionality(s).residual);
        }
        report.add("field-proportionality-k=" + format_double(k), residual, 1e-10);
    }

    // energy identity, both sign branches
    for (double k : {-1.0, 0.0, 1.0}) {
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            residual = std::max(residual, transformed_energy_identity_residual(
                                              sample_transformed_state(rng, k)));
        report.add("energy-identity-k=" + format_double(k), residual, 1e-12);
    }

    {
        double residual = 0.0;
        const KeplerParams params{1.0};
        for (std::size_t i = 0; i < n; ++i) {
            const PhasePoint pt = sample_kepler_point(
                rng, static_cast<EnergyRegime>(i % 3), params.alpha);
            const Vec3 substituted = substitute_k_with_minus_H(pt, params);
            const Vec3 a = kepler_constants(pt, params).runge_lenz;
            residual = std::max(residual, norm(substituted - a));
        }
        report.add("runge-lenz-substitution", residual, 1e-12);
    }

    {
        // worked mapped flow: k = 1, start (1,0,0),(0,1,0): G = 0.5625,
        // alpha = 1.5, H must sit at -1
        IntegratorConfig cfg;
        cfg.sample_count = 2001;
        const PhasePoint start{{1, 0, 0}, {0, 1, 0}};
        const Trajectory geo =
            integrate(SystemKind::GeodesicTransformed, 1.0, start, 12.0, cfg);
        const DualityDictionary dict =
            make_dictionary(1.0, geo.samples.front().energy, Branch::Attractive);
        const Trajectory kep = map_trajectory(geo, dict);
        const TwoFormReport tf = two_form_correspondence(geo, kep, dict);
        report.add("mapped-flow-H-at-minus-k", tf.energy_residual_kepler, 1e-9);
        report.add("mapped-flow-G-at-C", tf.energy_residual_geodesic, 1e-9);
        report.add("mapped-flow-time-rate", tf.time_rate_residual, 1e-8);
        report.add("mapped-flow-eom", kepler_eom_residual(kep), 1e-6);

        double transport = 0.0;
        for (std::size_t i = 0; i < kep.samples.size(); ++i)
            for (std::size_t c = 0; c < 6; ++c)
                transport = std::max(transport, std::abs(kep.samples[i].charges[c] -
                                                         geo.samples[i].charges[c]));
        report.add("constants-transport-J=L-A=D", transport, 1e-9);
    }
    return report;
}

/// Chart-switching regularization for k = 1 against the dual collision orbit.
inline SuiteReport verify_regularize(std::uint64_t seed, std::size_t n) {
    SuiteReport report{"regularize", seed, n};

    IntegratorConfig cfg;
    cfg.sample_count = 2001;

    // geodesic dual to the radial Kepler collision orbit (alpha = 2, H = -1):
    // start on the transformed flow from (2,0,0) at rest and hop off at
    // lambda_0 = 0.5, where the natural-chart image is finite
    const Trajectory seg = integrate(SystemKind::GeodesicTransformed, 1.0,
                                     {{2, 0, 0}, {0, 0, 0}}, 0.5, cfg);
    const PhasePoint natural_start = transformed_to_natural(seg.samples.back().state);
    const Trajectory reg = integrate_regularized_geodesic(
        1.0, {natural_start, Chart::Natural, 1.0}, 3.0, cfg);

    report.add_flag("switch-events-present", !reg.switch_events.empty());
    report.add_flag("not-truncated", !reg.truncated);
    const DriftReport drift = drift_report(reg);
    report.add("regularized-G-drift", drift.energy, 1e-9);
    double charge_drift = 0.0;
    for (double c : drift.charges) charge_drift = std::max(charge_drift, c);
    report.add("regularized-charge-continuity", charge_drift, 1e-9);
    double switch_energy_jump = 0.0;
    for (const SwitchEvent& e : reg.switch_events)
        switch_energy_jump = std::max(
            switch_energy_jump,
            std::abs(geodesic_energy({e.before, Chart::Natural, 1.0}) -
                     geodesic_energy({e.after, Chart::Natural, 1.0})));
    report.add("switch-G-jump", switch_energy_jump, 1e-12);

    // the same orbit integrated as an unregularized Kepler flow hits the floor
    const Trajectory kep =
        integrate(SystemKind::Kepler, 2.0, {{2, 0, 0}, {0, 0, 0}}, 3.0, cfg);
    report.add_flag("kepler-collision-truncates", kep.truncated);
    if (!kep.samples.empty())
        report.add("kepler-floor-radius", norm(kep.samples.back().state.position), 1e-3);
    return report;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t samples) {
    if (name == "brackets") return verify_brackets(seed, samples);
    if (name == "symplectic") return verify_symplectic(seed, samples);
    if (name == "constants") return verify_constants(seed, samples);
    if (name == "duality") return verify_duality(seed, samples);
    if (name == "regularize") return verify_regularize(seed, samples);
    throw InconsistencyError("unknown verification suite '" + name + "'");
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"brackets", "symplectic", "constants",
                                                   "duality", "regularize"};
    return names;
}

}  // namespace keplergeo

#endif

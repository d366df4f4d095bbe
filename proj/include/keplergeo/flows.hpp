#ifndef KEPLERGEO_FLOWS_HPP
#define KEPLERGEO_FLOWS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "keplergeo/canonical.hpp"
#include "keplergeo/curvature.hpp"
#include "keplergeo/kepler.hpp"
#include "keplergeo/rk54.hpp"

namespace keplergeo {

/// Unregularized Kepler integration truncates below this radius.
inline constexpr double kCollisionFloor = 1e-8;

enum class SystemKind { Kepler, GeodesicNatural, GeodesicTransformed };

inline std::string to_string(SystemKind s) {
    switch (s) {
        case SystemKind::Kepler: return "kepler";
        case SystemKind::GeodesicNatural: return "geodesic-natural";
        default: return "geodesic-transformed";
    }
}

struct IntegratorConfig {
    double rtol = 1e-12;
    double atol = 1e-12;
    double max_step = 0.0;  // 0 = unlimited
    std::size_t sample_count = 1000;
};

struct Sample {
    double t = 0.0;
    PhasePoint state;
    double energy = 0.0;              // H or G
    std::array<double, 6> charges{};  // (J, A) or (L, D)
};

struct SwitchEvent {
    double t = 0.0;
    PhasePoint before;
    PhasePoint after;
};

struct Trajectory {
    SystemKind system = SystemKind::Kepler;
    double parameter = 0.0;  // alpha for Kepler, k for geodesics
    std::vector<Sample> samples;
    std::vector<SwitchEvent> switch_events;
    bool truncated = false;
    std::string truncation_reason;
    IntegratorConfig config;
    long accepted_steps = 0;
    long rejected_steps = 0;

    const Sample& front() const { return samples.front(); }
    const Sample& back() const { return samples.back(); }
};

namespace detail {

using State6 = std::array<double, 6>;

inline Dopri5<6>::Rhs system_rhs(SystemKind system, double parameter) {
    switch (system) {
        case SystemKind::Kepler:
            return [alpha = parameter](double, const State6& y, State6& dydt) {
                const Vec3 x{y[0], y[1], y[2]};
                const double r = norm(x);
                const double c = -alpha / (r * r * r);
                dydt = {y[3], y[4], y[5], c * y[0], c * y[1], c * y[2]};
            };
        case SystemKind::GeodesicNatural:
            return [k = parameter](double, const State6& y, State6& dydt) {
                const Vec3 x{y[0], y[1], y[2]};
                const Vec3 p{y[3], y[4], y[5]};
                const double f = 1.0 + k * norm2(x) / 4.0;
                const double cx = f * f;
                const double cp = -0.5 * k * f * norm2(p);
                dydt = {cx * p.x, cx * p.y, cx * p.z, cp * x.x, cp * x.y, cp * x.z};
            };
        default:
            return [k = parameter](double, const State6& y, State6& dydt) {
                const Vec3 x{y[0], y[1], y[2]};
                const Vec3 p{y[3], y[4], y[5]};
                const double u = k + 0.5 * norm2(p);
                const double cx = 0.5 * u * norm2(x);
                const double cp = -0.5 * u * u;
                dydt = {cx * p.x, cx * p.y, cx * p.z, cp * x.x, cp * x.y, cp * x.z};
            };
    }
}

inline std::function<bool(const State6&)> system_domain(SystemKind system, double parameter) {
    switch (system) {
        case SystemKind::Kepler:
            return [](const State6& y) {
                return norm(Vec3{y[0], y[1], y[2]}) >= kCollisionFloor;
            };
        case SystemKind::GeodesicNatural:
            return [k = parameter](const State6& y) {
                return 1.0 + k * norm2(Vec3{y[0], y[1], y[2]}) / 4.0 > 1e-12;
            };
        default:
            return [](const State6& y) {
                return norm(Vec3{y[0], y[1], y[2]}) >= kCollisionFloor;
            };
    }
}

inline void require_in_domain(SystemKind system, double parameter, const PhasePoint& start) {
    if (system == SystemKind::Kepler) {
        require_off_origin(start, "integrate");
    } else if (system == SystemKind::GeodesicNatural) {
        conformal_factor(start.position, parameter);
    } else if (norm2(start.position) == 0.0) {
        throw ChartBoundaryError("integrate: transformed chart excludes x = 0");
    }
}

inline Sample make_sample(SystemKind system, double parameter, double t, const PhasePoint& pt,
                          double transitive_sign = 1.0) {
    Sample s;
    s.t = t;
    s.state = pt;
    if (system == SystemKind::Kepler) {
        const KeplerInvariants inv = kepler_constants(pt, {parameter});
        s.energy = inv.energy;
        for (std::size_t i = 0; i < 3; ++i) {
            s.charges[i] = inv.angular_momentum[i];
            s.charges[i + 3] = inv.runge_lenz[i];
        }
    } else {
        const Chart chart =
            system == SystemKind::GeodesicNatural ? Chart::Natural : Chart::Transformed;
        const GeodesicInvariants inv = killing_charges({pt, chart, parameter});
        s.energy = inv.energy;
        for (std::size_t i = 0; i < 3; ++i) {
            s.charges[i] = inv.rotational[i];
            s.charges[i + 3] = transitive_sign * inv.transitive[i];
        }
    }
    return s;
}

inline Dopri5<6>::Options stepper_options(SystemKind system, double parameter,
                                          const IntegratorConfig& cfg) {
    if (cfg.rtol <= 0.0 || cfg.atol <= 0.0)
        throw InconsistencyError("integrator tolerances must be positive");
    Dopri5<6>::Options opt;
    opt.rtol = cfg.rtol;
    opt.atol = cfg.atol;
    if (cfg.max_step > 0.0) opt.max_step = cfg.max_step;
    opt.domain_ok = system_domain(system, parameter);
    return opt;
}

inline std::vector<double> sample_grid(double t_final, std::size_t count) {
    const std::size_t n = std::max<std::size_t>(count, 2);
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = t_final * static_cast<double>(i) / static_cast<double>(n - 1);
    grid.back() = t_final;
    return grid;
}

}  // namespace detail

/// Integrates one flow from `start` over [0, t_final] and samples it on a
/// uniform grid; step endpoints are clamped to the sample times so samples
/// carry full integration accuracy.  Domain exit truncates the trajectory
/// with a diagnostic instead of throwing.
inline Trajectory integrate(SystemKind system, double parameter, const PhasePoint& start,
                            double t_final, const IntegratorConfig& cfg) {
    if (!(t_final > 0.0)) throw InconsistencyError("integrate: t_final must be positive");
    detail::require_in_domain(system, parameter, start);

    Trajectory traj;
    traj.system = system;
    traj.parameter = parameter;
    traj.config = cfg;

    Dopri5<6> stepper(detail::system_rhs(system, parameter),
                      detail::stepper_options(system, parameter, cfg));
    stepper.start(0.0, to_array(start));

    const std::vector<double> grid = detail::sample_grid(t_final, cfg.sample_count);
    traj.samples.push_back(detail::make_sample(system, parameter, 0.0, start));

    std::string diagnostic;
    for (std::size_t gi = 1; gi < grid.size() && !traj.truncated; ++gi) {
        while (stepper.t() < grid[gi]) {
            if (!stepper.step_to(grid[gi], &diagnostic)) {
                traj.truncated = true;
                traj.truncation_reason = diagnostic;
                break;
            }
        }
        const double t = stepper.t();
        const PhasePoint pt = from_array(stepper.y());
        if (t > traj.samples.back().t)
            traj.samples.push_back(detail::make_sample(system, parameter, t, pt));
    }
    traj.accepted_steps = stepper.accepted_steps();
    traj.rejected_steps = stepper.rejected_steps();
    return traj;
}

/// Max drift of the energy and the six charges over a trajectory, each
/// measured relative to max(1, |initial value|).
struct DriftReport {
    double energy = 0.0;
    std::array<double, 6> charges{};

    double max() const {
        double m = energy;
        for (double c : charges) m = std::max(m, c);
        return m;
    }
};

inline DriftReport drift_report(const Trajectory& traj) {
    DriftReport report;
    if (traj.samples.empty()) return report;
    const Sample& first = traj.samples.front();
    const double e_scale = std::max(1.0, std::abs(first.energy));
    std::array<double, 6> c_scale{};
    for (std::size_t i = 0; i < 6; ++i) c_scale[i] = std::max(1.0, std::abs(first.charges[i]));
    for (const Sample& s : traj.samples) {
        report.energy = std::max(report.energy, std::abs(s.energy - first.energy) / e_scale);
        for (std::size_t i = 0; i < 6; ++i)
            report.charges[i] =
                std::max(report.charges[i], std::abs(s.charges[i] - first.charges[i]) / c_scale[i]);
    }
    return report;
}

/// Natural-chart geodesic integration for k > 0 with antipodal chart
/// switching: whenever |x| crosses R* = 2/sqrt(k) (the fixed sphere of the
/// antipodal isometry) the state is mapped back inside, keeping coordinates
/// bounded while the flow passes the parameter values that correspond to
/// Kepler collisions.  The transitive-charge columns carry the accumulated
/// sign of the switches (the isometry reverses the transitive Killing
/// fields), so all reported charge columns are continuous.
inline Trajectory integrate_regularized_geodesic(double k, const ChartedGeodesicState& start,
                                                 double t_final, const IntegratorConfig& cfg) {
    if (k <= 0.0) throw InconsistencyError("regularized integration requires k > 0");
    if (start.chart != Chart::Natural)
        throw InconsistencyError("regularized integration starts in the natural chart");
    if (!(t_final > 0.0)) throw InconsistencyError("integrate: t_final must be positive");

    const double r_star = 2.0 / std::sqrt(k);
    const double trigger = r_star * (1.0 + 1e-12);

    Trajectory traj;
    traj.system = SystemKind::GeodesicNatural;
    traj.parameter = k;
    traj.config = cfg;

    double sign = 1.0;
    PhasePoint current = start.point;
    if (norm(current.position) > trigger) {
        const PhasePoint mapped = antipodal_isometry(current, k);
        traj.switch_events.push_back({0.0, current, mapped});
        current = mapped;
        sign = -sign;
    }

    Dopri5<6> stepper(detail::system_rhs(SystemKind::GeodesicNatural, k),
                      detail::stepper_options(SystemKind::GeodesicNatural, k, cfg));
    stepper.start(0.0, to_array(current));

    const std::vector<double> grid = detail::sample_grid(t_final, cfg.sample_count);
    traj.samples.push_back(
        detail::make_sample(SystemKind::GeodesicNatural, k, 0.0, current, sign));

    long accepted = 0, rejected = 0;
    std::string diagnostic;
    for (std::size_t gi = 1; gi < grid.size() && !traj.truncated; ++gi) {
        while (stepper.t() < grid[gi]) {
            if (!stepper.step_to(grid[gi], &diagnostic)) {
                traj.truncated = true;
                traj.truncation_reason = diagnostic;
                break;
            }
            if (norm(Vec3{stepper.y()[0], stepper.y()[1], stepper.y()[2]}) > trigger) {
                // bisect the dense interpolant for the crossing time
                double lo = stepper.t_old(), hi = stepper.t();
                for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const auto y = stepper.dense(mid);
                    (norm(Vec3{y[0], y[1], y[2]}) > r_star ? hi : lo) = mid;
                }
                const PhasePoint before = from_array(stepper.dense(hi));
                const PhasePoint after = antipodal_isometry(before, k);
                traj.switch_events.push_back({hi, before, after});
                sign = -sign;
                accepted += stepper.accepted_steps();
                rejected += stepper.rejected_steps();
                stepper.start(hi, to_array(after));
            }
        }
        const double t = stepper.t();
        if (t > traj.samples.back().t)
            traj.samples.push_back(detail::make_sample(SystemKind::GeodesicNatural, k, t,
                                                       from_array(stepper.y()), sign));
    }
    traj.accepted_steps = accepted + stepper.accepted_steps();
    traj.rejected_steps = rejected + stepper.rejected_steps();
    return traj;
}

}  // namespace keplergeo

#endif

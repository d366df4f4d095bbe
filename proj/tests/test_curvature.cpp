#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "keplergeo/canonical.hpp"
#include "keplergeo/curvature.hpp"
#include "keplergeo/verify.hpp"

using namespace keplergeo;

namespace {
double u_of(const ChartedGeodesicState& s) { return s.k + 0.5 * norm2(s.point.momentum); }
}  // namespace

TEST_CASE("conformal factor and its chart ball") {
    RandomEngine rng(31);
    for (int i = 0; i < 10; ++i) REQUIRE(conformal_factor(sample_vector(rng, 0.1, 5), 0.0) == 1.0);
    REQUIRE(conformal_factor({1, 0, 0}, 4.0) == 2.0);
    REQUIRE(conformal_factor({0.999, 0, 0}, -4.0) > 0.0);
    REQUIRE_THROWS_AS(conformal_factor({1, 0, 0}, -4.0), ChartBoundaryError);
}

TEST_CASE("geodesic energy in both charts") {
    REQUIRE(geodesic_energy({{{0.7, -0.2, 3.1}, {1, 0, 0}}, Chart::Natural, 0.0}) == 0.5);
    REQUIRE(geodesic_energy({{{1, 0, 0}, {0, 1, 0}}, Chart::Natural, 4.0}) == 2.0);
    REQUIRE(geodesic_energy({{{1, 0, 0}, {0, 1, 0}}, Chart::Transformed, 1.0}) == 0.5625);
    RandomEngine rng(32);
    for (double k : {-1.0, 0.0, 1.0})
        for (int i = 0; i < 30; ++i)
            REQUIRE(geodesic_energy(sample_natural_state(rng, k)) >= 0.0);
}

TEST_CASE("flow fields: flat lines, chart origin, transformed landmark") {
    RandomEngine rng(33);
    for (int i = 0; i < 10; ++i) {
        const ChartedGeodesicState flat{
            {sample_vector(rng, 0.1, 3), sample_vector(rng, 0.1, 2)}, Chart::Natural, 0.0};
        const PhaseVelocity v = geodesic_vector_field(flat);
        REQUIRE(v.dx == flat.point.momentum);
        REQUIRE(v.dp == Vec3{});

        const ChartedGeodesicState center{{{0, 0, 0}, sample_vector(rng, 0.1, 2)},
                                          Chart::Natural, 2.5};
        const PhaseVelocity w = geodesic_vector_field(center);
        REQUIRE(w.dx == center.point.momentum);
        REQUIRE(norm(w.dp) == 0.0);
    }

    const PhaseVelocity v =
        geodesic_vector_field({{{2, 0, 0}, {0, 0, 0}}, Chart::Transformed, 1.0});
    REQUIRE(v.dx == Vec3{});
    REQUIRE(norm(v.dp - Vec3{-1, 0, 0}) < 1e-15);
}

TEST_CASE("flow fields agree with the generic Hamiltonian field") {
    RandomEngine rng(34);
    for (double k : {-1.0, 0.0, 1.0}) {
        for (Chart chart : {Chart::Natural, Chart::Transformed}) {
            const ScalarField g = geodesic_energy_field(chart, k);
            for (int i = 0; i < 50; ++i) {
                const ChartedGeodesicState s = chart == Chart::Natural
                                                   ? sample_natural_state(rng, k)
                                                   : sample_transformed_state(rng, k);
                const PhaseVelocity spec = geodesic_vector_field(s);
                const PhaseVelocity gen = hamiltonian_vector_field(g, s.point);
                REQUIRE(norm(spec.dx - gen.dx) < 1e-12);
                REQUIRE(norm(spec.dp - gen.dp) < 1e-12);
            }
        }
    }
}

TEST_CASE("factored transformed field: equal on one branch, reversed on the other") {
    RandomEngine rng(35);
    for (int i = 0; i < 50; ++i) {
        const ChartedGeodesicState pos = sample_transformed_state(rng, 1.0);  // u > 0 always
        const PhaseVelocity a = geodesic_vector_field(pos);
        const PhaseVelocity b = transformed_factored_vector_field(pos);
        REQUIRE(norm(a.dx - b.dx) < 1e-12 * std::max(1.0, norm(a.dx)));
        REQUIRE(norm(a.dp - b.dp) < 1e-12 * std::max(1.0, norm(a.dp)));
    }
    // on the opposite branch sqrt(G) = -u|x|/2, so the position part of the
    // factored form reverses while the momentum part (quadratic in sqrt(G))
    // keeps its sign: the printed factorization belongs to u >= 0 only
    int negative_branch = 0;
    for (int i = 0; i < 200; ++i) {
        const ChartedGeodesicState s = sample_transformed_state(rng, -1.0);
        if (u_of(s) >= 0.0) continue;
        ++negative_branch;
        const PhaseVelocity a = geodesic_vector_field(s);
        const PhaseVelocity b = transformed_factored_vector_field(s);
        REQUIRE(norm(a.dx + b.dx) < 1e-12 * std::max(1.0, norm(a.dx)));
        REQUIRE(norm(a.dp - b.dp) < 1e-12 * std::max(1.0, norm(a.dp)));
    }
    REQUIRE(negative_branch > 10);
}

TEST_CASE("killing charges at landmark points") {
    const GeodesicInvariants flat =
        killing_charges({{{0.4, -1.0, 2.0}, {3, 1, 2}}, Chart::Natural, 0.0});
    REQUIRE(flat.transitive == Vec3{3, 1, 2});  // D reduces to p when k = 0

    const GeodesicInvariants mid =
        killing_charges({{{1, 0, 0}, {0, 1, 0}}, Chart::Natural, 2.0});
    REQUIRE(norm(mid.transitive - Vec3{0, 0.5, 0}) < 1e-15);

    const GeodesicInvariants barred =
        killing_charges({{{2, 0, 0}, {0, 0, 0}}, Chart::Transformed, 1.0});
    REQUIRE(norm(barred.transitive - Vec3{-kSqrt2, 0, 0}) < 1e-15);
}

TEST_CASE("charges contract Killing fields with the momentum") {
    RandomEngine rng(36);
    for (double k : {-1.0, 0.0, 1.5}) {
        for (int i = 0; i < 30; ++i) {
            const ChartedGeodesicState s = sample_natural_state(rng, k);
            const GeodesicInvariants inv = killing_charges(s);
            for (std::size_t a = 0; a < 3; ++a) {
                const Vec3 r = rotation_killing_field(a)(s.point.position);
                const Vec3 t = transitive_killing_field(a, k)(s.point.position);
                REQUIRE(std::abs(dot(r, s.point.momentum) - inv.rotational[a]) < 1e-12);
                REQUIRE(std::abs(dot(t, s.point.momentum) - inv.transitive[a]) < 1e-12);
            }
        }
    }
}

TEST_CASE("charges transported through the composite map coincide") {
    RandomEngine rng(37);
    for (double k : {-1.0, 0.0, 1.0}) {
        for (int i = 0; i < 50; ++i) {
            const ChartedGeodesicState natural = sample_natural_state(rng, k);
            const PhasePoint barred = natural_to_transformed(natural.point);
            const GeodesicInvariants a = killing_charges(natural);
            const GeodesicInvariants b = killing_charges({barred, Chart::Transformed, k});
            REQUIRE(std::abs(a.energy - b.energy) < 1e-10);
            REQUIRE(norm(a.rotational - b.rotational) < 1e-10);
            REQUIRE(norm(a.transitive - b.transitive) < 1e-10);
        }
    }
}

TEST_CASE("charges are killed by the flow in both charts") {
    RandomEngine rng(38);
    for (double k : {-1.0, 0.0, 1.0}) {
        for (Chart chart : {Chart::Natural, Chart::Transformed}) {
            const ScalarField g = geodesic_energy_field(chart, k);
            const auto charges = curvature_charge_fields(chart, k);
            for (int i = 0; i < 100; ++i) {
                const ChartedGeodesicState s = chart == Chart::Natural
                                                   ? sample_natural_state(rng, k)
                                                   : sample_transformed_state(rng, k);
                for (const ScalarField& charge : charges)
                    REQUIRE(std::abs(flow_derivative(g, charge, s.point)) < 1e-10);
            }
        }
    }
}

TEST_CASE("chart flow fields are related by the map Jacobian") {
    RandomEngine rng(39);
    for (double k : {-1.0, 0.0, 1.0}) {
        for (int i = 0; i < 20; ++i) {
            const ChartedGeodesicState natural = sample_natural_state(rng, k);
            const PhasePoint image = natural_to_transformed(natural.point);
            const Matrix6 jac = numerical_jacobian(
                [](const PhasePoint& q) { return natural_to_transformed(q); },
                natural.point, 1e-4);
            const PhaseVelocity xn = geodesic_vector_field(natural);
            const PhaseVelocity xt = geodesic_vector_field({image, Chart::Transformed, k});
            const std::array<double, 6> vn = {xn.dx.x, xn.dx.y, xn.dx.z,
                                              xn.dp.x, xn.dp.y, xn.dp.z};
            const std::array<double, 6> vt = {xt.dx.x, xt.dx.y, xt.dx.z,
                                              xt.dp.x, xt.dp.y, xt.dp.z};
            for (std::size_t r = 0; r < 6; ++r) {
                double pushed = 0.0;
                for (std::size_t c = 0; c < 6; ++c) pushed += jac[r][c] * vn[c];
                REQUIRE(std::abs(pushed - vt[r]) < 1e-8 * std::max(1.0, std::abs(vt[r])));
            }
        }
    }
}

TEST_CASE("bracket tables in both charts for every curvature sign") {
    RandomEngine rng(40);
    const BracketReport flat = curvature_bracket_table(
        {{{0.9, 0.1, -0.3}, {0.5, 1.2, 0.1}}, Chart::Natural, 0.0});
    for (const BracketEntry& e : flat.entries)
        if (e.lhs == "D1" && e.rhs == "D2") REQUIRE(std::abs(e.computed) < 1e-12);

    // k=1 at x=(1,0,0), p=(0,1,0): L3 = 1 and {D1,D2} = -k L3 = -1
    const BracketReport sphere =
        curvature_bracket_table({{{1, 0, 0}, {0, 1, 0}}, Chart::Natural, 1.0});
    for (const BracketEntry& e : sphere.entries)
        if (e.lhs == "D1" && e.rhs == "D2") REQUIRE(std::abs(e.computed - (-1.0)) < 1e-12);

    const ScalarField l1 = rotational_charge_field(0);
    REQUIRE(poisson_bracket(l1, l1, {{0.2, 0.5, 1.0}, {0.1, -0.7, 0.3}}) == 0.0);

    const struct { double k; AlgebraLabel label; } cases[] = {
        {1.0, AlgebraLabel::so4}, {0.0, AlgebraLabel::iso3}, {-1.0, AlgebraLabel::so31}};
    for (const auto& c : cases) {
        for (Chart chart : {Chart::Natural, Chart::Transformed}) {
            for (int i = 0; i < 100; ++i) {
                const ChartedGeodesicState s = chart == Chart::Natural
                                                   ? sample_natural_state(rng, c.k)
                                                   : sample_transformed_state(rng, c.k);
                const BracketReport report = curvature_bracket_table(s);
                REQUIRE(report.max_residual < 1e-8);
                REQUIRE(report.label == c.label);
            }
        }
    }
}

TEST_CASE("transformed-chart energy identity on both sign branches") {
    RandomEngine rng(41);
    int negative_branch = 0;
    for (double k : {-1.0, 0.0, 1.0}) {
        for (int i = 0; i < 100; ++i) {
            const ChartedGeodesicState s = sample_transformed_state(rng, k);
            if (u_of(s) < 0.0) ++negative_branch;
            REQUIRE(transformed_energy_identity_residual(s) < 1e-12);
        }
    }
    REQUIRE(negative_branch > 10);  // the flipped-sign branch is actually exercised
}

TEST_CASE("chart domain violations are reported") {
    REQUIRE_THROWS_AS(
        geodesic_energy({{{3, 0, 0}, {0, 1, 0}}, Chart::Natural, -1.0}),
        ChartBoundaryError);
    REQUIRE_THROWS_AS(
        killing_charges({{{0, 0, 0}, {0, 1, 0}}, Chart::Transformed, 1.0}),
        ChartBoundaryError);
}

TEST_CASE("closed-form gradients of G, L, D match central differences") {
    RandomEngine rng(42);
    for (double k : {-1.0, 1.0}) {
        for (Chart chart : {Chart::Natural, Chart::Transformed}) {
            ScalarField fields[] = {geodesic_energy_field(chart, k),
                                    rotational_charge_field(1),
                                    transitive_charge_field(chart, 0, k)};
            for (const ScalarField& f : fields) {
                for (int i = 0; i < 30; ++i) {
                    const ChartedGeodesicState s = chart == Chart::Natural
                                                       ? sample_natural_state(rng, k)
                                                       : sample_transformed_state(rng, k);
                    const PhaseGradient closed = f.gradient(s.point);
                    const PhaseGradient numeric = f.numeric_gradient(s.point);
                    for (std::size_t c = 0; c < 3; ++c) {
                        REQUIRE(std::abs(closed.d_position[c] - numeric.d_position[c]) <
                                1e-6 * std::max(1.0, std::abs(closed.d_position[c])));
                        REQUIRE(std::abs(closed.d_momentum[c] - numeric.d_momentum[c]) <
                                1e-6 * std::max(1.0, std::abs(closed.d_momentum[c])));
                    }
                }
            }
        }
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "keplergeo/canonical.hpp"
#include "keplergeo/curvature.hpp"
#include "keplergeo/verify.hpp"

using namespace keplergeo;

namespace {

PhasePoint sample_map_point(RandomEngine& rng) {
    return {sample_vector(rng, 0.3, 3.0), sample_vector(rng, 0.3, 3.0)};
}

// 3x3 position-block Jacobian of a configuration-space map
std::array<std::array<double, 3>, 3> position_jacobian(
    const std::function<Vec3(const Vec3&)>& map, const Vec3& x, double h) {
    std::array<std::array<double, 3>, 3> jac{};
    for (std::size_t c = 0; c < 3; ++c) {
        Vec3 xp = x, xm = x;
        xp[c] += h;
        xm[c] -= h;
        const Vec3 fp = map(xp), fm = map(xm);
        for (std::size_t r = 0; r < 3; ++r) jac[r][c] = (fp[r] - fm[r]) / (2.0 * h);
    }
    return jac;
}

}  // namespace

TEST_CASE("inversion values and involution") {
    const PhasePoint tangent = inversion({{1, 0, 0}, {0, 1, 0}});
    REQUIRE(tangent.position == Vec3{1, 0, 0});
    REQUIRE(tangent.momentum == Vec3{0, 1, 0});

    const PhasePoint radial = inversion({{2, 0, 0}, {1, 0, 0}});
    REQUIRE(radial.position == Vec3{0.5, 0, 0});
    REQUIRE(radial.momentum == Vec3{-4, 0, 0});

    RandomEngine rng(51);
    for (int i = 0; i < 100; ++i) {
        const PhasePoint pt = sample_map_point(rng);
        REQUIRE(phase_distance(inversion(inversion(pt)), pt) < 1e-12);
    }
    REQUIRE_THROWS_AS(inversion({{0, 0, 0}, {1, 0, 0}}), SingularityError);
}

TEST_CASE("swap values and exact canonicity") {
    const double s = 2.0 * kSqrt2;
    const PhasePoint out = swap({{1, 0, 0}, {s, 0, 0}});
    REQUIRE(norm(out.position - Vec3{1, 0, 0}) < 1e-15);
    REQUIRE(norm(out.momentum - Vec3{-s, 0, 0}) < 1e-15);

    REQUIRE(swap({{0, 0, 0}, {0, 0, 0}}).position == Vec3{});
    REQUIRE(swap({{0, 0, 0}, {0, 0, 0}}).momentum == Vec3{});

    RandomEngine rng(52);
    for (int i = 0; i < 20; ++i) {
        const PhasePoint pt = sample_map_point(rng);
        REQUIRE(symplectic_check([](const PhasePoint& q) { return swap(q); }, pt).residual <
                1e-12);
        REQUIRE(phase_distance(swap_inverse(swap(pt)), pt) < 1e-15);
    }
}

TEST_CASE("composite chain and the energy pullback") {
    const double s = 2.0 * kSqrt2;
    const PhasePoint image = natural_to_transformed({{1, 0, 0}, {0, s, 0}});
    REQUIRE(norm(image.position - Vec3{0, 1, 0}) < 1e-15);
    REQUIRE(norm(image.momentum - Vec3{-s, 0, 0}) < 1e-15);

    RandomEngine rng(53);
    for (double k : {-1.0, 0.0, 1.0}) {
        for (int i = 0; i < 100; ++i) {
            const ChartedGeodesicState natural = sample_natural_state(rng, k);
            const PhasePoint barred = natural_to_transformed(natural.point);
            const double g_nat = geodesic_energy(natural);
            const double g_bar = geodesic_energy({barred, Chart::Transformed, k});
            REQUIRE(std::abs(g_nat - g_bar) < 1e-10);
            REQUIRE(phase_distance(transformed_to_natural(barred), natural.point) < 1e-12);
            REQUIRE(phase_distance(natural_to_transformed(transformed_to_natural(barred)),
                                   barred) < 1e-12);
        }
    }

    REQUIRE_THROWS_AS(natural_to_transformed({{1, 0, 0}, {0, 0, 0}}), ChartBoundaryError);
    REQUIRE_THROWS_AS(natural_to_transformed({{0, 0, 0}, {1, 0, 0}}), SingularityError);
}

TEST_CASE("antipodal isometry: fixed sphere, inversion limit, energy") {
    // k = 4 has scale factor 1: positions invert
    RandomEngine rng(54);
    for (int i = 0; i < 20; ++i) {
        const PhasePoint pt = sample_map_point(rng);
        REQUIRE(norm(antipodal_isometry(pt, 4.0).position - inversion(pt).position) < 1e-14);
    }

    // |x| = 2/sqrt(k) is pointwise fixed
    const PhasePoint on_sphere{{2, 0, 0}, {0, 1, 0}};
    REQUIRE(norm(antipodal_isometry(on_sphere, 1.0).position - Vec3{2, 0, 0}) < 1e-15);

    for (double k : {0.25, 1.0, 4.0}) {
        for (int i = 0; i < 100; ++i) {
            const PhasePoint pt = sample_map_point(rng);
            const PhasePoint mapped = antipodal_isometry(pt, k);
            const double before = geodesic_energy({pt, Chart::Natural, k});
            const double after = geodesic_energy({mapped, Chart::Natural, k});
            REQUIRE(std::abs(before - after) < 1e-10 * std::max(1.0, before));
            REQUIRE(phase_distance(antipodal_isometry(mapped, k), pt) < 1e-12);
        }
    }

    REQUIRE_THROWS_AS(antipodal_isometry({{1, 0, 0}, {}}, -1.0), InconsistencyError);
    REQUIRE_THROWS_AS(antipodal_isometry({{0, 0, 0}, {}}, 1.0), SingularityError);
}

TEST_CASE("antipodal map leaves the line element invariant") {
    // metric oracle: push a random displacement through the position Jacobian
    // and compare conformal lengths on both sides
    RandomEngine rng(55);
    for (double k : {0.25, 1.0, 4.0}) {
        auto position_map = [k](const Vec3& x) {
            return x * (4.0 / (k * norm2(x)));
        };
        for (int i = 0; i < 50; ++i) {
            const Vec3 x = sample_vector(rng, 0.4, 3.0);
            const Vec3 dx = sample_unit_vector(rng);
            const auto jac = position_jacobian(position_map, x, 1e-6);
            Vec3 dx_image{};
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) dx_image[r] += jac[r][c] * dx[c];
            const double len_before = norm(dx) / conformal_factor(x, k);
            const double len_after = norm(dx_image) / conformal_factor(position_map(x), k);
            REQUIRE(std::abs(len_before - len_after) < 1e-8 * std::max(1.0, len_before));
        }
    }
}

TEST_CASE("every registered map and their compositions pass the canonicity check") {
    RandomEngine rng(56);
    const CanonicalMap maps[] = {inversion_map(), swap_map(), natural_to_transformed_map(),
                                 antipodal_map(1.0)};
    for (const CanonicalMap& map : maps) {
        for (int i = 0; i < 100; ++i) {
            PhasePoint pt = sample_map_point(rng);
            while (!map.domain(pt)) pt = sample_map_point(rng);
            REQUIRE(symplectic_check(map.forward, pt).residual < 1e-8);
            REQUIRE(symplectic_check(map.inverse, map.forward(pt)).residual < 1e-8);
            REQUIRE(phase_distance(map.inverse(map.forward(pt)), pt) < 1e-12);
        }
    }

    const PhaseMap compositions[] = {
        [](const PhasePoint& q) { return swap(inversion(q)); },
        [](const PhasePoint& q) { return inversion(antipodal_isometry(q, 1.0)); },
        [](const PhasePoint& q) {
            return natural_to_transformed(antipodal_isometry(inversion(q), 4.0));
        },
    };
    for (const PhaseMap& map : compositions)
        for (int i = 0; i < 100; ++i)
            REQUIRE(symplectic_check(map, sample_map_point(rng)).residual < 1e-8);
}

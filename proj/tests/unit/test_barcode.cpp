#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "emph/barcode.hpp"
#include "emph/errors.hpp"
#include "reference.hpp"

namespace {

emph::LiouvilleRadii make_radii(std::vector<double> radii) {
    emph::LiouvilleRadii out;
    for (std::size_t i = 0; i < radii.size(); ++i) out.modes.push_back(static_cast<int>(i + 1));
    out.radii = std::move(radii);
    return out;
}

} // namespace

TEST_SUITE("barcode") {

TEST_CASE("circle interval formulas") {
    const auto unit1 = emph::circle_interval(1.0, 1);
    CHECK(unit1.birth == 0.0);
    CHECK(unit1.death == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

    const auto unit3 = emph::circle_interval(1.0, 3);
    CHECK(unit3.birth == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(unit3.death ==
          doctest::Approx(2.0 * std::sin(2.0 * std::numbers::pi / 5.0)).epsilon(1e-14));

    const auto half = emph::circle_interval(0.5, 1);
    CHECK(half.death == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));

    const auto component = emph::circle_interval(2.0, 0);
    CHECK(component.infinite);
    CHECK(component.birth == 0.0);

    const auto degenerate = emph::circle_interval(0.0, 3);
    CHECK(degenerate.empty);

    CHECK_THROWS_AS((void)emph::circle_interval(1.0, 2), emph::domain_error);
    CHECK_THROWS_AS((void)emph::circle_interval(-1.0, 1), emph::domain_error);
}

TEST_CASE("composition enumeration order and contents") {
    CHECK(emph::enumerate_compositions(2, 1) ==
          std::vector<std::vector<int>>{{1, 0}, {0, 1}});
    CHECK(emph::enumerate_compositions(2, 2) == std::vector<std::vector<int>>{{1, 1}});
    CHECK(emph::enumerate_compositions(3, 3) ==
          std::vector<std::vector<int>>{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {1, 1, 1}});
    CHECK(emph::enumerate_compositions(2, 0) == std::vector<std::vector<int>>{{0, 0}});
    // No tuple of two zero-or-odd entries sums to 4 except (1,3)/(3,1).
    CHECK(emph::enumerate_compositions(2, 4) ==
          std::vector<std::vector<int>>{{3, 1}, {1, 3}});
    CHECK_THROWS_AS((void)emph::enumerate_compositions(0, 1), emph::input_error);
}

TEST_CASE("diagonal ray with unit and half radii") {
    const auto result = emph::ray_barcode(make_radii({1.0, 0.5}), {1.0, 1.0}, 1);
    REQUIRE(result.barcode.size() == 2);
    // Diagonal direction makes the per-mode scale factor exactly 1.
    CHECK(result.barcode.bars[0].birth == 0.0);
    CHECK(result.barcode.bars[0].death == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
    CHECK(result.barcode.bars[1].birth == 0.0);
    CHECK(result.barcode.bars[1].death == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(result.origins[0].composition == std::vector<int>{0, 1});
    CHECK(result.origins[1].composition == std::vector<int>{1, 0});
    // Dimension-1 deaths are each achieved by the single active mode.
    CHECK(result.origins[0].death_argmin == 1);
    CHECK(result.origins[1].death_argmin == 0);
}

TEST_CASE("dimension-2 diagonal ray keeps only the cross term") {
    const auto result = emph::ray_barcode(make_radii({1.0, 0.5}), {1.0, 1.0}, 2);
    REQUIRE(result.barcode.size() == 1);
    CHECK(result.origins[0].composition == std::vector<int>{1, 1});
    CHECK(result.barcode.bars[0].birth == 0.0);
    CHECK(result.barcode.bars[0].death == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
}

TEST_CASE("tilted ray rescales deaths per mode") {
    const auto result = emph::ray_barcode(make_radii({1.0, 1.0}), {2.0, 1.0}, 1);
    REQUIRE(result.barcode.size() == 2);
    // rho = (2,1)/sqrt(5); death_L = sqrt(3/2) r_L / rho_L.
    const double d1 = std::sqrt(1.5) * std::sqrt(5.0) / 2.0;
    const double d2 = std::sqrt(1.5) * std::sqrt(5.0);
    CHECK(result.barcode.bars[0].death == doctest::Approx(d1).epsilon(1e-12));
    CHECK(result.barcode.bars[1].death == doctest::Approx(d2).epsilon(1e-12));
}

TEST_CASE("rays are invariant under direction rescaling") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int N = testref::uniform_int(gen, 1, 3);
        const int n = testref::uniform_int(gen, 1, 3);
        std::vector<double> radii(N), a(N);
        for (double& r : radii) r = testref::uniform(gen, 0.2, 2.0);
        for (double& v : a) v = testref::uniform(gen, 0.2, 2.0);
        std::vector<double> scaled = a;
        const double c = testref::uniform(gen, 0.1, 9.0);
        for (double& v : scaled) v *= c;

        const auto lhs = emph::ray_barcode(make_radii(radii), a, n);
        const auto rhs = emph::ray_barcode(make_radii(radii), scaled, n);
        REQUIRE(lhs.barcode.size() == rhs.barcode.size());
        for (std::size_t j = 0; j < lhs.barcode.size(); ++j) {
            CHECK(testref::close(lhs.barcode.bars[j].birth, rhs.barcode.bars[j].birth, 1e-12));
            CHECK(testref::close(lhs.barcode.bars[j].death, rhs.barcode.bars[j].death, 1e-12));
        }
    }
}

TEST_CASE("dimension-1 structure: one bar per nonzero radius, births zero") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int N = testref::uniform_int(gen, 1, 4);
        std::vector<double> radii(N), a(N);
        int nonzero = 0;
        for (double& r : radii) {
            r = (testref::uniform(gen, 0.0, 1.0) < 0.25) ? 0.0
                                                         : testref::uniform(gen, 0.1, 2.0);
            nonzero += (r != 0.0);
        }
        for (double& v : a) v = testref::uniform(gen, 0.2, 2.0);

        const auto result = emph::ray_barcode(make_radii(radii), a, 1);
        CHECK(static_cast<int>(result.barcode.size()) == nonzero);

        double norm = 0.0;
        for (double v : a) norm += v * v;
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < result.barcode.size(); ++j) {
            CHECK(result.barcode.bars[j].birth == 0.0);
            int L = 0;
            while (result.origins[j].composition[L] == 0) ++L;
            const double rho_L = a[L] / norm;
            const double expected = std::sqrt(3.0 / N) * radii[L] / rho_L;
            CHECK(result.barcode.bars[j].death == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("duplicate radii produce duplicate bars (multiset semantics)") {
    const auto result = emph::ray_barcode(make_radii({1.0, 1.0}), {1.0, 1.0}, 1);
    REQUIRE(result.barcode.size() == 2);
    CHECK(result.barcode.bars[0].death == result.barcode.bars[1].death);
    CHECK(result.origins[0].composition != result.origins[1].composition);
}

TEST_CASE("brute-force oracle agreement (spot check)") {
    std::mt19937_64 gen(13);
    for (int N = 1; N <= 3; ++N) {
        for (int n = 0; n <= 3; ++n) {
            for (int trial = 0; trial < 50; ++trial) {
                std::vector<double> radii(N), a(N);
                for (double& r : radii) {
                    r = (testref::uniform(gen, 0.0, 1.0) < 0.1)
                            ? 0.0
                            : testref::uniform(gen, 0.2, 2.0);
                }
                for (double& v : a) v = testref::uniform(gen, 0.2, 2.0);

                const auto got = emph::ray_barcode(make_radii(radii), a, n);
                const auto expected = testref::ref_ray_barcode(make_radii(radii), a, n);
                REQUIRE(got.barcode.size() == expected.size());

                std::map<std::vector<int>, std::pair<double, double>> by_comp;
                for (const auto& bar : expected) {
                    by_comp[bar.composition] = {bar.birth, bar.death};
                }
                for (std::size_t j = 0; j < got.barcode.size(); ++j) {
                    auto it = by_comp.find(got.origins[j].composition);
                    REQUIRE(it != by_comp.end());
                    CHECK(testref::close(got.barcode.bars[j].birth, it->second.first, 1e-12));
                    CHECK(testref::close(got.barcode.bars[j].death, it->second.second, 1e-12));
                }
            }
        }
    }
}

TEST_CASE("bars arrive sorted by (birth, death, composition)") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int N = testref::uniform_int(gen, 2, 3);
        const int n = testref::uniform_int(gen, 1, 3);
        std::vector<double> radii(N), a(N);
        for (double& r : radii) r = testref::uniform(gen, 0.2, 2.0);
        for (double& v : a) v = testref::uniform(gen, 0.2, 2.0);
        const auto result = emph::ray_barcode(make_radii(radii), a, n);
        for (std::size_t j = 1; j < result.barcode.size(); ++j) {
            const auto& prev = result.barcode.bars[j - 1];
            const auto& curr = result.barcode.bars[j];
            const bool ordered =
                prev.birth < curr.birth ||
                (prev.birth == curr.birth && prev.death < curr.death) ||
                (prev.birth == curr.birth && prev.death == curr.death &&
                 result.origins[j - 1].composition <= result.origins[j].composition);
            CHECK(ordered);
        }
    }
}

TEST_CASE("single-segment curve reproduces the ray exactly") {
    const auto radii = make_radii({1.0, 0.5});
    emph::FiltrationCurve curve;
    curve.directions = {{1.0, 1.0}};
    curve.Q = 5.0;
    const auto from_curve = emph::curve_barcode(radii, curve, 1);
    const auto from_ray = emph::ray_barcode(radii, {1.0, 1.0}, 1);
    REQUIRE(from_curve.barcode.size() == from_ray.barcode.size());
    for (std::size_t j = 0; j < from_ray.barcode.size(); ++j) {
        CHECK(from_curve.barcode.bars[j].birth == from_ray.barcode.bars[j].birth);
        CHECK(from_curve.barcode.bars[j].death == from_ray.barcode.bars[j].death);
    }
}

TEST_CASE("two-segment curve maps thresholds through the owning segment") {
    // Segment 1 along (1,1), segment 2 along (3,1), horizon Q = 2 so each
    // segment covers parameter length 1. Mode 1's unscaled death threshold
    // sqrt(3) overshoots segment 1's reach and lands in segment 2; mode 2's
    // stays inside segment 1.
    emph::FiltrationCurve curve;
    curve.directions = {{1.0, 1.0}, {3.0, 1.0}};
    curve.Q = 2.0;
    const auto result = emph::curve_barcode(make_radii({1.0, 0.5}), curve, 1);
    REQUIRE(result.barcode.size() == 2);

    const double rho1_seg1 = 1.0 / std::sqrt(2.0);
    const double rho1_seg2 = 3.0 / std::sqrt(10.0);
    const double sqrtN = std::sqrt(2.0);

    const double death_mode2 = (std::sqrt(3.0) * 0.5 / sqrtN) / rho1_seg1;
    const double death_mode1 = 1.0 + (std::sqrt(3.0) / sqrtN - 1.0 * rho1_seg1) / rho1_seg2;
    CHECK(result.barcode.bars[0].death == doctest::Approx(death_mode2).epsilon(1e-12));
    CHECK(result.barcode.bars[1].death == doctest::Approx(death_mode1).epsilon(1e-12));
    // The owning segment is recorded per mode for the gradient chain.
    CHECK(result.origins[0].death_segment == std::vector<int>{0, 1});
    CHECK(result.origins[1].death_segment == std::vector<int>{2, 0});
}

TEST_CASE("thresholds beyond the horizon extend the final segment") {
    emph::FiltrationCurve curve;
    curve.directions = {{1.0, 1.0}, {3.0, 1.0}};
    curve.Q = 0.5; // both knots well below mode 1's threshold
    const auto result = emph::curve_barcode(make_radii({1.0, 0.0}), curve, 1);
    REQUIRE(result.barcode.size() == 1);
    const double rho1_seg1 = 1.0 / std::sqrt(2.0);
    const double rho1_seg2 = 3.0 / std::sqrt(10.0);
    const double expected =
        0.25 + (std::sqrt(3.0) / std::sqrt(2.0) - 0.25 * rho1_seg1) / rho1_seg2;
    CHECK(result.barcode.bars[0].death == doctest::Approx(expected).epsilon(1e-12));
    CHECK(result.origins[0].death_segment[0] == 2);
}

TEST_CASE("zero-radius mode contributes nothing but the trivial factor") {
    const auto result = emph::ray_barcode(make_radii({0.0, 1.0}), {1.0, 1.0}, 1);
    REQUIRE(result.barcode.size() == 1);
    CHECK(result.origins[0].composition == std::vector<int>{0, 1});
}

TEST_CASE("direction validation") {
    const auto radii = make_radii({1.0, 1.0});
    CHECK_THROWS_AS((void)emph::ray_barcode(radii, {1.0, 0.0}, 1), emph::domain_error);
    CHECK_THROWS_AS((void)emph::ray_barcode(radii, {1.0, -2.0}, 1), emph::domain_error);
    CHECK_THROWS_AS((void)emph::ray_barcode(radii, {1.0}, 1), emph::input_error);
    CHECK_THROWS_AS((void)emph::ray_barcode(radii, {1.0, 1.0}, -1), emph::input_error);

    emph::FiltrationCurve no_horizon;
    no_horizon.directions = {{1.0, 1.0}, {1.0, 2.0}};
    no_horizon.Q = 0.0;
    CHECK_THROWS_AS((void)emph::curve_barcode(radii, no_horizon, 1), emph::input_error);
}

TEST_CASE("refinement: a linear curve is exact at every segment count") {
    std::vector<std::vector<double>> samples;
    for (int i = 0; i <= 40; ++i) {
        const double t = i / 40.0 * 3.0;
        samples.push_back({t, 2.0 * t});
    }
    const auto report =
        emph::refine_check(make_radii({1.0, 0.5}), samples, {1, 2, 4}, 1);
    for (double err : report.max_errors) CHECK(err <= 1e-12);
}

TEST_CASE("refinement: errors decrease on a curved monotone path") {
    std::vector<std::vector<double>> samples;
    for (int i = 0; i <= 400; ++i) {
        const double t = i / 400.0 * 2.0;
        samples.push_back({t, t * t + 0.5 * t});
    }
    const auto report =
        emph::refine_check(make_radii({1.0, 0.6}), samples, {2, 4, 8, 16}, 1);
    REQUIRE(report.max_errors.size() == 4);
    CHECK(report.max_errors[0] > 0.0);
    for (std::size_t i = 1; i < report.max_errors.size(); ++i) {
        CHECK(report.max_errors[i] < report.max_errors[i - 1]);
    }
    CHECK(report.limit.size() == 2);
}

TEST_CASE("refinement input validation") {
    CHECK_THROWS_AS(
        (void)emph::refine_check(make_radii({1.0}), {{0.0}}, {2}, 1),
        emph::input_error);
    CHECK_THROWS_AS(
        (void)emph::refine_check(make_radii({1.0}), {{0.0}, {1.0}, {0.5}}, {2}, 1),
        emph::input_error);
    CHECK_THROWS_AS(
        (void)emph::refine_check(make_radii({1.0}), {{1.0}, {2.0}}, {2}, 1),
        emph::input_error);
}

} // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <random>

#include "openslice/classical.hpp"
#include "openslice/errors.hpp"
#include "openslice/random.hpp"

using namespace openslice;
using classical::BouncerParams;
using classical::LiouvilleSupport;
using classical::MeasurementRecord;
using classical::SupportPoint;
using spacetime::SpacelikeSlice;

namespace {

/// m = 3, p = 4, k = 4, kicks at A = (0,-1) and B = (0,+1): E- = 3, E0 = 5,
/// E+ = sqrt(73).
BouncerParams worked_params(double k = 4.0) {
    return {3.0, 4.0, k, 1.0, -1.0, 1.0, {0.0, -1.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};
}

const SpacelikeSlice kAliceSlice{-0.5, 0.0}; // kick 1 past, kick 2 ahead
const SpacelikeSlice kBobSlice{0.5, 0.0};    // kick 2 past, kick 1 ahead

LiouvilleSupport expected(std::vector<SupportPoint> points) {
    return LiouvilleSupport::from_points(std::move(points));
}

} // namespace

TEST_CASE("rest energy of the worked masses") {
    CHECK(classical::rest_energy(worked_params()) == doctest::Approx(5.0).epsilon(1e-15));
    BouncerParams at_rest = worked_params();
    at_rest.p = 0.0;
    at_rest.m = 1.0;
    CHECK(classical::rest_energy(at_rest) == doctest::Approx(1.0).epsilon(1e-15));
    // brute-force arithmetic oracle
    CHECK(std::abs(classical::rest_energy(worked_params()) - std::sqrt(9.0 + 16.0)) <= 1e-15);
    BouncerParams bad = worked_params();
    bad.m = 0.0;
    CHECK_THROWS_AS(classical::rest_energy(bad), std::invalid_argument);
}

TEST_CASE("kicked energies") {
    const BouncerParams params = worked_params();
    CHECK(classical::kicked_energy(params, -1) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(classical::kicked_energy(params, +1) ==
          doctest::Approx(std::sqrt(73.0)).epsilon(1e-15));
    const BouncerParams no_kick = worked_params(0.0);
    CHECK(classical::kicked_energy(no_kick, +1) == classical::rest_energy(no_kick));
    CHECK(classical::kicked_energy(no_kick, -1) == classical::rest_energy(no_kick));
    BouncerParams bad = params;
    bad.m = -1.0;
    CHECK_THROWS_AS(classical::kicked_energy(bad, +1), std::invalid_argument);
    CHECK_THROWS_AS(classical::kicked_energy(params, 0), std::invalid_argument);
}

TEST_CASE("support before both kicks is one certain point") {
    const auto support = classical::support_on_slice(worked_params(), {-0.5, -1.0}, {});
    CHECK(classical::supports_equal(support, expected({{5.0, 5.0, 1.0}}), 1e-12));
}

TEST_CASE("support on Alice's t = 0 slice has the two points of the energy-plane figure") {
    const auto support = classical::support_on_slice(worked_params(), kAliceSlice, {});
    CHECK(classical::supports_equal(
        support, expected({{std::sqrt(73.0), 5.0, 0.5}, {3.0, 5.0, 0.5}}), 1e-12));
}

TEST_CASE("support on Bob's t = 0 slice mirrors Alice's") {
    const auto support = classical::support_on_slice(worked_params(), kBobSlice, {});
    CHECK(classical::supports_equal(
        support, expected({{5.0, std::sqrt(73.0), 0.5}, {5.0, 3.0, 0.5}}), 1e-12));
}

TEST_CASE("support after both kicks has four uniform points") {
    const auto support = classical::support_on_slice(worked_params(), {-0.5, 1.0}, {});
    const double ep = std::sqrt(73.0);
    CHECK(classical::supports_equal(support,
                                    expected({{ep, ep, 0.25},
                                              {ep, 3.0, 0.25},
                                              {3.0, ep, 0.25},
                                              {3.0, 3.0, 0.25}}),
                                    1e-12));
}

TEST_CASE("a record for an unkicked particle is inconsistent") {
    MeasurementRecord record;
    record.particle_2 = +1; // kick 2 is not before Alice's slice
    CHECK_THROWS_AS(classical::support_on_slice(worked_params(), kAliceSlice, record),
                    InconsistentRecordError);
}

TEST_CASE("a measured kicked particle contributes a single energy") {
    MeasurementRecord record;
    record.particle_1 = +1;
    const auto support = classical::support_on_slice(worked_params(), kAliceSlice, record);
    CHECK(classical::supports_equal(support, expected({{std::sqrt(73.0), 5.0, 1.0}}), 1e-12));
}

TEST_CASE("collapse keeps matching points and renormalizes") {
    const auto two_points = classical::support_on_slice(worked_params(), kAliceSlice, {});
    const auto collapsed = classical::collapse(two_points, 1, std::sqrt(73.0));
    CHECK(classical::supports_equal(collapsed, expected({{std::sqrt(73.0), 5.0, 1.0}}), 1e-12));
    // idempotent on certainty
    const auto again = classical::collapse(collapsed, 1, std::sqrt(73.0));
    CHECK(classical::supports_equal(again, collapsed, 1e-12));

    const auto four_points = classical::support_on_slice(worked_params(), {-0.5, 1.0}, {});
    const auto half = classical::collapse(four_points, 2, 3.0);
    CHECK(classical::supports_equal(
        half, expected({{std::sqrt(73.0), 3.0, 0.5}, {3.0, 3.0, 0.5}}), 1e-12));

    CHECK_THROWS_AS(classical::collapse(two_points, 1, 100.0), ImpossibleOutcomeError);
    CHECK_THROWS_AS(classical::collapse(two_points, 3, 5.0), std::invalid_argument);
}

TEST_CASE("degenerate kicks merge the energy points") {
    // k = 0: E+ = E- = E0, the kicked particle still occupies a single point.
    const auto zero_kick = classical::support_on_slice(worked_params(0.0), kAliceSlice, {});
    CHECK(zero_kick.size() == 1);
    CHECK(classical::supports_equal(zero_kick, expected({{5.0, 5.0, 1.0}}), 1e-12));
    // p = 0: no bouncing momentum, both signs give the same kicked energy.
    BouncerParams static_masses = worked_params();
    static_masses.p = 0.0;
    const auto support = classical::support_on_slice(static_masses, kAliceSlice, {});
    CHECK(support.size() == 1);
    CHECK(support.points()[0].e1 == doctest::Approx(5.0)); // sqrt(9 + 16)
}

TEST_CASE("support cardinality follows the 1/2/4 rule over random slices") {
    const BouncerParams params = worked_params();
    auto engine = rng::make_engine(11, "classical-cardinality");
    for (int i = 0; i < 2000; ++i) {
        const SpacelikeSlice slice{rng::uniform(engine, -3.0, 3.0),
                                   rng::uniform(engine, -3.0, 3.0)};
        const int kicked = (spacetime::before_slice(slice, params.kick_event_1) ? 1 : 0) +
                           (spacetime::before_slice(slice, params.kick_event_2) ? 1 : 0);
        const auto support = classical::support_on_slice(params, slice, {});
        CHECK(support.size() == (1u << kicked));
        const double uniform_weight = 1.0 / static_cast<double>(1u << kicked);
        double total = 0.0;
        for (const SupportPoint& p : support.points()) {
            CHECK(std::abs(p.weight - uniform_weight) <= 1e-12);
            total += p.weight;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("weights stay normalized through support and collapse sequences") {
    const BouncerParams params = worked_params();
    auto engine = rng::make_engine(12, "classical-normalized");
    for (int i = 0; i < 500; ++i) {
        const SpacelikeSlice slice{rng::uniform(engine, -3.0, 3.0),
                                   rng::uniform(engine, -3.0, 3.0)};
        LiouvilleSupport support = classical::support_on_slice(params, slice, {});
        CHECK(std::abs(support.total_weight() - 1.0) <= 1e-12);
        // collapse on a random particle to a random admissible energy
        for (int particle : {1, 2}) {
            const auto& points = support.points();
            const std::size_t pick =
                static_cast<std::size_t>(rng::uniform01(engine) * static_cast<double>(points.size()));
            const SupportPoint& target = points[std::min(pick, points.size() - 1)];
            support = classical::collapse(support, particle,
                                          particle == 1 ? target.e1 : target.e2);
            CHECK(std::abs(support.total_weight() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("kicked energies bracket correctly: E+ >= E- iff k, p nonnegative") {
    auto engine = rng::make_engine(13, "classical-order");
    for (int i = 0; i < 2000; ++i) {
        BouncerParams params = worked_params();
        params.m = rng::uniform(engine, 0.1, 5.0);
        params.p = rng::uniform01(engine) < 0.1 ? 0.0 : rng::uniform(engine, 0.0, 5.0);
        params.k = rng::uniform01(engine) < 0.1 ? 0.0 : rng::uniform(engine, 0.0, 5.0);
        const double e_plus = classical::kicked_energy(params, +1);
        const double e_minus = classical::kicked_energy(params, -1);
        CHECK(e_plus >= e_minus - 1e-15);
        if (params.k * params.p == 0.0) {
            CHECK(e_plus == doctest::Approx(e_minus).epsilon(1e-15));
        } else {
            CHECK(e_plus > e_minus);
        }
    }
}

TEST_CASE("E1 marginal after kick 1 is half/half in every frame") {
    const BouncerParams params = worked_params();
    const double e_plus = classical::kicked_energy(params, +1);
    const double e_minus = classical::kicked_energy(params, -1);
    for (int step = 0; step <= 60; ++step) {
        const double chi = -3.0 + 0.1 * step;
        // place the slice strictly after kick 1 in this frame
        const double tau = spacetime::slice_time({chi, 0.0}, params.kick_event_1) + 0.5;
        const auto support = classical::support_on_slice(params, {chi, tau}, {});
        const auto marginal = support.marginal(1);
        REQUIRE(marginal.size() == 2);
        CHECK(std::abs(marginal[0].first - e_minus) <= 1e-12);
        CHECK(std::abs(marginal[0].second - 0.5) <= 1e-12);
        CHECK(std::abs(marginal[1].first - e_plus) <= 1e-12);
        CHECK(std::abs(marginal[1].second - 0.5) <= 1e-12);
    }
}

TEST_CASE("pre-kick trajectory is the triangle wave") {
    BouncerParams params = worked_params();
    params.kick_event_1.t = 100.0; // kick far in the future of the sampled times
    const double v = 4.0 / 5.0;
    const double l = params.segment_half_length;
    CHECK(classical::bouncer_position(params, 1, 0.0) == doctest::Approx(-1.0));
    CHECK(classical::bouncer_position(params, 1, l / v) == doctest::Approx(-1.0 + l));
    CHECK(classical::bouncer_position(params, 1, 2.0 * l / v) == doctest::Approx(-1.0));
    CHECK(classical::bouncer_position(params, 1, 3.0 * l / v) == doctest::Approx(-1.0 - l));
    CHECK(classical::bouncer_position(params, 1, 4.0 * l / v) == doctest::Approx(-1.0));
    // negative times follow the same periodic extension
    CHECK(classical::bouncer_position(params, 1, -4.0 * l / v) == doctest::Approx(-1.0));
    CHECK(classical::bouncer_position(params, 1, -l / v) == doctest::Approx(-1.0 - l));
}

TEST_CASE("post-kick positions are out of model") {
    const BouncerParams params = worked_params(); // kicks at t = 0
    CHECK_THROWS_AS(classical::bouncer_position(params, 1, 0.0), OutOfModelError);
    CHECK_THROWS_AS(classical::bouncer_position(params, 2, 5.0), OutOfModelError);
    CHECK_NOTHROW(classical::bouncer_position(params, 1, -0.25));
}

TEST_CASE("a momentumless bouncer stays at its segment center") {
    BouncerParams params = worked_params();
    params.p = 0.0;
    params.kick_event_2.t = 10.0;
    CHECK(classical::bouncer_position(params, 2, 3.0) == doctest::Approx(1.0));
}

TEST_CASE("boosted-frame energies split the unkicked particle's point") {
    const BouncerParams params = worked_params();
    const double chi = kAliceSlice.chi;
    const auto boosted = classical::boosted_support_on_slice(params, kAliceSlice, {});
    // kicked particle: E(+-) cosh(chi) - (k +- p) sinh(chi); unkicked: E0 cosh -+ p sinh.
    const double ch = std::cosh(chi);
    const double sh = std::sinh(chi);
    const double e2_fast = 5.0 * ch - 4.0 * sh;
    const double e2_slow = 5.0 * ch + 4.0 * sh;
    CHECK(boosted.size() == 4);
    double weight_sum = 0.0;
    for (const SupportPoint& p : boosted.points()) {
        CHECK((std::abs(p.e2 - e2_fast) <= 1e-12 || std::abs(p.e2 - e2_slow) <= 1e-12));
        weight_sum += p.weight;
    }
    CHECK(std::abs(weight_sum - 1.0) <= 1e-12);
    // chi = 0 reduces to the magician-frame support
    const auto unboosted = classical::boosted_support_on_slice(params, {0.0, 0.5}, {});
    CHECK(classical::supports_equal(unboosted,
                                    classical::support_on_slice(params, {0.0, 0.5}, {}), 1e-12));
}

TEST_CASE("parameter validation") {
    BouncerParams params = worked_params();
    params.segment_half_length = 0.0;
    CHECK_THROWS_AS(classical::validate(params), std::invalid_argument);
    params = worked_params();
    params.p = -1.0;
    CHECK_THROWS_AS(classical::validate(params), std::invalid_argument);
    CHECK_NOTHROW(classical::validate(worked_params()));
}

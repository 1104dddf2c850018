#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "wpcn/channel.hpp"
#include "wpcn/error.hpp"

using namespace wpcn;

TEST_CASE("draw_gains matches the unit-mean exponential law") {
    RngStream rng(7);
    const auto g = draw_gains(rng, 1'000'000);
    double sum = 0.0;
    std::size_t below = 0;
    for (double x : g) {
        CHECK_GE(x, 0.0);
        sum += x;
        below += x <= 0.3;
    }
    CHECK(sum / g.size() == doctest::Approx(1.0).epsilon(0.01));
    const double cdf = static_cast<double>(below) / g.size();
    CHECK(std::fabs(cdf - (1.0 - std::exp(-0.3))) < 0.005);
}

TEST_CASE("draw_gains is deterministic per seed") {
    RngStream a(123), b(123), c(124);
    const auto x = draw_gains(a, 64);
    CHECK(x == draw_gains(b, 64));
    CHECK(x != draw_gains(c, 64));
    RngStream d(1);
    CHECK(draw_gains(d, 0).empty());
}

TEST_CASE("derived seeds differ across points and replications") {
    const auto s00 = RngStream::derive_seed(5, 0, 0);
    CHECK(s00 == RngStream::derive_seed(5, 0, 0));
    CHECK(s00 != RngStream::derive_seed(5, 1, 0));
    CHECK(s00 != RngStream::derive_seed(5, 0, 1));
    CHECK(s00 != RngStream::derive_seed(6, 0, 0));
}

TEST_CASE("link_rate") {
    CHECK(link_rate(0, 10, 1) == 0.0);
    CHECK(link_rate(1, 10, 1) == doctest::Approx(0.5 * std::log2(11.0)).epsilon(1e-12));
    CHECK(link_rate(1, 10, 1) == doctest::Approx(1.72971).epsilon(1e-5));
    CHECK(link_rate(0.3, 10, 1) == 1.0);
}

TEST_CASE("harvested_energy") {
    CHECK(harvested_energy(0.7, 10, 0.1, 1) == doctest::Approx(0.7));
    CHECK(harvested_energy(3.2, 10, 0.0, 1) == 0.0);
    CHECK(harvested_energy(1, 10, 0.7, 1) == doctest::Approx(7.0));
    CHECK(harvested_energy(1, 10, 0.7, 2) == doctest::Approx(14.0));
}

TEST_CASE("required_forward_power") {
    CHECK(required_forward_power(1, 1, 1) == doctest::Approx(3.0));
    CHECK(required_forward_power(0.5, 1, 1) == doctest::Approx(6.0));
    CHECK(required_forward_power(0.37, 0, 1) == 0.0);
    CHECK(required_forward_power(0, 1, 1) == std::numeric_limits<double>::infinity());
}

TEST_CASE("rate and required power invert each other") {
    std::mt19937_64 gen(99);
    std::exponential_distribution<double> gain(1.0);
    std::uniform_real_distribution<double> r(0.01, 4.0), noise(0.1, 5.0);
    for (int k = 0; k < 10'000; ++k) {
        const double g = gain(gen), target = r(gen), n0 = noise(gen);
        if (g == 0) continue;
        const double back = link_rate(g, required_forward_power(g, target, n0), n0);
        REQUIRE(std::fabs(back - target) <= 1e-12 * target);
    }
}

TEST_CASE("link_rate is monotone and harvest is linear") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int k = 0; k < 1000; ++k) {
        const double g1 = u(gen), g2 = g1 + u(gen), p1 = 0.1 + u(gen), p2 = p1 + u(gen);
        CHECK(link_rate(g1, p1, 1.0) <= link_rate(g2, p1, 1.0));
        CHECK(link_rate(g1, p1, 1.0) <= link_rate(g1, p2, 1.0));
        CHECK(harvested_energy(g1 + g2, p1, 0.3, 1) ==
              doctest::Approx(harvested_energy(g1, p1, 0.3, 1) + harvested_energy(g2, p1, 0.3, 1)));
        CHECK(harvested_energy(g1, 2 * p1, 0.3, 1) == doctest::Approx(2 * harvested_energy(g1, p1, 0.3, 1)));
    }
}

TEST_CASE("dBW conversion is exact at the decades") {
    CHECK(dbw_to_watts(10.0) == 10.0);
    CHECK(dbw_to_watts(0.0) == 1.0);
    CHECK(dbw_to_watts(20.0) == 100.0);
}

TEST_CASE("path loss vanishes at unit distance") {
    SystemParams p;
    CHECK(path_loss_factor(p) == 1.0);
    p.distance = 2.0;
    p.path_loss_exp = 2.0;
    CHECK(path_loss_factor(p) == doctest::Approx(0.25));

    RngStream a(11), b(11);
    SlotDraw near, far;
    SystemParams unit;
    draw_slot(a, unit, near);
    draw_slot(b, p, far);
    for (std::size_t i = 0; i < unit.n_relays; ++i) {
        CHECK(far.gain_sr[i] == doctest::Approx(0.25 * near.gain_sr[i]));
        CHECK(far.gain_rd[i] == doctest::Approx(0.25 * near.gain_rd[i]));
    }
}

TEST_CASE("validate rejects out-of-range parameters") {
    SystemParams ok;
    CHECK_NOTHROW(validate(ok));

    auto rejects = [&](auto mutate) {
        SystemParams p;
        mutate(p);
        CHECK_THROWS_AS(validate(p), ConfigError);
    };
    rejects([](SystemParams& p) { p.n_relays = 0; });
    rejects([](SystemParams& p) { p.source_power = 0; });
    rejects([](SystemParams& p) { p.noise_power = -1; });
    rejects([](SystemParams& p) { p.fixed_relay_power = 0; });
    rejects([](SystemParams& p) { p.harvest_efficiency = 1.5; });
    rejects([](SystemParams& p) { p.harvest_efficiency = -0.1; });
    rejects([](SystemParams& p) { p.rate_target = -1; });
    rejects([](SystemParams& p) { p.slot_duration = 0; });
    rejects([](SystemParams& p) { p.decode_set_cap = 0; });
    rejects([](SystemParams& p) { p.decode_set_cap = p.n_relays + 1; });
}

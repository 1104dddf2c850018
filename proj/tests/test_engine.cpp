#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wpcn/analytic.hpp"
#include "wpcn/engine.hpp"
#include "wpcn/error.hpp"

using namespace wpcn;

namespace {

SystemParams paper_params(double eta, std::size_t n = 10, double rate = 1.0, std::size_t m = 1) {
    SystemParams p;
    p.n_relays = n;
    p.decode_set_cap = m;
    p.harvest_efficiency = eta;
    p.rate_target = rate;
    return p;
}

}  // namespace

TEST_CASE("zero harvesting efficiency means every packet is lost") {
    for (PolicyId id : kAllPolicies) {
        const auto r = simulate(paper_params(0.0, 10, 1.0, 3), id, 10'000, 1);
        CHECK(r.outage_prob == 1.0);
        CHECK(r.ledger.harvested == 0.0L);
        CHECK(r.ledger.spent == 0.0L);
        CHECK(r.cause_second_hop == 0);
    }
}

TEST_CASE("srs-ncsi with ample energy sits on the grid-powered floor") {
    const auto r = simulate(paper_params(0.7), PolicyId::SrsNcsi, 1'000'000, 42);
    const double floor = grid_powered_outage(1.0, 10, 10, 1, 9).n_relay_floor;
    CHECK(std::fabs(r.outage_prob - floor) < 0.003);
    CHECK(r.cause_energy < r.packets / 1000);
}

TEST_CASE("simulate is bit-reproducible") {
    for (PolicyId id : kAllPolicies) {
        const auto a = simulate(paper_params(0.1, 6, 1.5, 2), id, 20'000, 9);
        const auto b = simulate(paper_params(0.1, 6, 1.5, 2), id, 20'000, 9);
        CHECK(a.outages == b.outages);
        CHECK(a.cause_first_hop == b.cause_first_hop);
        CHECK(a.cause_energy == b.cause_energy);
        CHECK(a.cause_second_hop == b.cause_second_hop);
        CHECK(a.mean_battery == b.mean_battery);
        CHECK(a.ledger.final_stored == b.ledger.final_stored);
    }
}

TEST_CASE("configuration errors surface before simulation") {
    CHECK_THROWS_AS(simulate(paper_params(0.1), PolicyId::SrsNcsi, 0, 1), ConfigError);
    CHECK_THROWS_AS(simulate(paper_params(1.2), PolicyId::SrsNcsi, 10, 1), ConfigError);
    CHECK_THROWS_AS(simulate(paper_params(0.1, 3, 1.0, 4), PolicyId::MrsAcsi, 10, 1), ConfigError);
}

TEST_CASE("result accounting is consistent") {
    for (PolicyId id : kAllPolicies) {
        const auto r = simulate(paper_params(0.1, 8, 1.25, 3), id, 50'000, 3);
        CHECK(r.outages == r.cause_first_hop + r.cause_energy + r.cause_second_hop);
        // Every slot originates a packet; only the final pending one may be
        // left unresolved.
        CHECK(r.packets >= r.slots - 1);
        CHECK(r.packets <= r.slots);
        CHECK(r.outage_prob >= 0.0);
        CHECK(r.outage_prob <= 1.0);
        CHECK(r.ledger.imbalance() < 1e-6);
        CHECK(r.ledger.min_battery >= 0.0);
        if (!uses_csit(id)) CHECK(r.cause_second_hop > 0);
        if (uses_csit(id)) CHECK(r.cause_second_hop == 0);
    }
}

TEST_CASE("warmup drops the earliest packets from the counts") {
    const auto all = simulate(paper_params(0.1), PolicyId::SrsNcsi, 10'000, 4);
    SimOptions opt;
    opt.warmup = 1000;
    const auto later = simulate(paper_params(0.1), PolicyId::SrsNcsi, 10'000, 4, opt);
    CHECK(later.packets == all.packets - 1000);
    CHECK(later.outages <= all.outages);
}

TEST_CASE("pipeline, availability and battery invariants hold slot by slot") {
    for (PolicyId id : kAllPolicies) {
        const auto p = paper_params(0.3, 5, 1.0, 2);
        Trace trace;
        SimOptions opt;
        opt.trace = &trace;
        simulate(p, id, 5'000, 17, opt);
        REQUIRE(trace.size() == 5'000);
        for (std::size_t t = 0; t < trace.size(); ++t) {
            const auto& r = trace[t];
            for (double b : r.battery) REQUIRE(b >= 0.0);
            if (r.forwarder) {
                const auto f = *r.forwarder;
                REQUIRE(std::find(r.decode_set.begin(), r.decode_set.end(), f) == r.decode_set.end());
                REQUIRE(r.harvested[f] == 0.0);
            }
            for (RelayIndex i : r.decode_set) REQUIRE(r.harvested[i] == 0.0);
            // Exactly one of: a pending forward for t+1, or an immediate drop.
            REQUIRE(r.decode_set.empty() == r.dropped_outcome.has_value());
            if (t + 1 < trace.size()) {
                REQUIRE(trace[t + 1].forwarded_outcome.has_value() == !r.decode_set.empty());
                if (trace[t + 1].forwarder) {
                    const auto f = *trace[t + 1].forwarder;
                    REQUIRE(std::find(r.decode_set.begin(), r.decode_set.end(), f) != r.decode_set.end());
                }
            }
        }
        CHECK_NOTHROW(audit_energy(trace, p.n_relays));
    }
}

TEST_CASE("energy audit") {
    const auto p = paper_params(0.2, 4, 1.0, 2);
    Trace trace;
    SimOptions opt;
    opt.trace = &trace;
    const auto result = simulate(p, PolicyId::MrsAcsi, 2'000, 8, opt);

    SUBCASE("a completed run balances") {
        const auto report = audit_energy(trace, p.n_relays);
        CHECK(report.slots == 2'000);
        CHECK(report.min_battery >= 0.0);
        CHECK(static_cast<double>(report.harvested) == doctest::Approx(static_cast<double>(result.ledger.harvested)));
        CHECK(static_cast<double>(report.spent) == doctest::Approx(static_cast<double>(result.ledger.spent)));
        CHECK(result.ledger.imbalance() < 1e-6);
    }

    SUBCASE("an injected double spend is caught at its slot") {
        auto it = std::find_if(trace.begin() + 500, trace.end(),
                               [](const SlotRecord& r) { return r.forwarder && r.energy_spent > 0; });
        REQUIRE(it != trace.end());
        const auto slot = it->slot;
        it->energy_spent *= 2.0;
        try {
            audit_energy(trace, p.n_relays);
            FAIL("audit accepted a double spend");
        } catch (const EnergyAuditError& e) {
            CHECK(e.slot() == slot);
        }
    }

    SUBCASE("a zero-efficiency run neither harvests nor spends") {
        Trace dry;
        SimOptions o;
        o.trace = &dry;
        simulate(paper_params(0.0, 4, 1.0, 2), PolicyId::MrsAcsi, 1'000, 8, o);
        const auto report = audit_energy(dry, 4);
        CHECK(report.harvested == 0.0L);
        CHECK(report.spent == 0.0L);
    }
}

TEST_CASE("zero rate with CSIT policies loses only first-hop packets") {
    for (PolicyId id : {PolicyId::SrsBestEnergyCsit, PolicyId::SrsBestDecodingCsit, PolicyId::MrsAcsi,
                        PolicyId::MrsBestEnergy}) {
        for (std::size_t n : {1, 3}) {
            const auto r = simulate(paper_params(0.1, n, 0.0, 1), id, 20'000, 5);
            CHECK(r.cause_energy == 0);
            CHECK(r.cause_second_hop == 0);
            CHECK(r.outages == r.cause_first_hop);
        }
    }
    // A lone relay is busy forwarding every other slot.
    const auto lone = simulate(paper_params(0.1, 1, 0.0, 1), PolicyId::MrsAcsi, 20'000, 5);
    CHECK(lone.outage_prob == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("outage trends in efficiency, relay count and rate") {
    constexpr std::uint64_t slots = 200'000;
    for (PolicyId id : {PolicyId::SrsNcsi, PolicyId::MrsAcsi}) {
        auto out = [&](double eta, std::size_t n, double rate) {
            return simulate(paper_params(eta, n, rate, std::min<std::size_t>(2, n)), id, slots, 21);
        };
        auto no_worse = [](const SimResult& better, const SimResult& worse) {
            return better.outage_prob <= worse.outage_prob + better.ci95_halfwidth + worse.ci95_halfwidth;
        };
        CHECK(no_worse(out(0.4, 6, 1.5), out(0.1, 6, 1.5)));
        CHECK(no_worse(out(0.7, 6, 1.5), out(0.4, 6, 1.5)));
        CHECK(no_worse(out(0.1, 6, 1.5), out(0.1, 3, 1.5)));
        CHECK(no_worse(out(0.1, 9, 1.5), out(0.1, 6, 1.5)));
        CHECK(no_worse(out(0.1, 6, 1.0), out(0.1, 6, 1.5)));
        CHECK(no_worse(out(0.1, 6, 1.5), out(0.1, 6, 2.0)));
    }
}

TEST_CASE("trace lines are self-contained JSON objects") {
    Trace trace;
    SimOptions opt;
    opt.trace = &trace;
    simulate(paper_params(0.5, 3, 1.0, 2), PolicyId::MrsAcsi, 50, 2, opt);
    std::ostringstream os;
    write_trace_jsonl(os, trace);
    std::istringstream is(os.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(is, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.at("slot").get<std::size_t>() == n);
        CHECK(j.at("harvested").size() == 3);
        CHECK(j.contains("forwarder"));
        CHECK(j.contains("forwarded_outcome"));
        ++n;
    }
    CHECK(n == 50);
}

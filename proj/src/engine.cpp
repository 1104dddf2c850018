#include "wpcn/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"

#include "wpcn/error.hpp"

namespace wpcn {

namespace {

struct PendingForward {
    std::vector<RelayIndex> decode_set;
    std::uint64_t origin_slot = 0;
};

class OutageCounter {
public:
    OutageCounter(SimResult& result, std::uint64_t warmup) : result_(result), warmup_(warmup) {}

    void record(std::uint64_t origin_slot, OutageCause cause) {
        if (origin_slot < warmup_) return;
        ++result_.packets;
        switch (cause) {
            case OutageCause::None:
                return;
            case OutageCause::FirstHop:
                ++result_.cause_first_hop;
                break;
            case OutageCause::Energy:
                ++result_.cause_energy;
                break;
            case OutageCause::SecondHop:
                ++result_.cause_second_hop;
                break;
        }
        ++result_.outages;
    }

private:
    SimResult& result_;
    std::uint64_t warmup_;
};

OutageCause forward_cause(const ForwardDecision& f) {
    if (!f.relay) return OutageCause::Energy;
    return f.success ? OutageCause::None : OutageCause::SecondHop;
}

}  // namespace

double EnergyLedger::imbalance() const {
    const long double scale = std::max(harvested, 1.0L);
    return static_cast<double>(std::fabs(harvested - spent - final_stored) / scale);
}

double binomial_ci95(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return 0.0;
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

SimResult simulate(const SystemParams& params, PolicyId policy, std::uint64_t slots, std::uint64_t seed,
                   const SimOptions& options) {
    validate(params);
    if (slots < 1) throw ConfigError("slots must be at least 1");

    const std::size_t n = params.n_relays;
    SimResult result;
    result.slots = slots;
    result.seed = seed;
    OutageCounter counter(result, options.warmup);

    RngStream rng(seed);
    SlotDraw draw;
    std::vector<RelayState> states(n);
    std::optional<PendingForward> pending;
    std::vector<double> harvested_now(n);
    long double battery_time_sum = 0.0L;
    double min_battery = 0.0;

    if (options.trace) {
        options.trace->clear();
        options.trace->reserve(slots);
    }

    for (std::uint64_t t = 0; t < slots; ++t) {
        draw_slot(rng, params, draw);
        for (auto& s : states) s.available = true;
        std::fill(harvested_now.begin(), harvested_now.end(), 0.0);

        SlotRecord record;
        record.slot = t;

        if (pending) {
            const ForwardDecision f = decide_forwarder(policy, pending->decode_set, draw.gain_rd, states, params);
            if (f.relay) {
                RelayState& relay = states[*f.relay];
                relay.stored_energy -= f.energy_spent;
                relay.available = false;
                result.ledger.spent += f.energy_spent;
                min_battery = std::min(min_battery, relay.stored_energy);
            }
            const OutageCause cause = forward_cause(f);
            counter.record(pending->origin_slot, cause);
            record.forwarder = f.relay;
            record.transmit_power = f.transmit_power;
            record.energy_spent = f.energy_spent;
            record.forwarded_outcome = cause;
            pending.reset();
        }

        DecodeDecision d = decide_decoders(policy, draw.gain_sr, states, params);
        for (RelayIndex i : d.harvest_set) {
            const double e = harvested_energy(draw.gain_sr[i], params.source_power, params.harvest_efficiency,
                                              params.slot_duration);
            states[i].stored_energy += e;
            harvested_now[i] = e;
            result.ledger.harvested += e;
        }

        if (d.decode_set.empty()) {
            bool any_decoder = false;
            for (RelayIndex i = 0; i < n; ++i) {
                any_decoder = any_decoder || (states[i].available && can_decode(draw.gain_sr[i], params));
            }
            const OutageCause cause = any_decoder ? OutageCause::Energy : OutageCause::FirstHop;
            counter.record(t, cause);
            record.dropped_outcome = cause;
        } else {
            if (options.trace) record.decode_set = d.decode_set;
            pending = PendingForward{std::move(d.decode_set), t};
        }

        long double slot_sum = 0.0L;
        for (const auto& s : states) slot_sum += s.stored_energy;
        battery_time_sum += slot_sum / static_cast<long double>(n);

        if (options.trace) {
            record.harvested = harvested_now;
            record.battery.reserve(n);
            for (const auto& s : states) record.battery.push_back(s.stored_energy);
            options.trace->push_back(std::move(record));
        }
    }

    for (const auto& s : states) result.ledger.final_stored += s.stored_energy;
    result.ledger.min_battery = min_battery;
    result.mean_battery = static_cast<double>(battery_time_sum / static_cast<long double>(slots));
    if (result.packets > 0) {
        result.outage_prob = static_cast<double>(result.outages) / static_cast<double>(result.packets);
    }
    result.ci95_halfwidth = binomial_ci95(result.outages, result.packets);
    return result;
}

AuditReport audit_energy(const Trace& trace, std::size_t n_relays) {
    constexpr double kTolerance = 1e-6;
    AuditReport report;
    std::vector<long double> battery(n_relays, 0.0L);
    double min_battery = 0.0;

    for (const SlotRecord& r : trace) {
        if (r.harvested.size() != n_relays || r.battery.size() != n_relays) {
            throw EnergyAuditError(r.slot, "record does not cover every relay");
        }
        if (r.forwarder) {
            if (*r.forwarder >= n_relays) throw EnergyAuditError(r.slot, "forwarder index out of range");
            battery[*r.forwarder] -= r.energy_spent;
            report.spent += r.energy_spent;
            if (battery[*r.forwarder] < 0.0L) throw EnergyAuditError(r.slot, "battery went negative");
        } else if (r.energy_spent != 0.0) {
            throw EnergyAuditError(r.slot, "energy spent without a forwarder");
        }
        for (std::size_t i = 0; i < n_relays; ++i) {
            if (r.harvested[i] < 0.0) throw EnergyAuditError(r.slot, "negative harvest");
            battery[i] += r.harvested[i];
            report.harvested += r.harvested[i];
            if (r.battery[i] < 0.0) throw EnergyAuditError(r.slot, "battery went negative");
            const long double scale = std::max<long double>(std::fabs(battery[i]), 1.0L);
            if (std::fabs(battery[i] - r.battery[i]) > kTolerance * scale) {
                throw EnergyAuditError(r.slot, "replayed battery of relay " + std::to_string(i) +
                                                   " disagrees with the recorded level");
            }
            min_battery = std::min(min_battery, r.battery[i]);
        }
        ++report.slots;
    }

    for (long double b : battery) report.final_stored += b;
    report.min_battery = min_battery;
    const long double scale = std::max(report.harvested, 1.0L);
    if (std::fabs(report.harvested - report.spent - report.final_stored) > kTolerance * scale) {
        throw EnergyAuditError(trace.empty() ? 0 : trace.back().slot, "harvested - spent != stored");
    }
    return report;
}

std::string_view to_string(OutageCause cause) {
    switch (cause) {
        case OutageCause::None:
            return "delivered";
        case OutageCause::FirstHop:
            return "first-hop";
        case OutageCause::Energy:
            return "energy";
        case OutageCause::SecondHop:
            return "second-hop";
    }
    return "unknown";
}

void write_trace_jsonl(std::ostream& out, const Trace& trace) {
    for (const SlotRecord& r : trace) {
        nlohmann::json j;
        j["slot"] = r.slot;
        j["decode_set"] = r.decode_set;
        j["forwarder"] = r.forwarder ? nlohmann::json(*r.forwarder) : nlohmann::json(nullptr);
        j["power"] = r.transmit_power;
        j["energy_spent"] = r.energy_spent;
        j["harvested"] = r.harvested;
        j["battery"] = r.battery;
        j["forwarded_outcome"] =
            r.forwarded_outcome ? nlohmann::json(to_string(*r.forwarded_outcome)) : nlohmann::json(nullptr);
        j["dropped_outcome"] =
            r.dropped_outcome ? nlohmann::json(to_string(*r.dropped_outcome)) : nlohmann::json(nullptr);
        out << j.dump() << '\n';
    }
}

}  // namespace wpcn

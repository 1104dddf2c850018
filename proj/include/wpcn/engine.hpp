#pragma once

// Slot-by-slot simulation of the half-duplex relay pipeline. Slot t resolves
// the packet decoded at t-1, then the source broadcasts packet t: the decode
// set listens, every other available relay harvests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/policies.hpp"

namespace wpcn {

enum class OutageCause {
    None,
    FirstHop,   // no available relay could decode
    Energy,     // decoders existed but none could afford the transmission
    SecondHop,  // transmitted, but the relay-destination rate fell short
};

/// Running energy bookkeeping, kept for every run.
struct EnergyLedger {
    long double harvested = 0.0L;  // J, total credited
    long double spent = 0.0L;      // J, total debited
    long double final_stored = 0.0L;
    double min_battery = 0.0;      // smallest battery level ever observed

    /// |harvested - spent - final_stored| relative to max(harvested, 1 J).
    double imbalance() const;
};

struct SimResult {
    std::uint64_t slots = 0;    // slots simulated
    std::uint64_t packets = 0;  // packets resolved and counted
    std::uint64_t outages = 0;
    double outage_prob = 0.0;
    double ci95_halfwidth = 0.0;
    std::uint64_t cause_first_hop = 0;
    std::uint64_t cause_energy = 0;
    std::uint64_t cause_second_hop = 0;
    std::uint64_t seed = 0;
    double mean_battery = 0.0;  // J, time average over slots and relays
    EnergyLedger ledger;
};

/// One record per simulated slot.
struct SlotRecord {
    std::uint64_t slot = 0;
    std::vector<RelayIndex> decode_set;
    std::optional<RelayIndex> forwarder;
    double transmit_power = 0.0;
    double energy_spent = 0.0;
    std::vector<double> harvested;  // per relay, this slot
    std::vector<double> battery;    // per relay, end of slot
    // Packet from slot t-1, resolved by this slot's forward phase.
    std::optional<OutageCause> forwarded_outcome;
    // Packet from slot t, resolved immediately when no relay could take it.
    std::optional<OutageCause> dropped_outcome;
};

using Trace = std::vector<SlotRecord>;

struct SimOptions {
    std::uint64_t warmup = 0;  // packets originated before this slot are not counted
    Trace* trace = nullptr;    // optional per-slot recording
};

/// Runs `slots` slots with a fresh stream RngStream(seed). Validates params
/// and throws ConfigError before doing any work.
SimResult simulate(const SystemParams& params, PolicyId policy, std::uint64_t slots, std::uint64_t seed,
                   const SimOptions& options = {});

/// Normal-approximation 95% half-width of a binomial proportion.
double binomial_ci95(std::uint64_t successes, std::uint64_t trials);

struct AuditReport {
    std::uint64_t slots = 0;
    long double harvested = 0.0L;
    long double spent = 0.0L;
    long double final_stored = 0.0L;
    double min_battery = 0.0;
};

/// Replays a trace from empty batteries. Throws EnergyAuditError with the
/// first offending slot if a battery goes negative, a replayed battery
/// disagrees with the recorded one, or the totals do not balance to 1e-6
/// relative.
AuditReport audit_energy(const Trace& trace, std::size_t n_relays);

std::string_view to_string(OutageCause cause);

/// One JSON object per line.
void write_trace_jsonl(std::ostream& out, const Trace& trace);

}  // namespace wpcn

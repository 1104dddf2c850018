#pragma once

// Parameter sweeps over one scenario axis, and the exhaustive search for
// the decode-set cap M that minimises outage.
//
// Every (point, replication) pair runs on its own stream seeded with
// RngStream::derive_seed(base_seed, point, rep); all policies at the same
// point share those seeds, so policy comparisons see identical channels.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "wpcn/channel.hpp"
#include "wpcn/engine.hpp"
#include "wpcn/policies.hpp"

namespace wpcn {

enum class SweepAxis { RateTarget, NRelays, DecodeSetCap };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view text);

struct SweepSpec {
    SystemParams base_params;
    std::vector<PolicyId> policy_ids;
    SweepAxis axis = SweepAxis::RateTarget;
    std::vector<double> axis_values;  // strictly increasing
    std::uint64_t slots_per_point = 1'000'000;
    std::uint64_t base_seed = 1;
    std::size_t replications = 4;
    std::uint64_t warmup = 0;
    // Reuse point 0's seeds at every axis value (used by the M search so
    // that all candidate caps see the same channel realisations).
    bool common_seeds_across_axis = false;
};

struct CurvePoint {
    PolicyId policy = PolicyId::SrsNcsi;
    SweepAxis axis = SweepAxis::RateTarget;
    double axis_value = 0.0;
    std::size_t n_relays = 0;
    std::size_t decode_set_cap = 0;
    double eta = 0.0;
    double rate_target = 0.0;
    std::uint64_t slots = 0;  // per replication
    std::size_t replications = 0;
    double outage_prob = 0.0;
    double ci95 = 0.0;
    double cause_first_hop_frac = 0.0;
    double cause_energy_frac = 0.0;
    double cause_second_hop_frac = 0.0;
    std::uint64_t base_seed = 0;
    std::vector<std::uint64_t> replication_seeds;
};

/// Scenario for one axis value.
SystemParams params_at(const SweepSpec& spec, double axis_value);

/// Throws ConfigError for an empty or non-increasing axis, zero
/// replications, no policies, a decode_set_cap axis paired with a
/// single-relay policy, or any axis value producing invalid params.
void validate(const SweepSpec& spec);

/// OpenMP-parallel over (policy, point, replication). threads <= 0 uses the
/// OpenMP default. Output order is policy-major, then axis value, and is
/// bit-identical to run_sweep_serial for every thread count.
std::vector<CurvePoint> run_sweep(const SweepSpec& spec, int threads = 0);

/// Reference implementation: same jobs, one after another.
std::vector<CurvePoint> run_sweep_serial(const SweepSpec& spec);

/// Merges replication results of one (policy, point).
CurvePoint aggregate(const SweepSpec& spec, PolicyId policy, double axis_value,
                     std::span<const SimResult> replications);

struct MOptimum {
    std::size_t best_m = 0;
    double outage_prob = 0.0;
    double ci95 = 0.0;
    std::vector<CurvePoint> profile;  // one entry per candidate M
};

/// Exhaustive search over m_range (each in [1, N]). Candidates within one
/// CI half-width of the minimum count as ties and the smallest M wins.
MOptimum optimize_m(const SystemParams& params, std::span<const std::size_t> m_range, double rate_target,
                    std::uint64_t slots, std::uint64_t seed, PolicyId policy = PolicyId::MrsAcsi,
                    std::size_t replications = 1, int threads = 0);

}  // namespace wpcn

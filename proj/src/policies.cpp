#include "wpcn/policies.hpp"

#include <algorithm>
#include <string>

#include "wpcn/error.hpp"

namespace wpcn {

namespace {

struct PolicyName {
    PolicyId id;
    std::string_view name;
};

constexpr std::array<PolicyName, 7> kNames = {{
    {PolicyId::SrsNcsi, "srs-ncsi"},
    {PolicyId::SrsBestEnergy, "srs-best-energy"},
    {PolicyId::SrsBestDecoding, "srs-best-decoding"},
    {PolicyId::SrsBestEnergyCsit, "srs-best-energy-csit"},
    {PolicyId::SrsBestDecodingCsit, "srs-best-decoding-csit"},
    {PolicyId::MrsAcsi, "mrs-acsi"},
    {PolicyId::MrsBestEnergy, "mrs-best-energy"},
}};

bool has_fixed_power_energy(const RelayState& s, const SystemParams& p) {
    return s.stored_energy >= p.fixed_relay_power * p.slot_duration;
}

// Available relays outside the decode set harvest.
DecodeDecision with_harvesters(std::vector<RelayIndex> decode_set, std::span<const RelayState> states) {
    std::sort(decode_set.begin(), decode_set.end());
    DecodeDecision d;
    d.harvest_set.reserve(states.size());
    for (RelayIndex i = 0; i < states.size(); ++i) {
        if (states[i].available && !std::binary_search(decode_set.begin(), decode_set.end(), i)) {
            d.harvest_set.push_back(i);
        }
    }
    d.decode_set = std::move(decode_set);
    return d;
}

// Picks the eligible relay with the largest score; strict comparison keeps
// the lowest index on ties.
template <typename Eligible, typename Score>
DecodeDecision pick_single(std::span<const double> gains_sr, std::span<const RelayState> states,
                           const SystemParams& params, Eligible eligible, Score score) {
    std::optional<RelayIndex> best;
    double best_score = 0.0;
    for (RelayIndex i = 0; i < states.size(); ++i) {
        if (!states[i].available || !can_decode(gains_sr[i], params) || !eligible(i)) continue;
        const double s = score(i);
        if (!best || s > best_score) {
            best = i;
            best_score = s;
        }
    }
    std::vector<RelayIndex> set;
    if (best) set.push_back(*best);
    return with_harvesters(std::move(set), states);
}

// Up to M decoders ordered by `before`; ties resolved by index.
template <typename Before>
DecodeDecision pick_group(std::span<const double> gains_sr, std::span<const RelayState> states,
                          const SystemParams& params, Before before) {
    std::vector<RelayIndex> decoders;
    for (RelayIndex i = 0; i < states.size(); ++i) {
        if (states[i].available && can_decode(gains_sr[i], params)) decoders.push_back(i);
    }
    const std::size_t k = std::min(params.decode_set_cap, decoders.size());
    std::stable_sort(decoders.begin(), decoders.end(), before);
    decoders.resize(k);
    return with_harvesters(std::move(decoders), states);
}

// Shared by both CSIT forward rules: among energy-feasible members, keep the
// one with the largest score. Transmission at exactly P_id always succeeds.
template <typename Score>
ForwardDecision pick_csit_forwarder(std::span<const RelayIndex> decode_set, std::span<const double> gains_rd,
                                    std::span<const RelayState> states, const SystemParams& params,
                                    Score score) {
    ForwardDecision f;
    double best_score = 0.0;
    double best_power = 0.0;
    for (RelayIndex i : decode_set) {
        const double power = required_forward_power(gains_rd[i], params.rate_target, params.noise_power);
        if (!(states[i].stored_energy >= power * params.slot_duration)) continue;
        const double s = score(i, power);
        if (!f.relay || s > best_score || (s == best_score && i < *f.relay)) {
            f.relay = i;
            best_score = s;
            best_power = power;
        }
    }
    if (f.relay) {
        f.transmit_power = best_power;
        f.energy_spent = best_power * params.slot_duration;
        f.success = true;
    }
    return f;
}

}  // namespace

std::string_view to_string(PolicyId id) {
    for (const auto& n : kNames) {
        if (n.id == id) return n.name;
    }
    return "unknown";
}

PolicyId parse_policy(std::string_view text) {
    for (const auto& n : kNames) {
        if (n.name == text) return n.id;
    }
    throw ConfigError("unknown policy '" + std::string(text) + "'");
}

bool is_two_phase(PolicyId id) {
    return id == PolicyId::MrsAcsi || id == PolicyId::MrsBestEnergy;
}

bool uses_csit(PolicyId id) {
    switch (id) {
        case PolicyId::SrsNcsi:
        case PolicyId::SrsBestEnergy:
        case PolicyId::SrsBestDecoding:
            return false;
        default:
            return true;
    }
}

DecodeDecision srs_ncsi_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                               const SystemParams& params) {
    // argmin of the rate is argmax of the negated gain (rate is monotone).
    return pick_single(
        gains_sr, states, params, [&](RelayIndex i) { return has_fixed_power_energy(states[i], params); },
        [&](RelayIndex i) { return -gains_sr[i]; });
}

DecodeDecision srs_best_energy_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                                      const SystemParams& params) {
    const double cost = params.fixed_relay_power * params.slot_duration;
    return pick_single(
        gains_sr, states, params, [&](RelayIndex i) { return has_fixed_power_energy(states[i], params); },
        [&](RelayIndex i) { return states[i].stored_energy - cost; });
}

DecodeDecision srs_best_decoding_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                                        const SystemParams& params) {
    return pick_single(
        gains_sr, states, params, [&](RelayIndex i) { return has_fixed_power_energy(states[i], params); },
        [&](RelayIndex i) { return gains_sr[i]; });
}

DecodeDecision srs_best_energy_csit_decode(std::span<const double> gains_sr,
                                           std::span<const RelayState> states, const SystemParams& params) {
    return pick_single(
        gains_sr, states, params, [](RelayIndex) { return true; },
        [&](RelayIndex i) { return states[i].stored_energy; });
}

DecodeDecision srs_best_decoding_csit_decode(std::span<const double> gains_sr,
                                             std::span<const RelayState> states, const SystemParams& params) {
    return pick_single(
        gains_sr, states, params, [](RelayIndex) { return true; }, [&](RelayIndex i) { return gains_sr[i]; });
}

DecodeDecision mrs_acsi_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                               const SystemParams& params) {
    return pick_group(gains_sr, states, params,
                      [&](RelayIndex a, RelayIndex b) { return gains_sr[a] < gains_sr[b]; });
}

DecodeDecision mrs_best_energy_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                                      const SystemParams& params) {
    return pick_group(gains_sr, states, params, [&](RelayIndex a, RelayIndex b) {
        return states[a].stored_energy > states[b].stored_energy;
    });
}

ForwardDecision mrs_acsi_forward(std::span<const RelayIndex> decode_set, std::span<const double> gains_rd,
                                 std::span<const RelayState> states, const SystemParams& params) {
    return pick_csit_forwarder(decode_set, gains_rd, states, params,
                               [](RelayIndex, double power) { return -power; });
}

ForwardDecision mrs_best_energy_forward(std::span<const RelayIndex> decode_set,
                                        std::span<const double> gains_rd, std::span<const RelayState> states,
                                        const SystemParams& params) {
    return pick_csit_forwarder(decode_set, gains_rd, states, params, [&](RelayIndex i, double power) {
        return states[i].stored_energy - power * params.slot_duration;
    });
}

ForwardDecision fixed_power_forward(std::span<const RelayIndex> decode_set, std::span<const double> gains_rd,
                                    std::span<const RelayState> states, const SystemParams& params) {
    ForwardDecision f;
    if (decode_set.empty()) return f;
    const RelayIndex i = decode_set.front();
    // Unreachable through the engine (every no-CSIT decode rule checks
    // energy), but the rule must never overdraw a battery.
    if (!has_fixed_power_energy(states[i], params)) return f;
    f.relay = i;
    f.transmit_power = params.fixed_relay_power;
    f.energy_spent = params.fixed_relay_power * params.slot_duration;
    f.success = link_rate(gains_rd[i], params.fixed_relay_power, params.noise_power) >= params.rate_target;
    return f;
}

DecodeDecision decide_decoders(PolicyId id, std::span<const double> gains_sr,
                               std::span<const RelayState> states, const SystemParams& params) {
    switch (id) {
        case PolicyId::SrsNcsi:
            return srs_ncsi_decode(gains_sr, states, params);
        case PolicyId::SrsBestEnergy:
            return srs_best_energy_decode(gains_sr, states, params);
        case PolicyId::SrsBestDecoding:
            return srs_best_decoding_decode(gains_sr, states, params);
        case PolicyId::SrsBestDecodingCsit:
            return srs_best_decoding_csit_decode(gains_sr, states, params);
        case PolicyId::SrsBestEnergyCsit:
            return srs_best_energy_csit_decode(gains_sr, states, params);
        case PolicyId::MrsAcsi:
            return mrs_acsi_decode(gains_sr, states, params);
        case PolicyId::MrsBestEnergy:
            return mrs_best_energy_decode(gains_sr, states, params);
    }
    throw ConfigError("unhandled policy id");
}

ForwardDecision decide_forwarder(PolicyId id, std::span<const RelayIndex> decode_set,
                                 std::span<const double> gains_rd, std::span<const RelayState> states,
                                 const SystemParams& params) {
    switch (id) {
        case PolicyId::SrsNcsi:
        case PolicyId::SrsBestEnergy:
        case PolicyId::SrsBestDecoding:
            return fixed_power_forward(decode_set, gains_rd, states, params);
        case PolicyId::SrsBestEnergyCsit:
        case PolicyId::SrsBestDecodingCsit:
        case PolicyId::MrsAcsi:
            return mrs_acsi_forward(decode_set, gains_rd, states, params);
        case PolicyId::MrsBestEnergy:
            return mrs_best_energy_forward(decode_set, gains_rd, states, params);
    }
    throw ConfigError("unhandled policy id");
}

}  // namespace wpcn

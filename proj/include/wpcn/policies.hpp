#pragma once

// Relay-selection policies. Every policy is a pair of rules: a decode rule
// evaluated at slot t on first-hop CSI and stored energy, and a forward rule
// evaluated at slot t+1 once the second-hop channel is known.
//
// Ties are broken toward the lowest relay index. All indicators are
// non-strict (rate >= R, E/T >= P).

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wpcn/channel.hpp"

namespace wpcn {

using RelayIndex = std::size_t;

enum class PolicyId {
    SrsNcsi,
    SrsBestEnergy,
    SrsBestDecoding,
    SrsBestEnergyCsit,
    SrsBestDecodingCsit,
    MrsAcsi,
    MrsBestEnergy,
};

inline constexpr std::array<PolicyId, 7> kAllPolicies = {
    PolicyId::SrsNcsi,           PolicyId::SrsBestEnergy, PolicyId::SrsBestDecoding,
    PolicyId::SrsBestEnergyCsit, PolicyId::SrsBestDecodingCsit, PolicyId::MrsAcsi,
    PolicyId::MrsBestEnergy,
};

/// Stable identifier used on the command line and in CSV output.
std::string_view to_string(PolicyId id);

/// Inverse of to_string. Throws ConfigError for unknown identifiers.
PolicyId parse_policy(std::string_view text);

/// Two-phase policies pick up to M decoders and choose the forwarder later.
bool is_two_phase(PolicyId id);

/// CSIT policies transmit with exactly the required power P_id.
bool uses_csit(PolicyId id);

struct RelayState {
    double stored_energy = 0.0;  // J
    bool available = true;       // false while this relay forwards
};

struct DecodeDecision {
    std::vector<RelayIndex> decode_set;   // ascending relay index
    std::vector<RelayIndex> harvest_set;  // available relays not decoding
};

struct ForwardDecision {
    std::optional<RelayIndex> relay;
    double transmit_power = 0.0;  // W
    double energy_spent = 0.0;    // J
    bool success = false;
};

// Decode rules.

/// Minimum first-hop rate among relays that decode and hold E/T >= P_r.
DecodeDecision srs_ncsi_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                               const SystemParams& params);

/// Largest residual (E - P_r T)^+ among decoders.
DecodeDecision srs_best_energy_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                                      const SystemParams& params);

/// Largest first-hop rate among decoders with E/T >= P_r.
DecodeDecision srs_best_decoding_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                                        const SystemParams& params);

/// Largest raw stored energy among decoders; no energy guard at decode time.
DecodeDecision srs_best_energy_csit_decode(std::span<const double> gains_sr,
                                           std::span<const RelayState> states, const SystemParams& params);

/// Largest first-hop rate among decoders; no energy guard at decode time
/// since the transmit power is only known at t+1.
DecodeDecision srs_best_decoding_csit_decode(std::span<const double> gains_sr,
                                             std::span<const RelayState> states, const SystemParams& params);

/// The min(M, U) decoders with the weakest first-hop gains.
DecodeDecision mrs_acsi_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                               const SystemParams& params);

/// The min(M, U) decoders with the largest stored energy.
DecodeDecision mrs_best_energy_decode(std::span<const double> gains_sr, std::span<const RelayState> states,
                                      const SystemParams& params);

// Forward rules.

/// Decode set member minimising P_id among those with E/T >= P_id.
ForwardDecision mrs_acsi_forward(std::span<const RelayIndex> decode_set, std::span<const double> gains_rd,
                                 std::span<const RelayState> states, const SystemParams& params);

/// Decode set member maximising E - P_id T among those with E/T >= P_id.
ForwardDecision mrs_best_energy_forward(std::span<const RelayIndex> decode_set,
                                        std::span<const double> gains_rd, std::span<const RelayState> states,
                                        const SystemParams& params);

/// Single relay, no CSIT: transmits at P_r and pays P_r T whether or not the
/// second hop supports R.
ForwardDecision fixed_power_forward(std::span<const RelayIndex> decode_set, std::span<const double> gains_rd,
                                    std::span<const RelayState> states, const SystemParams& params);

// Dispatch by policy id.

DecodeDecision decide_decoders(PolicyId id, std::span<const double> gains_sr,
                               std::span<const RelayState> states, const SystemParams& params);

ForwardDecision decide_forwarder(PolicyId id, std::span<const RelayIndex> decode_set,
                                 std::span<const double> gains_rd, std::span<const RelayState> states,
                                 const SystemParams& params);

}  // namespace wpcn

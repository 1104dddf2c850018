#pragma once

// Scenario constants and per-slot link physics: Rayleigh block-fading draws,
// half-duplex DF link rates, harvested energy and required relay power.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace wpcn {

struct SystemParams {
    std::size_t n_relays = 10;
    double source_power = 10.0;       // W
    double noise_power = 1.0;         // W
    double harvest_efficiency = 0.7;  // eta
    double rate_target = 1.0;         // bit/s/Hz
    double slot_duration = 1.0;       // s
    double fixed_relay_power = 10.0;  // W
    std::size_t decode_set_cap = 1;   // M, two-phase policies only
    double distance = 1.0;            // m
    double path_loss_exp = 2.0;
};

/// Throws ConfigError naming the first violated constraint.
void validate(const SystemParams& params);

/// 10^(dBW/10).
double dbw_to_watts(double dbw);

/// Multiplicative large-scale attenuation 1/d^alpha.
double path_loss_factor(const SystemParams& params);

/// Deterministic pseudo-random stream. Each simulation owns exactly one.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Seed for replication `rep` of sweep point `point`, mixed from the
    /// base seed with std::seed_seq so neighbouring indices decorrelate.
    static std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t point, std::uint64_t rep);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Unit-mean exponential variate by inversion. Avoids
    /// std::exponential_distribution, whose algorithm is unspecified.
    double exponential();

private:
    std::mt19937_64 engine_;
};

/// n i.i.d. unit-mean exponential power gains |h|^2.
std::vector<double> draw_gains(RngStream& rng, std::size_t n);
void draw_gains(RngStream& rng, std::span<double> out);

/// Per-slot channel power gains on both hops, path loss already applied.
struct SlotDraw {
    std::vector<double> gain_sr;
    std::vector<double> gain_rd;
};

/// Fills gain_sr then gain_rd for all relays. Stream consumption is
/// 2 * n_relays draws per slot regardless of policy.
void draw_slot(RngStream& rng, const SystemParams& params, SlotDraw& out);

/// 1/2 log2(1 + gain * power / noise).
double link_rate(double gain, double power, double noise);

/// eta * P_s * gain * T.
double harvested_energy(double gain, double source_power, double eta, double slot);

/// Minimum transmit power for which link_rate(gain, P, noise) reaches the
/// target: (2^{2R} - 1) noise / gain. Zero when R = 0; +inf when gain = 0
/// and R > 0 (the link cannot carry the rate at any power).
double required_forward_power(double gain_rd, double rate_target, double noise);

/// True when a relay with this first-hop gain can decode the source packet.
inline bool can_decode(double gain_sr, const SystemParams& params) {
    return link_rate(gain_sr, params.source_power, params.noise_power) >= params.rate_target;
}

}  // namespace wpcn

#include "wpcn/channel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "wpcn/error.hpp"

namespace wpcn {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

void validate(const SystemParams& p) {
    require(p.n_relays >= 1, "n_relays must be at least 1");
    require(std::isfinite(p.source_power) && p.source_power > 0, "source power must be positive");
    require(std::isfinite(p.noise_power) && p.noise_power > 0, "noise power must be positive");
    require(std::isfinite(p.fixed_relay_power) && p.fixed_relay_power > 0,
            "fixed relay power must be positive");
    require(p.harvest_efficiency >= 0 && p.harvest_efficiency <= 1,
            "harvest efficiency must lie in [0, 1]");
    require(std::isfinite(p.rate_target) && p.rate_target >= 0, "rate target must be non-negative");
    require(std::isfinite(p.slot_duration) && p.slot_duration > 0, "slot duration must be positive");
    require(p.decode_set_cap >= 1 && p.decode_set_cap <= p.n_relays,
            "decode set cap M must satisfy 1 <= M <= n_relays");
    require(std::isfinite(p.distance) && p.distance > 0, "distance must be positive");
    require(std::isfinite(p.path_loss_exp) && p.path_loss_exp >= 0,
            "path loss exponent must be non-negative");
}

double dbw_to_watts(double dbw) {
    return std::pow(10.0, dbw / 10.0);
}

double path_loss_factor(const SystemParams& params) {
    if (params.distance == 1.0) return 1.0;
    return 1.0 / std::pow(params.distance, params.path_loss_exp);
}

std::uint64_t RngStream::derive_seed(std::uint64_t base_seed, std::uint64_t point, std::uint64_t rep) {
    std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                      static_cast<std::uint32_t>(point), static_cast<std::uint32_t>(point >> 32),
                      static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32)};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

double RngStream::exponential() {
    return -std::log1p(-uniform());
}

std::vector<double> draw_gains(RngStream& rng, std::size_t n) {
    std::vector<double> out(n);
    draw_gains(rng, out);
    return out;
}

void draw_gains(RngStream& rng, std::span<double> out) {
    for (double& g : out) g = rng.exponential();
}

void draw_slot(RngStream& rng, const SystemParams& params, SlotDraw& out) {
    out.gain_sr.resize(params.n_relays);
    out.gain_rd.resize(params.n_relays);
    draw_gains(rng, out.gain_sr);
    draw_gains(rng, out.gain_rd);
    const double loss = path_loss_factor(params);
    if (loss != 1.0) {
        for (double& g : out.gain_sr) g *= loss;
        for (double& g : out.gain_rd) g *= loss;
    }
}

double link_rate(double gain, double power, double noise) {
    return 0.5 * std::log2(1.0 + gain * power / noise);
}

double harvested_energy(double gain, double source_power, double eta, double slot) {
    return eta * source_power * gain * slot;
}

double required_forward_power(double gain_rd, double rate_target, double noise) {
    const double snr_needed = std::exp2(2.0 * rate_target) - 1.0;
    if (snr_needed == 0.0) return 0.0;
    if (gain_rd <= 0.0) return std::numeric_limits<double>::infinity();
    return snr_needed * noise / gain_rd;
}

}  // namespace wpcn

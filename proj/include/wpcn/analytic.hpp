#pragma once

#include <cstddef>

namespace wpcn {

/// Grid-powered decode-and-forward outage under unit-mean Rayleigh fading.
struct OutageFloor {
    double single_relay = 0.0;  // one relay, both hops must carry R
    double n_relay_floor = 0.0; // at least one of n_available relays decodes,
                                // then a fixed-power single hop to D
};

/// With lambda_s = (2^{2R}-1) noise / P_s, lambda_r = (2^{2R}-1) noise / P_r
/// and q = 1 - exp(-lambda_s):
///   single_relay  = 1 - exp(-lambda_s - lambda_r)
///   n_relay_floor = 1 - (1 - q^n) exp(-lambda_r)
/// Throws ConfigError on non-positive powers, negative R or n_available = 0.
OutageFloor grid_powered_outage(double rate_target, double source_power, double relay_power, double noise,
                                std::size_t n_available);

}  // namespace wpcn

#include "wpcn/analytic.hpp"

#include <cmath>

#include "wpcn/error.hpp"

namespace wpcn {

OutageFloor grid_powered_outage(double rate_target, double source_power, double relay_power, double noise,
                                std::size_t n_available) {
    if (!(source_power > 0) || !(relay_power > 0) || !(noise > 0)) {
        throw ConfigError("powers and noise must be positive");
    }
    if (!(rate_target >= 0)) throw ConfigError("rate target must be non-negative");
    if (n_available < 1) throw ConfigError("n_available must be at least 1");

    const double snr_needed = std::expm1(2.0 * rate_target * std::log(2.0));
    const double lambda_s = snr_needed * noise / source_power;
    const double lambda_r = snr_needed * noise / relay_power;
    const double q = -std::expm1(-lambda_s);

    OutageFloor f;
    f.single_relay = -std::expm1(-lambda_s - lambda_r);
    f.n_relay_floor = 1.0 - (1.0 - std::pow(q, static_cast<double>(n_available))) * std::exp(-lambda_r);
    return f;
}

}  // namespace wpcn

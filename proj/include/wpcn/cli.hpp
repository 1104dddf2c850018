#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wpcn/channel.hpp"

namespace wpcn {

/// Scenario as entered on the command line or in a config file: powers in
/// dBW, everything else in the units of SystemParams.
struct ScenarioConfig {
    std::size_t n_relays = 10;
    std::size_t decode_set_cap = 1;
    double eta = 0.7;
    double rate = 1.0;
    double ps_dbw = 10.0;
    double pr_dbw = 10.0;
    double noise = 1.0;  // W
    double slot = 1.0;   // s
    double distance = 1.0;
    double path_loss_exp = 2.0;

    /// Converts powers to watts and validates. Throws ConfigError.
    SystemParams to_params() const;
};

/// Default rate grid 0.25, 0.5, ..., 3.0.
std::vector<double> default_rate_grid();

/// Entry point behind the wpcn_sim tool. `args` excludes the program name.
/// Returns 0 on success, 2 on configuration errors, 3 on I/O errors and the
/// CLI11 code for malformed command lines.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;

/// Environment variable naming the directory for relative --output paths.
inline constexpr const char* kOutputDirEnv = "WPCN_OUTPUT_DIR";

}  // namespace wpcn

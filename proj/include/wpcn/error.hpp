#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wpcn {

/// Raised for invalid scenario parameters, unknown policy ids and
/// inconsistent sweep specifications. Always thrown before any simulation
/// work starts.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when reading back a malformed results file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the energy audit when a trace does not balance.
class EnergyAuditError : public std::runtime_error {
public:
    EnergyAuditError(std::uint64_t slot, const std::string& what)
        : std::runtime_error("energy audit failed at slot " + std::to_string(slot) + ": " + what),
          slot_(slot) {}

    std::uint64_t slot() const noexcept { return slot_; }

private:
    std::uint64_t slot_;
};

}  // namespace wpcn

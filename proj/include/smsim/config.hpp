#ifndef SMSIM_CONFIG_HPP
#define SMSIM_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "smsim/translator.hpp"
#include "smsim/wrapper.hpp"

namespace smsim {

// System topology and parameters. Config files set capacity/endianness
// uniformly across modules; the vectors allow heterogeneous setups when
// built programmatically.
struct SystemConfig {
    uint32_t n_pes = 1;
    uint32_t n_mems = 1;
    std::vector<uint64_t> capacity_bytes{65536};
    std::vector<Endianness> endianness{Endianness::LITTLE};
    DelayConfig delays;
    uint64_t max_cycles = 1000000;
    uint64_t seed = 0;

    void resize_per_module();  // broadcast single values to n_mems entries
    bool operator==(const SystemConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Line-oriented `key = value` format with [system] and [delays] sections.
// Unknown keys and out-of-range values are errors carrying the line number.
SystemConfig parse_config(const std::string& text);
SystemConfig load_config(const std::string& path);

// Canonical form; parse_config(emit_config(c)) == c for uniform configs.
std::string emit_config(const SystemConfig& cfg);

}  // namespace smsim

#endif  // SMSIM_CONFIG_HPP

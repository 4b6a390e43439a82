#ifndef SMSIM_STATS_HPP
#define SMSIM_STATS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "smsim/protocol.hpp"

namespace smsim {

enum class PeOutcome : uint8_t { DONE, FAILED, TIMEOUT };

const char* pe_outcome_name(PeOutcome o);

// Run statistics. Everything except the wall_* rows is deterministic for
// fixed inputs.
struct Stats {
    uint64_t cycles_simulated = 0;
    double wall_time_seconds = 0.0;
    std::array<uint64_t, kNumOpcodes> op_counts{};
    std::array<uint64_t, 5> status_counts{};
    std::vector<uint64_t> high_water;        // per module, bytes
    std::vector<uint64_t> type_mismatches;   // per module
    std::vector<uint64_t> pe_completion_cycle;
    std::vector<PeOutcome> pe_outcome;

    uint64_t transactions() const;
    double sim_speed_cps() const {
        return wall_time_seconds > 0.0 ? cycles_simulated / wall_time_seconds : 0.0;
    }
};

// key,value CSV with a schema_version row first. wall_* rows are the only
// nondeterministic ones.
void emit_stats(const Stats& s, std::ostream& out);
std::string stats_to_csv(const Stats& s);

}  // namespace smsim

#endif  // SMSIM_STATS_HPP

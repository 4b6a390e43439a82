#include "smsim/stats.hpp"

#include <ostream>
#include <sstream>

namespace smsim {

const char* pe_outcome_name(PeOutcome o) {
    switch (o) {
        case PeOutcome::DONE: return "DONE";
        case PeOutcome::FAILED: return "FAILED";
        case PeOutcome::TIMEOUT: return "TIMEOUT";
    }
    return "?";
}

uint64_t Stats::transactions() const {
    uint64_t n = 0;
    for (uint64_t c : op_counts) n += c;
    return n;
}

void emit_stats(const Stats& s, std::ostream& out) {
    out << "key,value\n";
    out << "schema_version,1\n";
    out << "cycles_simulated," << s.cycles_simulated << "\n";
    char buf[64];
    snprintf(buf, sizeof buf, "%.6f", s.wall_time_seconds);
    out << "wall_time_seconds," << buf << "\n";
    snprintf(buf, sizeof buf, "%.1f", s.sim_speed_cps());
    out << "wall_sim_speed_cps," << buf << "\n";
    out << "transactions," << s.transactions() << "\n";
    for (int i = 0; i < kNumOpcodes; ++i)
        out << "op_count_" << opcode_name(static_cast<Opcode>(i)) << ","
            << s.op_counts[i] << "\n";
    for (int i = 0; i < 5; ++i)
        out << "status_count_" << status_name(static_cast<Status>(i)) << ","
            << s.status_counts[i] << "\n";
    for (size_t m = 0; m < s.high_water.size(); ++m)
        out << "mem" << m << "_high_water_bytes," << s.high_water[m] << "\n";
    for (size_t m = 0; m < s.type_mismatches.size(); ++m)
        out << "mem" << m << "_type_mismatches," << s.type_mismatches[m] << "\n";
    for (size_t p = 0; p < s.pe_outcome.size(); ++p) {
        out << "pe" << p << "_outcome," << pe_outcome_name(s.pe_outcome[p]) << "\n";
        out << "pe" << p << "_completion_cycle," << s.pe_completion_cycle[p] << "\n";
    }
}

std::string stats_to_csv(const Stats& s) {
    std::ostringstream ss;
    emit_stats(s, ss);
    return ss.str();
}

}  // namespace smsim

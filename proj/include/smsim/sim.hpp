#ifndef SMSIM_SIM_HPP
#define SMSIM_SIM_HPP

#include <memory>
#include <string>
#include <vector>

#include "smsim/config.hpp"
#include "smsim/interconnect.hpp"
#include "smsim/pe.hpp"
#include "smsim/stats.hpp"
#include "smsim/trace.hpp"
#include "smsim/workload.hpp"
#include "smsim/wrapper.hpp"

namespace smsim {

struct RunResult {
    Stats stats;
    std::vector<TraceRecord> trace;      // filled when requested
    std::vector<std::string> failures;   // per pe, empty string when not FAILED
    bool all_done = false;
    bool any_failed = false;
};

// The cycle-driven kernel. Each cycle, in this order: step all pes (pe_id
// order), arbitrate, tick wrappers, assemble per-pe feedback, release
// channels. The loop runs until every pe is DONE/FAILED or max_cycles, and
// is fully deterministic for fixed config + workloads.
class System {
public:
    System(SystemConfig cfg, std::vector<WorkloadProgram> programs);

    RunResult run(bool collect_trace = false);

    const SystemConfig& config() const { return cfg_; }
    const PeClient& pe(size_t i) const { return pes_[i]; }
    const Wrapper& wrapper(size_t m) const { return *wrappers_[m]; }

private:
    SystemConfig cfg_;
    std::vector<PeClient> pes_;
    std::vector<std::unique_ptr<Wrapper>> wrappers_;
    Crossbar xbar_;
};

}  // namespace smsim

#endif  // SMSIM_SIM_HPP

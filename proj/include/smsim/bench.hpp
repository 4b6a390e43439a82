#ifndef SMSIM_BENCH_HPP
#define SMSIM_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "smsim/config.hpp"
#include "smsim/workload.hpp"

namespace smsim {

struct BenchSide {
    uint32_t mems = 0;
    uint64_t cycles = 0;
    uint64_t transactions = 0;
    double wall_seconds = 0.0;
    double cycles_per_second = 0.0;
};

struct BenchReport {
    BenchSide one_mem;   // config1 side
    BenchSide four_mem;  // config4 side
    // (speed_1 - speed_4) / speed_1 * 100
    double degradation_pct = 0.0;

    std::string to_string() const;
};

// Deterministic per-pe programs totalling at least total_ops transactions;
// pe i targets module i % n_mems. Each block allocates a small buffer,
// exercises scalar and array traffic with self-checking asserts, and frees
// it, so per-pe live footprint stays bounded and every operation succeeds.
std::vector<WorkloadProgram> gen_bench_workloads(uint32_t n_pes, uint32_t n_mems,
                                                 uint64_t total_ops, uint64_t seed);

// Runs two 4-pe configurations (canonically 1 memory vs 4 memories) on
// identical generated workload totals (only the target module differs) and
// reports the simulation-speed degradation. Runs are sequential, never
// interleaved; each side is simulated `reps` times and the best wall time
// is reported, which filters scheduler interference out of the speed
// ratio. Cycle counts are deterministic and asserted identical across the
// reps. Benchmarking a config against itself reports ~0 degradation.
BenchReport run_bench(const SystemConfig& cfg1, const SystemConfig& cfg4,
                      uint64_t total_ops, uint64_t seed, int reps = 3);

}  // namespace smsim

#endif  // SMSIM_BENCH_HPP

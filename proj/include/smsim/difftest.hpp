#ifndef SMSIM_DIFFTEST_HPP
#define SMSIM_DIFFTEST_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "smsim/config.hpp"
#include "smsim/protocol.hpp"

namespace smsim {

// Seeded request stream mixing all opcodes, with roughly 10% of address-
// carrying operations aimed at invalid addresses and 10% of allocations at
// capacity pressure. Tracks live allocations from observed responses so
// most requests are meaningful. mt19937_64 plus modulo keeps the stream
// bit-identical across platforms.
class RequestGenerator {
public:
    RequestGenerator(const SystemConfig& cfg, uint64_t seed);

    Request next();
    void observe(const Request& r, const Response& resp);

private:
    struct Live {
        uint32_t vptr;
        uint32_t dim;
        ElemType type;
    };

    uint64_t roll(uint64_t n) { return rng_() % n; }
    uint32_t pick_addr(uint32_t module, bool want_invalid);

    SystemConfig cfg_;
    std::mt19937_64 rng_;
    std::vector<std::vector<Live>> live_;
    std::vector<uint64_t> used_;
};

struct DiffReport {
    bool pass = true;
    uint64_t seed = 0;
    uint64_t ops = 0;
    uint64_t diverged_index = 0;  // valid when !pass
    std::string detail;
    std::array<uint64_t, 5> status_counts{};
    std::vector<uint64_t> live_final;

    // Deterministic report text: identical bytes for identical inputs.
    std::string to_string() const;
};

// Feeds the same stream to the wrapper execute path and to the reference
// oracle; fails on the first divergence in (status, vptr_out, data_out).
// Also audits live buffer count == live table rows after every operation.
DiffReport difftest(const SystemConfig& cfg, uint64_t seed, uint64_t n_ops);

// Topology used by the difftest CLI mode: 4 pes, 2 modules (one little-,
// one big-endian), small capacity for natural OOM pressure.
SystemConfig make_difftest_config();

}  // namespace smsim

#endif  // SMSIM_DIFFTEST_HPP

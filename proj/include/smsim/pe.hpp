#ifndef SMSIM_PE_HPP
#define SMSIM_PE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

#include "smsim/protocol.hpp"
#include "smsim/workload.hpp"

namespace smsim {

enum class PePhase : uint8_t { READY, WAITING_GRANT, IN_FLIGHT, SLEEPING, DONE, FAILED };

// What the kernel feeds back to a pe each cycle: last cycle's arbitration
// outcome and, while the pe owns a channel, that module's slave signals.
struct BusFeedback {
    bool granted = false;
    bool rejected = false;
    SlaveSignals slave;
};

// A scripted processing element driving the master side of the handshake.
// step() is called once per cycle; feedback reflects the previous cycle.
// The pe holds req from issue until it observes ack, retires the
// transaction on the observation cycle and issues its next request the
// cycle after, so the earliest next wrapper sample is ack + 2.
class PeClient {
public:
    PeClient(uint8_t pe_id, WorkloadProgram program)
        : pe_id_(pe_id), prog_(std::move(program)) {}

    std::optional<MasterSignals> step(const BusFeedback& fb, uint64_t cycle);

    uint8_t pe_id() const { return pe_id_; }
    PePhase phase() const { return phase_; }
    bool finished() const { return phase_ == PePhase::DONE || phase_ == PePhase::FAILED; }
    uint64_t completion_cycle() const { return completion_cycle_; }
    const std::string& fail_reason() const { return fail_reason_; }
    const std::unordered_map<std::string, uint32_t>& bindings() const { return bindings_; }

private:
    std::optional<MasterSignals> process_next(uint64_t cycle);
    MasterSignals current_signals(std::optional<uint32_t> beat) const;
    void complete_txn(Status status, uint32_t vptr_out, uint32_t data_word, uint64_t cycle);
    void fail(const std::string& reason, uint64_t cycle);
    uint32_t eval_addr(const AddrExpr& a) const;

    uint8_t pe_id_;
    WorkloadProgram prog_;
    size_t pc_ = 0;
    PePhase phase_ = PePhase::READY;
    std::unordered_map<std::string, uint32_t> bindings_;

    Request pending_;                    // in-flight request header
    std::vector<uint32_t> payload_;      // outgoing WRITE_ARR words
    size_t beat_next_ = 0;
    std::vector<uint32_t> collected_;    // incoming READ_ARR beats
    uint64_t wake_cycle_ = 0;
    uint64_t completion_cycle_ = 0;
    std::string fail_reason_;
};

}  // namespace smsim

#endif  // SMSIM_PE_HPP

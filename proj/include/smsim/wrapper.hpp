#ifndef SMSIM_WRAPPER_HPP
#define SMSIM_WRAPPER_HPP

#include <array>
#include <cstdint>
#include <optional>

#include "smsim/pointer_table.hpp"
#include "smsim/protocol.hpp"
#include "smsim/translator.hpp"

namespace smsim {

// Per-opcode base delays plus a per-beat delay for array transactions.
struct DelayConfig {
    std::array<uint32_t, kNumOpcodes> base{};
    uint32_t per_word = 0;

    uint32_t base_for(Opcode op) const { return base[static_cast<size_t>(op)]; }
    uint32_t delay_for(Opcode op, uint32_t beats) const {
        return base_for(op) + per_word * beats;
    }
    bool operator==(const DelayConfig&) const = default;
};

// Beat count B of a transaction: dim for the array opcodes, 0 otherwise.
constexpr uint32_t beats_for(Opcode op, uint32_t dim) {
    return (op == Opcode::READ_ARR || op == Opcode::WRITE_ARR) ? dim : 0;
}

enum class FsmState : uint8_t { IDLE, DECODE, RECV, EXEC, SEND, ACK };

// One completed transaction, as latched and answered by the wrapper. For
// WRITE_ARR the request data is the io_array content actually consumed.
struct CompletedTxn {
    Request request;
    Response response;
    uint64_t sample_cycle = 0;
    uint64_t ack_cycle = 0;
};

// The memory-module wrapper: a cycle-true FSM in front of a functional
// translator + pointer table backed by host buffers.
//
// Timing contract: a request sampled in IDLE at cycle c is acknowledged at
// exactly c + 2 + D + B, with B = beats_for(op, dim) and
// D = base_delay(op) + per_word * B. The schedule is
//   c       IDLE samples the request
//   c+1     DECODE
//   c+2 .. c+1+B        RECV beats   (WRITE_ARR)
//   then D EXEC cycles
//   c+2+D .. c+1+D+B    SEND beats   (READ_ARR, out_valid while status OK)
//   c+2+D+B ACK pulse.
// The master must hold req and the header stable from c through the ack
// cycle; a deassertion aborts the transaction with ERR_BADOP at the normal
// ack cycle and mutates nothing. After the pulse the FSM spends one cycle
// returning to IDLE, so the earliest next sample is ack + 2.
class Wrapper {
public:
    Wrapper(uint64_t capacity_bytes, Endianness endian, DelayConfig delays)
        : table_(capacity_bytes), endian_(endian), delays_(delays) {}

    SlaveSignals tick(const MasterSignals& in, uint64_t cycle);

    // The functional core: zero-time transaction execution against the
    // pointer table and backing store. tick() delegates to it; difftest
    // drives it directly. A failing request mutates nothing.
    Response execute(const Request& r);

    // Returns the FSM to IDLE with cleared counters; table and store keep
    // their contents.
    void reset();

    FsmState state() const { return state_; }
    const PointerTable& table() const { return table_; }
    const BackingStore& store() const { return store_; }
    Endianness endian() const { return endian_; }
    const DelayConfig& delays() const { return delays_; }

    // High-water mark of used_bytes over the wrapper's lifetime.
    uint64_t high_water() const { return high_water_; }
    // Accesses whose request type disagreed with the entry's stored type.
    uint64_t type_mismatch_count() const { return type_mismatches_; }

    // Filled at every ack pulse; valid until the next one.
    const std::optional<CompletedTxn>& last_completed() const { return last_completed_; }

private:
    void finish_tick(SlaveSignals& out, uint64_t cycle);
    void enter_send_or_ack();
    void note_type(const Request& r, const TableEntry& e);

    PointerTable table_;
    BackingStore store_;
    Endianness endian_;
    DelayConfig delays_;

    FsmState state_ = FsmState::IDLE;
    bool just_acked_ = false;
    bool aborted_ = false;
    bool executed_ = false;
    Request latched_;
    uint64_t sample_cycle_ = 0;
    uint32_t beats_ = 0;
    uint32_t recv_left_ = 0;
    uint32_t send_idx_ = 0;
    uint32_t delay_left_ = 0;
    std::vector<uint32_t> io_array_;
    Response pending_;

    uint64_t high_water_ = 0;
    uint64_t type_mismatches_ = 0;
    std::optional<CompletedTxn> last_completed_;
};

}  // namespace smsim

#endif  // SMSIM_WRAPPER_HPP

#ifndef SMSIM_INTERCONNECT_HPP
#define SMSIM_INTERCONNECT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "smsim/protocol.hpp"

namespace smsim {

enum class GrantOutcome : uint8_t {
    NONE,     // pe issued no request
    GRANTED,  // channel acquired this cycle; the wrapper samples now
    STALLED,  // target module busy or lost arbitration; hold req
    REJECTED, // sm_addr out of range -> immediate ERR_BADOP to the pe
};

// Per-module channels with round-robin arbitration. A channel is owned from
// the grant cycle through the ack cycle; the cycle after the ack is an idle
// channel cycle (release is processed before any new grant), so the
// earliest back-to-back grant is ack + 2 -- exactly when the wrapper is
// again able to sample.
class Crossbar {
public:
    Crossbar(uint32_t n_pes, uint32_t n_mems);

    // requests[pe].req selects participating pes; each pe issues at most
    // one request per cycle. Grants to distinct free modules are
    // independent; for a contended module the requesting pe closest to the
    // round-robin counter wins and the counter advances past it.
    std::vector<GrantOutcome> arbitrate(std::span<const MasterSignals> requests,
                                        uint64_t cycle);

    // Called once per cycle after the wrappers tick; releases channels
    // whose transaction acked this cycle.
    void tick(uint64_t cycle, const std::vector<bool>& acked);

    std::optional<uint8_t> owner(uint32_t module) const;
    uint32_t n_pes() const { return n_pes_; }
    uint32_t n_mems() const { return n_mems_; }

private:
    enum class ChannelState : uint8_t { FREE, BUSY, COOLDOWN };
    struct Channel {
        ChannelState state = ChannelState::FREE;
        uint8_t owner = 0;
        uint64_t grant_cycle = 0;
        uint32_t rr_counter = 0;
    };

    uint32_t n_pes_;
    uint32_t n_mems_;
    std::vector<Channel> channels_;
};

}  // namespace smsim

#endif  // SMSIM_INTERCONNECT_HPP

#include "smsim/interconnect.hpp"

namespace smsim {

Crossbar::Crossbar(uint32_t n_pes, uint32_t n_mems)
    : n_pes_(n_pes), n_mems_(n_mems), channels_(n_mems) {}

std::vector<GrantOutcome> Crossbar::arbitrate(std::span<const MasterSignals> requests,
                                              uint64_t cycle) {
    std::vector<GrantOutcome> out(n_pes_, GrantOutcome::NONE);

    for (uint32_t m = 0; m < n_mems_; ++m) {
        Channel& ch = channels_[m];

        int winner = -1;
        if (ch.state == ChannelState::FREE) {
            // Requesting pe closest to the round-robin counter wins.
            for (uint32_t off = 0; off < n_pes_; ++off) {
                uint32_t pe = (ch.rr_counter + off) % n_pes_;
                if (requests[pe].req && requests[pe].request.sm_addr == m) {
                    winner = static_cast<int>(pe);
                    break;
                }
            }
            if (winner >= 0) {
                ch.state = ChannelState::BUSY;
                ch.owner = static_cast<uint8_t>(winner);
                ch.grant_cycle = cycle;
                ch.rr_counter = (static_cast<uint32_t>(winner) + 1) % n_pes_;
                out[winner] = GrantOutcome::GRANTED;
            }
        }

        for (uint32_t pe = 0; pe < n_pes_; ++pe) {
            if (!requests[pe].req || requests[pe].request.sm_addr != m) continue;
            if (static_cast<int>(pe) == winner) continue;
            // The busy channel's owner keeps driving req for its in-flight
            // transaction; that is not a new request.
            if (ch.state == ChannelState::BUSY && ch.owner == pe) continue;
            out[pe] = GrantOutcome::STALLED;
        }
    }

    for (uint32_t pe = 0; pe < n_pes_; ++pe) {
        const MasterSignals& sig = requests[pe];
        if (sig.req && sig.request.sm_addr >= n_mems_) out[pe] = GrantOutcome::REJECTED;
    }
    return out;
}

void Crossbar::tick(uint64_t, const std::vector<bool>& acked) {
    for (uint32_t m = 0; m < n_mems_; ++m) {
        Channel& ch = channels_[m];
        if (ch.state == ChannelState::COOLDOWN) {
            ch.state = ChannelState::FREE;
        } else if (ch.state == ChannelState::BUSY && acked[m]) {
            ch.state = ChannelState::COOLDOWN;
        }
    }
}

std::optional<uint8_t> Crossbar::owner(uint32_t module) const {
    const Channel& ch = channels_[module];
    if (ch.state == ChannelState::BUSY) return ch.owner;
    return std::nullopt;
}

}  // namespace smsim

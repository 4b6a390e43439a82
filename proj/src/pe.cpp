#include "smsim/pe.hpp"

namespace smsim {

uint32_t PeClient::eval_addr(const AddrExpr& a) const {
    if (a.var.empty()) return a.offset;
    return bindings_.at(a.var) + a.offset;
}

MasterSignals PeClient::current_signals(std::optional<uint32_t> beat) const {
    MasterSignals s;
    s.req = true;
    s.request = pending_;
    if (beat) s.beat_data = *beat;
    return s;
}

void PeClient::fail(const std::string& reason, uint64_t cycle) {
    phase_ = PePhase::FAILED;
    fail_reason_ = reason;
    completion_cycle_ = cycle;
}

void PeClient::complete_txn(Status status, uint32_t vptr_out, uint32_t data_word,
                            uint64_t cycle) {
    const Instruction& ins = prog_.instrs[pc_];
    if (status != ins.expect) {
        fail("line " + std::to_string(ins.line) + ": expected " +
                 status_name(ins.expect) + ", got " + std::string(status_name(status)),
             cycle);
        return;
    }

    bool ok = status == Status::OK;
    switch (ins.kind) {
        case InstrKind::ALLOC:
            bindings_[ins.var] = ok ? vptr_out : 0;
            break;
        case InstrKind::READ:
            bindings_[ins.var] = ok ? data_word : 0;
            break;
        case InstrKind::RARR:
            for (size_t i = 0; i < ins.vars.size(); ++i)
                bindings_[ins.vars[i]] =
                    ok && i < collected_.size() ? collected_[i] : 0;
            break;
        default:
            break;
    }
    ++pc_;
    phase_ = PePhase::READY;
}

std::optional<MasterSignals> PeClient::process_next(uint64_t cycle) {
    const Instruction& ins = prog_.instrs[pc_];
    switch (ins.kind) {
        case InstrKind::END:
            phase_ = PePhase::DONE;
            completion_cycle_ = cycle;
            return std::nullopt;

        case InstrKind::WAIT:
            wake_cycle_ = cycle + ins.dim;
            ++pc_;
            phase_ = PePhase::SLEEPING;
            return std::nullopt;

        case InstrKind::ASSERT: {
            uint32_t have = bindings_.at(ins.var);
            if (have != ins.words[0]) {
                char buf[96];
                snprintf(buf, sizeof buf, "assert $%s: have 0x%x, want 0x%x",
                         ins.var.c_str(), have, ins.words[0]);
                fail("line " + std::to_string(ins.line) + ": " + buf, cycle);
            } else {
                ++pc_;
            }
            return std::nullopt;
        }

        default: {  // transaction instruction
            Request r;
            r.pe_id = pe_id_;
            r.sm_addr = ins.mem;
            payload_.clear();
            collected_.clear();
            beat_next_ = 0;
            switch (ins.kind) {
                case InstrKind::ALLOC:
                    r.opcode = Opcode::ALLOC;
                    r.dim = ins.dim;
                    r.elem_type = ins.type;
                    break;
                case InstrKind::WRITE:
                    r.opcode = Opcode::WRITE;
                    r.vptr = eval_addr(ins.addr);
                    r.data.push_back(ins.words[0]);
                    break;
                case InstrKind::READ:
                    r.opcode = Opcode::READ;
                    r.vptr = eval_addr(ins.addr);
                    break;
                case InstrKind::WARR:
                    r.opcode = Opcode::WRITE_ARR;
                    r.vptr = eval_addr(ins.addr);
                    r.dim = ins.dim;
                    payload_ = ins.words;  // streamed as beats, not header data
                    break;
                case InstrKind::RARR:
                    r.opcode = Opcode::READ_ARR;
                    r.vptr = eval_addr(ins.addr);
                    r.dim = ins.dim;
                    break;
                case InstrKind::FREE:
                    r.opcode = Opcode::FREE;
                    r.vptr = eval_addr(ins.addr);
                    break;
                case InstrKind::RESERVE:
                    r.opcode = Opcode::RESERVE;
                    r.vptr = eval_addr(ins.addr);
                    break;
                case InstrKind::RELEASE:
                    r.opcode = Opcode::RELEASE;
                    r.vptr = eval_addr(ins.addr);
                    break;
                default:
                    break;
            }
            pending_ = r;
            phase_ = PePhase::WAITING_GRANT;
            return current_signals(std::nullopt);
        }
    }
}

std::optional<MasterSignals> PeClient::step(const BusFeedback& fb, uint64_t cycle) {
    switch (phase_) {
        case PePhase::DONE:
        case PePhase::FAILED:
            return std::nullopt;

        case PePhase::SLEEPING:
            if (cycle < wake_cycle_) return std::nullopt;
            phase_ = PePhase::READY;
            [[fallthrough]];

        case PePhase::READY:
            return process_next(cycle);

        case PePhase::WAITING_GRANT:
            if (fb.rejected) {
                complete_txn(Status::ERR_BADOP, 0, 0, cycle);
                return std::nullopt;
            }
            if (fb.granted) phase_ = PePhase::IN_FLIGHT;
            return current_signals(std::nullopt);

        case PePhase::IN_FLIGHT:
            if (fb.slave.out_valid) collected_.push_back(fb.slave.data_out);
            if (fb.slave.ack) {
                complete_txn(fb.slave.status, fb.slave.vptr_out, fb.slave.data_out, cycle);
                return std::nullopt;  // retire cycle
            }
            if (beat_next_ < payload_.size())
                return current_signals(payload_[beat_next_++]);
            return current_signals(std::nullopt);
    }
    return std::nullopt;
}

}  // namespace smsim

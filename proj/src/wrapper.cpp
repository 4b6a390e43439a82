#include "smsim/wrapper.hpp"

#include <algorithm>

namespace smsim {

namespace {
Response fail(Status s) {
    Response r;
    r.status = s;
    return r;
}
}  // namespace

void Wrapper::note_type(const Request& r, const TableEntry& e) {
    if (r.elem_type != e.elem_type) ++type_mismatches_;
}

Response Wrapper::execute(const Request& r) {
    Response resp;
    switch (r.opcode) {
        case Opcode::ALLOC: {
            if (r.dim == 0) return fail(Status::ERR_BADOP);
            InsertResult ins = table_.insert(r.dim, r.elem_type, store_);
            if (ins.status != Status::OK) return fail(ins.status);
            resp.vptr_out = ins.vptr;
            high_water_ = std::max(high_water_, table_.used());
            break;
        }
        case Opcode::READ: {
            ResolveResult loc = table_.resolve(r.vptr);
            if (loc.status != Status::OK) return fail(loc.status);
            const TableEntry& e = table_.entries()[loc.index];
            note_type(r, e);
            resp.data_out.push_back(
                read_elem(store_, e.buf, loc.offset, e.elem_type, endian_));
            break;
        }
        case Opcode::WRITE: {
            if (r.data.size() != 1) return fail(Status::ERR_BADOP);
            ResolveResult loc = table_.resolve(r.vptr);
            if (loc.status != Status::OK) return fail(loc.status);
            const TableEntry& e = table_.entries()[loc.index];
            note_type(r, e);
            if (!PointerTable::writable_by(e, r.pe_id)) return fail(Status::ERR_RESERVED);
            write_elem(store_, e.buf, loc.offset, r.data[0], e.elem_type, endian_);
            break;
        }
        case Opcode::READ_ARR: {
            if (r.dim == 0) return fail(Status::ERR_BADOP);
            ResolveResult loc = table_.resolve(r.vptr);
            if (loc.status != Status::OK) return fail(loc.status);
            const TableEntry& e = table_.entries()[loc.index];
            uint32_t es = data_size(e.elem_type);
            if (loc.offset + static_cast<uint64_t>(r.dim) * es > e.size_bytes)
                return fail(Status::ERR_BADPTR);
            note_type(r, e);
            resp.data_out.reserve(r.dim);
            for (uint32_t i = 0; i < r.dim; ++i)
                resp.data_out.push_back(
                    read_elem(store_, e.buf, loc.offset + i * es, e.elem_type, endian_));
            break;
        }
        case Opcode::WRITE_ARR: {
            if (r.dim == 0 || r.data.size() != r.dim) return fail(Status::ERR_BADOP);
            ResolveResult loc = table_.resolve(r.vptr);
            if (loc.status != Status::OK) return fail(loc.status);
            const TableEntry& e = table_.entries()[loc.index];
            uint32_t es = data_size(e.elem_type);
            if (loc.offset + static_cast<uint64_t>(r.dim) * es > e.size_bytes)
                return fail(Status::ERR_BADPTR);
            note_type(r, e);
            if (!PointerTable::writable_by(e, r.pe_id)) return fail(Status::ERR_RESERVED);
            for (uint32_t i = 0; i < r.dim; ++i)
                write_elem(store_, e.buf, loc.offset + i * es, r.data[i], e.elem_type, endian_);
            break;
        }
        case Opcode::FREE: {
            Status st = table_.remove(r.vptr, r.pe_id, store_);
            if (st != Status::OK) return fail(st);
            break;
        }
        case Opcode::RESERVE: {
            Status st = table_.reserve(r.vptr, r.pe_id);
            if (st != Status::OK) return fail(st);
            break;
        }
        case Opcode::RELEASE: {
            Status st = table_.release(r.vptr, r.pe_id);
            if (st != Status::OK) return fail(st);
            break;
        }
    }
    resp.status = Status::OK;
    return resp;
}

void Wrapper::enter_send_or_ack() {
    // READ_ARR runs its (read-only) execute just before the send beats so
    // the io_array holds the outgoing words.
    if (latched_.opcode == Opcode::READ_ARR && beats_ > 0) {
        if (!aborted_) {
            pending_ = execute(latched_);
            executed_ = true;
            io_array_ = pending_.data_out;
        }
        state_ = FsmState::SEND;
    } else {
        state_ = FsmState::ACK;
    }
}

SlaveSignals Wrapper::tick(const MasterSignals& in, uint64_t cycle) {
    SlaveSignals out;
    switch (state_) {
        case FsmState::IDLE:
            if (just_acked_) {  // ACK->IDLE transition cycle, no sampling
                just_acked_ = false;
                break;
            }
            if (in.req) {
                latched_ = in.request;
                sample_cycle_ = cycle;
                aborted_ = false;
                executed_ = false;
                io_array_.clear();
                pending_ = Response{};
                state_ = FsmState::DECODE;
            }
            break;

        case FsmState::DECODE:
            if (!in.req) aborted_ = true;
            beats_ = beats_for(latched_.opcode, latched_.dim);
            delay_left_ = delays_.delay_for(latched_.opcode, beats_);
            recv_left_ = (latched_.opcode == Opcode::WRITE_ARR) ? beats_ : 0;
            send_idx_ = 0;
            if (recv_left_ > 0)
                state_ = FsmState::RECV;
            else if (delay_left_ > 0)
                state_ = FsmState::EXEC;
            else
                enter_send_or_ack();
            break;

        case FsmState::RECV:
            if (!in.req) aborted_ = true;
            if (!aborted_) io_array_.push_back(in.beat_data);
            if (--recv_left_ == 0) {
                if (!aborted_) latched_.data = io_array_;
                state_ = (delay_left_ > 0) ? FsmState::EXEC : FsmState::ACK;
            }
            break;

        case FsmState::EXEC:
            if (!in.req) aborted_ = true;
            if (--delay_left_ == 0) enter_send_or_ack();
            break;

        case FsmState::SEND:
            if (!in.req) aborted_ = true;
            if (!aborted_ && pending_.status == Status::OK) {
                out.out_valid = true;
                out.data_out = io_array_[send_idx_];
            }
            if (++send_idx_ == beats_) state_ = FsmState::ACK;
            break;

        case FsmState::ACK:
            if (!in.req) aborted_ = true;
            finish_tick(out, cycle);
            break;
    }
    return out;
}

void Wrapper::finish_tick(SlaveSignals& out, uint64_t cycle) {
    if (aborted_) {
        pending_ = fail(Status::ERR_BADOP);
        // keep the completed record frameable even though the beats never
        // fully arrived
        uint32_t want = request_data_words(latched_.opcode, latched_.dim);
        if (latched_.data.size() != want && want <= 65536)
            latched_.data.resize(want, 0);
    } else if (!executed_) {
        // Mutating opcodes execute here, once the transaction can no
        // longer abort, so failed handshakes leave the table untouched.
        pending_ = execute(latched_);
    }
    pending_.completion_cycle = cycle;

    out.ack = true;
    out.status = pending_.status;
    out.vptr_out = pending_.vptr_out;
    if (latched_.opcode == Opcode::READ && pending_.status == Status::OK)
        out.data_out = pending_.data_out[0];

    last_completed_ = CompletedTxn{latched_, pending_, sample_cycle_, cycle};

    io_array_.clear();
    beats_ = recv_left_ = send_idx_ = delay_left_ = 0;
    state_ = FsmState::IDLE;
    just_acked_ = true;
}

void Wrapper::reset() {
    state_ = FsmState::IDLE;
    just_acked_ = false;
    aborted_ = false;
    executed_ = false;
    io_array_.clear();
    beats_ = recv_left_ = send_idx_ = delay_left_ = 0;
    latched_ = Request{};
    pending_ = Response{};
}

}  // namespace smsim

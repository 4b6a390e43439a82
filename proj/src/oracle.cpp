#include "smsim/oracle.hpp"

namespace smsim {

namespace {
Response fail(Status s) {
    Response r;
    r.status = s;
    return r;
}
}  // namespace

ReferenceOracle::ReferenceOracle(uint32_t n_mems,
                                 const std::vector<uint64_t>& capacity_bytes,
                                 const std::vector<Endianness>& endianness) {
    mods_.resize(n_mems);
    for (uint32_t i = 0; i < n_mems; ++i) {
        mods_[i].capacity = capacity_bytes[i];
        mods_[i].endian = endianness[i];
    }
}

ReferenceOracle::Alloc* ReferenceOracle::locate(Module& m, uint32_t vaddr,
                                                uint32_t* offset) {
    for (auto& a : m.allocs) {
        uint64_t end = static_cast<uint64_t>(a.vptr) + a.bytes.size();
        if (vaddr >= a.vptr && vaddr < end) {
            *offset = vaddr - a.vptr;
            return &a;
        }
    }
    return nullptr;
}

void ReferenceOracle::store_value(Module& m, Alloc& a, uint32_t off, uint32_t value) {
    for (uint32_t i = 0; i < a.elem_bytes; ++i) {
        uint32_t byte = (value >> (8 * i)) & 0xff;
        uint32_t idx = m.endian == Endianness::LITTLE ? off + i
                                                      : off + a.elem_bytes - 1 - i;
        a.bytes[idx] = static_cast<uint8_t>(byte);
    }
}

uint32_t ReferenceOracle::load_value(const Module& m, const Alloc& a, uint32_t off) const {
    uint32_t v = 0;
    for (uint32_t i = 0; i < a.elem_bytes; ++i) {
        uint32_t idx = m.endian == Endianness::LITTLE ? off + i
                                                      : off + a.elem_bytes - 1 - i;
        v |= static_cast<uint32_t>(a.bytes[idx]) << (8 * i);
    }
    if (a.sign && a.elem_bytes < 4) {
        int shift = 32 - 8 * static_cast<int>(a.elem_bytes);
        v = static_cast<uint32_t>(static_cast<int32_t>(v << shift) >> shift);
    }
    return v;
}

std::optional<uint8_t> ReferenceOracle::holder_of(uint32_t module, uint32_t vptr) const {
    for (const auto& a : mods_[module].allocs)
        if (a.vptr == vptr) return a.reserved_by;
    return std::nullopt;
}

std::optional<uint8_t> ReferenceOracle::holder_covering(uint32_t module,
                                                        uint32_t vaddr) const {
    for (const auto& a : mods_[module].allocs) {
        uint64_t end = static_cast<uint64_t>(a.vptr) + a.bytes.size();
        if (vaddr >= a.vptr && vaddr < end) return a.reserved_by;
    }
    return std::nullopt;
}

Response ReferenceOracle::apply(const Request& r) {
    if (r.sm_addr >= mods_.size()) return fail(Status::ERR_BADOP);
    Module& m = mods_[r.sm_addr];
    Response resp;

    switch (r.opcode) {
        case Opcode::ALLOC: {
            if (r.dim == 0) return fail(Status::ERR_BADOP);
            uint64_t size = static_cast<uint64_t>(r.dim) * data_size(r.elem_type);
            if (m.used + size > m.capacity) return fail(Status::ERR_OOM);
            Alloc a;
            a.vptr = m.allocs.empty()
                         ? 0
                         : m.allocs.back().vptr +
                               static_cast<uint32_t>(m.allocs.back().bytes.size());
            a.elem_bytes = data_size(r.elem_type);
            a.sign = is_signed(r.elem_type);
            a.bytes.assign(size, 0);
            m.allocs.push_back(std::move(a));
            m.used += size;
            resp.vptr_out = m.allocs.back().vptr;
            break;
        }
        case Opcode::READ: {
            uint32_t off = 0;
            Alloc* a = locate(m, r.vptr, &off);
            if (!a || off % a->elem_bytes != 0) return fail(Status::ERR_BADPTR);
            resp.data_out.push_back(load_value(m, *a, off));
            break;
        }
        case Opcode::WRITE: {
            if (r.data.size() != 1) return fail(Status::ERR_BADOP);
            uint32_t off = 0;
            Alloc* a = locate(m, r.vptr, &off);
            if (!a || off % a->elem_bytes != 0) return fail(Status::ERR_BADPTR);
            if (a->reserved_by && *a->reserved_by != r.pe_id)
                return fail(Status::ERR_RESERVED);
            store_value(m, *a, off, r.data[0]);
            break;
        }
        case Opcode::READ_ARR: {
            if (r.dim == 0) return fail(Status::ERR_BADOP);
            uint32_t off = 0;
            Alloc* a = locate(m, r.vptr, &off);
            if (!a || off % a->elem_bytes != 0) return fail(Status::ERR_BADPTR);
            if (off + static_cast<uint64_t>(r.dim) * a->elem_bytes > a->bytes.size())
                return fail(Status::ERR_BADPTR);
            for (uint32_t i = 0; i < r.dim; ++i)
                resp.data_out.push_back(load_value(m, *a, off + i * a->elem_bytes));
            break;
        }
        case Opcode::WRITE_ARR: {
            if (r.dim == 0 || r.data.size() != r.dim) return fail(Status::ERR_BADOP);
            uint32_t off = 0;
            Alloc* a = locate(m, r.vptr, &off);
            if (!a || off % a->elem_bytes != 0) return fail(Status::ERR_BADPTR);
            if (off + static_cast<uint64_t>(r.dim) * a->elem_bytes > a->bytes.size())
                return fail(Status::ERR_BADPTR);
            if (a->reserved_by && *a->reserved_by != r.pe_id)
                return fail(Status::ERR_RESERVED);
            for (uint32_t i = 0; i < r.dim; ++i)
                store_value(m, *a, off + i * a->elem_bytes, r.data[i]);
            break;
        }
        case Opcode::FREE: {
            for (size_t i = 0; i < m.allocs.size(); ++i) {
                if (m.allocs[i].vptr != r.vptr) continue;
                if (m.allocs[i].reserved_by && *m.allocs[i].reserved_by != r.pe_id)
                    return fail(Status::ERR_RESERVED);
                m.used -= m.allocs[i].bytes.size();
                m.allocs.erase(m.allocs.begin() + i);
                resp.status = Status::OK;
                return resp;
            }
            return fail(Status::ERR_BADPTR);
        }
        case Opcode::RESERVE: {
            for (auto& a : m.allocs) {
                if (a.vptr != r.vptr) continue;
                if (a.reserved_by && *a.reserved_by != r.pe_id)
                    return fail(Status::ERR_RESERVED);
                a.reserved_by = r.pe_id;
                return resp;
            }
            return fail(Status::ERR_BADPTR);
        }
        case Opcode::RELEASE: {
            for (auto& a : m.allocs) {
                if (a.vptr != r.vptr) continue;
                if (!a.reserved_by || *a.reserved_by != r.pe_id)
                    return fail(Status::ERR_RESERVED);
                a.reserved_by.reset();
                return resp;
            }
            return fail(Status::ERR_BADPTR);
        }
    }
    return resp;
}

}  // namespace smsim

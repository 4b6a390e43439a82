#include "smsim/pointer_table.hpp"

namespace smsim {

InsertResult PointerTable::insert(uint32_t dim, ElemType t, BackingStore& store) {
    InsertResult res;
    uint64_t size = static_cast<uint64_t>(dim) * data_size(t);
    if (used_bytes_ + size > capacity_bytes_) {
        res.status = Status::ERR_OOM;
        return res;
    }

    uint32_t vptr = 0;
    if (!entries_.empty()) {
        const TableEntry& last = entries_.back();
        vptr = last.vptr + last.size_bytes;
    }

    TableEntry e;
    e.vptr = vptr;
    e.dim = dim;
    e.elem_type = t;
    e.size_bytes = static_cast<uint32_t>(size);
    e.buf = store.alloc_zeroed(size);
    entries_.push_back(e);
    used_bytes_ += size;

    res.vptr = vptr;
    res.buf = e.buf;
    return res;
}

ResolveResult PointerTable::resolve(uint32_t vaddr) const {
    ResolveResult res;
    for (size_t i = 0; i < entries_.size(); ++i) {
        const TableEntry& e = entries_[i];
        uint64_t end = static_cast<uint64_t>(e.vptr) + e.size_bytes;
        if (vaddr >= e.vptr && vaddr < end) {
            uint32_t off = vaddr - e.vptr;
            if (off % data_size(e.elem_type) != 0) {
                res.status = Status::ERR_BADPTR;
                return res;
            }
            res.index = i;
            res.offset = off;
            return res;
        }
    }
    res.status = Status::ERR_BADPTR;
    return res;
}

TableEntry* PointerTable::find_exact(uint32_t vptr) {
    for (auto& e : entries_)
        if (e.vptr == vptr) return &e;
    return nullptr;
}

Status PointerTable::remove(uint32_t vptr, uint8_t pe_id, BackingStore& store) {
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].vptr != vptr) continue;
        if (!writable_by(entries_[i], pe_id)) return Status::ERR_RESERVED;
        store.release(entries_[i].buf);
        used_bytes_ -= entries_[i].size_bytes;
        entries_.erase(entries_.begin() + i);
        return Status::OK;
    }
    return Status::ERR_BADPTR;
}

Status PointerTable::reserve(uint32_t vptr, uint8_t pe_id) {
    TableEntry* e = find_exact(vptr);
    if (!e) return Status::ERR_BADPTR;
    if (e->reserved_by && *e->reserved_by != pe_id) return Status::ERR_RESERVED;
    e->reserved_by = pe_id;
    return Status::OK;
}

Status PointerTable::release(uint32_t vptr, uint8_t pe_id) {
    TableEntry* e = find_exact(vptr);
    if (!e) return Status::ERR_BADPTR;
    if (!e->reserved_by || *e->reserved_by != pe_id) return Status::ERR_RESERVED;
    e->reserved_by.reset();
    return Status::OK;
}

}  // namespace smsim

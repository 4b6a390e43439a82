#ifndef SMSIM_POINTER_TABLE_HPP
#define SMSIM_POINTER_TABLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "smsim/protocol.hpp"
#include "smsim/translator.hpp"

namespace smsim {

// One row of the pointer table: a live allocation.
struct TableEntry {
    uint32_t vptr = 0;
    uint32_t dim = 0;
    ElemType elem_type = ElemType::U8;
    uint32_t size_bytes = 0;  // always dim * data_size(elem_type)
    BufferHandle buf = kNullHandle;
    std::optional<uint8_t> reserved_by;
};

struct InsertResult {
    Status status = Status::OK;
    uint32_t vptr = 0;
    BufferHandle buf = kNullHandle;
};

struct ResolveResult {
    Status status = Status::OK;
    size_t index = 0;       // index into entries()
    uint32_t offset = 0;    // byte offset inside the entry
};

// Allocation bookkeeping for one memory module. Rows are kept in insertion
// order; freeing a row re-compacts the table without relocating the
// surviving entries' vptrs.
class PointerTable {
public:
    explicit PointerTable(uint64_t capacity_bytes) : capacity_bytes_(capacity_bytes) {}

    // New vptr = previous entry's vptr + its size, 0 for an empty table.
    // Denied with ERR_OOM once used + dim*DATA_SIZE would exceed capacity;
    // a denied insert leaves table and store untouched.
    InsertResult insert(uint32_t dim, ElemType t, BackingStore& store);

    // Finds the unique entry with vptr <= vaddr < vptr + size_bytes. The
    // offset must be a multiple of the entry's DATA_SIZE, else ERR_BADPTR.
    ResolveResult resolve(uint32_t vaddr) const;

    // Exact-vptr removal. A reserved entry may only be removed by its
    // holder; the reservation dies with the entry.
    Status remove(uint32_t vptr, uint8_t pe_id, BackingStore& store);

    // reserve is idempotent for the holder; release requires holding.
    Status reserve(uint32_t vptr, uint8_t pe_id);
    Status release(uint32_t vptr, uint8_t pe_id);

    // True when pe may mutate (write/free) the entry.
    static bool writable_by(const TableEntry& e, uint8_t pe_id) {
        return !e.reserved_by || *e.reserved_by == pe_id;
    }

    uint64_t used() const { return used_bytes_; }
    uint64_t capacity() const { return capacity_bytes_; }
    const std::vector<TableEntry>& entries() const { return entries_; }

private:
    TableEntry* find_exact(uint32_t vptr);

    std::vector<TableEntry> entries_;
    uint64_t capacity_bytes_ = 0;
    uint64_t used_bytes_ = 0;
};

}  // namespace smsim

#endif  // SMSIM_POINTER_TABLE_HPP

#ifndef SMSIM_ORACLE_HPP
#define SMSIM_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "smsim/protocol.hpp"
#include "smsim/translator.hpp"

namespace smsim {

// Functional golden model for differential testing: per module, a plain
// allocation list replaying the vptr generation rule and a flat byte array
// per allocation. No FSM, no timing, and no code shared with PointerTable,
// BackingStore or the translator beyond the protocol types.
class ReferenceOracle {
public:
    ReferenceOracle(uint32_t n_mems, const std::vector<uint64_t>& capacity_bytes,
                    const std::vector<Endianness>& endianness);

    // Same functional contract as Wrapper::execute, plus the interconnect's
    // range check: sm_addr >= n_mems answers ERR_BADOP.
    Response apply(const Request& r);

    size_t live_allocs(uint32_t module) const { return mods_[module].allocs.size(); }
    uint64_t used_bytes(uint32_t module) const { return mods_[module].used; }

    // Holder of the allocation whose base vptr is exactly v, if reserved.
    std::optional<uint8_t> holder_of(uint32_t module, uint32_t vptr) const;
    // Holder of the allocation covering vaddr, if any entry covers it and
    // is reserved.
    std::optional<uint8_t> holder_covering(uint32_t module, uint32_t vaddr) const;

private:
    struct Alloc {
        uint32_t vptr = 0;
        uint32_t elem_bytes = 1;
        bool sign = false;
        std::optional<uint8_t> reserved_by;
        std::vector<uint8_t> bytes;
    };
    struct Module {
        uint64_t capacity = 0;
        uint64_t used = 0;
        Endianness endian = Endianness::LITTLE;
        std::vector<Alloc> allocs;
    };

    Alloc* locate(Module& m, uint32_t vaddr, uint32_t* offset);
    void store_value(Module& m, Alloc& a, uint32_t off, uint32_t value);
    uint32_t load_value(const Module& m, const Alloc& a, uint32_t off) const;

    std::vector<Module> mods_;
};

}  // namespace smsim

#endif  // SMSIM_ORACLE_HPP

#ifndef SMSIM_TRANSLATOR_HPP
#define SMSIM_TRANSLATOR_HPP

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "smsim/protocol.hpp"

namespace smsim {

enum class Endianness : uint8_t { LITTLE = 0, BIG = 1 };

// Opaque reference to a live backing buffer. 0 is never a valid handle.
using BufferHandle = uint64_t;
inline constexpr BufferHandle kNullHandle = 0;

// Host-side storage backing the simulated memory: zero-initialized buffers
// keyed by handles that are never reused. Internal misuse (bad handle,
// double release, out-of-bounds element access) throws std::logic_error --
// those paths are unreachable through the protocol.
class BackingStore {
public:
    BufferHandle alloc_zeroed(size_t n_bytes);
    void release(BufferHandle h);

    bool is_live(BufferHandle h) const { return buffers_.count(h) != 0; }
    size_t buffer_size(BufferHandle h) const;
    size_t live_count() const { return buffers_.size(); }
    uint64_t total_allocs() const { return total_allocs_; }
    uint64_t total_releases() const { return total_releases_; }

    const uint8_t* bytes(BufferHandle h) const;
    uint8_t* bytes(BufferHandle h);

private:
    std::unordered_map<BufferHandle, std::vector<uint8_t>> buffers_;
    BufferHandle next_handle_ = 1;
    uint64_t total_allocs_ = 0;
    uint64_t total_releases_ = 0;
};

// value is truncated to the low DATA_SIZE(t) bytes and laid out in the
// given byte order. out must have room for data_size(t) bytes.
void encode_elem(uint32_t value, ElemType t, Endianness e, uint8_t* out);

// Reassembles data_size(t) bytes into a 32-bit word: zero-extended for
// unsigned types, sign-extended for signed ones.
uint32_t decode_elem(const uint8_t* bytes, ElemType t, Endianness e);

// Typed element access at a byte offset inside a live buffer. The offset
// must be element-aligned and in bounds (guaranteed by the pointer table
// before this layer is reached).
void write_elem(BackingStore& store, BufferHandle h, size_t byte_off,
                uint32_t value, ElemType t, Endianness e);
uint32_t read_elem(const BackingStore& store, BufferHandle h, size_t byte_off,
                   ElemType t, Endianness e);

}  // namespace smsim

#endif  // SMSIM_TRANSLATOR_HPP

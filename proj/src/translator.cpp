#include "smsim/translator.hpp"

#include <stdexcept>

namespace smsim {

BufferHandle BackingStore::alloc_zeroed(size_t n_bytes) {
    if (n_bytes == 0) throw std::logic_error("BackingStore: zero-size allocation");
    BufferHandle h = next_handle_++;
    buffers_.emplace(h, std::vector<uint8_t>(n_bytes, 0));
    ++total_allocs_;
    return h;
}

void BackingStore::release(BufferHandle h) {
    auto it = buffers_.find(h);
    if (it == buffers_.end()) throw std::logic_error("BackingStore: release of dead handle");
    buffers_.erase(it);
    ++total_releases_;
}

size_t BackingStore::buffer_size(BufferHandle h) const {
    auto it = buffers_.find(h);
    if (it == buffers_.end()) throw std::logic_error("BackingStore: size of dead handle");
    return it->second.size();
}

const uint8_t* BackingStore::bytes(BufferHandle h) const {
    auto it = buffers_.find(h);
    if (it == buffers_.end()) throw std::logic_error("BackingStore: access to dead handle");
    return it->second.data();
}

uint8_t* BackingStore::bytes(BufferHandle h) {
    auto it = buffers_.find(h);
    if (it == buffers_.end()) throw std::logic_error("BackingStore: access to dead handle");
    return it->second.data();
}

void encode_elem(uint32_t value, ElemType t, Endianness e, uint8_t* out) {
    uint32_t n = data_size(t);
    for (uint32_t i = 0; i < n; ++i) {
        uint32_t shift = (e == Endianness::LITTLE) ? 8 * i : 8 * (n - 1 - i);
        out[i] = static_cast<uint8_t>(value >> shift);
    }
}

uint32_t decode_elem(const uint8_t* bytes, ElemType t, Endianness e) {
    uint32_t n = data_size(t);
    uint32_t value = 0;
    for (uint32_t i = 0; i < n; ++i) {
        uint32_t shift = (e == Endianness::LITTLE) ? 8 * i : 8 * (n - 1 - i);
        value |= static_cast<uint32_t>(bytes[i]) << shift;
    }
    if (is_signed(t) && n < 4) {
        uint32_t sign_bit = 1u << (8 * n - 1);
        if (value & sign_bit) value |= ~((sign_bit << 1) - 1);
    }
    return value;
}

void write_elem(BackingStore& store, BufferHandle h, size_t byte_off,
                uint32_t value, ElemType t, Endianness e) {
    size_t n = data_size(t);
    if (byte_off % n != 0 || byte_off + n > store.buffer_size(h))
        throw std::logic_error("write_elem: offset outside buffer");
    encode_elem(value, t, e, store.bytes(h) + byte_off);
}

uint32_t read_elem(const BackingStore& store, BufferHandle h, size_t byte_off,
                   ElemType t, Endianness e) {
    size_t n = data_size(t);
    if (byte_off % n != 0 || byte_off + n > store.buffer_size(h))
        throw std::logic_error("read_elem: offset outside buffer");
    return decode_elem(store.bytes(h) + byte_off, t, e);
}

}  // namespace smsim

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "smsim/translator.hpp"

using namespace smsim;

TEST_CASE("byte order vectors") {
    uint8_t buf[4];
    encode_elem(0x12345678, ElemType::U32, Endianness::LITTLE, buf);
    CHECK(buf[0] == 0x78);
    CHECK(buf[1] == 0x56);
    CHECK(buf[2] == 0x34);
    CHECK(buf[3] == 0x12);

    encode_elem(0x12345678, ElemType::U32, Endianness::BIG, buf);
    CHECK(buf[0] == 0x12);
    CHECK(buf[1] == 0x34);
    CHECK(buf[2] == 0x56);
    CHECK(buf[3] == 0x78);

    // truncation to DATA_SIZE
    encode_elem(0x000001ff, ElemType::U8, Endianness::LITTLE, buf);
    CHECK(buf[0] == 0xff);
}

TEST_CASE("decode extension") {
    uint8_t ff = 0xff;
    CHECK(decode_elem(&ff, ElemType::I8, Endianness::LITTLE) == 0xffffffffu);
    CHECK(decode_elem(&ff, ElemType::U8, Endianness::LITTLE) == 0x000000ffu);

    uint8_t w[2] = {0x00, 0x80};
    CHECK(decode_elem(w, ElemType::I16, Endianness::LITTLE) == 0xffff8000u);
    CHECK(decode_elem(w, ElemType::I16, Endianness::BIG) == 0x00000080u);
    CHECK(decode_elem(w, ElemType::U16, Endianness::LITTLE) == 0x00008000u);
}

TEST_CASE("encode/decode round-trip modulo type width") {
    std::mt19937_64 rng(42);
    uint8_t buf[4];
    for (int t = 0; t < kNumElemTypes; ++t) {
        ElemType ty = static_cast<ElemType>(t);
        for (int e = 0; e < 2; ++e) {
            Endianness en = static_cast<Endianness>(e);
            for (int i = 0; i < 1000; ++i) {
                uint32_t v = static_cast<uint32_t>(rng());
                encode_elem(v, ty, en, buf);
                uint32_t back = decode_elem(buf, ty, en);
                uint32_t n = data_size(ty);
                uint64_t mod = n == 4 ? 0x100000000ull : (1ull << (8 * n));
                CHECK(back % mod == v % mod);
            }
        }
    }
}

TEST_CASE("backing store allocates zeroed buffers with unique handles") {
    BackingStore store;
    BufferHandle a = store.alloc_zeroed(40);
    BufferHandle b = store.alloc_zeroed(40);
    CHECK(a != b);
    CHECK(a != kNullHandle);
    CHECK(store.buffer_size(a) == 40);
    CHECK(store.live_count() == 2);

    for (size_t off = 0; off < 40; off += 4)
        CHECK(read_elem(store, a, off, ElemType::U32, Endianness::LITTLE) == 0);

    BufferHandle c = store.alloc_zeroed(1);
    CHECK(store.buffer_size(c) == 1);
}

TEST_CASE("release kills the handle; reuse never hands back a live one") {
    BackingStore store;
    BufferHandle a = store.alloc_zeroed(8);
    store.release(a);
    CHECK(!store.is_live(a));
    CHECK_THROWS_AS(store.buffer_size(a), std::logic_error);
    CHECK_THROWS_AS(store.release(a), std::logic_error);  // double release is fatal

    BufferHandle b = store.alloc_zeroed(8);
    CHECK(b != a);
    CHECK(store.total_allocs() == 2);
    CHECK(store.total_releases() == 1);
}

TEST_CASE("read-after-write for all types, offsets, endiannesses") {
    std::mt19937_64 rng(7);
    BackingStore store;
    BufferHandle h = store.alloc_zeroed(64);
    for (int t = 0; t < kNumElemTypes; ++t) {
        ElemType ty = static_cast<ElemType>(t);
        uint32_t n = data_size(ty);
        for (int e = 0; e < 2; ++e) {
            Endianness en = static_cast<Endianness>(e);
            for (int i = 0; i < 200; ++i) {
                size_t off = (rng() % (64 / n)) * n;
                uint32_t v = static_cast<uint32_t>(rng());
                write_elem(store, h, off, v, ty, en);
                uint32_t back = read_elem(store, h, off, ty, en);
                if (n == 4) {
                    CHECK(back == v);
                } else {
                    uint32_t mask = (1u << (8 * n)) - 1;
                    CHECK((back & mask) == (v & mask));
                }
            }
        }
    }
}

TEST_CASE("writes touch only their own byte window") {
    BackingStore store;
    BufferHandle h = store.alloc_zeroed(16);
    write_elem(store, h, 0, 0x11111111, ElemType::U32, Endianness::LITTLE);
    write_elem(store, h, 8, 0x22222222, ElemType::U32, Endianness::LITTLE);

    std::vector<uint8_t> before(store.bytes(h), store.bytes(h) + 16);
    write_elem(store, h, 4, 0xabcd, ElemType::U16, Endianness::BIG);
    const uint8_t* after = store.bytes(h);

    for (size_t i = 0; i < 16; ++i) {
        if (i == 4 || i == 5) continue;
        CHECK(after[i] == before[i]);
    }
    CHECK(after[4] == 0xab);
    CHECK(after[5] == 0xcd);
}

TEST_CASE("cross-endianness read sees swapped bytes") {
    BackingStore store;
    BufferHandle h = store.alloc_zeroed(4);
    write_elem(store, h, 0, 0x12345678, ElemType::U32, Endianness::LITTLE);
    CHECK(read_elem(store, h, 0, ElemType::U32, Endianness::BIG) == 0x78563412u);
}

TEST_CASE("out-of-bounds element access is fatal") {
    BackingStore store;
    BufferHandle h = store.alloc_zeroed(4);
    CHECK_THROWS_AS(write_elem(store, h, 4, 1, ElemType::U32, Endianness::LITTLE),
                    std::logic_error);
    CHECK_THROWS_AS(read_elem(store, h, 2, ElemType::U32, Endianness::LITTLE),
                    std::logic_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "smsim/protocol.hpp"

using namespace smsim;

namespace {

Request random_request(std::mt19937_64& rng) {
    Request r;
    r.pe_id = static_cast<uint8_t>(rng() % 256);
    r.sm_addr = static_cast<uint8_t>(rng() % 256);
    r.opcode = static_cast<Opcode>(rng() % kNumOpcodes);
    r.elem_type = static_cast<ElemType>(rng() % kNumElemTypes);
    r.vptr = static_cast<uint32_t>(rng());
    r.dim = static_cast<uint32_t>(rng() % 64) + 1;
    uint32_t n = request_data_words(r.opcode, r.dim);
    for (uint32_t i = 0; i < n; ++i) r.data.push_back(static_cast<uint32_t>(rng()));
    return r;
}

}  // namespace

TEST_CASE("opcode and elem type encodings are fixed") {
    CHECK(static_cast<int>(Opcode::ALLOC) == 0);
    CHECK(static_cast<int>(Opcode::READ) == 1);
    CHECK(static_cast<int>(Opcode::WRITE) == 2);
    CHECK(static_cast<int>(Opcode::FREE) == 3);
    CHECK(static_cast<int>(Opcode::READ_ARR) == 4);
    CHECK(static_cast<int>(Opcode::WRITE_ARR) == 5);
    CHECK(static_cast<int>(Opcode::RESERVE) == 6);
    CHECK(static_cast<int>(Opcode::RELEASE) == 7);

    CHECK(data_size(ElemType::U8) == 1);
    CHECK(data_size(ElemType::I8) == 1);
    CHECK(data_size(ElemType::U16) == 2);
    CHECK(data_size(ElemType::I16) == 2);
    CHECK(data_size(ElemType::U32) == 4);
    CHECK(data_size(ElemType::I32) == 4);
    CHECK(!is_signed(ElemType::U16));
    CHECK(is_signed(ElemType::I16));
}

TEST_CASE("encode_request fixed layout") {
    // READ pe0 mem0 vptr=0: word0 = (0<<24)|(0<<16)|(1<<8)|0
    Request r;
    r.opcode = Opcode::READ;
    r.elem_type = ElemType::U8;
    CHECK(encode_request(r) == std::vector<uint32_t>{0x00000100u, 0u, 0u});

    // ALLOC encodes opcode field 0
    Request a;
    a.opcode = Opcode::ALLOC;
    a.dim = 1;
    a.elem_type = ElemType::U8;
    auto words = encode_request(a);
    CHECK(((words[0] >> 8) & 0xff) == 0);

    // header packing
    Request w;
    w.pe_id = 3;
    w.sm_addr = 2;
    w.opcode = Opcode::WRITE;
    w.elem_type = ElemType::I16;
    w.vptr = 0x1234;
    w.data = {0xdeadbeef};
    words = encode_request(w);
    REQUIRE(words.size() == 4);
    CHECK(words[0] == (3u << 24 | 2u << 16 | 2u << 8 | 3u));
    CHECK(words[1] == 0x1234u);
    CHECK(words[3] == 0xdeadbeefu);
}

TEST_CASE("decode_request inverts encode_request") {
    std::vector<uint32_t> words{0x00000100u, 0u, 0u};
    auto r = decode_request(words);
    REQUIRE(r.has_value());
    CHECK(r->opcode == Opcode::READ);
    CHECK(r->pe_id == 0);
    CHECK(r->sm_addr == 0);
    CHECK(r->vptr == 0);
}

TEST_CASE("decode_request rejects malformed input") {
    // truncated
    std::vector<uint32_t> two{0x100u, 0u};
    CHECK(!decode_request(two).has_value());

    // opcode field 15: only 0..7 defined
    std::vector<uint32_t> badop{15u << 8, 0u, 0u};
    CHECK(!decode_request(badop).has_value());

    // elem type field out of range
    std::vector<uint32_t> badtype{(1u << 8) | 9u, 0u, 0u};
    CHECK(!decode_request(badtype).has_value());

    // WRITE_ARR length must be 3 + dim
    Request wa;
    wa.opcode = Opcode::WRITE_ARR;
    wa.dim = 4;
    wa.data = {1, 2, 3, 4};
    auto words = encode_request(wa);
    words.pop_back();
    CHECK(!decode_request(words).has_value());
}

TEST_CASE("encode/decode round-trip on 1000 random requests") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 1000; ++i) {
        Request r = random_request(rng);
        auto back = decode_request(encode_request(r));
        REQUIRE(back.has_value());
        CHECK(*back == r);
    }
}

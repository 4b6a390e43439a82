#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "smsim/pointer_table.hpp"

using namespace smsim;

TEST_CASE("vptr generation: first is zero, then previous vptr + size") {
    BackingStore store;
    PointerTable t(1 << 20);

    auto a = t.insert(10, ElemType::U32, store);
    REQUIRE(a.status == Status::OK);
    CHECK(a.vptr == 0);

    // 0 + 10*4 = 40
    auto b = t.insert(4, ElemType::U16, store);
    REQUIRE(b.status == Status::OK);
    CHECK(b.vptr == 40);
}

TEST_CASE("capacity enforcement denies the overflowing insert") {
    BackingStore store;
    PointerTable t(64);
    CHECK(t.insert(10, ElemType::U32, store).status == Status::OK);  // 40
    CHECK(t.insert(4, ElemType::U16, store).status == Status::OK);   // 48
    CHECK(t.used() == 48);

    // 48 + 20 > 64
    auto r = t.insert(5, ElemType::U32, store);
    CHECK(r.status == Status::ERR_OOM);
    CHECK(t.used() == 48);
    CHECK(t.entries().size() == 2);
    CHECK(store.live_count() == 2);  // denied insert touches nothing
}

TEST_CASE("resolve finds covering entry with byte offset") {
    BackingStore store;
    PointerTable t(1 << 20);
    t.insert(10, ElemType::U32, store);  // [0, 40)

    auto r = t.resolve(12);
    REQUIRE(r.status == Status::OK);
    CHECK(r.index == 0);
    CHECK(r.offset == 12);

    auto base = t.resolve(0);
    REQUIRE(base.status == Status::OK);
    CHECK(base.offset == 0);

    // one-past-end is outside the range
    CHECK(t.resolve(40).status == Status::ERR_BADPTR);

    // misaligned offset into a u32 entry
    CHECK(t.resolve(13).status == Status::ERR_BADPTR);
}

TEST_CASE("remove recompacts without relocating surviving vptrs") {
    BackingStore store;
    PointerTable t(1 << 20);
    auto a = t.insert(10, ElemType::U32, store);  // A: vptr 0, 40B
    auto b = t.insert(4, ElemType::U16, store);   // B: vptr 40, 8B
    auto c = t.insert(3, ElemType::U32, store);   // C: vptr 48, 12B
    REQUIRE(a.vptr == 0);
    REQUIRE(b.vptr == 40);
    REQUIRE(c.vptr == 48);
    REQUIRE(t.used() == 60);

    CHECK(t.remove(40, 0, store) == Status::OK);
    CHECK(t.used() == 52);  // 60 - 8
    REQUIRE(t.entries().size() == 2);
    CHECK(t.entries()[0].vptr == 0);
    CHECK(t.entries()[1].vptr == 48);

    // next vptr comes from the new final entry: 48 + 12
    auto d = t.insert(1, ElemType::U32, store);
    CHECK(d.vptr == 60);

    // exact-match requirement
    CHECK(t.remove(7, 0, store) == Status::ERR_BADPTR);
}

TEST_CASE("empty table accounting") {
    BackingStore store;
    PointerTable t(128);
    CHECK(t.used() == 0);
    CHECK(t.capacity() == 128);
    auto a = t.insert(10, ElemType::U32, store);
    CHECK(t.used() == 40);
    CHECK(t.remove(a.vptr, 0, store) == Status::OK);
    CHECK(t.used() == 0);
}

TEST_CASE("freed address may be re-issued by the generation rule") {
    BackingStore store;
    PointerTable t(1 << 20);
    auto a = t.insert(4, ElemType::U32, store);
    auto b = t.insert(2, ElemType::U32, store);
    CHECK(b.vptr == 16);
    t.remove(b.vptr, 0, store);
    auto c = t.insert(1, ElemType::U8, store);
    CHECK(c.vptr == 16);  // previous entry is A again
}

TEST_CASE("reservations: mutual exclusion and holder rights") {
    BackingStore store;
    PointerTable t(1 << 20);
    auto a = t.insert(4, ElemType::U32, store);

    CHECK(t.reserve(a.vptr, 1) == Status::OK);
    CHECK(t.reserve(a.vptr, 1) == Status::OK);  // idempotent for holder
    CHECK(t.reserve(a.vptr, 2) == Status::ERR_RESERVED);

    CHECK(PointerTable::writable_by(t.entries()[0], 1));
    CHECK(!PointerTable::writable_by(t.entries()[0], 2));

    // non-holder cannot free
    CHECK(t.remove(a.vptr, 2, store) == Status::ERR_RESERVED);
    CHECK(t.entries().size() == 1);

    // release by non-holder fails, by holder succeeds
    CHECK(t.release(a.vptr, 2) == Status::ERR_RESERVED);
    CHECK(t.release(a.vptr, 1) == Status::OK);
    CHECK(t.release(a.vptr, 1) == Status::ERR_RESERVED);  // no longer held
    CHECK(PointerTable::writable_by(t.entries()[0], 2));

    // holder may free a reserved entry
    CHECK(t.reserve(a.vptr, 1) == Status::OK);
    CHECK(t.remove(a.vptr, 1, store) == Status::OK);

    CHECK(t.reserve(123, 1) == Status::ERR_BADPTR);
    CHECK(t.release(123, 1) == Status::ERR_BADPTR);
}

// Independent replay of the generation rule: track (vptr, size) of the
// final entry only, mirroring "previous vptr + previous size".
namespace {
struct VptrRuleReplay {
    std::vector<std::pair<uint32_t, uint32_t>> rows;  // vptr, size
    uint32_t next() const {
        if (rows.empty()) return 0;
        return rows.back().first + rows.back().second;
    }
    void alloc(uint32_t size) { rows.push_back({next(), size}); }
    void free_at(uint32_t vptr) {
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].first == vptr) {
                rows.erase(rows.begin() + i);
                return;
            }
    }
};
}  // namespace

TEST_CASE("randomized alloc/free sequences match the vptr rule replay") {
    std::mt19937_64 rng(99);
    for (int run = 0; run < 50; ++run) {
        BackingStore store;
        PointerTable t(1 << 16);
        VptrRuleReplay replay;
        std::vector<uint32_t> live;

        for (int step = 0; step < 200; ++step) {
            bool do_alloc = live.empty() || rng() % 3 != 0;
            if (do_alloc) {
                ElemType ty = static_cast<ElemType>(rng() % kNumElemTypes);
                uint32_t dim = static_cast<uint32_t>(rng() % 32) + 1;
                auto r = t.insert(dim, ty, store);
                if (r.status != Status::OK) continue;
                CHECK(r.vptr == replay.next());
                replay.alloc(dim * data_size(ty));
                live.push_back(r.vptr);
            } else {
                size_t i = rng() % live.size();
                REQUIRE(t.remove(live[i], 0, store) == Status::OK);
                replay.free_at(live[i]);
                live.erase(live.begin() + i);
            }

            // bookkeeping invariants after every operation
            uint64_t sum = 0;
            for (const auto& e : t.entries()) {
                CHECK(e.size_bytes == e.dim * data_size(e.elem_type));
                sum += e.size_bytes;
            }
            CHECK(sum == t.used());
            CHECK(t.used() <= t.capacity());
            CHECK(store.live_count() == t.entries().size());
        }
    }
}

TEST_CASE("resolve agrees with brute force over random probes") {
    std::mt19937_64 rng(7);
    BackingStore store;
    PointerTable t(4096);
    std::vector<uint32_t> live;

    for (int step = 0; step < 300; ++step) {
        if (live.empty() || rng() % 2) {
            auto r = t.insert(static_cast<uint32_t>(rng() % 16) + 1,
                              static_cast<ElemType>(rng() % kNumElemTypes), store);
            if (r.status == Status::OK) live.push_back(r.vptr);
        } else {
            size_t i = rng() % live.size();
            t.remove(live[i], 0, store);
            live.erase(live.begin() + i);
        }

        for (int probe = 0; probe < 20; ++probe) {
            uint32_t vaddr = static_cast<uint32_t>(rng() % 2048);
            // brute force over the entry list
            bool covered = false;
            bool aligned = false;
            size_t want_idx = 0;
            for (size_t i = 0; i < t.entries().size(); ++i) {
                const auto& e = t.entries()[i];
                if (vaddr >= e.vptr && vaddr < uint64_t(e.vptr) + e.size_bytes) {
                    covered = true;
                    aligned = (vaddr - e.vptr) % data_size(e.elem_type) == 0;
                    want_idx = i;
                    break;
                }
            }
            auto got = t.resolve(vaddr);
            if (covered && aligned) {
                REQUIRE(got.status == Status::OK);
                CHECK(got.index == want_idx);
                CHECK(got.offset == vaddr - t.entries()[want_idx].vptr);
            } else {
                CHECK(got.status == Status::ERR_BADPTR);
            }
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smsim/interconnect.hpp"

using namespace smsim;

namespace {

MasterSignals req_to(uint8_t mem) {
    MasterSignals s;
    s.req = true;
    s.request.sm_addr = mem;
    return s;
}

}  // namespace

TEST_CASE("round robin from counter 0: pe0 beats pe2 on the same module") {
    Crossbar xb(4, 1);
    std::vector<MasterSignals> reqs(4);
    reqs[0] = req_to(0);
    reqs[2] = req_to(0);
    auto out = xb.arbitrate(reqs, 0);
    CHECK(out[0] == GrantOutcome::GRANTED);
    CHECK(out[2] == GrantOutcome::STALLED);
    CHECK(out[1] == GrantOutcome::NONE);
    CHECK(xb.owner(0) == 0);
}

TEST_CASE("counter advances past the winner") {
    Crossbar xb(4, 1);
    std::vector<MasterSignals> reqs(4);
    reqs[0] = req_to(0);
    reqs[2] = req_to(0);
    xb.arbitrate(reqs, 0);  // pe0 wins, counter -> 1

    std::vector<bool> acked{true};
    xb.tick(0, acked);              // busy -> cooldown
    xb.tick(1, std::vector<bool>{false});  // cooldown -> free

    auto out = xb.arbitrate(reqs, 2);
    CHECK(out[2] == GrantOutcome::GRANTED);  // counter at 1 scans 1,2 -> pe2
    CHECK(out[0] == GrantOutcome::STALLED);
}

TEST_CASE("grants to distinct modules are independent") {
    Crossbar xb(4, 2);
    std::vector<MasterSignals> reqs(4);
    reqs[0] = req_to(0);
    reqs[1] = req_to(1);
    auto out = xb.arbitrate(reqs, 0);
    CHECK(out[0] == GrantOutcome::GRANTED);
    CHECK(out[1] == GrantOutcome::GRANTED);
}

TEST_CASE("no requests: no grants, counters unchanged") {
    Crossbar xb(4, 1);
    std::vector<MasterSignals> idle(4);
    auto out = xb.arbitrate(idle, 0);
    for (auto g : out) CHECK(g == GrantOutcome::NONE);

    // counter still at 0: pe0 wins a later tie
    std::vector<MasterSignals> reqs(4);
    reqs[0] = req_to(0);
    reqs[3] = req_to(0);
    auto out2 = xb.arbitrate(reqs, 1);
    CHECK(out2[0] == GrantOutcome::GRANTED);
}

TEST_CASE("sm_addr out of range is rejected immediately") {
    Crossbar xb(2, 2);
    std::vector<MasterSignals> reqs(2);
    reqs[1] = req_to(5);
    auto out = xb.arbitrate(reqs, 0);
    CHECK(out[1] == GrantOutcome::REJECTED);
    CHECK(!xb.owner(0).has_value());
    CHECK(!xb.owner(1).has_value());
}

TEST_CASE("channel released after ack with one idle cycle before regrant") {
    Crossbar xb(2, 1);
    std::vector<MasterSignals> reqs(2);
    reqs[0] = req_to(0);
    auto out = xb.arbitrate(reqs, 0);
    REQUIRE(out[0] == GrantOutcome::GRANTED);

    // transaction in flight through cycle 4; pe1 keeps requesting
    std::vector<MasterSignals> both(2);
    both[0] = req_to(0);
    both[1] = req_to(0);
    std::vector<bool> no_ack{false};
    for (uint64_t c = 1; c <= 3; ++c) {
        auto o = xb.arbitrate(both, c);
        CHECK(o[1] == GrantOutcome::STALLED);
        xb.tick(c, no_ack);
    }

    // ack at cycle 4: released, but cycle 5 stays idle (cooldown)
    auto o4 = xb.arbitrate(both, 4);
    CHECK(o4[1] == GrantOutcome::STALLED);
    xb.tick(4, std::vector<bool>{true});
    CHECK(!xb.owner(0).has_value());

    std::vector<MasterSignals> pe1_only(2);
    pe1_only[1] = req_to(0);
    auto o5 = xb.arbitrate(pe1_only, 5);
    CHECK(o5[1] == GrantOutcome::STALLED);  // idle channel cycle
    xb.tick(5, no_ack);

    auto o6 = xb.arbitrate(pe1_only, 6);
    CHECK(o6[1] == GrantOutcome::GRANTED);
}

TEST_CASE("idle tick is a no-op") {
    Crossbar xb(2, 2);
    std::vector<bool> no_ack{false, false};
    xb.tick(0, no_ack);
    xb.tick(1, no_ack);
    std::vector<MasterSignals> reqs(2);
    reqs[0] = req_to(1);
    auto out = xb.arbitrate(reqs, 2);
    CHECK(out[0] == GrantOutcome::GRANTED);
}

TEST_CASE("fairness: continuous contention rotates grants evenly") {
    const uint32_t n_pes = 4;
    Crossbar xb(n_pes, 1);
    std::vector<MasterSignals> reqs(n_pes);
    for (auto& r : reqs) r = req_to(0);

    std::vector<int> grants(n_pes, 0);
    std::optional<uint32_t> owner;
    uint64_t ack_at = 0;

    // every pe requests every cycle; each transaction lasts 3 cycles
    for (uint64_t c = 0; c < 400; ++c) {
        auto out = xb.arbitrate(reqs, c);
        for (uint32_t p = 0; p < n_pes; ++p)
            if (out[p] == GrantOutcome::GRANTED) {
                ++grants[p];
                owner = p;
                ack_at = c + 2;
            }
        std::vector<bool> acked{owner.has_value() && c == ack_at};
        if (acked[0]) owner.reset();
        xb.tick(c, acked);
    }

    int lo = grants[0], hi = grants[0];
    for (int g : grants) {
        lo = std::min(lo, g);
        hi = std::max(hi, g);
    }
    CHECK(hi - lo <= 1);
    CHECK(lo > 0);
}

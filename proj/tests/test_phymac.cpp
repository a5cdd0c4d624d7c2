#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ntnsim/phymac.hpp"

using namespace ntnsim;

namespace {

TransmissionEvent lora_event(std::uint32_t id, double start, double dur, double rx,
                             int sf, int channel = 0) {
    TransmissionEvent e;
    e.device_id = id;
    e.start_s = start;
    e.duration_s = dur;
    e.payload_bytes = 12;
    e.rx_power_dbm = rx;
    e.sf = sf;
    e.channel = channel;
    return e;
}

} // namespace

TEST_CASE("single clean packet succeeds; weak packet fails detection") {
    MacConfig mac;
    std::vector<TransmissionEvent> ev{lora_event(0, 0.0, 0.1, -120.0, 7)};
    auto out = resolve_collisions(ev, Tech::LoRa, mac);
    CHECK(out[0] == Outcome::Success);

    ev[0].rx_power_dbm = -130.0; // below SF7 sensitivity -127
    out = resolve_collisions(ev, Tech::LoRa, mac);
    CHECK(out[0] == Outcome::BelowSensitivity);
}

TEST_CASE("two equal-power overlapping same-SF packets both collide") {
    MacConfig mac;
    std::vector<TransmissionEvent> ev{lora_event(0, 0.0, 0.1, -120.0, 7),
                                      lora_event(1, 0.05, 0.1, -120.0, 7)};
    const auto out = resolve_collisions(ev, Tech::LoRa, mac);
    CHECK(out[0] == Outcome::Collision);
    CHECK(out[1] == Outcome::Collision);
}

TEST_CASE("capture: a packet 6 dB above the interferer sum survives") {
    MacConfig mac;
    std::vector<TransmissionEvent> ev{lora_event(0, 0.0, 0.1, -114.0, 7),
                                      lora_event(1, 0.05, 0.1, -120.0, 7)};
    const auto out = resolve_collisions(ev, Tech::LoRa, mac);
    CHECK(out[0] == Outcome::Success); // exactly at the 6 dB margin
    CHECK(out[1] == Outcome::Collision);

    ev[0].rx_power_dbm = -114.1; // just below the margin
    const auto out2 = resolve_collisions(ev, Tech::LoRa, mac);
    CHECK(out2[0] == Outcome::Collision);
}

TEST_CASE("different SFs and different channels never interfere") {
    MacConfig mac;
    mac.lora_channels = 2;
    std::vector<TransmissionEvent> ev{lora_event(0, 0.0, 0.1, -120.0, 7, 0),
                                      lora_event(1, 0.0, 0.1, -120.0, 8, 0),
                                      lora_event(2, 0.0, 0.1, -120.0, 7, 1)};
    const auto out = resolve_collisions(ev, Tech::LoRa, mac);
    CHECK(out[0] == Outcome::Success);
    CHECK(out[1] == Outcome::Success);
    CHECK(out[2] == Outcome::Success);
}

TEST_CASE("non-overlapping packets never interfere") {
    MacConfig mac;
    std::vector<TransmissionEvent> ev{lora_event(0, 0.0, 0.1, -120.0, 7),
                                      lora_event(1, 0.1, 0.1, -120.0, 7)};
    const auto out = resolve_collisions(ev, Tech::LoRa, mac);
    CHECK(out[0] == Outcome::Success);
    CHECK(out[1] == Outcome::Success);
}

TEST_CASE("outcomes are invariant under input permutation") {
    MacConfig mac;
    std::mt19937_64 shuffler(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<TransmissionEvent> ev;
    for (std::uint32_t i = 0; i < 200; ++i)
        ev.push_back(lora_event(i, u(shuffler) * 10.0, 0.2 + 0.2 * u(shuffler),
                                -126.0 + 10.0 * u(shuffler), 7 + (int)(u(shuffler) * 3)));
    const auto base = resolve_collisions(ev, Tech::LoRa, mac);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<size_t> perm(ev.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), shuffler);
        std::vector<TransmissionEvent> shuffled;
        for (size_t j : perm) shuffled.push_back(ev[j]);
        const auto out = resolve_collisions(shuffled, Tech::LoRa, mac);
        for (size_t j = 0; j < perm.size(); ++j) CHECK(out[j] == base[perm[j]]);
    }
}

TEST_CASE("cross-SF independence: deleting other-SF events changes nothing") {
    MacConfig mac;
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<TransmissionEvent> ev;
    for (std::uint32_t i = 0; i < 300; ++i)
        ev.push_back(lora_event(i, u(gen) * 20.0, 0.1 + 0.3 * u(gen),
                                -125.0 + 8.0 * u(gen), 7 + (int)(u(gen) * 6)));
    const auto base = resolve_collisions(ev, Tech::LoRa, mac);
    for (int keep_sf = 7; keep_sf <= 12; ++keep_sf) {
        std::vector<TransmissionEvent> sub;
        std::vector<size_t> idx;
        for (size_t i = 0; i < ev.size(); ++i) {
            if (ev[i].sf == keep_sf) {
                sub.push_back(ev[i]);
                idx.push_back(i);
            }
        }
        const auto out = resolve_collisions(sub, Tech::LoRa, mac);
        for (size_t j = 0; j < sub.size(); ++j) CHECK(out[j] == base[idx[j]]);
    }
}

TEST_CASE("removing an interferer never converts success into collision") {
    MacConfig mac;
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<TransmissionEvent> ev;
    for (std::uint32_t i = 0; i < 60; ++i)
        ev.push_back(lora_event(i, u(gen) * 3.0, 0.2 + 0.2 * u(gen),
                                -126.0 + 12.0 * u(gen), 7));
    const auto base = resolve_collisions(ev, Tech::LoRa, mac);
    for (size_t drop = 0; drop < ev.size(); ++drop) {
        std::vector<TransmissionEvent> sub;
        std::vector<size_t> idx;
        for (size_t i = 0; i < ev.size(); ++i) {
            if (i != drop) {
                sub.push_back(ev[i]);
                idx.push_back(i);
            }
        }
        const auto out = resolve_collisions(sub, Tech::LoRa, mac);
        for (size_t j = 0; j < sub.size(); ++j) {
            if (base[idx[j]] == Outcome::Success) CHECK(out[j] == Outcome::Success);
        }
    }
}

TEST_CASE("triple-replica messages: collision needs all replicas hit") {
    MacConfig mac;
    mac.sigfox_channels = 2000;
    TransmissionEvent a, b;
    a.device_id = 0;
    a.start_s = 0.0;
    a.duration_s = 3.0;
    a.payload_bytes = 12;
    a.rx_power_dbm = -120.0;
    a.micro_channels[0] = 1;
    a.micro_channels[1] = 2;
    a.micro_channels[2] = 3;
    b = a;
    b.device_id = 1;
    b.micro_channels[0] = 1;
    b.micro_channels[1] = 5;
    b.micro_channels[2] = 6;

    // Only the first replica pair shares a micro-channel: both survive.
    auto out = resolve_collisions({a, b}, Tech::SigFox, mac);
    CHECK(out[0] == Outcome::Success);
    CHECK(out[1] == Outcome::Success);

    // All three replicas clash: both messages are lost.
    b.micro_channels[1] = 2;
    b.micro_channels[2] = 3;
    out = resolve_collisions({a, b}, Tech::SigFox, mac);
    CHECK(out[0] == Outcome::Collision);
    CHECK(out[1] == Outcome::Collision);

    // Below the fixed detection threshold.
    b.rx_power_dbm = -141.0;
    b.micro_channels[1] = 5;
    out = resolve_collisions({a, b}, Tech::SigFox, mac);
    CHECK(out[1] == Outcome::BelowSensitivity);
}

TEST_CASE("replica timing: staggered messages only clash where they overlap") {
    MacConfig mac;
    TransmissionEvent a, b;
    a.device_id = 0;
    a.start_s = 0.0;
    a.duration_s = 3.0; // replicas at [0,1),[1,2),[2,3)
    a.rx_power_dbm = -120.0;
    a.payload_bytes = 12;
    a.micro_channels[0] = 9;
    a.micro_channels[1] = 9;
    a.micro_channels[2] = 9;
    b = a;
    b.device_id = 1;
    b.start_s = 2.5; // only b's first replica overlaps a's third
    const auto out = resolve_collisions({a, b}, Tech::SigFox, mac);
    CHECK(out[0] == Outcome::Success); // replicas 1 and 2 clean
    CHECK(out[1] == Outcome::Success); // replicas 2 and 3 clean
}

TEST_CASE("collision statistics match the independence oracle") {
    // n messages, aligned in time, c micro-channels: a replica is clean with
    // probability (1-1/c)^(3(n-1)); a message fails only if all three replicas
    // are hit.
    MacConfig mac;
    mac.sigfox_channels = 40;
    const int n = 12, trials = 4000;
    std::mt19937_64 gen(8);
    std::uniform_int_distribution<int> pick(0, mac.sigfox_channels - 1);
    long failures = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<TransmissionEvent> ev(n);
        for (int i = 0; i < n; ++i) {
            ev[i].device_id = i;
            ev[i].start_s = 0.0;
            ev[i].duration_s = 3.0;
            ev[i].rx_power_dbm = -120.0;
            ev[i].payload_bytes = 12;
            for (int r = 0; r < 3; ++r) ev[i].micro_channels[r] = pick(gen);
        }
        const auto out = resolve_collisions(ev, Tech::SigFox, mac);
        for (const auto& o : out)
            if (o == Outcome::Collision) ++failures;
    }
    // With aligned starts the replicas form three synchronized slots, so a
    // replica can only be hit by the same-slot replica of another message.
    const double p_slot_hit = 1.0 - std::pow(1.0 - 1.0 / mac.sigfox_channels, n - 1);
    const double p_fail = std::pow(p_slot_hit, 3);
    const double got = failures / (double)(n * trials);
    // Within-trial correlation inflates the variance slightly; allow extra slack
    // beyond the i.i.d. three-sigma band.
    const double sigma = std::sqrt(p_fail * (1.0 - p_fail) / (n * trials));
    CHECK(std::abs(got - p_fail) < 5.0 * sigma + 0.005);
}

TEST_CASE("single-resource slotted transmissions collide on any overlap") {
    MacConfig mac;
    TransmissionEvent a, b;
    a.device_id = 0;
    a.start_s = 0.0;
    a.duration_s = 0.5;
    a.rx_power_dbm = -100.0;
    a.payload_bytes = 12;
    a.repetitions = 1;
    a.resource = 0;
    b = a;
    b.device_id = 1;
    b.start_s = 0.4;

    auto out = resolve_collisions({a, b}, Tech::NBIoT, mac);
    CHECK(out[0] == Outcome::Collision);
    CHECK(out[1] == Outcome::Collision);

    b.resource = 1; // different uplink resource
    out = resolve_collisions({a, b}, Tech::NBIoT, mac);
    CHECK(out[0] == Outcome::Success);
    CHECK(out[1] == Outcome::Success);

    b.resource = 0;
    b.start_s = 0.5; // back-to-back, no overlap
    out = resolve_collisions({a, b}, Tech::NBIoT, mac);
    CHECK(out[0] == Outcome::Success);
    CHECK(out[1] == Outcome::Success);

    b.repetitions = 128;
    b.rx_power_dbm = -125.0; // below even the 128-repetition sensitivity
    out = resolve_collisions({a, b}, Tech::NBIoT, mac);
    CHECK(out[1] == Outcome::BelowSensitivity);
}

TEST_CASE("uplink resource count and slot duration") {
    MacConfig mac;
    CHECK(nbiot_resource_count(default_profile(Tech::NBIoT), mac) == 3);
    CHECK(nbiot_slot_s(12, mac) == doctest::Approx(8.0 * 12 / 90e3).epsilon(1e-12));
}

// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>

#include "coopnet/channel.hpp"
#include "doctest.h"
#include "support/params.hpp"

using namespace coopnet;

namespace {

// Scalar channel whose decode time is exactly t (capacity between the t and
// t-1 thresholds).
std::complex<double> channel_for_decode_time(int t, const SystemParams& params) {
    const double c = params.block_length * params.rate / (t - 0.5);
    const double gain = std::exp2(c) - 1.0;
    return {std::sqrt(gain / params.rho_s), 0.0};
}

}  // namespace

TEST_CASE("parameter validation names the violated constraint") {
    CHECK_THROWS_WITH_AS(make_params(0, 1, 1, 10, 1.0, 1.0),
                         "params: relay_count must be in [1, 64]", std::invalid_argument);
    CHECK_THROWS_AS(make_params(4, 5, 1, 10, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(4, 0, 1, 10, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(4, 2, 0, 10, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(4, 2, 9, 10, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(4, 2, 2, 0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(4, 2, 2, 10, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(4, 2, 2, 10, 1.0, -2.0), std::invalid_argument);

    SystemParams p = make_params(3, 1, 2, 10, 1.0, 1.0);
    p.relay_powers = {1.0, 2.0};  // must match relay_count
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.relay_powers = {1.0, 2.0, 0.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.relay_powers = {1.0, 2.0, 3.0};
    CHECK_NOTHROW(p.validate());
    CHECK(p.relay_power(2) == 3.0);
    p.relay_powers.clear();
    CHECK(p.relay_power(2) == p.rho_s);
}

TEST_CASE("channel draws are reproducible and follow the declared order") {
    SystemParams p = make_params(5, 2, 3, 100, 2.0, 4.0);
    p.sigma2_sr = 7.0;
    p.sigma2_d = 0.25;

    const ChannelRealization a = draw_channel(p, SeedStream{11, 3});
    const ChannelRealization b = draw_channel(p, SeedStream{11, 3});
    CHECK(a.h_sr == b.h_sr);
    CHECK(a.h_sd == b.h_sd);
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 5; ++m) CHECK(a.h_rd(i, m) == b.h_rd(i, m));

    CHECK(static_cast<int>(a.h_sr.size()) == 5);
    CHECK(static_cast<int>(a.h_sd.size()) == 3);
    CHECK(a.h_rd.rows() == 3);
    CHECK(a.h_rd.cols() == 5);

    // Draw order contract: relays to source, then destination, then the
    // destination matrix relay-major.
    RandomStream rs(SeedStream{11, 3});
    for (int m = 0; m < 5; ++m) CHECK(a.h_sr[m] == rs.next_complex_gaussian(7.0));
    for (int i = 0; i < 3; ++i) CHECK(a.h_sd[i] == rs.next_complex_gaussian(0.25));
    for (int m = 0; m < 5; ++m)
        for (int i = 0; i < 3; ++i) CHECK(a.h_rd(i, m) == rs.next_complex_gaussian(0.25));
}

TEST_CASE("decode time thresholds") {
    const SystemParams p = make_params(1, 1, 1, 100, 2.0, 1.0);

    CHECK(!decode_time({0.0, 0.0}, p));

    // Capacity just above 2 bits/use decodes at the last use; just below
    // cannot decode within the block.
    const double edge = std::sqrt(std::exp2(2.0) - 1.0);
    CHECK(decode_time({edge * 1.0001, 0.0}, p) == 100);
    CHECK(!decode_time({edge * 0.9999, 0.0}, p));

    // Gain beyond 2^(N R) decodes at the first use, never at 0.
    CHECK(decode_time({1e40, 0.0}, p) == 1);

    // Monotone: more gain never decodes later.
    RandomStream rs(SeedStream{21, 0});
    for (int i = 0; i < 2000; ++i) {
        const auto h = rs.next_complex_gaussian(1.0);
        const auto t_small = decode_time(h, p);
        const auto t_big = decode_time(h * 2.0, p);
        if (t_small) {
            REQUIRE(t_big);
            CHECK(*t_big <= *t_small);
        }
    }
}

TEST_CASE("listening outcome: threshold, ties, and censoring") {
    SystemParams p = make_params(5, 2, 2, 200, 1.5, 1.0);
    ChannelRealization chan;
    chan.h_sd.assign(2, {1.0, 0.0});
    chan.h_rd = ComplexMatrix(2, 5);
    chan.h_sr = {channel_for_decode_time(5, p), channel_for_decode_time(3, p),
                 channel_for_decode_time(9, p), channel_for_decode_time(3, p),
                 std::complex<double>(0.0, 0.0)};

    const ListeningOutcome out = listening_outcome(chan, p);
    REQUIRE(out.decode_time.size() == 5);
    CHECK(*out.decode_time[0] == 5);
    CHECK(*out.decode_time[1] == 3);
    CHECK(*out.decode_time[2] == 9);
    CHECK(*out.decode_time[3] == 3);
    CHECK(!out.decode_time[4]);

    // Second decode happens at use 3; both tied relays join.
    REQUIRE(out.n1);
    CHECK(*out.n1 == 3);
    CHECK(out.decoding_set == std::vector<int>{1, 3});

    p.decode_threshold = 3;
    const ListeningOutcome k3 = listening_outcome(chan, p);
    REQUIRE(k3.n1);
    CHECK(*k3.n1 == 5);
    CHECK(k3.decoding_set == std::vector<int>{0, 1, 3});

    p.decode_threshold = 5;  // only four relays ever decode
    const ListeningOutcome k5 = listening_outcome(chan, p);
    CHECK(!k5.n1);
    CHECK(k5.decoding_set.empty());
}

TEST_CASE("listening outcome invariants over random draws") {
    const SystemParams p = make_params(8, 3, 2, 200, 2.0, 10.0);
    int completed = 0;
    for (std::uint64_t t = 0; t < 3000; ++t) {
        const ChannelRealization chan = draw_channel(p, SeedStream{77, t});
        const ListeningOutcome out = listening_outcome(chan, p);
        if (!out.n1) {
            int finite = 0;
            for (const auto& dt : out.decode_time) finite += dt.has_value();
            CHECK(finite < p.decode_threshold);
            CHECK(out.decoding_set.empty());
            continue;
        }
        ++completed;
        CHECK(*out.n1 >= 1);
        CHECK(*out.n1 <= p.block_length);
        CHECK(static_cast<int>(out.decoding_set.size()) >= p.decode_threshold);
        for (std::size_t i = 1; i < out.decoding_set.size(); ++i)
            CHECK(out.decoding_set[i - 1] < out.decoding_set[i]);
        for (int m = 0; m < p.relay_count; ++m) {
            const bool in_set = std::find(out.decoding_set.begin(), out.decoding_set.end(), m) !=
                                out.decoding_set.end();
            if (in_set)
                CHECK(*out.decode_time[m] <= *out.n1);
            else
                CHECK((!out.decode_time[m] || *out.decode_time[m] > *out.n1));
        }
    }
    CHECK(completed > 0);
}

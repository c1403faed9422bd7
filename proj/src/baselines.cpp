// SPDX-License-Identifier: Apache-2.0
#include "coopnet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace coopnet {

namespace {

double direct_gain(const ChannelRealization& chan, const SystemParams& params) {
    double g = 0.0;
    for (const auto& h : chan.h_sd) g += std::norm(h);
    return params.rho_s * g;
}

double relay_column_gain(const ChannelRealization& chan, const SystemParams& params, int m) {
    double g = 0.0;
    for (int i = 0; i < params.rx_antennas; ++i) g += std::norm(chan.h_rd(i, m));
    return params.relay_power(m) * g;
}

}  // namespace

double mi_direct(const ChannelRealization& chan, const SystemParams& params) {
    return std::log2(1.0 + direct_gain(chan, params));
}

double mi_df_sdiv(const ChannelRealization& chan, const SystemParams& params) {
    const double sd = direct_gain(chan, params);
    double combined = sd;
    for (int m = 0; m < params.relay_count; ++m) {
        // Relay m decodes iff half a block on the source link carries R.
        const double sr = params.rho_s * std::norm(chan.h_sr[m]);
        if (0.5 * std::log2(1.0 + sr) >= params.rate) combined += relay_column_gain(chan, params, m);
    }
    return 0.5 * std::log2(1.0 + sd) + 0.5 * std::log2(1.0 + combined);
}

double mi_af_sdiv(const ChannelRealization& chan, const SystemParams& params) {
    double total = direct_gain(chan, params);
    for (int m = 0; m < params.relay_count; ++m) {
        const double a = params.rho_s * std::norm(chan.h_sr[m]);
        const double b = relay_column_gain(chan, params, m);
        total += a * b / (a + b + 1.0);
    }
    return 0.5 * std::log2(1.0 + total);
}

double mi_ddf(const ChannelRealization& chan, const SystemParams& params) {
    const int n = params.block_length;

    // (activation time, relay) events; relay m transmits for uses > t_m.
    std::vector<std::pair<int, int>> events;
    for (int m = 0; m < params.relay_count; ++m)
        if (const auto t = decode_time(chan.h_sr[m], params)) events.emplace_back(*t, m);
    std::sort(events.begin(), events.end());

    double energy = direct_gain(chan, params);
    double bits = 0.0;
    int uses_done = 0;
    for (std::size_t e = 0; e < events.size();) {
        const int t = events[e].first;
        bits += (t - uses_done) * std::log2(1.0 + energy);
        uses_done = t;
        for (; e < events.size() && events[e].first == t; ++e)
            energy += relay_column_gain(chan, params, events[e].second);
    }
    bits += (n - uses_done) * std::log2(1.0 + energy);
    return bits / n;
}

double mi_df_msc_rand(const ChannelRealization& chan, const ListeningOutcome& outcome,
                      RandomStream& rs, const SystemParams& params) {
    const int candidates = static_cast<int>(outcome.decoding_set.size()) + 1;
    const NodeSelection sel = random_selection(rs, candidates, params.rx_antennas);
    return mutual_information_msc(chan, outcome, sel, params);
}

}  // namespace coopnet

// SPDX-License-Identifier: Apache-2.0
#include "coopnet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coopnet {

void SystemParams::validate() const {
    if (relay_count < 1 || relay_count > 64)
        throw std::invalid_argument("params: relay_count must be in [1, 64]");
    if (decode_threshold < 1 || decode_threshold > relay_count)
        throw std::invalid_argument("params: need 1 <= decode_threshold <= relay_count");
    if (rx_antennas < 1 || rx_antennas > 8)
        throw std::invalid_argument("params: rx_antennas must be in [1, 8]");
    if (block_length < 1)
        throw std::invalid_argument("params: block_length must be >= 1");
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("params: rate must be finite and > 0");
    if (!(rho_s > 0.0) || !std::isfinite(rho_s))
        throw std::invalid_argument("params: rho_s must be finite and > 0");
    if (!relay_powers.empty()) {
        if (static_cast<int>(relay_powers.size()) != relay_count)
            throw std::invalid_argument("params: relay_powers must have relay_count entries");
        for (double p : relay_powers)
            if (!(p > 0.0) || !std::isfinite(p))
                throw std::invalid_argument("params: relay powers must be finite and > 0");
    }
    if (!(sigma2_sr > 0.0) || !std::isfinite(sigma2_sr))
        throw std::invalid_argument("params: sigma2_sr must be finite and > 0");
    if (!(sigma2_d > 0.0) || !std::isfinite(sigma2_d))
        throw std::invalid_argument("params: sigma2_d must be finite and > 0");
}

ChannelRealization draw_channel(const SystemParams& params, RandomStream& rs) {
    const int m_count = params.relay_count;
    const int nr = params.rx_antennas;
    ChannelRealization chan;
    chan.h_sr.resize(m_count);
    chan.h_sd.resize(nr);
    chan.h_rd = ComplexMatrix(nr, m_count);
    for (int m = 0; m < m_count; ++m) chan.h_sr[m] = rs.next_complex_gaussian(params.sigma2_sr);
    for (int i = 0; i < nr; ++i) chan.h_sd[i] = rs.next_complex_gaussian(params.sigma2_d);
    for (int m = 0; m < m_count; ++m)
        for (int i = 0; i < nr; ++i) chan.h_rd(i, m) = rs.next_complex_gaussian(params.sigma2_d);
    return chan;
}

ChannelRealization draw_channel(const SystemParams& params, SeedStream stream) {
    RandomStream rs(stream);
    return draw_channel(params, rs);
}

std::optional<int> decode_time(std::complex<double> h_sr, const SystemParams& params) {
    const double gain = params.rho_s * std::norm(h_sr);
    const double capacity = std::log1p(gain) / std::log(2.0);
    if (!(capacity > 0.0)) return std::nullopt;
    const double uses = std::ceil(params.block_length * params.rate / capacity);
    // Compare in floating point before the int cast; uses may be inf.
    if (!(uses <= static_cast<double>(params.block_length))) return std::nullopt;
    return std::max(1, static_cast<int>(uses));
}

ListeningOutcome listening_outcome(const ChannelRealization& chan, const SystemParams& params) {
    ListeningOutcome out;
    out.decode_time.reserve(chan.h_sr.size());
    std::vector<int> finite;
    for (const auto& h : chan.h_sr) {
        out.decode_time.push_back(decode_time(h, params));
        if (out.decode_time.back()) finite.push_back(*out.decode_time.back());
    }
    if (static_cast<int>(finite.size()) < params.decode_threshold) return out;

    // n1 is the K-th order statistic of the finite decode times.
    std::nth_element(finite.begin(), finite.begin() + (params.decode_threshold - 1), finite.end());
    out.n1 = finite[params.decode_threshold - 1];
    for (int m = 0; m < static_cast<int>(out.decode_time.size()); ++m)
        if (out.decode_time[m] && *out.decode_time[m] <= *out.n1) out.decoding_set.push_back(m);
    return out;
}

}  // namespace coopnet

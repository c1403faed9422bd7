// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "coopnet/numerics.hpp"
#include "coopnet/rng.hpp"

namespace coopnet {

// Scenario parameters shared by simulation and analysis.
//
//   relay_count       M, half-duplex relays
//   decode_threshold  K, relays that must decode before cooperation starts
//   rx_antennas       Nr, destination antennas
//   block_length      N, channel uses per codeword
//   rate              R, target rate in bits per channel use
//   rho_s             source transmit SNR (linear)
//   relay_powers      per-relay transmit SNR (linear); empty means all rho_s
//   sigma2_sr         source-to-relay channel variance (linear)
//   sigma2_d          source/relay-to-destination channel variance (linear)
struct SystemParams {
    int relay_count = 0;
    int decode_threshold = 0;
    int rx_antennas = 0;
    int block_length = 0;
    double rate = 0.0;
    double rho_s = 0.0;
    std::vector<double> relay_powers;
    double sigma2_sr = 1.0;
    double sigma2_d = 1.0;

    // Throws std::invalid_argument naming the violated constraint.
    void validate() const;

    // Transmit SNR of relay m (0-based).
    double relay_power(int m) const {
        return relay_powers.empty() ? rho_s : relay_powers[static_cast<std::size_t>(m)];
    }
};

// One block-fading realization. h_rd is Nr x M: column m is relay m's vector
// channel to the destination.
struct ChannelRealization {
    std::vector<std::complex<double>> h_sr;  // M source-to-relay scalars
    std::vector<std::complex<double>> h_sd;  // Nr source-to-destination entries
    ComplexMatrix h_rd;                      // Nr x M relay-to-destination
};

// Result of the listening phase.
//
//   decode_time   per relay: first use index at which it can decode, or
//                 nullopt when decoding does not happen within the block
//   n1            use index at which the K-th relay has decoded (nullopt when
//                 fewer than K relays decode within N)
//   decoding_set  ascending relay indices with decode_time <= n1; ties at n1
//                 all join, so the set may exceed K relays
struct ListeningOutcome {
    std::vector<std::optional<int>> decode_time;
    std::optional<int> n1;
    std::vector<int> decoding_set;
};

// Draws one realization from the given stream. Draw order is part of the
// reproducibility contract: h_sr[0..M-1], then h_sd[0..Nr-1], then h_rd
// column by column (relay-major, antenna-minor).
ChannelRealization draw_channel(const SystemParams& params, RandomStream& rs);
ChannelRealization draw_channel(const SystemParams& params, SeedStream stream);

// Smallest l with l * log2(1 + rho_s |h|^2) >= N * R, or nullopt when no
// l <= N works. Always >= 1 when engaged.
std::optional<int> decode_time(std::complex<double> h_sr, const SystemParams& params);

ListeningOutcome listening_outcome(const ChannelRealization& chan, const SystemParams& params);

}  // namespace coopnet

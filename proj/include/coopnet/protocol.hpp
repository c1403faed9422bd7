// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopnet/channel.hpp"
#include "coopnet/numerics.hpp"
#include "coopnet/rng.hpp"

namespace coopnet {

// Thrown when a requested enumeration would exceed the configured cap.
struct EnumerationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// A cooperative-phase transmit set, stored as strictly increasing candidate
// positions. Position 0 is the source; position j >= 1 is decoding_set[j-1]
// (relays in ascending index order). Size is min(rx_antennas, candidates).
struct NodeSelection {
    std::vector<int> selected;
};

// All size-min(rx_antennas, candidate_count) position subsets in
// lexicographic order. Throws EnumerationCapError before enumerating when
// the subset count exceeds cap.
std::vector<NodeSelection> enumerate_selections(int candidate_count, int rx_antennas,
                                                std::uint64_t cap = kDefaultEnumerationCap);

// Destination-side channel columns of the selected nodes, in selection order.
// Relay columns are scaled by sqrt(relay_power / rho_s) so that
// capacity_logdet(selection_matrix(...), rho_s) equals the cooperative-phase
// log-determinant with per-node transmit powers.
ComplexMatrix selection_matrix(const ChannelRealization& chan,
                               const std::vector<int>& decoding_set,
                               const NodeSelection& selection, const SystemParams& params);

struct OptimalSelection {
    NodeSelection selection;
    double coop_bits = 0.0;  // cooperative-phase log2 det at the argmax
};

// Argmax of the cooperative-phase log-determinant over all candidate
// selections. Comparison is strict, so ties resolve to the lexicographically
// smallest selection. Requires a non-empty decoding set.
OptimalSelection optimal_selection(const ChannelRealization& chan,
                                   const std::vector<int>& decoding_set,
                                   const SystemParams& params,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// Uniform over the same selection list enumerate_selections produces, drawn
// by combinatorial unranking (no list is materialized).
NodeSelection random_selection(RandomStream& rs, int candidate_count, int rx_antennas);

// Block mutual information of the two-phase protocol in bits per use:
//   (n1 * log2(1 + rho_s ||h_sd||^2) + (N - n1) * coop_logdet) / N.
// Requires outcome.n1; with n1 == N the cooperative term vanishes and the
// result is the direct-link term exactly.
double mutual_information_msc(const ChannelRealization& chan, const ListeningOutcome& outcome,
                              const NodeSelection& selection, const SystemParams& params);

// Outage is mutual information strictly below the target rate.
inline bool outage_indicator(double mutual_information, double rate) {
    return mutual_information < rate;
}

// Wire format of the destination feedback: one activation bit per node,
// position 0 = source, position 1 + m = relay m. The k-th set bit (scanning
// from position 0) carries codeword row k in the cooperative phase.
struct FeedbackPattern {
    std::vector<std::uint8_t> bits;  // size relay_count + 1, values 0/1

    // ASCII '0'/'1' string, position 0 first.
    std::string to_string() const;
};

FeedbackPattern feedback_pattern_from_string(const std::string& text);

// Maps a selection over decoding-set positions to node activation bits.
// Throws std::invalid_argument when a selected position has no relay in the
// decoding set or a relay index is out of range.
FeedbackPattern encode_feedback_pattern(const NodeSelection& selection,
                                        const std::vector<int>& decoding_set, int relay_count);

struct DecodedSelection {
    bool source_selected = false;
    std::vector<int> relay_ids;  // ascending relay indices
};

// Set bits of a pattern, source flagged separately. Throws
// std::invalid_argument when no bit is set.
DecodedSelection decode_feedback_pattern(const FeedbackPattern& pattern);

// Inverse of encode_feedback_pattern given the decoding set that produced the
// pattern. Throws std::invalid_argument when a relay is not in the set.
NodeSelection selection_from_decoded(const DecodedSelection& decoded,
                                     const std::vector<int>& decoding_set);

}  // namespace coopnet

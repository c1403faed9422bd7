// SPDX-License-Identifier: Apache-2.0
#include "coopnet/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace coopnet {

namespace {

// C(n, k) for n <= 65 without the 64-limit of the public table; intermediate
// products need 128 bits.
std::uint64_t subset_count(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= static_cast<unsigned>(n - k + i);
        r /= static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(r);
}

int selection_size(int candidate_count, int rx_antennas) {
    return std::min(rx_antennas, candidate_count);
}

// Writes the destination columns of the nodes at the given candidate
// positions. Shared by the optimizer and the mutual-information evaluation so
// both see bit-identical values for the same selection.
void fill_selection_columns(const ChannelRealization& chan, const std::vector<int>& decoding_set,
                            const int* positions, int count, const SystemParams& params,
                            ComplexMatrix& out) {
    const int nr = params.rx_antennas;
    for (int c = 0; c < count; ++c) {
        const int pos = positions[c];
        if (pos == 0) {
            for (int i = 0; i < nr; ++i) out(i, c) = chan.h_sd[i];
        } else {
            if (pos - 1 >= static_cast<int>(decoding_set.size()))
                throw std::invalid_argument("selection: position has no decoding-set relay");
            const int relay = decoding_set[pos - 1];
            const double scale = std::sqrt(params.relay_power(relay) / params.rho_s);
            for (int i = 0; i < nr; ++i) out(i, c) = scale * chan.h_rd(i, relay);
        }
    }
}

// Lexicographic iteration over size-k subsets of {0, .., n-1}.
template <typename Visit>
void for_each_subset(int n, int k, Visit&& visit) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void check_cap(int candidate_count, int k, std::uint64_t cap) {
    const std::uint64_t total = subset_count(candidate_count, k);
    if (total > cap)
        throw EnumerationCapError("selection enumeration: " + std::to_string(total) +
                                  " subsets exceed cap " + std::to_string(cap));
}

}  // namespace

std::vector<NodeSelection> enumerate_selections(int candidate_count, int rx_antennas,
                                                std::uint64_t cap) {
    if (candidate_count < 1) throw std::invalid_argument("enumerate_selections: no candidates");
    const int k = selection_size(candidate_count, rx_antennas);
    check_cap(candidate_count, k, cap);
    std::vector<NodeSelection> all;
    all.reserve(subset_count(candidate_count, k));
    for_each_subset(candidate_count, k, [&](const std::vector<int>& idx) {
        all.push_back(NodeSelection{idx});
    });
    return all;
}

ComplexMatrix selection_matrix(const ChannelRealization& chan, const std::vector<int>& decoding_set,
                               const NodeSelection& selection, const SystemParams& params) {
    ComplexMatrix out(params.rx_antennas, static_cast<int>(selection.selected.size()));
    fill_selection_columns(chan, decoding_set, selection.selected.data(),
                           static_cast<int>(selection.selected.size()), params, out);
    return out;
}

OptimalSelection optimal_selection(const ChannelRealization& chan,
                                   const std::vector<int>& decoding_set,
                                   const SystemParams& params, std::uint64_t cap) {
    const int candidates = static_cast<int>(decoding_set.size()) + 1;
    const int k = selection_size(candidates, params.rx_antennas);
    check_cap(candidates, k, cap);

    ComplexMatrix buffer(params.rx_antennas, k);
    OptimalSelection best;
    bool first = true;
    for_each_subset(candidates, k, [&](const std::vector<int>& idx) {
        fill_selection_columns(chan, decoding_set, idx.data(), k, params, buffer);
        const double bits = capacity_logdet(buffer, params.rho_s);
        if (first || bits > best.coop_bits) {
            best.selection.selected = idx;
            best.coop_bits = bits;
            first = false;
        }
    });
    return best;
}

NodeSelection random_selection(RandomStream& rs, int candidate_count, int rx_antennas) {
    if (candidate_count < 1) throw std::invalid_argument("random_selection: no candidates");
    const int k = selection_size(candidate_count, rx_antennas);
    std::uint64_t rank = rs.next_below(subset_count(candidate_count, k));

    // Combinatorial unranking in the same lexicographic order as enumeration.
    NodeSelection sel;
    sel.selected.reserve(k);
    int remaining = k;
    for (int pos = 0; pos < candidate_count && remaining > 0; ++pos) {
        const std::uint64_t with_pos = subset_count(candidate_count - 1 - pos, remaining - 1);
        if (rank < with_pos) {
            sel.selected.push_back(pos);
            --remaining;
        } else {
            rank -= with_pos;
        }
    }
    return sel;
}

double mutual_information_msc(const ChannelRealization& chan, const ListeningOutcome& outcome,
                              const NodeSelection& selection, const SystemParams& params) {
    if (!outcome.n1)
        throw std::invalid_argument("mutual_information_msc: listening phase did not complete");
    const int n = params.block_length;
    const int n1 = *outcome.n1;

    double direct_gain = 0.0;
    for (const auto& h : chan.h_sd) direct_gain += std::norm(h);
    const double direct_bits = std::log2(1.0 + params.rho_s * direct_gain);
    if (n1 == n) return direct_bits;

    const ComplexMatrix cols = selection_matrix(chan, outcome.decoding_set, selection, params);
    const double coop_bits = capacity_logdet(cols, params.rho_s);
    return (n1 * direct_bits + (n - n1) * coop_bits) / n;
}

std::string FeedbackPattern::to_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

FeedbackPattern feedback_pattern_from_string(const std::string& text) {
    if (text.size() < 2)
        throw std::invalid_argument("feedback pattern: need at least source + one relay bit");
    FeedbackPattern p;
    p.bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("feedback pattern: characters must be '0' or '1'");
        p.bits.push_back(ch == '1' ? 1 : 0);
    }
    return p;
}

FeedbackPattern encode_feedback_pattern(const NodeSelection& selection,
                                        const std::vector<int>& decoding_set, int relay_count) {
    FeedbackPattern p;
    p.bits.assign(static_cast<std::size_t>(relay_count) + 1, 0);
    for (int pos : selection.selected) {
        if (pos == 0) {
            p.bits[0] = 1;
            continue;
        }
        if (pos - 1 >= static_cast<int>(decoding_set.size()))
            throw std::invalid_argument("encode_feedback_pattern: selected relay not in decoding set");
        const int relay = decoding_set[pos - 1];
        if (relay < 0 || relay >= relay_count)
            throw std::invalid_argument("encode_feedback_pattern: relay index out of range");
        p.bits[static_cast<std::size_t>(relay) + 1] = 1;
    }
    return p;
}

DecodedSelection decode_feedback_pattern(const FeedbackPattern& pattern) {
    DecodedSelection d;
    for (std::size_t i = 0; i < pattern.bits.size(); ++i) {
        if (!pattern.bits[i]) continue;
        if (i == 0)
            d.source_selected = true;
        else
            d.relay_ids.push_back(static_cast<int>(i) - 1);
    }
    if (!d.source_selected && d.relay_ids.empty())
        throw std::invalid_argument("decode_feedback_pattern: no node selected");
    return d;
}

NodeSelection selection_from_decoded(const DecodedSelection& decoded,
                                     const std::vector<int>& decoding_set) {
    NodeSelection sel;
    if (decoded.source_selected) sel.selected.push_back(0);
    for (int relay : decoded.relay_ids) {
        const auto it = std::lower_bound(decoding_set.begin(), decoding_set.end(), relay);
        if (it == decoding_set.end() || *it != relay)
            throw std::invalid_argument("selection_from_decoded: relay not in decoding set");
        sel.selected.push_back(static_cast<int>(it - decoding_set.begin()) + 1);
    }
    return sel;
}

}  // namespace coopnet

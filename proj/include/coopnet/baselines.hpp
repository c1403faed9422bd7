// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "coopnet/channel.hpp"
#include "coopnet/protocol.hpp"
#include "coopnet/rng.hpp"

namespace coopnet {

// Non-cooperative direct link over the whole block.
double mi_direct(const ChannelRealization& chan, const SystemParams& params);

// Repetition decode-and-forward with selection diversity: the source
// transmits for the first half block; relays that can decode from it repeat
// the codeword in the second half while the source keeps transmitting, and
// the destination combines coherently.
double mi_df_sdiv(const ChannelRealization& chan, const SystemParams& params);

// Repetition amplify-and-forward: every relay scales and forwards its first
// half-block observation. Each relay path contributes the usual two-hop
// effective SNR a*b / (a + b + 1).
double mi_af_sdiv(const ChannelRealization& chan, const SystemParams& params);

// Dynamic decode-and-forward: relay m starts transmitting at the first use
// after it has accumulated enough mutual information from the source; the
// per-use rate at the destination grows as relays join. Evaluated exactly in
// O(M log M) by summing constant-rate segments between activation events.
double mi_ddf(const ChannelRealization& chan, const SystemParams& params);

// Multi-stream cooperation with a uniformly random selection instead of the
// log-det maximizer; the listening phase is identical. Consumes randomness
// from rs after the channel draw. Requires outcome.n1.
double mi_df_msc_rand(const ChannelRealization& chan, const ListeningOutcome& outcome,
                      RandomStream& rs, const SystemParams& params);

}  // namespace coopnet

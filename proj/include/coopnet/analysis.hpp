// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "coopnet/channel.hpp"

namespace coopnet {

// P(fewer than decode_threshold relays have decoded by use l), 1 <= l <= N.
// A relay decodes by l iff its source-link gain clears (2^(NR/l) - 1)/rho_s,
// an exponential tail event, so the count is binomial.
double phi(int l, const SystemParams& params);

// d/d(alpha) of phi evaluated at the listening fraction alpha = l/N in (0, 1).
// The binomial sum telescopes to a single term; the result is always <= 0
// (more listening time cannot hurt decoding).
double phi_derivative(double alpha, const SystemParams& params);

// Closed-form upper bound on the outage probability of the optimized
// multi-stream protocol: the no-cooperation term plus the worst listening
// fraction on a 0.01-step grid of the weighted cooperative term. Clamped to
// [0, 1].
double outage_upper_bound(const SystemParams& params);

struct DmtPoint {
    double r = 0.0;  // multiplexing gain
    double d = 0.0;  // diversity order
};

// Diversity order of the optimized multi-stream protocol at fixed
// decode_threshold k: min of the listening-limited and cooperation-limited
// exponents. Piecewise in r with knees at r = theta/(theta+1).
double dmt_msc(double r, int k, int m, int nr);

// Continuous-relaxation stationary point for the best decode threshold as a
// function of r; a reporting aid, not used to compute dmt_msc_opt.
double k_star(double r, int m, int nr);

struct OptimizedDmt {
    double d = 0.0;
    int k = 1;  // smallest threshold attaining d
};

// Envelope over k = 1..m of dmt_msc (exhaustive scan; the rounded k_star
// candidates are inside the scan range once clamped).
OptimizedDmt dmt_msc_opt(double r, int m, int nr);

// Dynamic decode-and-forward diversity order (three-branch ladder).
double dmt_ddf(double r, int m, int nr);

// Repetition selection-diversity order, same for DF and AF variants.
double dmt_sdiv(double r, int m, int nr);

// Throughput-reliability coefficients on segment z of the optimized
// protocol's tradeoff curve: for 0 <= z < min(nr, k+1),
//   c = k + 1 + nr - (2z + 1),  g = (k+1) nr - z (z+1),  t = g / c.
struct TrtCoefficients {
    int z = 0;
    int c = 0;
    int g = 0;
    double t = 0.0;
};

TrtCoefficients trt_coefficients(int z, int k, int nr);

// Horizontal SNR gap between outage curves at rates R and R + delta_r on
// segment z: 3 * delta_r / t(z) dB (3 dB per SNR doubling).
double predicted_snr_shift_db(double delta_r_bits, int z, int k, int nr);

}  // namespace coopnet

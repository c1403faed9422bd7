// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopnet/channel.hpp"
#include "coopnet/protocol.hpp"

namespace coopnet {

enum class Scheme { Direct, DfSdiv, AfSdiv, Ddf, DfMscRand, DfMscOpt };

const char* scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(const std::string& name);

// Thrown when a root search cannot bracket its target in the allowed range.
struct BracketingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the Monte-Carlo outage curve fails its sanity direction check.
struct MonotonicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrialResult {
    double mi = 0.0;
    bool outage = false;
    std::optional<int> n1;          // multi-stream schemes only
    std::vector<int> decoding_set;  // multi-stream schemes only
    NodeSelection selection;        // multi-stream schemes only, empty otherwise
};

// Simulates one block. The stream is a pure function of (master_seed,
// trial_index): results are identical however trials are scheduled, and the
// channel draws coincide across schemes, rates, and SNR points sharing a
// master seed (common random numbers). When fewer relays than the threshold
// decode within the block, multi-stream schemes fall back to the direct link.
TrialResult run_trial(Scheme scheme, const SystemParams& params, std::uint64_t trial_index,
                      std::uint64_t master_seed);

struct EstimateWithCI {
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    double p_out = 0.0;
    double ci_low = 0.0;   // 95% Wilson interval
    double ci_high = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
void wilson_interval(std::uint64_t successes, std::uint64_t trials, double& low, double& high);

// Monte-Carlo outage estimate over trial indices [0, trials). worker_count
// only partitions the index range; the counts it produces are identical for
// any worker_count >= 1.
EstimateWithCI estimate_outage(Scheme scheme, const SystemParams& params, std::uint64_t trials,
                               std::uint64_t master_seed, int worker_count);

struct SweepRow {
    double snr_db = 0.0;
    double rate = 0.0;
    EstimateWithCI estimate;
    std::optional<double> bound;  // closed-form bound, optimized scheme only
};

struct SweepResult {
    Scheme scheme = Scheme::Direct;
    std::vector<SweepRow> rows;
};

// Outage versus SNR at the rate in params. All points reuse the same trial
// streams, so the estimated curve inherits the per-trial structure of the
// schemes rather than adding independent noise per point.
SweepResult snr_sweep(Scheme scheme, const SystemParams& params,
                      const std::vector<double>& snr_db_grid, std::uint64_t trials,
                      std::uint64_t master_seed, int worker_count);

// Largest rate whose outage estimate stays at or below target_pout, located
// by doubling + bisection to rate_tolerance. Before bisecting, the outage
// estimates on a coarse 8-point rate grid must be nondecreasing within three
// standard errors, else MonotonicityError; an unreachable target raises
// BracketingError.
double outage_capacity(Scheme scheme, const SystemParams& params, double target_pout,
                       double rate_tolerance, std::uint64_t trials, std::uint64_t master_seed,
                       int worker_count);

struct ShiftResult {
    double snr_a_db = 0.0;  // SNR meeting the target at rate_a
    double snr_b_db = 0.0;  // same at rate_b
    double shift_db = 0.0;  // snr_b_db - snr_a_db
};

// Horizontal gap between the outage curves of one scheme at two rates,
// measured at target_pout: each curve is bracketed on a coarse dB grid over
// [snr_lo_db, snr_hi_db], bisected below 0.1 dB, and finished by linear
// interpolation of log outage. BracketingError when a curve never crosses the
// target in range.
ShiftResult measure_snr_shift_db(Scheme scheme, const SystemParams& params, double rate_a,
                                 double rate_b, double target_pout, std::uint64_t trials,
                                 std::uint64_t master_seed, int worker_count, double snr_lo_db,
                                 double snr_hi_db, double coarse_step_db = 5.0);

}  // namespace coopnet

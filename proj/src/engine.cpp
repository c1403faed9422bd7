// SPDX-License-Identifier: Apache-2.0
#include "coopnet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "coopnet/analysis.hpp"
#include "coopnet/baselines.hpp"

namespace coopnet {

const char* scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::Direct: return "Direct";
        case Scheme::DfSdiv: return "DF-SDiv";
        case Scheme::AfSdiv: return "AF-SDiv";
        case Scheme::Ddf: return "DDF";
        case Scheme::DfMscRand: return "DF-MSC-rand";
        case Scheme::DfMscOpt: return "DF-MSC-opt";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
    for (Scheme s : {Scheme::Direct, Scheme::DfSdiv, Scheme::AfSdiv, Scheme::Ddf,
                     Scheme::DfMscRand, Scheme::DfMscOpt})
        if (name == scheme_name(s)) return s;
    return std::nullopt;
}

TrialResult run_trial(Scheme scheme, const SystemParams& params, std::uint64_t trial_index,
                      std::uint64_t master_seed) {
    RandomStream rs(SeedStream{master_seed, trial_index});
    const ChannelRealization chan = draw_channel(params, rs);

    TrialResult result;
    switch (scheme) {
        case Scheme::Direct:
            result.mi = mi_direct(chan, params);
            break;
        case Scheme::DfSdiv:
            result.mi = mi_df_sdiv(chan, params);
            break;
        case Scheme::AfSdiv:
            result.mi = mi_af_sdiv(chan, params);
            break;
        case Scheme::Ddf:
            result.mi = mi_ddf(chan, params);
            break;
        case Scheme::DfMscRand:
        case Scheme::DfMscOpt: {
            ListeningOutcome outcome = listening_outcome(chan, params);
            result.n1 = outcome.n1;
            if (!outcome.n1) {
                result.mi = mi_direct(chan, params);
            } else if (scheme == Scheme::DfMscOpt) {
                OptimalSelection best = optimal_selection(chan, outcome.decoding_set, params);
                result.mi = mutual_information_msc(chan, outcome, best.selection, params);
                result.selection = std::move(best.selection);
            } else {
                const int candidates = static_cast<int>(outcome.decoding_set.size()) + 1;
                NodeSelection sel = random_selection(rs, candidates, params.rx_antennas);
                result.mi = mutual_information_msc(chan, outcome, sel, params);
                result.selection = std::move(sel);
            }
            result.decoding_set = std::move(outcome.decoding_set);
            break;
        }
    }
    result.outage = outage_indicator(result.mi, params.rate);
    return result;
}

void wilson_interval(std::uint64_t successes, std::uint64_t trials, double& low, double& high) {
    constexpr double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = p + z2 / (2.0 * n);
    const double margin = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    // The endpoints are exact at the degenerate counts; do not leave rounding
    // residue there.
    low = successes == 0 ? 0.0 : std::max(0.0, (center - margin) / denom);
    high = successes == trials ? 1.0 : std::min(1.0, (center + margin) / denom);
}

EstimateWithCI estimate_outage(Scheme scheme, const SystemParams& params, std::uint64_t trials,
                               std::uint64_t master_seed, int worker_count) {
    if (trials < 1) throw std::invalid_argument("estimate_outage: trials must be >= 1");
    if (worker_count < 1) throw std::invalid_argument("estimate_outage: worker_count must be >= 1");
    params.validate();

    const int workers = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(worker_count), trials));
    std::vector<std::uint64_t> counts(workers, 0);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = trials / workers;
    const std::uint64_t extra = trials % workers;
    std::uint64_t begin = 0;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + chunk + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
        pool.emplace_back([&, w, begin, end] {
            try {
                std::uint64_t n = 0;
                for (std::uint64_t t = begin; t < end; ++t)
                    if (run_trial(scheme, params, t, master_seed).outage) ++n;
                counts[w] = n;
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    EstimateWithCI est;
    est.trials = trials;
    for (std::uint64_t c : counts) est.outages += c;
    est.p_out = static_cast<double>(est.outages) / static_cast<double>(trials);
    wilson_interval(est.outages, est.trials, est.ci_low, est.ci_high);
    return est;
}

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double standard_error(const EstimateWithCI& e) {
    return std::sqrt(e.p_out * (1.0 - e.p_out) / static_cast<double>(e.trials));
}

}  // namespace

SweepResult snr_sweep(Scheme scheme, const SystemParams& params,
                      const std::vector<double>& snr_db_grid, std::uint64_t trials,
                      std::uint64_t master_seed, int worker_count) {
    SweepResult result;
    result.scheme = scheme;
    result.rows.reserve(snr_db_grid.size());
    for (double snr_db : snr_db_grid) {
        SystemParams point = params;
        point.rho_s = db_to_linear(snr_db);
        SweepRow row;
        row.snr_db = snr_db;
        row.rate = params.rate;
        row.estimate = estimate_outage(scheme, point, trials, master_seed, worker_count);
        if (scheme == Scheme::DfMscOpt) row.bound = outage_upper_bound(point);
        result.rows.push_back(std::move(row));
    }
    return result;
}

double outage_capacity(Scheme scheme, const SystemParams& params, double target_pout,
                       double rate_tolerance, std::uint64_t trials, std::uint64_t master_seed,
                       int worker_count) {
    if (!(target_pout > 0.0) || !(target_pout < 1.0))
        throw std::invalid_argument("outage_capacity: target_pout must be in (0, 1)");
    if (!(rate_tolerance > 0.0))
        throw std::invalid_argument("outage_capacity: rate_tolerance must be > 0");

    const auto p_at = [&](double rate) {
        SystemParams point = params;
        point.rate = rate;
        return estimate_outage(scheme, point, trials, master_seed, worker_count);
    };

    const double rate_lo = 0x1.0p-6;
    const EstimateWithCI at_lo = p_at(rate_lo);
    if (at_lo.p_out > target_pout)
        throw BracketingError("outage_capacity: outage exceeds target already at rate " +
                              std::to_string(rate_lo));

    double rate_hi = rate_lo;
    EstimateWithCI at_hi = at_lo;
    while (at_hi.p_out <= target_pout) {
        rate_hi *= 2.0;
        if (rate_hi > 4096.0)
            throw BracketingError("outage_capacity: no rate below 4096 exceeds the target");
        at_hi = p_at(rate_hi);
    }

    // Direction sanity check of the Monte-Carlo curve before trusting
    // bisection: outage must not decrease with rate beyond noise.
    const double ratio = rate_hi / rate_lo;
    EstimateWithCI prev = at_lo;
    double prev_rate = rate_lo;
    for (int i = 1; i < 8; ++i) {
        const double rate = rate_lo * std::pow(ratio, i / 7.0);
        const EstimateWithCI cur = p_at(rate);
        const double slack = 3.0 * (standard_error(prev) + standard_error(cur));
        if (cur.p_out < prev.p_out - slack)
            throw MonotonicityError("outage_capacity: outage fell from " +
                                    std::to_string(prev.p_out) + " at rate " +
                                    std::to_string(prev_rate) + " to " +
                                    std::to_string(cur.p_out) + " at rate " +
                                    std::to_string(rate));
        prev = cur;
        prev_rate = rate;
    }

    double lo = rate_hi / 2.0;  // largest doubled rate with p <= target
    double hi = rate_hi;
    while (hi - lo > rate_tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (p_at(mid).p_out <= target_pout)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

namespace {

// SNR (dB) at which the outage curve of params (at its rate) crosses target.
double solve_crossing_db(Scheme scheme, const SystemParams& params, double target,
                         std::uint64_t trials, std::uint64_t master_seed, int worker_count,
                         double lo_db, double hi_db, double step_db) {
    const auto p_at = [&](double snr_db) {
        SystemParams point = params;
        point.rho_s = db_to_linear(snr_db);
        return estimate_outage(scheme, point, trials, master_seed, worker_count).p_out;
    };

    // Coarse descent until the curve drops through the target.
    double lo = lo_db;
    double p_lo = p_at(lo);
    if (p_lo < target)
        throw BracketingError("snr shift: outage already below target at " +
                              std::to_string(lo_db) + " dB");
    double hi = lo;
    double p_hi = p_lo;
    while (p_hi >= target) {
        if (hi >= hi_db)
            throw BracketingError("snr shift: outage never drops below target by " +
                                  std::to_string(hi_db) + " dB");
        lo = hi;
        p_lo = p_hi;
        hi = std::min(hi + step_db, hi_db);
        p_hi = p_at(hi);
    }

    while (hi - lo > 0.1) {
        const double mid = 0.5 * (lo + hi);
        const double p_mid = p_at(mid);
        if (p_mid >= target) {
            lo = mid;
            p_lo = p_mid;
        } else {
            hi = mid;
            p_hi = p_mid;
        }
    }

    if (p_lo <= 0.0 || p_hi <= 0.0 || p_lo == p_hi) return 0.5 * (lo + hi);
    // log p is locally near-linear in dB; interpolate the crossing.
    const double f = (std::log(target) - std::log(p_lo)) / (std::log(p_hi) - std::log(p_lo));
    return lo + f * (hi - lo);
}

}  // namespace

ShiftResult measure_snr_shift_db(Scheme scheme, const SystemParams& params, double rate_a,
                                 double rate_b, double target_pout, std::uint64_t trials,
                                 std::uint64_t master_seed, int worker_count, double snr_lo_db,
                                 double snr_hi_db, double coarse_step_db) {
    if (!(rate_b > rate_a)) throw std::invalid_argument("snr shift: need rate_b > rate_a");
    if (!(target_pout > 0.0) || !(target_pout < 1.0))
        throw std::invalid_argument("snr shift: target_pout must be in (0, 1)");

    ShiftResult out;
    SystemParams at_rate = params;
    at_rate.rate = rate_a;
    out.snr_a_db = solve_crossing_db(scheme, at_rate, target_pout, trials, master_seed,
                                     worker_count, snr_lo_db, snr_hi_db, coarse_step_db);
    at_rate.rate = rate_b;
    out.snr_b_db = solve_crossing_db(scheme, at_rate, target_pout, trials, master_seed,
                                     worker_count, snr_lo_db, snr_hi_db, coarse_step_db);
    out.shift_db = out.snr_b_db - out.snr_a_db;
    return out;
}

}  // namespace coopnet

// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "coopnet/engine.hpp"
#include "coopnet/numerics.hpp"
#include "doctest.h"
#include "support/params.hpp"

using namespace coopnet;

TEST_CASE("scheme names round-trip and unknown names are rejected") {
    for (Scheme s : {Scheme::Direct, Scheme::DfSdiv, Scheme::AfSdiv, Scheme::Ddf,
                     Scheme::DfMscRand, Scheme::DfMscOpt}) {
        const auto back = parse_scheme(scheme_name(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
    CHECK(!parse_scheme("df-msc-opt").has_value());
    CHECK(!parse_scheme("").has_value());
}

TEST_CASE("trials are pure functions of scheme, params, index, and seed") {
    const SystemParams p = make_params(6, 2, 3, 100, 2.0, 10.0);
    for (Scheme s : {Scheme::Direct, Scheme::Ddf, Scheme::DfMscRand, Scheme::DfMscOpt}) {
        for (std::uint64_t t : {0ull, 1ull, 999ull}) {
            const TrialResult a = run_trial(s, p, t, 42);
            const TrialResult b = run_trial(s, p, t, 42);
            CHECK(a.mi == b.mi);
            CHECK(a.outage == b.outage);
            CHECK(a.n1 == b.n1);
            CHECK(a.decoding_set == b.decoding_set);
            CHECK(a.selection.selected == b.selection.selected);
            const TrialResult c = run_trial(s, p, t, 43);
            CHECK(a.mi != c.mi);  // different master seed, different channel
        }
    }
}

TEST_CASE("common random numbers: rate changes do not move the channel draw") {
    SystemParams p = make_params(5, 2, 2, 100, 1.0, 8.0);
    SystemParams q = p;
    q.rate = 7.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        // Rate enters these two schemes only through the outage comparison.
        CHECK(run_trial(Scheme::Direct, p, t, 7).mi == run_trial(Scheme::Direct, q, t, 7).mi);
        CHECK(run_trial(Scheme::AfSdiv, p, t, 7).mi == run_trial(Scheme::AfSdiv, q, t, 7).mi);
    }
    // The direct-link gain implied by the rate is the same across SNR points.
    SystemParams r = p;
    r.rho_s = 650.0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        const double gain_p = std::expm1(std::log(2.0) * run_trial(Scheme::Direct, p, t, 7).mi) / p.rho_s;
        const double gain_r = std::expm1(std::log(2.0) * run_trial(Scheme::Direct, r, t, 7).mi) / r.rho_s;
        CHECK(gain_p == doctest::Approx(gain_r).epsilon(1e-9));
    }
}

TEST_CASE("wilson interval endpoints and a textbook midpoint") {
    constexpr double z2 = 1.959963984540054 * 1.959963984540054;
    double lo = -1.0, hi = -1.0;
    wilson_interval(0, 100, lo, hi);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(z2 / (100.0 + z2)).epsilon(1e-12));
    wilson_interval(100, 100, lo, hi);
    CHECK(hi == 1.0);
    CHECK(lo == doctest::Approx(100.0 / (100.0 + z2)).epsilon(1e-12));
    wilson_interval(50, 100, lo, hi);
    CHECK(lo == doctest::Approx(0.40383).epsilon(1e-4));
    CHECK(hi == doctest::Approx(0.59617).epsilon(1e-4));
    CHECK(lo + hi == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("outage counts do not depend on the worker partition") {
    const SystemParams p = make_params(8, 3, 3, 100, 2.0, 15.0);
    const EstimateWithCI one = estimate_outage(Scheme::DfMscOpt, p, 4000, 11, 1);
    for (int workers : {2, 3, 8}) {
        const EstimateWithCI w = estimate_outage(Scheme::DfMscOpt, p, 4000, 11, workers);
        CHECK(w.outages == one.outages);
        CHECK(w.p_out == one.p_out);
    }
    // More workers than trials is fine.
    const EstimateWithCI tiny = estimate_outage(Scheme::Direct, p, 3, 11, 8);
    CHECK(tiny.trials == 3);
}

TEST_CASE("estimate_outage validates its arguments") {
    const SystemParams p = make_params(2, 1, 1, 50, 1.0, 1.0);
    CHECK_THROWS_AS(estimate_outage(Scheme::Direct, p, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_outage(Scheme::Direct, p, 10, 1, 0), std::invalid_argument);
    SystemParams bad = p;
    bad.rate = -1.0;
    CHECK_THROWS_AS(estimate_outage(Scheme::Direct, bad, 10, 1, 1), std::invalid_argument);
}

TEST_CASE("direct-link outage matches the closed-form tail") {
    // P(log2(1 + rho |h|^2) < R) = F((2^R - 1)/(rho sigma2_d); nr) with F the
    // Gamma(nr, 1) CDF.
    for (double rho : {2.0, 4.0, 16.0, 64.0, 256.0}) {
        SystemParams p = make_params(1, 1, 2, 100, 2.0, rho);
        const EstimateWithCI est = estimate_outage(Scheme::Direct, p, 200000, 5150, 4);
        const double want = regularized_gamma_cdf((std::exp2(p.rate) - 1.0) / (rho * p.sigma2_d), 2);
        const double se = std::sqrt(std::max(want * (1.0 - want), 1e-12) / 200000.0);
        CHECK(std::abs(est.p_out - want) <= 3.0 * se + 1e-9);
    }
}

TEST_CASE("multi-stream schemes fall back to the direct link when listening fails") {
    SystemParams p = make_params(6, 3, 2, 100, 60.0, 10.0);  // rate out of reach
    const EstimateWithCI direct = estimate_outage(Scheme::Direct, p, 5000, 99, 2);
    const EstimateWithCI opt = estimate_outage(Scheme::DfMscOpt, p, 5000, 99, 2);
    const EstimateWithCI rnd = estimate_outage(Scheme::DfMscRand, p, 5000, 99, 2);
    CHECK(opt.outages == direct.outages);
    CHECK(rnd.outages == direct.outages);
    const TrialResult t = run_trial(Scheme::DfMscOpt, p, 17, 99);
    CHECK(!t.n1.has_value());
    CHECK(t.decoding_set.empty());
    CHECK(t.mi == run_trial(Scheme::Direct, p, 17, 99).mi);
}

TEST_CASE("per-trial rate never drops when every transmit power rises 20 dB") {
    const SystemParams lo = make_params(6, 2, 3, 100, 2.0, 3.0);
    SystemParams hi = lo;
    hi.rho_s = lo.rho_s * 100.0;
    for (Scheme s : {Scheme::Direct, Scheme::DfSdiv, Scheme::AfSdiv, Scheme::Ddf,
                     Scheme::DfMscOpt}) {
        int violations = 0;
        for (std::uint64_t t = 0; t < 2000; ++t)
            if (run_trial(s, hi, t, 23).mi < run_trial(s, lo, t, 23).mi) ++violations;
        CHECK(violations == 0);
    }
    // The random-selection variant reshuffles its subset draw, so only the
    // aggregate direction is meaningful.
    const EstimateWithCI rnd_lo = estimate_outage(Scheme::DfMscRand, lo, 20000, 23, 4);
    const EstimateWithCI rnd_hi = estimate_outage(Scheme::DfMscRand, hi, 20000, 23, 4);
    CHECK(rnd_hi.outages <= rnd_lo.outages);
}

TEST_CASE("random selection never beats the optimizer on the same trial") {
    const SystemParams p = make_params(8, 3, 3, 100, 2.5, 20.0);
    int violations = 0;
    for (std::uint64_t t = 0; t < 20000; ++t) {
        const TrialResult rnd = run_trial(Scheme::DfMscRand, p, t, 31);
        const TrialResult opt = run_trial(Scheme::DfMscOpt, p, t, 31);
        if (rnd.mi > opt.mi) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("snr sweep rows echo the grid and carry the bound only when defined") {
    const SystemParams p = make_params(4, 2, 2, 100, 1.5, 1.0);
    const std::vector<double> grid = {0.0, 10.0, 20.0};

    const SweepResult direct = snr_sweep(Scheme::Direct, p, grid, 20000, 77, 2);
    REQUIRE(direct.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(direct.rows[i].snr_db == grid[i]);
        CHECK(direct.rows[i].rate == p.rate);
        CHECK(!direct.rows[i].bound.has_value());
        if (i > 0) CHECK(direct.rows[i].estimate.outages <= direct.rows[i - 1].estimate.outages);
    }

    const SweepResult opt = snr_sweep(Scheme::DfMscOpt, p, grid, 2000, 77, 2);
    for (const SweepRow& row : opt.rows) {
        REQUIRE(row.bound.has_value());
        CHECK(*row.bound >= 0.0);
        CHECK(*row.bound <= 1.0);
    }
}

TEST_CASE("outage capacity of the direct link matches the closed form") {
    // Nr = 1: P_out(R) = 1 - exp(-(2^R - 1)/(rho sigma2_d)), so the capacity
    // at target q is log2(1 - rho sigma2_d ln(1 - q)).
    SystemParams p = make_params(1, 1, 1, 50, 1.0, 100.0);
    const double want = std::log2(1.0 - p.rho_s * p.sigma2_d * std::log(1.0 - 0.1));
    const double got = outage_capacity(Scheme::Direct, p, 0.1, 0.02, 50000, 1234, 4);
    CHECK(got == doctest::Approx(want).epsilon(0.03));
}

TEST_CASE("capacity ordering follows per-trial dominance") {
    SystemParams p = make_params(4, 1, 2, 100, 1.0, 30.0);
    const double direct = outage_capacity(Scheme::Direct, p, 0.05, 0.02, 20000, 88, 4);
    const double df = outage_capacity(Scheme::DfSdiv, p, 0.05, 0.02, 20000, 88, 4);
    CHECK(df >= direct - 0.05);
}

TEST_CASE("outage capacity failure modes") {
    SystemParams p = make_params(1, 1, 1, 50, 1.0, 1e-6);
    CHECK_THROWS_AS(outage_capacity(Scheme::Direct, p, 1e-4, 0.02, 2000, 5, 2),
                    BracketingError);
    CHECK_THROWS_AS(outage_capacity(Scheme::Direct, p, 0.0, 0.02, 2000, 5, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(outage_capacity(Scheme::Direct, p, 0.5, -1.0, 2000, 5, 2),
                    std::invalid_argument);
}

TEST_CASE("measured horizontal shift of the direct link matches the tail ratio") {
    // Nr = 1 outage targets cross at rho proportional to 2^R - 1, so the gap
    // between R = 1 and R = 3 is 10 log10(7) dB regardless of the target.
    SystemParams p = make_params(1, 1, 1, 50, 1.0, 1.0);
    const ShiftResult s =
        measure_snr_shift_db(Scheme::Direct, p, 1.0, 3.0, 0.05, 40000, 4321, 4, 0.0, 40.0);
    CHECK(s.shift_db == doctest::Approx(10.0 * std::log10(7.0)).epsilon(0.05));
    CHECK(s.snr_b_db == doctest::Approx(s.snr_a_db + s.shift_db).epsilon(1e-12));
}

TEST_CASE("shift measurement failure modes") {
    SystemParams p = make_params(1, 1, 1, 50, 1.0, 1.0);
    CHECK_THROWS_AS(
        measure_snr_shift_db(Scheme::Direct, p, 3.0, 1.0, 0.05, 1000, 1, 1, 0.0, 40.0),
        std::invalid_argument);
    // Ceiling too low: the high-rate curve never drops through the target.
    CHECK_THROWS_AS(
        measure_snr_shift_db(Scheme::Direct, p, 1.0, 12.0, 1e-3, 2000, 1, 2, 0.0, 10.0),
        BracketingError);
    // Floor too high: already below target at the left edge.
    CHECK_THROWS_AS(
        measure_snr_shift_db(Scheme::Direct, p, 1.0, 3.0, 0.5, 2000, 1, 2, 35.0, 40.0),
        BracketingError);
}

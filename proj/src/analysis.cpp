// SPDX-License-Identifier: Apache-2.0
#include "coopnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coopnet/numerics.hpp"

namespace coopnet {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;

// P(one relay has decoded by listening fraction alpha) = exp(-q) with
// q = (2^(R/alpha) - 1) / (rho_s sigma2_sr).
double decode_prob(double alpha, const SystemParams& params) {
    const double q = std::expm1(kLn2 * params.rate / alpha) / (params.rho_s * params.sigma2_sr);
    return std::exp(-q);
}

double binom_pmf_tail_below(int m, int k, double p) {
    // sum_{i<k} C(m,i) p^i (1-p)^(m-i)
    double sum = 0.0;
    for (int i = 0; i < k; ++i)
        sum += static_cast<double>(binomial_coefficient(m, i)) * std::pow(p, i) *
               std::pow(1.0 - p, m - i);
    return sum;
}

}  // namespace

double phi(int l, const SystemParams& params) {
    if (l < 1 || l > params.block_length)
        throw std::invalid_argument("phi: l must be in [1, block_length]");
    const double alpha = static_cast<double>(l) / params.block_length;
    return binom_pmf_tail_below(params.relay_count, params.decode_threshold,
                                decode_prob(alpha, params));
}

double phi_derivative(double alpha, const SystemParams& params) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("phi_derivative: alpha must be in (0, 1)");
    const int m = params.relay_count;
    const int k = params.decode_threshold;
    const double s = params.rho_s * params.sigma2_sr;

    // dp/dalpha = p * 2^(R/alpha) * ln2 R / (alpha^2 s), assembled from logs
    // so the huge 2^(R/alpha) and the tiny p never meet as inf * 0.
    const double log_b = kLn2 * params.rate / alpha;  // ln 2^(R/alpha)
    const double q = std::expm1(log_b) / s;
    const double p = std::exp(-q);
    const double dp = (kLn2 * params.rate / (alpha * alpha * s)) * std::exp(log_b - q);

    // The binomial tail telescopes: dPhi/dp = -m C(m-1, k-1) p^(k-1) (1-p)^(m-k).
    const double dphi_dp = -static_cast<double>(m) *
                           static_cast<double>(binomial_coefficient(m - 1, k - 1)) *
                           std::pow(p, k - 1) * std::pow(1.0 - p, m - k);
    return dphi_dp * dp;
}

double outage_upper_bound(const SystemParams& params) {
    const int nr = params.rx_antennas;
    const double rho_d = params.rho_s * params.sigma2_d;
    const auto tail = [&](double rate) {
        return regularized_gamma_cdf(std::expm1(kLn2 * rate) / rho_d, nr);
    };

    // Listening never completes: direct transmission for the whole block.
    double bound = phi(params.block_length, params) * tail(params.rate);

    // Completed listening phases, grouped by listening fraction: weight each
    // fraction by the decrease of phi there and bound the conditional outage
    // by the two phase constraints.
    double worst = 0.0;
    for (int i = 1; i <= 99; ++i) {
        const double alpha = i / 100.0;
        const double weight = -phi_derivative(alpha, params);
        const double term = weight * tail(params.rate / alpha) *
                            std::pow(tail(params.rate / (1.0 - alpha)),
                                     params.decode_threshold + 1);
        worst = std::max(worst, term);
    }
    bound += worst;
    return std::clamp(bound, 0.0, 1.0);
}

namespace {

double pos(double x) { return x > 0.0 ? x : 0.0; }

void check_dmt_args(double r, int m, int nr) {
    if (!(r >= 0.0) || !(r <= 1.0)) throw std::invalid_argument("dmt: r must be in [0, 1]");
    if (m < 1) throw std::invalid_argument("dmt: m must be >= 1");
    if (nr < 1) throw std::invalid_argument("dmt: nr must be >= 1");
}

}  // namespace

double dmt_msc(double r, int k, int m, int nr) {
    check_dmt_args(r, m, nr);
    if (k < 1 || k > m) throw std::invalid_argument("dmt: k must be in [1, m]");

    const double d1 = (m - k + 1 + nr) * pos(1.0 - r);
    const double d2 = r >= 0.5 ? 0.0 : (m - k + 1) * (1.0 - 2.0 * r) / (1.0 - r);

    double d3;
    const int lt = std::min(nr, k + 1);
    if (r < 0.5) {
        d3 = nr + static_cast<double>(nr - 1) * k;
    } else if (r >= static_cast<double>(lt) / (lt + 1)) {
        d3 = nr * lt * (1.0 - r) / r;
    } else {
        const double ratio = r / (1.0 - r);
        const int theta = static_cast<int>(std::floor(ratio));  // in [1, lt - 1]
        const double a = nr + static_cast<double>(nr - theta) * (k + 1 - theta) -
                         (nr + k - 2.0 * theta) * (ratio - theta);
        const double b = static_cast<double>(nr - theta) * (k + 1 - theta) +
                         nr * theta * (1.0 - r) / r;
        d3 = std::min(a, b);
    }
    return pos(std::min(d1, d2 + d3));
}

double k_star(double r, int m, int nr) {
    check_dmt_args(r, m, nr);
    if (r <= 0.5) {
        const double num = (m + 1) * (2.0 - 4.0 * r + r * r) + nr * (2.0 - 3.0 * r + r * r);
        const double den = (nr - 1) * (1.0 - r) + r * r;
        return num / den;
    }
    const double theta = std::ceil(r / (1.0 - r)) - 1.0;
    const double num = (m + 1) * (1.0 - r) * (1.0 - r) -
                       nr * (3.0 * r - r * r - (1.0 - r) * 2.0 * theta) -
                       theta * (3.0 * theta * (1.0 - r) - 1.0 - r);
    const double den = nr * (1.0 - r) - r + (1.0 - r) * (1.0 - r);
    return num / den;
}

OptimizedDmt dmt_msc_opt(double r, int m, int nr) {
    check_dmt_args(r, m, nr);
    OptimizedDmt best;
    best.d = dmt_msc(r, 1, m, nr);
    best.k = 1;
    for (int k = 2; k <= m; ++k) {
        const double d = dmt_msc(r, k, m, nr);
        if (d > best.d) {
            best.d = d;
            best.k = k;
        }
    }
    return best;
}

double dmt_ddf(double r, int m, int nr) {
    check_dmt_args(r, m, nr);
    if (r <= static_cast<double>(nr) / (m + nr)) return (m + nr) * (1.0 - r);
    if (r <= 0.5) return nr + m * (1.0 - 2.0 * r) / (1.0 - r);
    return nr * (1.0 - r) / r;
}

double dmt_sdiv(double r, int m, int nr) {
    check_dmt_args(r, m, nr);
    return m * pos(1.0 - 2.0 * r) + nr * pos(1.0 - r);
}

TrtCoefficients trt_coefficients(int z, int k, int nr) {
    if (k < 1 || nr < 1) throw std::invalid_argument("trt: need k >= 1 and nr >= 1");
    const int lt = std::min(nr, k + 1);
    if (z < 0 || z >= lt)
        throw std::invalid_argument("trt: z must be in [0, min(nr, k + 1))");
    TrtCoefficients out;
    out.z = z;
    out.c = k + 1 + nr - (2 * z + 1);
    out.g = (k + 1) * nr - z * (z + 1);
    out.t = static_cast<double>(out.g) / out.c;
    return out;
}

double predicted_snr_shift_db(double delta_r_bits, int z, int k, int nr) {
    if (!(delta_r_bits > 0.0))
        throw std::invalid_argument("predicted_snr_shift_db: delta_r_bits must be > 0");
    return 3.0 * delta_r_bits / trt_coefficients(z, k, nr).t;
}

}  // namespace coopnet

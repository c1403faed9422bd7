// SPDX-License-Identifier: Apache-2.0
#include "coopnet/numerics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coopnet {

double regularized_gamma_cdf(double x, int shape) {
    if (!(x >= 0.0)) throw std::domain_error("regularized_gamma_cdf: x must be >= 0");
    if (shape < 1 || shape > 64)
        throw std::domain_error("regularized_gamma_cdf: shape must be in [1, 64]");

    // term_j = exp(-x) * x^j / j!, accumulated for j = 0 .. shape-1.
    // Starting from exp(-x) keeps every term in [0, 1]; once exp(-x)
    // underflows the whole tail is below double precision and the CDF is 1.
    const double t0 = std::exp(-x);
    if (t0 == 0.0) return 1.0;
    double term = t0;
    double sum = t0;
    for (int j = 1; j < shape; ++j) {
        term *= x / j;
        sum += term;
    }
    double cdf = 1.0 - sum;
    if (cdf < 0.0) cdf = 0.0;
    return cdf;
}

namespace {

// Gram assembly plus in-place lower LDL^adj on scratch of n * n entries.
// Returns log2 prod(pivots). The Gram is I + rho H H^adj, so every leading
// principal minor is >= 1: the running pivot product never underflows and a
// non-positive pivot can only come from non-finite input.
double logdet_via_ldl(const ComplexMatrix& h, double rho, std::complex<double>* g) {
    const int n = h.rows();
    const int c = h.cols();
    auto at = [&](int i, int j) -> std::complex<double>& { return g[i * n + j]; };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            std::complex<double> acc(0.0, 0.0);
            for (int k = 0; k < c; ++k) acc += h(i, k) * std::conj(h(j, k));
            acc *= rho;
            if (i == j) acc += 1.0;
            at(i, j) = acc;
        }
    }

    double pivot[64];
    double det = 1.0;
    double log2_spill = 0.0;
    for (int i = 0; i < n; ++i) {
        // Column i of L scaled into place; pivots kept separately.
        for (int j = 0; j < i; ++j) {
            std::complex<double> acc = at(i, j);
            for (int k = 0; k < j; ++k) acc -= at(i, k) * std::conj(at(j, k)) * pivot[k];
            at(i, j) = acc / pivot[j];
        }
        double d = at(i, i).real();
        for (int k = 0; k < i; ++k) d -= std::norm(at(i, k)) * pivot[k];
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("capacity_logdet: matrix entries not finite");
        pivot[i] = d;
        det *= d;
        if (det > 1e280) {  // keep the product representable at extreme SNR
            log2_spill += std::log2(det);
            det = 1.0;
        }
    }
    return log2_spill + std::log2(det);
}

}  // namespace

double capacity_logdet(const ComplexMatrix& h, double rho) {
    if (rho < 0.0 || !std::isfinite(rho))
        throw std::invalid_argument("capacity_logdet: rho must be finite and >= 0");
    const int n = h.rows();
    if (n <= 0) throw std::invalid_argument("capacity_logdet: matrix must have rows");
    if (n > 64) throw std::invalid_argument("capacity_logdet: more than 64 rows unsupported");

    if (n <= 8) {
        std::complex<double> scratch[64];
        return logdet_via_ldl(h, rho, scratch);
    }
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n) * n);
    return logdet_via_ldl(h, rho, scratch.data());
}

namespace {

// Pascal's triangle up to n = 64; C(64, 32) < 2^63 so every entry is exact.
// The multiplicative form would overflow intermediate products.
std::array<std::array<std::uint64_t, 65>, 65> build_pascal() {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (int n = 0; n <= 64; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
}

}  // namespace

std::uint64_t binomial_coefficient(int n, int k) {
    static const auto table = build_pascal();
    if (n < 0 || n > 64 || k < 0 || k > n)
        throw std::domain_error("binomial_coefficient: need 0 <= k <= n <= 64, got n=" +
                                std::to_string(n) + " k=" + std::to_string(k));
    return table[n][k];
}

}  // namespace coopnet

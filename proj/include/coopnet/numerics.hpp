// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace coopnet {

// Dense row-major complex matrix, just large enough for the receiver-side
// Gram computations here (Nr x columns with Nr <= 8, columns <= M+1).
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::complex<double>& operator()(int r, int c) {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }
    const std::complex<double>& operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::complex<double>> data_;
};

// CDF of the Gamma(shape, 1) distribution at x, for integer shape in [1, 64]:
// P(shape, x) = 1 - exp(-x) * sum_{j<shape} x^j / j!.
// This equals the CDF of the squared norm of a shape-dimensional standard
// circularly symmetric complex Gaussian vector. The finite series is exact up
// to rounding; each partial term is kept scaled by exp(-x) so nothing
// overflows for large x. Throws std::domain_error for x < 0 or shape outside
// [1, 64].
double regularized_gamma_cdf(double x, int shape);

// log2 det(I + rho * H * H^adj) for an Nr x c matrix H with rho >= 0.
// Evaluated through the Cholesky factorization of the Gram matrix; the Gram
// is Hermitian positive definite by construction (unit diagonal added), so a
// failed pivot can only mean non-finite input, reported as
// std::invalid_argument.
double capacity_logdet(const ComplexMatrix& h, double rho);

// Exact binomial coefficient for 0 <= k <= n <= 64 (fits in 64 bits).
// Throws std::domain_error outside that range.
std::uint64_t binomial_coefficient(int n, int k);

}  // namespace coopnet

// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used only by tests. Each routine
// reaches the same quantity as the library through a different algorithm so
// that agreement is evidence, not tautology.
#pragma once

#include <functional>
#include <vector>

#include "coopnet/channel.hpp"
#include "coopnet/numerics.hpp"

namespace coopnet::oracle {

// Adaptive Simpson quadrature with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

// Gamma(shape, 1) CDF by integrating the density, not by the closed series.
double quad_gamma_cdf(double x, int shape);

// log2 det(I + rho H H^adj) via eigenvalues of H H^adj, obtained by a real
// symmetric Jacobi sweep on the 2n x 2n real embedding of the Hermitian Gram.
double eigen_logdet(const ComplexMatrix& h, double rho);

// log2 det(I + rho H H^adj) via complex LU with partial pivoting.
double lu_logdet(const ComplexMatrix& h, double rho);

// Binomial coefficient by the multiplicative formula in 128-bit steps.
std::uint64_t factorial_binomial(int n, int k);

struct BruteForceSelection {
    std::vector<int> positions;
    double bits = 0.0;
};

// Exhaustive cooperative-phase maximizer: recursive subset generation in
// lexicographic order, column assembly written out longhand, determinants by
// LU. Ties resolve to the first (lexicographically smallest) subset.
BruteForceSelection brute_force_best_selection(const ChannelRealization& chan,
                                               const std::vector<int>& decoding_set,
                                               const SystemParams& params);

// Straight-line transcriptions of the baseline rate formulas.
double mi_df_sdiv_reference(const ChannelRealization& chan, const SystemParams& params);
double mi_af_sdiv_reference(const ChannelRealization& chan, const SystemParams& params);

// Dynamic decode-and-forward accumulated one channel use at a time, O(N M).
double mi_ddf_per_use(const ChannelRealization& chan, const SystemParams& params);

// Two-phase mutual information with the cooperative term from eigen_logdet.
double mi_msc_reference(const ChannelRealization& chan, int n1,
                        const std::vector<int>& decoding_set,
                        const std::vector<int>& selection_positions,
                        const SystemParams& params);

}  // namespace coopnet::oracle

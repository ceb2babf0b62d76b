// SPDX-License-Identifier: Apache-2.0
//
// irsswipt: joint waveform, active and passive beamforming design for
// IRS-aided multi-carrier SWIPT links under a nonlinear harvester model
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSSWIPT_RECTENNA_HPP
#define IRSSWIPT_RECTENNA_HPP

#include "irsswipt/types.hpp"

#include <vector>

namespace irsswipt {

/// Superposed waveform: per-subband amplitudes, unit-norm precoders and the
/// receiver ratios. delta/eta are only meaningful for the low-complexity and
/// time-switching modes respectively.
struct WaveformDesign
{
    VecR s_I, s_P;           ///< length-N nonnegative amplitudes
    std::vector<VecC> b_I;   ///< N unit-norm precoders of length M
    std::vector<VecC> b_P;
    double rho = 0.0;        ///< power-splitting ratio in [0,1]
    double rho_bar = 1.0;    ///< PS complement, rho + rho_bar <= 1
    double delta = 0.0;      ///< multisine combining ratio (LC mode)
    double eta = 0.0;        ///< TS time ratio (TS mode)

    int subbands() const { return (int)s_I.size(); }

    /// w_{X,n} = s_{X,n} b_{X,n}.
    VecC w_I(int n) const { return s_I(n) * b_I[n]; }
    VecC w_P(int n) const { return s_P(n) * b_P[n]; }

    /// Transmit power (||s_I||^2 + ||s_P||^2) / 2.
    double power() const { return 0.5 * (s_I.squaredNorm() + s_P.squaredNorm()); }

    /// Uniform split over all 2N tones, both precoders along e_1; used as the
    /// neutral starting design.
    static WaveformDesign uniform(int N, int M, double P);

    /// Throws std::invalid_argument on any violated invariant (unit-norm
    /// precoders, power budget P, ratio ranges).
    void validate(double P) const;
};

/// The four averaged signal moments entering the DC model.
struct DcTerms
{
    double yI2 = 0.0, yI4 = 0.0, yP2 = 0.0, yP4 = 0.0;
};

/// Keeps the k-th block diagonal of an MN x MN matrix partitioned into N x N
/// blocks of size M x M; zeroes every other block. Requires |k| < N.
MatC block_diag(const MatC &W, int k, int M, int N);

/// Per-subband received weights a_{X,n} = h_n^H w_{X,n}.
VecC subband_weights(const std::vector<VecC> &h, const std::vector<VecC> &w);

/// Frequency-coupling correlation t_k = sum_n a_n a_{n+k}^*, k in
/// [-N+1, N-1]; returned vector is indexed by k + N - 1.
VecC coupling_correlations(const VecC &a);

/// Averaged moments from per-subband weights. The imaginary residue of each
/// nominally real quantity must stay below 1e-9 relative; a larger residue
/// raises std::runtime_error since it indicates an indexing bug upstream.
DcTerms dc_terms(const VecC &a_I, const VecC &a_P);

/// Moments from stacked MN channel/weight vectors.
DcTerms dc_terms_stacked(const VecC &h, const VecC &w_I, const VecC &w_P, int M, int N);

/// z = beta2 rho (yI2 + yP2) + beta4 rho^2 (yI4 + yP4 + 6 yI2 yP2).
double harvested_dc(const DcTerms &terms, double rho, double beta2, double beta4);

/// R = sum_n log2(1 + (1-rho) |a_{I,n}|^2 / sigma_n^2)  [bits per block].
double achievable_rate(const VecC &a_I, double rho, const VecR &sigma2);

/// Closed-form DC of the idealized flat cascade: uniform multisine over N
/// tones, all L elements sharing one fading coefficient X, direct link and
/// modulated waveform absent, rho = 1.
double flat_cascade_dc(double beta2, double beta4, double lambda_I, double lambda_R,
                       double abs_X, int L, int N, double P);

} // namespace irsswipt

#endif

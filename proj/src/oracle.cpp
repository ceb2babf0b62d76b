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

#include "irsswipt/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace irsswipt {

double time_domain_dc_oracle(const std::vector<VecC> &h, const std::vector<VecC> &w_I,
                             const std::vector<VecC> &w_P, const VecR &freqs, double rho,
                             double beta2, double beta4, const OracleOptions &opt)
{
    const Eigen::Index N = freqs.size();
    if ((Eigen::Index)h.size() != N || (Eigen::Index)w_I.size() != N ||
        (Eigen::Index)w_P.size() != N)
        throw std::invalid_argument("oracle: subband count mismatch");
    if (N == 0)
        return 0.0;

    // Receive-side complex amplitudes, computed here with plain loops.
    VecC a_I(N), a_P(N);
    for (Eigen::Index n = 0; n < N; ++n) {
        cxd ai = 0.0, ap = 0.0;
        for (Eigen::Index m = 0; m < h[n].size(); ++m) {
            ai += std::conj(h[n](m)) * w_I[n](m);
            ap += std::conj(h[n](m)) * w_P[n](m);
        }
        a_I(n) = ai;
        a_P(n) = ap;
    }

    double spacing = 0.0;
    if (N > 1) {
        spacing = freqs(1) - freqs(0);
        if (!(spacing > 0))
            throw std::invalid_argument("oracle: subbands must be increasing");
        for (Eigen::Index n = 1; n < N; ++n)
            if (std::abs((freqs(n) - freqs(n - 1)) - spacing) > 1e-6 * spacing)
                throw std::invalid_argument("oracle: subbands must be evenly spaced");
    } else {
        spacing = freqs(0); // single tone: one carrier period suffices
    }
    const double T = 1.0 / spacing;

    // All frequencies must sit on the half-grid of 1/T, otherwise the even
    // powers of y are not T-periodic and the time average is ill-defined.
    for (Eigen::Index n = 0; n < N; ++n) {
        const double idx = 2.0 * freqs(n) * T;
        if (std::abs(idx - std::round(idx)) > 1e-6)
            throw std::invalid_argument("oracle: f_n must be half-integer multiples of the spacing");
    }

    const double f_max = freqs(N - 1);
    const Eigen::Index nyquist = (Eigen::Index)std::ceil(4.0 * f_max * T) + 1;
    Eigen::Index K = opt.t_samples;
    if (K == 0)
        K = (Eigen::Index)std::ceil(64.0 * f_max * T);
    if (K < nyquist)
        throw std::invalid_argument("oracle: t_samples below Nyquist count of y^4");

    // Carrier table: e^{j 2 pi f_n t_k}.
    MatC carrier(K, N);
    for (Eigen::Index k = 0; k < K; ++k) {
        const double t = (double)k * T / (double)K;
        for (Eigen::Index n = 0; n < N; ++n)
            carrier(k, n) = std::exp(cxd(0.0, 2.0 * kPi * freqs(n) * t));
    }

    const VecR y_p = (carrier * a_P).real();

    const bool modulated = a_I.norm() > 0.0;
    if (!modulated) {
        const double m2 = y_p.array().square().mean();
        const double m4 = y_p.array().square().square().mean();
        return beta2 * rho * m2 + beta4 * rho * rho * m4;
    }

    Rng rng(opt.seed);
    const Eigen::Index draws = std::max<Eigen::Index>(1, opt.mc_draws);
    const Eigen::Index batch = std::max<Eigen::Index>(1, std::min<Eigen::Index>(draws, 256));
    double acc2 = 0.0, acc4 = 0.0;
    Eigen::Index done = 0;
    MatC symbols(N, batch);
    while (done < draws) {
        const Eigen::Index b = std::min(batch, draws - done);
        for (Eigen::Index j = 0; j < b; ++j)
            for (Eigen::Index n = 0; n < N; ++n)
                symbols(n, j) = rng.cscg() * a_I(n);
        const MatR y = (carrier * symbols.leftCols(b)).real().colwise() + y_p;
        acc2 += y.array().square().colwise().mean().sum();
        acc4 += y.array().square().square().colwise().mean().sum();
        done += b;
    }
    const double m2 = acc2 / (double)draws;
    const double m4 = acc4 / (double)draws;
    return beta2 * rho * m2 + beta4 * rho * rho * m4;
}

} // namespace irsswipt

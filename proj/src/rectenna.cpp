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

#include "irsswipt/rectenna.hpp"

#include <cmath>
#include <stdexcept>

namespace irsswipt {

WaveformDesign WaveformDesign::uniform(int N, int M, double P)
{
    WaveformDesign d;
    d.s_I = VecR::Constant(N, std::sqrt(P / N));
    d.s_P = VecR::Constant(N, std::sqrt(P / N));
    VecC e1 = VecC::Zero(M);
    e1(0) = 1.0;
    d.b_I.assign(N, e1);
    d.b_P.assign(N, e1);
    d.rho = 0.5;
    d.rho_bar = 0.5;
    return d;
}

void WaveformDesign::validate(double P) const
{
    const int N = subbands();
    if ((int)s_P.size() != N || (int)b_I.size() != N || (int)b_P.size() != N)
        throw std::invalid_argument("waveform: inconsistent subband counts");
    if ((s_I.array() < 0).any() || (s_P.array() < 0).any())
        throw std::invalid_argument("waveform: negative amplitude");
    for (int n = 0; n < N; ++n) {
        if (std::abs(b_I[n].norm() - 1.0) > 1e-9 || std::abs(b_P[n].norm() - 1.0) > 1e-9)
            throw std::invalid_argument("waveform: precoders must be unit-norm");
    }
    if (power() > P * (1.0 + 1e-9))
        throw std::invalid_argument("waveform: power budget exceeded");
    if (rho < -1e-12 || rho > 1.0 + 1e-12 || delta < -1e-12 || delta > 1.0 + 1e-12 ||
        eta < -1e-12 || eta > 1.0 + 1e-12)
        throw std::invalid_argument("waveform: ratio out of [0,1]");
    if (rho + rho_bar > 1.0 + 1e-9)
        throw std::invalid_argument("waveform: rho + rho_bar > 1");
}

MatC block_diag(const MatC &W, int k, int M, int N)
{
    if (W.rows() != W.cols() || W.rows() != (Eigen::Index)M * N)
        throw std::invalid_argument("block_diag: W must be MN x MN");
    if (k <= -N || k >= N)
        throw std::domain_error("block_diag: |k| must be < N");
    MatC out = MatC::Zero(W.rows(), W.cols());
    for (int n1 = 0; n1 < N; ++n1) {
        const int n2 = n1 + k;
        if (n2 < 0 || n2 >= N)
            continue;
        out.block((Eigen::Index)n1 * M, (Eigen::Index)n2 * M, M, M) =
            W.block((Eigen::Index)n1 * M, (Eigen::Index)n2 * M, M, M);
    }
    return out;
}

VecC subband_weights(const std::vector<VecC> &h, const std::vector<VecC> &w)
{
    if (h.size() != w.size())
        throw std::invalid_argument("subband_weights: size mismatch");
    VecC a((Eigen::Index)h.size());
    for (std::size_t n = 0; n < h.size(); ++n) {
        if (h[n].size() != w[n].size())
            throw std::invalid_argument("subband_weights: antenna dimension mismatch");
        a((Eigen::Index)n) = h[n].dot(w[n]); // Eigen dot conjugates the left factor
    }
    return a;
}

VecC coupling_correlations(const VecC &a)
{
    const Eigen::Index N = a.size();
    VecC t(2 * N - 1);
    for (Eigen::Index k = -N + 1; k <= N - 1; ++k) {
        cxd acc = 0.0;
        for (Eigen::Index n = std::max<Eigen::Index>(0, -k); n < N && n + k < N; ++n)
            acc += a(n) * std::conj(a(n + k));
        t(k + N - 1) = acc;
    }
    return t;
}

namespace {

double require_real(cxd v, const char *what)
{
    const double scale = std::max(1.0, std::abs(v));
    if (std::abs(v.imag()) > 1e-9 * scale)
        throw std::runtime_error(std::string("dc_terms: non-real ") + what);
    return v.real();
}

} // namespace

DcTerms dc_terms(const VecC &a_I, const VecC &a_P)
{
    if (a_I.size() != a_P.size())
        throw std::invalid_argument("dc_terms: subband count mismatch");

    DcTerms t;
    t.yI2 = 0.5 * a_I.squaredNorm();
    t.yI4 = 3.0 * t.yI2 * t.yI2;
    t.yP2 = 0.5 * a_P.squaredNorm();

    const VecC tp = coupling_correlations(a_P);
    cxd quad = 0.0;
    for (Eigen::Index i = 0; i < tp.size(); ++i)
        quad += tp(i) * std::conj(tp(i));
    t.yP4 = 0.375 * require_real(quad, "yP4");
    return t;
}

DcTerms dc_terms_stacked(const VecC &h, const VecC &w_I, const VecC &w_P, int M, int N)
{
    if (h.size() != (Eigen::Index)M * N || w_I.size() != h.size() || w_P.size() != h.size())
        throw std::invalid_argument("dc_terms_stacked: dimension mismatch");
    VecC a_I(N), a_P(N);
    for (int n = 0; n < N; ++n) {
        a_I(n) = h.segment((Eigen::Index)n * M, M).dot(w_I.segment((Eigen::Index)n * M, M));
        a_P(n) = h.segment((Eigen::Index)n * M, M).dot(w_P.segment((Eigen::Index)n * M, M));
    }
    return dc_terms(a_I, a_P);
}

double harvested_dc(const DcTerms &terms, double rho, double beta2, double beta4)
{
    if (rho < -1e-12 || rho > 1.0 + 1e-12)
        throw std::invalid_argument("harvested_dc: rho out of [0,1]");
    return beta2 * rho * (terms.yI2 + terms.yP2) +
           beta4 * rho * rho * (terms.yI4 + terms.yP4 + 6.0 * terms.yI2 * terms.yP2);
}

double achievable_rate(const VecC &a_I, double rho, const VecR &sigma2)
{
    if (a_I.size() != sigma2.size())
        throw std::invalid_argument("achievable_rate: sigma2 must have N entries");
    if (rho < -1e-12 || rho > 1.0 + 1e-12)
        throw std::invalid_argument("achievable_rate: rho out of [0,1]");
    double r = 0.0;
    for (Eigen::Index n = 0; n < a_I.size(); ++n)
        r += std::log2(1.0 + (1.0 - rho) * std::norm(a_I(n)) / sigma2(n));
    return r;
}

double flat_cascade_dc(double beta2, double beta4, double lambda_I, double lambda_R,
                       double abs_X, int L, int N, double P)
{
    const double c2 = lambda_R * lambda_R * lambda_I * lambda_I * abs_X * abs_X *
                      (double)L * L * P;
    const double c4 = std::pow(lambda_R * lambda_I * abs_X, 4.0) *
                      std::pow((double)L, 4.0) * P * P * (2.0 * N * N + 1.0) / (2.0 * N);
    return beta2 * c2 + beta4 * c4;
}

} // namespace irsswipt

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

#ifndef IRSSWIPT_SCENARIO_HPP
#define IRSSWIPT_SCENARIO_HPP

#include "irsswipt/types.hpp"

#include <string>
#include <vector>

namespace irsswipt {

/// Tapped-delay-line profile. Powers are normalized to unit sum on
/// construction; any (delay, power) table is accepted.
struct TapProfile
{
    VecR delays_s;
    VecR powers_lin;

    TapProfile() = default;
    TapProfile(VecR delays, VecR powers);

    Eigen::Index taps() const { return delays_s.size(); }

    /// Single tap at delay 0 with unit power (frequency-flat fading).
    static TapProfile single_tap();

    /// Two-column CSV (delay_s, power_linear). Lines starting with '#' and a
    /// leading header row are skipped.
    static TapProfile load_csv(const std::string &path);
};

/// Full experiment configuration. All member units are linear/SI; dB and dBm
/// conversions happen at the CLI boundary only.
struct Scenario
{
    int M = 1;  ///< transmit antennas
    int N = 16; ///< subbands
    int L = 20; ///< IRS elements (0 = no IRS)

    double f_c = 2.4e9;    ///< center frequency [Hz]
    double B = 1e6;        ///< bandwidth [Hz]
    double sigma2 = 1e-7;  ///< per-subband noise power [W] (-40 dBm)
    double P = 10.0;       ///< average transmit power budget [W] (40 dBm EIRP)
    double beta2 = 0.17;   ///< second-order rectenna coefficient
    double beta4 = 957.25; ///< fourth-order rectenna coefficient
    double d_D = 12.0;     ///< AP-UE distance [m]
    double d_H = 2.0;      ///< AP-IRS horizontal distance [m]
    double d_V = 2.0;      ///< AP-IRS vertical distance [m]
    double alpha = 2.0;    ///< SMF scaling exponent (>= 1)
    double epsilon = 1e-8; ///< convergence tolerance
    double rx_gain = 2.0;  ///< receive antenna gain, linear (3 dBi)

    TapProfile tap_profile = TapProfile::single_tap();

    /// Optional per-subband noise override; empty means uniform sigma2.
    VecR sigma2_per_subband;

    std::uint64_t seed = 1;

    /// Throws std::invalid_argument when any invariant is violated.
    void validate() const;

    /// f_n = f_c + (n - (N+1)/2) B/N, n = 1..N.
    VecR subband_frequencies() const;

    /// Per-subband noise vector of length N.
    VecR sigma_vec() const;

    double d_incident() const { return std::sqrt(d_H * d_H + d_V * d_V); }
    double d_reflected() const
    {
        return std::sqrt((d_D - d_H) * (d_D - d_H) + d_V * d_V);
    }

    /// Parse from a JSON config file. Unknown keys are rejected. Keys with
    /// _dbm/_db/_dbi suffix are accepted as alternatives and converted.
    static Scenario load_json(const std::string &path);
};

/// One synthesized narrowband channel set: direct, incident, reflected and
/// cascaded responses for every subband, path loss applied.
struct ChannelRealization
{
    int M = 0, N = 0, L = 0;
    std::vector<VecC> h_D; ///< N vectors of length M
    std::vector<MatC> H_I; ///< N matrices L x M
    std::vector<VecC> h_R; ///< N vectors of length L
    std::vector<MatC> V;   ///< N cascaded matrices L x M, V_n = diag(h_R,n^H) H_I,n

    double lambda_D = 1.0; ///< direct path-loss amplitude (without rx gain)
    double lambda_I = 1.0;
    double lambda_R = 1.0;
};

/// Per-subband cascaded CSIT error std-dev. A value of +infinity is the
/// no-CSIT sentinel handled at experiment level (random IRS).
struct CsitError
{
    VecR epsilon_n;

    static CsitError uniform(int N, double eps)
    {
        CsitError e;
        e.epsilon_n = VecR::Constant(N, eps);
        return e;
    }
};

/// Dual-slope path loss, linear power gain: free space (exponent 2) up to
/// 10 m, exponent 3.5 beyond, continuous at the breakpoint.
double path_loss(double d, double f_c);

/// Draws i.i.d. CSCG tap gains per link, converts to subband responses and
/// applies per-link amplitude Lambda * sqrt(rx_gain). Pure in (scenario, seed).
ChannelRealization sample_channels(const Scenario &s, std::uint64_t seed);

/// h_n^H = h_D,n^H + phi^H V_n. Throws when any |phi_l| deviates from 1 by
/// more than 1e-9.
VecC composite_channel(const VecC &h_D_n, const MatC &V_n, const VecC &phi);

/// Composite channel for all subbands of a realization.
std::vector<VecC> composite_channels(const ChannelRealization &ch, const VecC &phi);

/// V_hat_n = V_n + error, entries i.i.d. CSCG(0, eps_n^2). eps = 0 returns V
/// bit-exactly. Infinite eps yields zero estimates (no usable CSIT).
std::vector<MatC> perturb_csit(const std::vector<MatC> &V, const CsitError &err,
                               std::uint64_t seed);

} // namespace irsswipt

#endif

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

#ifndef IRSSWIPT_ORCHESTRATE_HPP
#define IRSSWIPT_ORCHESTRATE_HPP

#include "irsswipt/passive.hpp"
#include "irsswipt/rectenna.hpp"
#include "irsswipt/scenario.hpp"
#include "irsswipt/waveform.hpp"

#include <string>
#include <vector>

namespace irsswipt {

/// One achieved rate-energy pair together with the design that achieved it.
/// rate and z are always re-derived from the stored design, so every point
/// is self-certifying.
struct REPoint
{
    double rate = 0.0; ///< bits per block (over all N subbands)
    double z = 0.0;    ///< harvested DC, model units
    VecC phi;          ///< empty when no IRS
    WaveformDesign design;
    std::string mode;  ///< "PS", "LC-PS", "WIT", "WPT", ...
    int outer_iterations = 0;
    bool converged = true;
    bool feasible = true;
    std::vector<double> z_seq; ///< outer-iteration DC trace

    double rate_per_subband(int N) const { return N > 0 ? rate / N : 0.0; }
};

struct RERegion
{
    std::vector<REPoint> points; ///< PS sweep, ascending rate
    REPoint wit, wpt;
    double c_max = 0.0;
    std::vector<std::pair<double, double>> envelope; ///< concave upper envelope
    std::string mode;
};

/// Uniform IRS codebook with 2^b phases.
struct IrsCodebook
{
    int b = 1;
    std::vector<cxd> phases() const;
};

/// Evaluates (rate, z) of a design on the true channel; the entry point every
/// algorithm funnels through before returning a point.
REPoint evaluate_design(const Scenario &s, const ChannelRealization &ch, const VecC &phi,
                        const WaveformDesign &d, const std::string &mode);

struct BcdOptions
{
    int max_outer = 30;
    const REPoint *warm = nullptr; ///< previous sweep point, if any
};

/// Block coordinate descent: phi by SCA, precoders in closed form, amplitudes
/// and splitting ratio by GP; the DC trace over outer iterations is
/// nondecreasing by construction (blocks never accept a worse point).
REPoint bcd(const Scenario &s, const ChannelRealization &ch, double R_bar,
            const BcdOptions &opt = {});

/// Low-complexity BCD: phi by M-SCA, WF+SMF superposition with combining
/// ratio delta. Convergence is tracked on rate when rho = 0, on DC otherwise.
REPoint lc_bcd(const Scenario &s, const ChannelRealization &ch, double delta, double rho,
               const BcdOptions &opt = {});

enum class RegionMode
{
    Bcd,
    Lc,
};

/// Rate-energy region: BCD sweeps the rate floor over [0, C_max] (descending,
/// warm-started, which keeps z monotone in the floor); LC sweeps delta = rho
/// over [0,1]. The time-sharing segment connects (C_max, 0) with (0, z_wpt);
/// the mixed-strategy boundary is the concave upper envelope.
RERegion re_region(const Scenario &s, const ChannelRealization &ch, RegionMode mode,
                   int grid_size);

/// Snap each phase to the nearest codebook entry (ties toward the lower
/// index). b = 0 is the no-IRS sentinel and returns an empty vector.
VecC quantize_irs(const VecC &phi, int b);

/// Designs under the truncated linear harvester model (no SCA, single
/// strongest-subband sinewave for WPT), then scores the result under the full
/// nonlinear model.
REPoint linear_eh_baseline(const Scenario &s, const ChannelRealization &ch, double R_bar);

/// Upper concave envelope of a point cloud, left-to-right.
std::vector<std::pair<double, double>>
upper_concave_envelope(std::vector<std::pair<double, double>> pts);

/// Piecewise-linear envelope value at a given rate (-inf outside the span).
double envelope_value(const std::vector<std::pair<double, double>> &env, double rate);

} // namespace irsswipt

#endif

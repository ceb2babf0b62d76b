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

#ifndef IRSSWIPT_ORACLE_HPP
#define IRSSWIPT_ORACLE_HPP

#include "irsswipt/types.hpp"

#include <vector>

namespace irsswipt {

// Brute-force time-domain estimate of the harvested DC. Synthesizes the
// received signal sample by sample over one beat period, averages the second
// and fourth powers, and Monte-Carlo-averages over CSCG information symbols.
// It deliberately shares no code with the closed-form moment path.

struct OracleOptions
{
    /// Samples across one beat period 1/(f spacing). 0 selects the default of
    /// 64 samples per shortest carrier period.
    Eigen::Index t_samples = 0;
    /// Symbol draws for the modulated component; ignored when all w_I are 0.
    Eigen::Index mc_draws = 10000;
    std::uint64_t seed = 1;
};

/// Estimates z = beta2 rho A{y^2} + beta4 rho^2 A{y^4} averaged over symbol
/// draws. Requires evenly spaced subbands whose frequencies are half-integer
/// multiples of the spacing (the even signal powers are then periodic with
/// the beat period); throws std::invalid_argument otherwise, and throws when
/// t_samples is below the Nyquist count of the fourth power (aliasing).
double time_domain_dc_oracle(const std::vector<VecC> &h, const std::vector<VecC> &w_I,
                             const std::vector<VecC> &w_P, const VecR &freqs, double rho,
                             double beta2, double beta4, const OracleOptions &opt);

} // namespace irsswipt

#endif

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

#ifndef IRSSWIPT_ACTIVE_HPP
#define IRSSWIPT_ACTIVE_HPP

#include "irsswipt/types.hpp"

#include <vector>

namespace irsswipt {

/// Maximum-ratio transmission: b_n = h_n / ||h_n||. The same precoder serves
/// the information and power waveforms. A zero channel (measure-zero) falls
/// back to e_1.
VecC mrt_precoder(const VecC &h_n);

/// MRT precoders for all subbands.
std::vector<VecC> mrt_precoders(const std::vector<VecC> &h);

/// Per-subband channel norms ||h_n||.
VecR channel_norms(const std::vector<VecC> &h);

} // namespace irsswipt

#endif

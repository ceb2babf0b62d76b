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

#include "irsswipt/active.hpp"

namespace irsswipt {

VecC mrt_precoder(const VecC &h_n)
{
    const double nrm = h_n.norm();
    if (nrm == 0.0) {
        VecC e1 = VecC::Zero(h_n.size());
        e1(0) = 1.0;
        return e1;
    }
    return h_n / nrm;
}

std::vector<VecC> mrt_precoders(const std::vector<VecC> &h)
{
    std::vector<VecC> b(h.size());
    for (std::size_t n = 0; n < h.size(); ++n)
        b[n] = mrt_precoder(h[n]);
    return b;
}

VecR channel_norms(const std::vector<VecC> &h)
{
    VecR norms((Eigen::Index)h.size());
    for (std::size_t n = 0; n < h.size(); ++n)
        norms((Eigen::Index)n) = h[n].norm();
    return norms;
}

} // namespace irsswipt

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "irsswipt/active.hpp"
#include "irsswipt/rectenna.hpp"

using namespace irsswipt;

TEST_CASE("axis channels map to axis precoders")
{
    VecC h(2);
    h << 1.0, 0.0;
    const VecC b = mrt_precoder(h);
    CHECK(std::abs(b(0) - cxd(1.0, 0.0)) == 0.0);
    CHECK(std::abs(b(1)) == 0.0);
}

TEST_CASE("precoders are unit norm and capture the full channel gain")
{
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const VecC h = rng.cscg_vector(4);
        const VecC b = mrt_precoder(h);
        CHECK(std::abs(b.norm() - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(h.dot(b)) - h.norm()) < 1e-12 * h.norm());
    }
}

TEST_CASE("no sampled unit-norm precoder beats the matched one")
{
    Rng rng(42);
    const VecC h = rng.cscg_vector(3);
    const VecC b = mrt_precoder(h);
    const double gain = std::abs(h.dot(b));
    for (int trial = 0; trial < 100; ++trial) {
        VecC c = rng.cscg_vector(3);
        c /= c.norm();
        CHECK(std::abs(h.dot(c)) <= gain * (1.0 + 1e-12));
    }
}

TEST_CASE("replacing the matched precoder never raises rate or DC terms")
{
    Rng rng(43);
    const int N = 3, M = 2;
    std::vector<VecC> h(N);
    VecR s_I(N), s_P(N);
    for (int n = 0; n < N; ++n) {
        h[n] = rng.cscg_vector(M);
        s_I(n) = 0.4 + rng.uniform();
        s_P(n) = 0.4 + rng.uniform();
    }
    const std::vector<VecC> b = mrt_precoders(h);
    std::vector<VecC> wI(N), wP(N);
    for (int n = 0; n < N; ++n) {
        wI[n] = s_I(n) * b[n];
        wP[n] = s_P(n) * b[n];
    }
    const DcTerms ref = dc_terms(subband_weights(h, wI), subband_weights(h, wP));
    const VecR sig = VecR::Ones(N);
    const double rate_ref = achievable_rate(subband_weights(h, wI), 0.3, sig);

    for (int trial = 0; trial < 100; ++trial) {
        std::vector<VecC> wI2(N), wP2(N);
        for (int n = 0; n < N; ++n) {
            VecC c = rng.cscg_vector(M);
            c /= c.norm();
            wI2[n] = s_I(n) * c;
            wP2[n] = s_P(n) * c;
        }
        const DcTerms t = dc_terms(subband_weights(h, wI2), subband_weights(h, wP2));
        CHECK(t.yI2 <= ref.yI2 * (1.0 + 1e-12));
        CHECK(t.yP2 <= ref.yP2 * (1.0 + 1e-12));
        CHECK(t.yI4 <= ref.yI4 * (1.0 + 1e-12));
        CHECK(t.yP4 <= ref.yP4 * (1.0 + 1e-12));
        CHECK(achievable_rate(subband_weights(h, wI2), 0.3, sig) <=
              rate_ref * (1.0 + 1e-12));
    }
}

TEST_CASE("zero channel falls back to the first axis")
{
    const VecC b = mrt_precoder(VecC::Zero(3));
    CHECK(std::abs(b(0) - cxd(1.0, 0.0)) == 0.0);
    CHECK(std::abs(b.norm() - 1.0) < 1e-15);
}

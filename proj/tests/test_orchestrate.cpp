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

#include "irsswipt/orchestrate.hpp"

#include <cmath>

using namespace irsswipt;

namespace {

Scenario toy_scenario(int M, int N, int L)
{
    Scenario s;
    s.M = M;
    s.N = N;
    s.L = L;
    s.sigma2 = 0.05;
    s.P = 1.0;
    s.d_D = 1.0; // mild path loss keeps toy problems well scaled
    s.d_H = 0.5;
    s.d_V = 0.5;
    s.tap_profile = TapProfile::single_tap();
    return s;
}

} // namespace

TEST_CASE("BCD without an IRS reduces to waveform-only optimization")
{
    Scenario s = toy_scenario(2, 2, 0);
    const ChannelRealization ch = sample_channels(s, 5);
    const REPoint p = bcd(s, ch, 0.0);
    CHECK(p.phi.size() == 0);
    CHECK(p.feasible);
    CHECK(p.z > 0.0);
}

TEST_CASE("BCD outer DC trace is nondecreasing across seeds")
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Scenario s = toy_scenario(2, 2, 3);
        const ChannelRealization ch = sample_channels(s, seed);
        const double R_bar = 0.3 * re_region(s, ch, RegionMode::Bcd, 2).c_max;
        const REPoint p = bcd(s, ch, R_bar);
        REQUIRE(p.feasible);
        for (std::size_t i = 1; i < p.z_seq.size(); ++i)
            CHECK(p.z_seq[i] >= p.z_seq[i - 1] - 1e-12);
        CHECK(p.rate >= R_bar - 1e-6);
    }
}

TEST_CASE("scalar BCD at zero floor matches the exhaustive design grid")
{
    Scenario s = toy_scenario(1, 1, 1);
    const ChannelRealization ch = sample_channels(s, 2);
    const REPoint p = bcd(s, ch, 0.0);

    double best = 0.0;
    const int K = 360;
    for (int i = 0; i < K; ++i) {
        VecC phi(1);
        phi << std::exp(cxd(0, 2.0 * kPi * i / K));
        const VecC h = composite_channel(ch.h_D[0], ch.V[0], phi);
        const double hn = h.norm();
        for (int j = 0; j <= 40; ++j) {
            const double rho = (double)j / 40;
            for (int k = 0; k <= 40; ++k) {
                const double share = (double)k / 40; // power fraction to multisine
                VecC a_I(1), a_P(1);
                a_I << hn * std::sqrt(2.0 * s.P * (1.0 - share));
                a_P << hn * std::sqrt(2.0 * s.P * share);
                best = std::max(
                    best, harvested_dc(dc_terms(a_I, a_P), rho, s.beta2, s.beta4));
            }
        }
    }
    CHECK(p.z >= best * (1.0 - 1e-3));
    CHECK(p.z <= best * (1.0 + 1e-3));
}

TEST_CASE("LC endpoints specialize to pure WIT and pure WPT designs")
{
    Scenario s = toy_scenario(1, 2, 2);
    const ChannelRealization ch = sample_channels(s, 3);
    const REPoint wit = lc_bcd(s, ch, 0.0, 0.0);
    CHECK(wit.design.s_P.norm() == 0.0);
    CHECK(wit.design.rho == 0.0);
    CHECK(wit.rate > 0.0);
    CHECK(wit.z == 0.0);

    const REPoint wpt = lc_bcd(s, ch, 1.0, 1.0);
    CHECK(wpt.design.s_I.norm() == 0.0);
    CHECK(wpt.design.rho == 1.0);
    CHECK(wpt.rate == 0.0);
    CHECK(wpt.z > 0.0);
}

TEST_CASE("the low-complexity design is an inner bound on the BCD region")
{
    for (std::uint64_t seed = 11; seed <= 13; ++seed) {
        Scenario s = toy_scenario(1, 2, 2);
        const ChannelRealization ch = sample_channels(s, seed);
        const REPoint lc = lc_bcd(s, ch, 1.0, 1.0);
        const REPoint full = bcd(s, ch, 0.0);
        CHECK(lc.z <= full.z * (1.0 + 1e-6));
    }
}

TEST_CASE("regions are monotone with concave dominating envelopes")
{
    Scenario s = toy_scenario(1, 2, 2);
    const ChannelRealization ch = sample_channels(s, 7);
    const RERegion reg = re_region(s, ch, RegionMode::Bcd, 6);
    REQUIRE(reg.points.size() == 6);

    // z nonincreasing along the ascending-rate sweep
    for (std::size_t i = 1; i < reg.points.size(); ++i) {
        CHECK(reg.points[i].rate >= reg.points[i - 1].rate - 1e-9);
        CHECK(reg.points[i].z <= reg.points[i - 1].z + 1e-12);
    }
    // envelope dominates every raw point and the TS endpoints
    for (const auto &p : reg.points)
        CHECK(envelope_value(reg.envelope, p.rate) >= p.z - 1e-12);
    CHECK(envelope_value(reg.envelope, reg.c_max) >= -1e-12);
    CHECK(envelope_value(reg.envelope, 0.0) >= reg.wpt.z - 1e-12);
    // envelope concavity: slopes nonincreasing
    for (std::size_t i = 2; i < reg.envelope.size(); ++i) {
        const auto &[x0, y0] = reg.envelope[i - 2];
        const auto &[x1, y1] = reg.envelope[i - 1];
        const auto &[x2, y2] = reg.envelope[i];
        const double s1 = (y1 - y0) / std::max(1e-15, x1 - x0);
        const double s2 = (y2 - y1) / std::max(1e-15, x2 - x1);
        CHECK(s2 <= s1 + 1e-9);
    }
}

TEST_CASE("time-sharing segment interpolates the endpoints linearly")
{
    Scenario s = toy_scenario(1, 2, 0);
    const ChannelRealization ch = sample_channels(s, 9);
    const RERegion reg = re_region(s, ch, RegionMode::Bcd, 4);
    for (double eta : {0.0, 0.25, 0.5, 1.0}) {
        const double r = reg.c_max * (1.0 - eta);
        const double z = reg.wpt.z * eta;
        CHECK(envelope_value(reg.envelope, r) >= z - 1e-12);
    }
}

TEST_CASE("single-tone region matches the pointwise brute force")
{
    Scenario s = toy_scenario(1, 1, 0);
    const ChannelRealization ch = sample_channels(s, 4);
    const RERegion reg = re_region(s, ch, RegionMode::Bcd, 5);
    const double hn = ch.h_D[0].norm();
    const double snr = 2.0 * s.P * hn * hn / s.sigma2;
    for (const auto &p : reg.points) {
        // brute force over (rho, share) for this point's achieved rate
        double best = 0.0;
        const int K = 300;
        for (int j = 0; j <= K; ++j) {
            const double rho = (double)j / K;
            for (int k = 0; k <= K; ++k) {
                const double share = (double)k / K;
                const double rate =
                    std::log2(1.0 + (1.0 - rho) * (1.0 - share) * snr);
                if (rate < p.rate - 1e-9)
                    continue;
                VecC a_I(1), a_P(1);
                a_I << hn * std::sqrt(2.0 * s.P * (1.0 - share));
                a_P << hn * std::sqrt(2.0 * s.P * share);
                best = std::max(
                    best, harvested_dc(dc_terms(a_I, a_P), rho, s.beta2, s.beta4));
            }
        }
        CHECK(p.z <= best * (1.0 + 2e-3) + 1e-15);
        CHECK(p.z >= best * (1.0 - 2e-3) - 1e-15);
    }
}

TEST_CASE("codebook quantization snaps to the nearest phase")
{
    VecC phi(3);
    phi << std::exp(cxd(0, 0.4)), std::exp(cxd(0, 2.9)), std::exp(cxd(0, -1.2));
    const VecC q1 = quantize_irs(phi, 1);
    for (int l = 0; l < 3; ++l) {
        CHECK(std::abs(std::abs(q1(l)) - 1.0) < 1e-12);
        CHECK((std::abs(q1(l) - cxd(1, 0)) < 1e-12 || std::abs(q1(l) + cxd(1, 0)) < 1e-12));
    }
    for (int b = 1; b <= 6; ++b) {
        const VecC q = quantize_irs(phi, b);
        for (int l = 0; l < 3; ++l) {
            double diff = std::abs(std::arg(q(l) * std::conj(phi(l))));
            CHECK(diff <= kPi / (1 << b) + 1e-12);
        }
    }
    CHECK(quantize_irs(phi, 0).size() == 0);
}

TEST_CASE("quantization tie snaps to the lower phase index")
{
    VecC phi(1);
    phi << std::exp(cxd(0, kPi / 2.0)); // exactly between 0 and pi for b = 1
    const VecC q = quantize_irs(phi, 1);
    CHECK(std::abs(q(0) - cxd(1.0, 0.0)) < 1e-12);
}

TEST_CASE("linear-model baseline picks the first subband on flat channels")
{
    Scenario s = toy_scenario(1, 3, 0);
    ChannelRealization ch = sample_channels(s, 1);
    for (int n = 0; n < 3; ++n)
        ch.h_D[n] = VecC::Ones(1);
    const REPoint p = linear_eh_baseline(s, ch, 0.0);
    CHECK(p.design.s_P(0) > 0.0);
    CHECK(p.design.s_P(1) == 0.0);
    CHECK(p.design.s_P(2) == 0.0);
    CHECK(p.design.rho == 1.0);
}

TEST_CASE("nonlinear-aware design dominates the linear-model baseline")
{
    for (std::uint64_t seed = 21; seed <= 25; ++seed) {
        Scenario s = toy_scenario(1, 4, 0);
        const ChannelRealization ch = sample_channels(s, seed);
        const REPoint base = linear_eh_baseline(s, ch, 0.0);
        const REPoint full = bcd(s, ch, 0.0);
        CHECK(base.z <= full.z * (1.0 + 1e-9));
    }
}

TEST_CASE("under linear scoring the single sinewave is allocation-optimal")
{
    Rng rng(80);
    Scenario s = toy_scenario(1, 4, 0);
    const ChannelRealization ch = sample_channels(s, 31);
    VecR norms(4);
    for (int n = 0; n < 4; ++n)
        norms(n) = ch.h_D[n].norm();
    int n_star = 0;
    for (int n = 1; n < 4; ++n)
        if (norms(n) > norms(n_star))
            n_star = n;
    const double best_single = s.beta2 * 1.0 * (0.5 * 2.0 * s.P * norms(n_star) * norms(n_star));
    // exhaustive multisine allocations over a simplex grid
    const int K = 12;
    for (int a = 0; a <= K; ++a)
        for (int b = 0; b + a <= K; ++b)
            for (int c = 0; c + b + a <= K; ++c) {
                const int d = K - a - b - c;
                VecR share(4);
                share << (double)a / K, (double)b / K, (double)c / K, (double)d / K;
                double y2 = 0.0;
                for (int n = 0; n < 4; ++n)
                    y2 += 0.5 * (2.0 * s.P * share(n)) * norms(n) * norms(n);
                CHECK(s.beta2 * y2 <= best_single * (1.0 + 1e-12));
            }
    (void)rng;
}

TEST_CASE("returned points re-evaluate identically from their designs")
{
    Scenario s = toy_scenario(2, 2, 2);
    const ChannelRealization ch = sample_channels(s, 12);
    const REPoint p = bcd(s, ch, 0.0);
    // independent recomputation through the stacked moment path
    const std::vector<VecC> h = composite_channels(ch, p.phi);
    VecC hs(s.M * s.N), wIs(s.M * s.N), wPs(s.M * s.N);
    for (int n = 0; n < s.N; ++n) {
        hs.segment(n * s.M, s.M) = h[n];
        wIs.segment(n * s.M, s.M) = p.design.w_I(n);
        wPs.segment(n * s.M, s.M) = p.design.w_P(n);
    }
    const DcTerms t = dc_terms_stacked(hs, wIs, wPs, s.M, s.N);
    const double z = harvested_dc(t, p.design.rho, s.beta2, s.beta4);
    CHECK(z == doctest::Approx(p.z).epsilon(1e-9));
}

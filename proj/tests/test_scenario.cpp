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

#include "irsswipt/scenario.hpp"

#include <cmath>
#include <fstream>

using namespace irsswipt;

TEST_CASE("path loss is continuous at the 10 m breakpoint")
{
    const double below = path_loss(10.0 - 1e-9, 2.4e9);
    const double above = path_loss(10.0 + 1e-9, 2.4e9);
    CHECK(std::abs(below - above) / below < 1e-6);
}

TEST_CASE("path loss beyond the breakpoint follows the 3.5 exponent")
{
    const double ratio = path_loss(40.0, 2.4e9) / path_loss(10.0, 2.4e9);
    CHECK(ratio == doctest::Approx(std::pow(4.0, -3.5)).epsilon(1e-12));
}

TEST_CASE("path loss at 12 m and 2.4 GHz matches the hand calculation")
{
    // Friis at 10 m with lambda = c / 2.4e9, extended by (1.2)^-3.5.
    const double lambda = 299792458.0 / 2.4e9;
    const double friis10 = (lambda / (4.0 * kPi * 10.0)) * (lambda / (4.0 * kPi * 10.0));
    const double expected = friis10 * std::pow(1.2, -3.5);
    CHECK(path_loss(12.0, 2.4e9) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("path loss rejects nonpositive distances and decreases in d")
{
    CHECK_THROWS_AS(path_loss(0.0, 2.4e9), std::domain_error);
    CHECK_THROWS_AS(path_loss(-1.0, 2.4e9), std::domain_error);
    double prev = path_loss(0.05, 2.4e9);
    for (double d = 0.1; d < 50.0; d += 0.1) {
        const double cur = path_loss(d, 2.4e9);
        CHECK(cur <= prev * (1.0 + 1e-12));
        prev = cur;
    }
}

namespace {

Scenario small_scenario()
{
    Scenario s;
    s.M = 2;
    s.N = 4;
    s.L = 3;
    s.tap_profile = TapProfile::single_tap();
    return s;
}

} // namespace

TEST_CASE("single tap at delay zero gives a frequency-flat direct channel")
{
    Scenario s = small_scenario();
    const ChannelRealization ch = sample_channels(s, 7);
    for (int n = 1; n < s.N; ++n)
        CHECK((ch.h_D[n] - ch.h_D[0]).norm() == 0.0);
}

TEST_CASE("channel synthesis is deterministic in (scenario, seed)")
{
    Scenario s = small_scenario();
    VecR d(3), p(3);
    d << 0.0, 50e-9, 110e-9;
    p << 0.5, 0.3, 0.2;
    s.tap_profile = TapProfile(d, p);
    const ChannelRealization a = sample_channels(s, 42);
    const ChannelRealization b = sample_channels(s, 42);
    const ChannelRealization c = sample_channels(s, 43);
    for (int n = 0; n < s.N; ++n) {
        CHECK((a.h_D[n] - b.h_D[n]).norm() == 0.0);
        CHECK((a.V[n] - b.V[n]).norm() == 0.0);
    }
    CHECK((a.h_D[0] - c.h_D[0]).norm() > 0.0);
}

TEST_CASE("direct-channel power matches M * Lambda_D^2 * rx_gain")
{
    Scenario s = small_scenario();
    s.N = 1;
    s.L = 0;
    const double target = s.M * path_loss(s.d_D, s.f_c) * s.rx_gain;
    double acc = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
        acc += sample_channels(s, 1000 + i).h_D[0].squaredNorm();
    acc /= draws;
    CHECK(std::abs(acc - target) / target < 0.05);
}

TEST_CASE("cascaded channel satisfies the element-wise identity")
{
    Scenario s = small_scenario();
    VecR d(2), p(2);
    d << 0.0, 80e-9;
    p << 0.7, 0.3;
    s.tap_profile = TapProfile(d, p);
    const ChannelRealization ch = sample_channels(s, 5);
    for (int n = 0; n < s.N; ++n) {
        const MatC expect = ch.h_R[n].conjugate().asDiagonal() * ch.H_I[n];
        CHECK((ch.V[n] - expect).norm() == 0.0);
        CHECK(ch.V[n].allFinite());
    }
}

TEST_CASE("composite channel reduces to the direct channel without IRS")
{
    Scenario s = small_scenario();
    s.L = 0;
    const ChannelRealization ch = sample_channels(s, 3);
    const VecC h = composite_channel(ch.h_D[0], ch.V[0], VecC(0));
    CHECK((h - ch.h_D[0]).norm() == 0.0);
}

TEST_CASE("composite channel with zero cascade ignores the reflection")
{
    const VecC h_D = VecC::Random(3);
    const MatC V = MatC::Zero(2, 3);
    const VecC phi = VecC::Ones(2);
    CHECK((composite_channel(h_D, V, phi) - h_D).norm() == 0.0);
}

TEST_CASE("composite channel equals the explicit Theta-matrix product")
{
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int L = 2, M = 2;
        const VecC h_D = rng.cscg_vector(M);
        const MatC H_I = rng.cscg_matrix(L, M);
        const VecC h_R = rng.cscg_vector(L);
        const MatC V = h_R.conjugate().asDiagonal() * H_I;
        VecC phi(L);
        for (int l = 0; l < L; ++l)
            phi(l) = std::exp(cxd(0.0, 2.0 * kPi * rng.uniform()));

        // h^H = h_D^H + h_R^H diag(phi^*) H_I
        const Eigen::RowVectorXcd lhs =
            h_D.adjoint() + h_R.adjoint() * phi.conjugate().asDiagonal() * H_I;
        const VecC h = composite_channel(h_D, V, phi);
        CHECK((h.adjoint() - lhs).norm() < 1e-12 * std::max(1.0, h.norm()));
    }
}

TEST_CASE("composite channel rejects off-modulus reflections")
{
    const VecC h_D = VecC::Ones(2);
    const MatC V = MatC::Ones(2, 2);
    VecC phi = VecC::Ones(2);
    phi(0) = 1.1;
    CHECK_THROWS_AS(composite_channel(h_D, V, phi), std::invalid_argument);
}

TEST_CASE("perturb_csit with zero error returns the channel bit-exactly")
{
    Scenario s = small_scenario();
    const ChannelRealization ch = sample_channels(s, 9);
    const auto V_hat = perturb_csit(ch.V, CsitError::uniform(s.N, 0.0), 77);
    for (int n = 0; n < s.N; ++n)
        CHECK((V_hat[n] - ch.V[n]).norm() == 0.0);
}

TEST_CASE("perturb_csit error variance matches epsilon^2")
{
    const int N = 1, L = 10, M = 10;
    std::vector<MatC> V = {MatC::Zero(L, M)};
    const double eps = 0.3;
    double acc = 0.0;
    int count = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto V_hat = perturb_csit(V, CsitError::uniform(N, eps), 300 + i);
        acc += V_hat[0].squaredNorm();
        count += L * M;
    }
    const double var = acc / count;
    CHECK(std::abs(var - eps * eps) / (eps * eps) < 0.02);
}

TEST_CASE("perturb_csit treats infinite error as no usable estimate")
{
    std::vector<MatC> V = {MatC::Ones(2, 2)};
    const auto V_hat =
        perturb_csit(V, CsitError::uniform(1, std::numeric_limits<double>::infinity()), 1);
    CHECK(V_hat[0].norm() == 0.0);
}

TEST_CASE("scenario validation rejects broken configurations")
{
    Scenario s;
    s.M = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = Scenario{};
    s.sigma2 = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = Scenario{};
    s.alpha = 0.5;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = Scenario{};
    s.L = -1;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("tap profiles normalize to unit power")
{
    VecR d(2), p(2);
    d << 0.0, 10e-9;
    p << 2.0, 6.0;
    const TapProfile tp(d, p);
    CHECK(tp.powers_lin.sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tp.powers_lin(0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("subband frequencies are evenly spaced and centered on f_c")
{
    Scenario s;
    s.N = 8;
    const VecR f = s.subband_frequencies();
    CHECK(f.mean() == doctest::Approx(s.f_c).epsilon(1e-12));
    for (int n = 1; n < s.N; ++n)
        CHECK(f(n) - f(n - 1) == doctest::Approx(s.B / s.N).epsilon(1e-12));
}

TEST_CASE("scenario JSON config round-trips with dB conversions")
{
    const char *path = "test_scenario_config.json";
    {
        std::ofstream f(path);
        f << R"({"M":2,"N":4,"L":5,"sigma2_dbm":-40,"P_dbm":40,"rx_gain_dbi":3,
                 "tap_profile":[[0.0,1.0]],"seed":7})";
    }
    const Scenario s = Scenario::load_json(path);
    CHECK(s.M == 2);
    CHECK(s.N == 4);
    CHECK(s.L == 5);
    CHECK(s.sigma2 == doctest::Approx(1e-7).epsilon(1e-12));
    CHECK(s.P == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.rx_gain == doctest::Approx(std::pow(10.0, 0.3)).epsilon(1e-12));
    CHECK(s.seed == 7);
    std::remove(path);
}

TEST_CASE("scenario JSON rejects unknown keys")
{
    const char *path = "test_scenario_bad.json";
    {
        std::ofstream f(path);
        f << R"({"M":2,"unknown_key":1})";
    }
    CHECK_THROWS(Scenario::load_json(path));
    std::remove(path);
}

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

#include "irsswipt/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace irsswipt {

TapProfile::TapProfile(VecR delays, VecR powers)
    : delays_s(std::move(delays)), powers_lin(std::move(powers))
{
    if (delays_s.size() != powers_lin.size() || delays_s.size() == 0)
        throw std::invalid_argument("tap profile: delay/power size mismatch or empty");
    if ((powers_lin.array() < 0).any())
        throw std::invalid_argument("tap profile: negative tap power");
    const double total = powers_lin.sum();
    if (total <= 0)
        throw std::invalid_argument("tap profile: zero total power");
    powers_lin /= total;
}

TapProfile TapProfile::single_tap()
{
    return TapProfile(VecR::Zero(1), VecR::Ones(1));
}

TapProfile TapProfile::load_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("tap profile: cannot open " + path);
    std::vector<double> delays, powers;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double d, p;
        if (!(ss >> d >> p)) {
            // tolerate a single header row
            if (delays.empty())
                continue;
            throw std::runtime_error("tap profile: malformed line: " + line);
        }
        delays.push_back(d);
        powers.push_back(p);
    }
    if (delays.empty())
        throw std::runtime_error("tap profile: no taps in " + path);
    return TapProfile(Eigen::Map<VecR>(delays.data(), (Eigen::Index)delays.size()),
                      Eigen::Map<VecR>(powers.data(), (Eigen::Index)powers.size()));
}

void Scenario::validate() const
{
    auto fail = [](const std::string &msg) { throw std::invalid_argument("scenario: " + msg); };
    if (M < 1) fail("M must be >= 1");
    if (N < 1) fail("N must be >= 1");
    if (L < 0) fail("L must be >= 0");
    if (!(B > 0)) fail("B must be > 0");
    if (!(sigma2 > 0)) fail("sigma2 must be > 0");
    if (!(P > 0)) fail("P must be > 0");
    if (!(beta2 > 0)) fail("beta2 must be > 0");
    if (!(beta4 > 0)) fail("beta4 must be > 0");
    if (!(alpha >= 1)) fail("alpha must be >= 1");
    if (!(epsilon > 0)) fail("epsilon must be > 0");
    if (!(f_c > 0)) fail("f_c must be > 0");
    if (!(d_D > 0)) fail("d_D must be > 0");
    if (!(rx_gain > 0)) fail("rx_gain must be > 0");
    if (tap_profile.taps() == 0) fail("tap profile empty");
    if (std::abs(tap_profile.powers_lin.sum() - 1.0) > 1e-12)
        fail("tap powers must sum to 1 after normalization");
    if (sigma2_per_subband.size() != 0 && sigma2_per_subband.size() != N)
        fail("sigma2_per_subband must have N entries");
    if (sigma2_per_subband.size() == N && (sigma2_per_subband.array() <= 0).any())
        fail("sigma2_per_subband entries must be > 0");
}

VecR Scenario::subband_frequencies() const
{
    VecR f(N);
    for (int n = 1; n <= N; ++n)
        f(n - 1) = f_c + (n - (N + 1) / 2.0) * B / N;
    return f;
}

VecR Scenario::sigma_vec() const
{
    if (sigma2_per_subband.size() == N)
        return sigma2_per_subband;
    return VecR::Constant(N, sigma2);
}

Scenario Scenario::load_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("scenario: cannot open " + path);
    nlohmann::json j;
    in >> j;

    Scenario s;
    const std::set<std::string> known = {
        "M", "N", "L", "f_c", "B", "sigma2", "sigma2_dbm", "P", "P_dbm",
        "beta2", "beta4", "d_D", "d_H", "d_V", "alpha", "epsilon",
        "rx_gain", "rx_gain_dbi", "tap_profile_csv", "tap_profile",
        "sigma2_per_subband", "seed"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::runtime_error("scenario: unknown config key '" + it.key() + "'");

    auto get = [&](const char *k, auto &dst) {
        if (j.contains(k))
            dst = j.at(k).template get<std::decay_t<decltype(dst)>>();
    };
    get("M", s.M);
    get("N", s.N);
    get("L", s.L);
    get("f_c", s.f_c);
    get("B", s.B);
    get("sigma2", s.sigma2);
    get("P", s.P);
    get("beta2", s.beta2);
    get("beta4", s.beta4);
    get("d_D", s.d_D);
    get("d_H", s.d_H);
    get("d_V", s.d_V);
    get("alpha", s.alpha);
    get("epsilon", s.epsilon);
    get("rx_gain", s.rx_gain);
    if (j.contains("sigma2_dbm"))
        s.sigma2 = dbm2watt(j.at("sigma2_dbm").get<double>());
    if (j.contains("P_dbm"))
        s.P = dbm2watt(j.at("P_dbm").get<double>());
    if (j.contains("rx_gain_dbi"))
        s.rx_gain = db2lin(j.at("rx_gain_dbi").get<double>());
    if (j.contains("seed"))
        s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tap_profile_csv"))
        s.tap_profile = TapProfile::load_csv(j.at("tap_profile_csv").get<std::string>());
    if (j.contains("tap_profile")) {
        const auto &tp = j.at("tap_profile");
        VecR d(tp.size()), p(tp.size());
        Eigen::Index i = 0;
        for (const auto &row : tp) {
            d(i) = row.at(0).get<double>();
            p(i) = row.at(1).get<double>();
            ++i;
        }
        s.tap_profile = TapProfile(d, p);
    }
    if (j.contains("sigma2_per_subband")) {
        const auto &v = j.at("sigma2_per_subband");
        s.sigma2_per_subband.resize((Eigen::Index)v.size());
        Eigen::Index i = 0;
        for (const auto &x : v)
            s.sigma2_per_subband(i++) = x.get<double>();
    }
    s.validate();
    return s;
}

double path_loss(double d, double f_c)
{
    if (!(d > 0))
        throw std::domain_error("path_loss: distance must be > 0");
    const double lambda_c = kSpeedOfLight / f_c;
    auto friis = [&](double dist) {
        const double a = lambda_c / (4.0 * kPi * dist);
        return a * a;
    };
    constexpr double kBreak = 10.0;
    if (d <= kBreak)
        return friis(d);
    return friis(kBreak) * std::pow(d / kBreak, -3.5);
}

namespace {

/// Subband responses of one tapped-delay-line link for all tx/rx element
/// pairs: rows index the output dimension, cols the subbands.
MatC tap_frequency_response(Rng &rng, const TapProfile &tp, const VecR &freqs,
                            Eigen::Index n_coeff)
{
    const Eigen::Index T = tp.taps();
    const Eigen::Index N = freqs.size();
    MatC gains(n_coeff, T);
    for (Eigen::Index c = 0; c < n_coeff; ++c)
        for (Eigen::Index t = 0; t < T; ++t)
            gains(c, t) = rng.cscg(tp.powers_lin(t));
    MatC steer(T, N);
    for (Eigen::Index t = 0; t < T; ++t)
        for (Eigen::Index n = 0; n < N; ++n)
            steer(t, n) = std::exp(cxd(0.0, -2.0 * kPi * freqs(n) * tp.delays_s(t)));
    return gains * steer;
}

} // namespace

ChannelRealization sample_channels(const Scenario &s, std::uint64_t seed)
{
    s.validate();
    const VecR freqs = s.subband_frequencies();
    const double g = std::sqrt(s.rx_gain);

    ChannelRealization ch;
    ch.M = s.M;
    ch.N = s.N;
    ch.L = s.L;
    ch.lambda_D = std::sqrt(path_loss(s.d_D, s.f_c));
    ch.lambda_I = s.L > 0 ? std::sqrt(path_loss(s.d_incident(), s.f_c)) : 1.0;
    ch.lambda_R = s.L > 0 ? std::sqrt(path_loss(s.d_reflected(), s.f_c)) : 1.0;

    // Independent streams per link so that L or M changes do not reshuffle
    // the other links' draws.
    Rng rng_d(derive_seed(seed, 0));
    Rng rng_i(derive_seed(seed, 1));
    Rng rng_r(derive_seed(seed, 2));

    const MatC direct = tap_frequency_response(rng_d, s.tap_profile, freqs, s.M);
    const MatC incident =
        s.L > 0 ? tap_frequency_response(rng_i, s.tap_profile, freqs,
                                         (Eigen::Index)s.L * s.M)
                : MatC(0, s.N);
    const MatC reflected =
        s.L > 0 ? tap_frequency_response(rng_r, s.tap_profile, freqs, s.L) : MatC(0, s.N);

    ch.h_D.resize(s.N);
    ch.H_I.resize(s.N);
    ch.h_R.resize(s.N);
    ch.V.resize(s.N);
    for (int n = 0; n < s.N; ++n) {
        ch.h_D[n] = ch.lambda_D * g * direct.col(n);
        if (s.L > 0) {
            MatC Hi(s.L, s.M);
            for (int l = 0; l < s.L; ++l)
                for (int m = 0; m < s.M; ++m)
                    Hi(l, m) = incident((Eigen::Index)l * s.M + m, n);
            ch.H_I[n] = ch.lambda_I * g * Hi;
            ch.h_R[n] = ch.lambda_R * g * reflected.col(n);
            ch.V[n] = ch.h_R[n].conjugate().asDiagonal() * ch.H_I[n];
        } else {
            ch.H_I[n] = MatC(0, s.M);
            ch.h_R[n] = VecC(0);
            ch.V[n] = MatC(0, s.M);
        }
    }
    return ch;
}

VecC composite_channel(const VecC &h_D_n, const MatC &V_n, const VecC &phi)
{
    if (phi.size() != V_n.rows())
        throw std::invalid_argument("composite_channel: phi/V dimension mismatch");
    for (Eigen::Index l = 0; l < phi.size(); ++l)
        if (std::abs(std::abs(phi(l)) - 1.0) > 1e-9)
            throw std::invalid_argument("composite_channel: phi must be unit-modulus");
    if (phi.size() == 0)
        return h_D_n;
    // h_n^H = h_D,n^H + phi^H V_n  =>  h_n = h_D,n + V_n^H phi
    return h_D_n + V_n.adjoint() * phi;
}

std::vector<VecC> composite_channels(const ChannelRealization &ch, const VecC &phi)
{
    std::vector<VecC> h(ch.N);
    for (int n = 0; n < ch.N; ++n)
        h[n] = composite_channel(ch.h_D[n], ch.V[n], phi);
    return h;
}

std::vector<MatC> perturb_csit(const std::vector<MatC> &V, const CsitError &err,
                               std::uint64_t seed)
{
    if ((Eigen::Index)V.size() != err.epsilon_n.size())
        throw std::invalid_argument("perturb_csit: epsilon_n must have one entry per subband");
    Rng rng(seed);
    std::vector<MatC> V_hat(V.size());
    for (std::size_t n = 0; n < V.size(); ++n) {
        const double eps = err.epsilon_n((Eigen::Index)n);
        if (eps < 0)
            throw std::invalid_argument("perturb_csit: negative error std-dev");
        if (std::isinf(eps)) {
            V_hat[n] = MatC::Zero(V[n].rows(), V[n].cols());
            continue;
        }
        if (eps == 0.0) {
            V_hat[n] = V[n];
            continue;
        }
        V_hat[n] = V[n] + rng.cscg_matrix(V[n].rows(), V[n].cols(), eps * eps);
    }
    return V_hat;
}

} // namespace irsswipt

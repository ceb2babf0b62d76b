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

#include "irsswipt/orchestrate.hpp"

#include "irsswipt/active.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irsswipt {

std::vector<cxd> IrsCodebook::phases() const
{
    if (b < 1)
        throw std::invalid_argument("codebook: b must be >= 1");
    std::vector<cxd> out;
    const int n = 1 << b;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(std::exp(cxd(0.0, 2.0 * kPi * i / n)));
    return out;
}

REPoint evaluate_design(const Scenario &s, const ChannelRealization &ch, const VecC &phi,
                        const WaveformDesign &d, const std::string &mode)
{
    const std::vector<VecC> h = composite_channels(ch, phi);
    std::vector<VecC> wI(ch.N), wP(ch.N);
    for (int n = 0; n < ch.N; ++n) {
        wI[n] = d.w_I(n);
        wP[n] = d.w_P(n);
    }
    const VecC a_I = subband_weights(h, wI);
    const VecC a_P = subband_weights(h, wP);
    REPoint p;
    p.phi = phi;
    p.design = d;
    p.mode = mode;
    p.rate = achievable_rate(a_I, d.rho, s.sigma_vec());
    p.z = harvested_dc(dc_terms(a_I, a_P), d.rho, s.beta2, s.beta4);
    return p;
}

namespace {

WaveformDesign make_design(const VecR &s_I, const VecR &s_P, const std::vector<VecC> &b,
                           double rho, double delta = 0.0)
{
    WaveformDesign d;
    d.s_I = s_I;
    d.s_P = s_P;
    d.b_I = b;
    d.b_P = b;
    d.rho = rho;
    d.rho_bar = 1.0 - rho;
    d.delta = delta;
    return d;
}

double design_dc(const Scenario &s, const ChannelRealization &ch, const VecC &phi,
                 const WaveformDesign &d)
{
    return evaluate_design(s, ch, phi, d, "").z;
}

} // namespace

REPoint bcd(const Scenario &s, const ChannelRealization &ch, double R_bar,
            const BcdOptions &opt)
{
    const VecR sigma2 = s.sigma_vec();

    // Starting block values. The ascent guards below assume the start is
    // rate-feasible, so a cold start runs the waveform block once up front.
    VecC phi;
    WaveformDesign d;
    if (opt.warm != nullptr && opt.warm->feasible) {
        phi = opt.warm->phi;
        d = opt.warm->design;
    } else {
        phi = ch.L > 0 ? VecC(VecC::Ones(ch.L)) : VecC(0);
        std::vector<VecC> h = composite_channels(ch, phi);
        const std::vector<VecC> b = mrt_precoders(h);
        GpOptions go;
        go.epsilon = s.epsilon;
        const GpOutcome g0 = gp(channel_norms(h), s.P, sigma2, R_bar, s.beta2, s.beta4, go);
        if (g0.code == SolveCode::Infeasible) {
            REPoint fail =
                evaluate_design(s, ch, phi, make_design(water_filling(channel_norms(h), s.P, sigma2),
                                                        VecR::Zero(ch.N), b, 0.0),
                                "PS");
            fail.feasible = false;
            fail.converged = false;
            return fail;
        }
        d = make_design(g0.s_I, g0.s_P, b, g0.rho);
    }

    REPoint best = evaluate_design(s, ch, phi, d, "PS");
    double z_cur = best.z;
    std::vector<double> z_seq = {z_cur};
    bool converged = false;
    int outer = 0;

    GpOutcome gp_last;
    for (outer = 1; outer <= opt.max_outer; ++outer) {
        // (i) passive beamforming for the current waveform
        if (ch.L > 0) {
            std::vector<VecC> wI(ch.N), wP(ch.N);
            for (int n = 0; n < ch.N; ++n) {
                wI[n] = d.w_I(n);
                wP[n] = d.w_P(n);
            }
            ScaOptions so;
            so.epsilon = s.epsilon;
            {
                VecC bar(ch.L + 1);
                bar.head(ch.L) = phi;
                bar(ch.L) = 1.0;
                so.Phi_init = bar * bar.adjoint();
            }
            const ScaResult sr = sca(s, ch, wI, wP, d.rho, R_bar, so);
            if (sr.infeasible) {
                if (outer == 1) {
                    best.feasible = false;
                    best.converged = false;
                    return best;
                }
                break;
            }
            WaveformDesign d_probe = d; // same waveform, new reflection
            const double z_probe = design_dc(s, ch, sr.phi, d_probe);
            if (z_probe >= z_cur)
                phi = sr.phi;
        }

        // (ii) closed-form precoders on the new composite channel
        const std::vector<VecC> h = composite_channels(ch, phi);
        {
            WaveformDesign d_new = d;
            d_new.b_I = mrt_precoders(h);
            d_new.b_P = d_new.b_I;
            if (design_dc(s, ch, phi, d_new) >= z_cur)
                d = d_new;
        }

        // (iii) amplitudes and splitting ratio
        const VecR norms = channel_norms(h);
        GpOptions go;
        go.epsilon = s.epsilon;
        go.init.resize(2 * ch.N + 1);
        go.init << d.s_I, d.s_P, d.rho;
        gp_last = gp(norms, s.P, sigma2, R_bar, s.beta2, s.beta4, go);
        if (gp_last.code == SolveCode::Infeasible) {
            if (outer == 1) {
                best.feasible = false;
                best.converged = false;
                return best;
            }
            break;
        }
        {
            WaveformDesign d_new = d;
            d_new.s_I = gp_last.s_I;
            d_new.s_P = gp_last.s_P;
            d_new.rho = gp_last.rho;
            d_new.rho_bar = 1.0 - gp_last.rho;
            if (design_dc(s, ch, phi, d_new) >= z_cur)
                d = d_new;
        }

        const double z_new = design_dc(s, ch, phi, d);
        z_seq.push_back(std::max(z_new, z_cur));
        const double dz = z_new - z_cur;
        z_cur = std::max(z_new, z_cur);
        if (std::abs(dz) <= s.epsilon) {
            converged = true;
            break;
        }
    }

    best = evaluate_design(s, ch, phi, d, "PS");
    best.outer_iterations = std::min(outer, opt.max_outer);
    best.converged = converged;
    best.z_seq = std::move(z_seq);
    return best;
}

REPoint lc_bcd(const Scenario &s, const ChannelRealization &ch, double delta, double rho,
               const BcdOptions &opt)
{
    if (delta < 0 || delta > 1 || rho < 0 || rho > 1)
        throw std::invalid_argument("lc_bcd: delta, rho must lie in [0,1]");
    const VecR sigma2 = s.sigma_vec();

    VecC phi;
    if (opt.warm != nullptr && opt.warm->feasible && opt.warm->phi.size() == ch.L)
        phi = opt.warm->phi;
    else
        phi = ch.L > 0 ? VecC(VecC::Ones(ch.L)) : VecC(0);

    std::vector<VecC> h = composite_channels(ch, phi);
    auto [s_I, s_P] = superposed_lc(channel_norms(h), s.P, delta, sigma2, s.alpha);
    WaveformDesign d = make_design(s_I, s_P, mrt_precoders(h), rho, delta);

    REPoint cur = evaluate_design(s, ch, phi, d, "LC-PS");
    std::vector<double> z_seq = {cur.z};
    double metric = rho == 0.0 ? cur.rate : cur.z;
    bool converged = false;
    int outer = 0;

    for (outer = 1; outer <= opt.max_outer; ++outer) {
        if (ch.L > 0) {
            std::vector<VecC> wI(ch.N), wP(ch.N);
            for (int n = 0; n < ch.N; ++n) {
                wI[n] = d.w_I(n);
                wP[n] = d.w_P(n);
            }
            ScaOptions so;
            so.epsilon = s.epsilon;
            {
                VecC bar(ch.L + 1);
                bar.head(ch.L) = phi;
                bar(ch.L) = 1.0;
                so.Phi_init = bar * bar.adjoint();
            }
            phi = m_sca(s, ch, wI, wP, rho, so).phi;
        }
        h = composite_channels(ch, phi);
        const VecR norms = channel_norms(h);
        auto [sI_new, sP_new] = superposed_lc(norms, s.P, delta, sigma2, s.alpha);
        d = make_design(sI_new, sP_new, mrt_precoders(h), rho, delta);

        const REPoint pt = evaluate_design(s, ch, phi, d, "LC-PS");
        z_seq.push_back(pt.z);
        const double metric_new = rho == 0.0 ? pt.rate : pt.z;
        const double diff = metric_new - metric;
        metric = metric_new;
        cur = pt;
        if (std::abs(diff) <= s.epsilon) {
            converged = true;
            break;
        }
    }
    cur.outer_iterations = std::min(outer, opt.max_outer);
    cur.converged = converged;
    cur.z_seq = std::move(z_seq);
    return cur;
}

std::vector<std::pair<double, double>>
upper_concave_envelope(std::vector<std::pair<double, double>> pts)
{
    std::sort(pts.begin(), pts.end());
    // keep only the best z at equal rate
    std::vector<std::pair<double, double>> uniq;
    for (const auto &p : pts) {
        if (!uniq.empty() && std::abs(uniq.back().first - p.first) < 1e-15)
            uniq.back().second = std::max(uniq.back().second, p.second);
        else
            uniq.push_back(p);
    }
    std::vector<std::pair<double, double>> hull;
    for (const auto &p : uniq) {
        while (hull.size() >= 2) {
            const auto &a = hull[hull.size() - 2];
            const auto &b = hull[hull.size() - 1];
            const double cross = (b.first - a.first) * (p.second - a.second) -
                                 (b.second - a.second) * (p.first - a.first);
            if (cross >= 0) // b below or on chord a-p: drop it
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

double envelope_value(const std::vector<std::pair<double, double>> &env, double rate)
{
    if (env.empty())
        return -std::numeric_limits<double>::infinity();
    if (rate < env.front().first - 1e-12 || rate > env.back().first + 1e-12)
        return -std::numeric_limits<double>::infinity();
    if (env.size() == 1)
        return env.front().second;
    for (std::size_t i = 1; i < env.size(); ++i) {
        if (rate <= env[i].first + 1e-12) {
            const auto &a = env[i - 1];
            const auto &b = env[i];
            if (b.first - a.first < 1e-15)
                return std::max(a.second, b.second);
            const double w = (rate - a.first) / (b.first - a.first);
            return a.second + w * (b.second - a.second);
        }
    }
    return env.back().second;
}

RERegion re_region(const Scenario &s, const ChannelRealization &ch, RegionMode mode,
                   int grid_size)
{
    if (grid_size < 2)
        throw std::invalid_argument("re_region: grid_size must be >= 2");
    RERegion reg;
    reg.mode = mode == RegionMode::Bcd ? "bcd" : "lc";

    // WIT endpoint fixes the capacity; WPT endpoint fixes the peak DC.
    reg.wit = lc_bcd(s, ch, 0.0, 0.0);
    reg.wit.mode = "WIT";
    reg.c_max = reg.wit.rate;

    if (mode == RegionMode::Bcd) {
        REPoint prev;
        bool have_prev = false;
        std::vector<REPoint> pts;
        for (int j = grid_size - 1; j >= 0; --j) {
            const double R_bar = reg.c_max * j / (grid_size - 1);
            REPoint pt;
            if (j == grid_size - 1) {
                // rate floor at capacity: the WIT design is the only choice
                pt = reg.wit;
                pt.mode = "PS";
            } else {
                BcdOptions bo;
                if (have_prev)
                    bo.warm = &prev;
                pt = bcd(s, ch, R_bar, bo);
            }
            prev = pt;
            have_prev = true;
            pts.push_back(pt);
        }
        std::reverse(pts.begin(), pts.end());
        reg.points = std::move(pts);
        reg.wpt = reg.points.front();
        reg.wpt.mode = "WPT";
    } else {
        std::vector<REPoint> pts;
        REPoint prev;
        bool have_prev = false;
        for (int j = 0; j < grid_size; ++j) {
            const double dr = (double)j / (grid_size - 1);
            BcdOptions bo;
            if (have_prev)
                bo.warm = &prev;
            REPoint pt = lc_bcd(s, ch, dr, dr, bo);
            prev = pt;
            have_prev = true;
            pts.push_back(pt);
        }
        std::sort(pts.begin(), pts.end(),
                  [](const REPoint &a, const REPoint &b) { return a.rate < b.rate; });
        reg.points = std::move(pts);
        reg.wpt = lc_bcd(s, ch, 1.0, 1.0);
        reg.wpt.mode = "WPT";
    }

    std::vector<std::pair<double, double>> cloud;
    cloud.reserve(reg.points.size() + 2);
    for (const auto &p : reg.points)
        cloud.emplace_back(p.rate, p.z);
    cloud.emplace_back(reg.c_max, 0.0);       // TS endpoint at full rate
    cloud.emplace_back(0.0, reg.wpt.z);       // TS endpoint at full power
    reg.envelope = upper_concave_envelope(std::move(cloud));
    return reg;
}

VecC quantize_irs(const VecC &phi, int b)
{
    if (b < 0)
        throw std::invalid_argument("quantize_irs: b must be >= 0");
    if (b == 0)
        return VecC(0); // no-IRS sentinel
    const int n = 1 << b;
    const double step = 2.0 * kPi / n;
    VecC out(phi.size());
    for (Eigen::Index l = 0; l < phi.size(); ++l) {
        double theta = std::arg(phi(l));
        if (theta < 0)
            theta += 2.0 * kPi;
        // round half-down so ties snap to the lower phase index
        long idx = (long)std::ceil(theta / step - 0.5);
        idx = ((idx % n) + n) % n;
        out(l) = std::exp(cxd(0.0, step * (double)idx));
    }
    return out;
}

REPoint linear_eh_baseline(const Scenario &s, const ChannelRealization &ch, double R_bar)
{
    const VecR sigma2 = s.sigma_vec();

    VecC phi = ch.L > 0 ? VecC(VecC::Ones(ch.L)) : VecC(0);
    std::vector<VecC> h = composite_channels(ch, phi);
    WaveformDesign d = make_design(VecR::Constant(ch.N, std::sqrt(s.P / ch.N)),
                                   VecR::Constant(ch.N, std::sqrt(s.P / ch.N)),
                                   mrt_precoders(h), R_bar <= 0 ? 1.0 : 0.5);

    auto linear_z = [&](const VecC &ph, const WaveformDesign &dd) {
        const std::vector<VecC> hh = composite_channels(ch, ph);
        std::vector<VecC> wI(ch.N), wP(ch.N);
        for (int n = 0; n < ch.N; ++n) {
            wI[n] = dd.w_I(n);
            wP[n] = dd.w_P(n);
        }
        const DcTerms t = dc_terms(subband_weights(hh, wI), subband_weights(hh, wP));
        return s.beta2 * dd.rho * (t.yI2 + t.yP2); // beta4 truncated away
    };

    double z_lin = linear_z(phi, d);
    for (int outer = 1; outer <= 30; ++outer) {
        // passive step under the truncated model: surrogate is exact, one solve
        if (ch.L > 0) {
            std::vector<VecC> wI(ch.N), wP(ch.N);
            for (int n = 0; n < ch.N; ++n) {
                wI[n] = d.w_I(n);
                wP[n] = d.w_P(n);
            }
            const CouplingMatrices C = build_coupling(ch, wI, wP);
            PsdSubproblem sp;
            sp.dim = ch.L + 1;
            sp.objective = sca_surrogate(C, VecC::Zero(2 * ch.N - 1),
                                         VecC::Zero(2 * ch.N - 1),
                                         std::max(d.rho, 1e-6), s.beta2, 0.0)
                               .first;
            if (R_bar > 0 && d.rho < 1.0) {
                sp.include_rate = true;
                sp.rate_floor_nats = R_bar * std::log(2.0);
                for (int n = 0; n < ch.N; ++n) {
                    RateTerm rt;
                    rt.m = C.u_I[n];
                    rt.a = (1.0 - d.rho) / sigma2(n);
                    sp.rate_terms.push_back(rt);
                }
                ScaResult wit = m_sca(s, ch, wI, wP, 0.0);
                VecC bar(ch.L + 1);
                bar.head(ch.L) = wit.phi;
                bar(ch.L) = 1.0;
                sp.initial = bar * bar.adjoint();
            }
            const PsdResult r = solve_psd(sp);
            if (r.status.code != SolveCode::Infeasible)
                phi = extract_phase(r.Phi).first;
        }
        h = composite_channels(ch, phi);
        const VecR norms = channel_norms(h);

        // waveform step under the truncated model
        WaveformDesign d_new = d;
        d_new.b_I = mrt_precoders(h);
        d_new.b_P = d_new.b_I;
        if (R_bar <= 0) {
            // adaptive single sinewave on the strongest subband
            int n_star = 0;
            for (int n = 1; n < ch.N; ++n)
                if (norms(n) > norms(n_star))
                    n_star = n;
            d_new.s_I = VecR::Zero(ch.N);
            d_new.s_P = VecR::Zero(ch.N);
            d_new.s_P(n_star) = std::sqrt(2.0 * s.P);
            d_new.rho = 1.0;
            d_new.rho_bar = 0.0;
        } else {
            GpOptions go;
            go.epsilon = s.epsilon;
            go.init.resize(2 * ch.N + 1);
            go.init << d.s_I, d.s_P, d.rho;
            const GpOutcome g = gp(norms, s.P, sigma2, R_bar, s.beta2, 0.0, go);
            if (g.code == SolveCode::Infeasible) {
                REPoint fail = evaluate_design(s, ch, phi, d, "LEH");
                fail.feasible = false;
                return fail;
            }
            d_new.s_I = g.s_I;
            d_new.s_P = g.s_P;
            d_new.rho = g.rho;
            d_new.rho_bar = 1.0 - g.rho;
        }
        d = d_new;
        const double z_new = linear_z(phi, d);
        const double dz = std::abs(z_new - z_lin);
        z_lin = z_new;
        if (dz <= s.epsilon)
            break;
    }

    // score the linear-model design under the true nonlinear harvester
    return evaluate_design(s, ch, phi, d, "LEH");
}

} // namespace irsswipt

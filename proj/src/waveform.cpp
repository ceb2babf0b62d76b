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

#include "irsswipt/waveform.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace irsswipt {

const std::vector<std::array<int, 4>> &multisine_quadruples(int N)
{
    static std::mutex mtx;
    static std::map<int, std::vector<std::array<int, 4>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(N);
    if (it != cache.end())
        return it->second;
    std::vector<std::array<int, 4>> quads;
    for (int n1 = 0; n1 < N; ++n1)
        for (int n2 = 0; n2 < N; ++n2)
            for (int n3 = 0; n3 < N; ++n3) {
                const int n4 = n1 + n2 - n3;
                if (n4 >= 0 && n4 < N)
                    quads.push_back({n1, n2, n3, n4});
            }
    return cache.emplace(N, std::move(quads)).first->second;
}

double DcPosynomial::eval(const VecR &s_I, const VecR &s_P, double rho) const
{
    return monomial_values(s_I, s_P, rho).sum();
}

VecR DcPosynomial::monomial_values(const VecR &s_I, const VecR &s_P, double rho) const
{
    VecR x(2 * N + 3);
    x.head(N) = s_I;
    x.segment(N, N) = s_P;
    x(gp_idx_rho(N)) = rho;
    x(gp_idx_rhobar(N)) = 1.0;
    x(gp_idx_tpp(N)) = 1.0;
    VecR vals((Eigen::Index)monomials.size());
    for (std::size_t m = 0; m < monomials.size(); ++m) {
        double v = monomials[m].coeff;
        for (const auto &[vi, e] : monomials[m].expo)
            v *= std::pow(x(vi), e);
        vals((Eigen::Index)m) = v;
    }
    return vals;
}

DcPosynomial dc_posynomial(const VecR &h_norms, double beta2, double beta4)
{
    const int N = (int)h_norms.size();
    DcPosynomial p;
    p.N = N;

    auto add = [&](double coeff, std::initializer_list<std::pair<int, double>> expo) {
        if (coeff <= 0.0)
            return; // zero channels or a truncated beta4 drop their monomials
        GpMonomial m;
        m.coeff = coeff;
        // accumulate repeated variables
        for (const auto &[vi, e] : expo) {
            bool found = false;
            for (auto &[wi, we] : m.expo)
                if (wi == vi) {
                    we += e;
                    found = true;
                    break;
                }
            if (!found)
                m.expo.emplace_back(vi, e);
        }
        p.monomials.push_back(std::move(m));
    };

    const int ir = gp_idx_rho(N);
    // second-order terms
    for (int n = 0; n < N; ++n) {
        const double h2 = h_norms(n) * h_norms(n);
        add(0.5 * beta2 * h2, {{ir, 1.0}, {gp_idx_sI(n), 2.0}});
        add(0.5 * beta2 * h2, {{ir, 1.0}, {gp_idx_sP(N, n), 2.0}});
    }
    // modulated fourth-order: (3/4) beta4 sum_{n1,n2} prod ||h||^2 s_I^2
    for (int n1 = 0; n1 < N; ++n1)
        for (int n2 = 0; n2 < N; ++n2) {
            const double c = 0.75 * beta4 * std::pow(h_norms(n1) * h_norms(n2), 2.0);
            add(c, {{ir, 2.0}, {gp_idx_sI(n1), 2.0}, {gp_idx_sI(n2), 2.0}});
        }
    // multisine fourth-order over the frequency-coupled quadruples
    for (const auto &q : multisine_quadruples(N)) {
        const double c = 0.375 * beta4 * h_norms(q[0]) * h_norms(q[1]) * h_norms(q[2]) *
                         h_norms(q[3]);
        add(c, {{ir, 2.0},
                {gp_idx_sP(N, q[0]), 1.0},
                {gp_idx_sP(N, q[1]), 1.0},
                {gp_idx_sP(N, q[2]), 1.0},
                {gp_idx_sP(N, q[3]), 1.0}});
    }
    // cross terms: (3/2) beta4 sum_{n1,n2} ||h1||^2 ||h2||^2 s_I1^2 s_P2^2
    for (int n1 = 0; n1 < N; ++n1)
        for (int n2 = 0; n2 < N; ++n2) {
            const double c = 1.5 * beta4 * std::pow(h_norms(n1) * h_norms(n2), 2.0);
            add(c, {{ir, 2.0}, {gp_idx_sI(n1), 2.0}, {gp_idx_sP(N, n2), 2.0}});
        }
    return p;
}

namespace {

double rate_of(const VecR &h_norms, const VecR &s_I, double rho_bar, const VecR &sigma2)
{
    double r = 0.0;
    for (Eigen::Index n = 0; n < h_norms.size(); ++n)
        r += std::log2(1.0 + rho_bar * h_norms(n) * h_norms(n) * s_I(n) * s_I(n) /
                       sigma2(n));
    return r;
}

} // namespace

VecR water_filling(const VecR &h_norms, double P, const VecR &sigma2)
{
    const Eigen::Index N = h_norms.size();
    if (!(P > 0))
        throw std::invalid_argument("water_filling: P must be > 0");
    if (sigma2.size() != N)
        throw std::invalid_argument("water_filling: sigma2 size mismatch");
    if (h_norms.maxCoeff() <= 0)
        throw std::invalid_argument("water_filling: all-zero channel");

    VecR c(N);
    for (Eigen::Index n = 0; n < N; ++n)
        c(n) = h_norms(n) > 0 ? sigma2(n) / (P * h_norms(n) * h_norms(n))
                              : std::numeric_limits<double>::infinity();
    auto power_at = [&](double lambda) {
        double s = 0.0;
        for (Eigen::Index n = 0; n < N; ++n)
            s += std::max(0.0, lambda - c(n));
        return s;
    };
    double lo = c.minCoeff();
    double hi = lo + P;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (power_at(mid) > P)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, hi))
            break;
    }
    const double lambda = 0.5 * (lo + hi);
    VecR s(N);
    for (Eigen::Index n = 0; n < N; ++n)
        s(n) = std::sqrt(2.0 * std::max(0.0, lambda - c(n)));
    return s;
}

VecR smf(const VecR &h_norms, double P, double alpha)
{
    if (!(alpha >= 1.0))
        throw std::invalid_argument("smf: alpha must be >= 1");
    const double denom = h_norms.array().pow(2.0 * alpha).sum();
    if (!(denom > 0))
        throw std::invalid_argument("smf: all-zero channel");
    return std::sqrt(2.0 * P / denom) * h_norms.array().pow(alpha);
}

std::pair<VecR, VecR> superposed_lc(const VecR &h_norms, double P, double delta,
                                    const VecR &sigma2, double alpha)
{
    if (delta < 0.0 || delta > 1.0)
        throw std::invalid_argument("superposed_lc: delta out of [0,1]");
    VecR s_I = delta < 1.0 ? VecR(std::sqrt(1.0 - delta) * water_filling(h_norms, P, sigma2))
                           : VecR(VecR::Zero(h_norms.size()));
    VecR s_P = delta > 0.0 ? VecR(std::sqrt(delta) * smf(h_norms, P, alpha))
                           : VecR(VecR::Zero(h_norms.size()));
    return {std::move(s_I), std::move(s_P)};
}

double wf_capacity(const VecR &h_norms, double P, const VecR &sigma2)
{
    const VecR s = water_filling(h_norms, P, sigma2);
    return rate_of(h_norms, s, 1.0, sigma2);
}

GpOutcome gp(const VecR &h_norms, double P, const VecR &sigma2, double R_bar,
             double beta2, double beta4, const GpOptions &opt)
{
    const int N = (int)h_norms.size();
    if (sigma2.size() != N)
        throw std::invalid_argument("gp: sigma2 size mismatch");
    if (!(P > 0))
        throw std::invalid_argument("gp: P must be > 0");

    GpOutcome out;
    const double C = wf_capacity(h_norms, P, sigma2);
    if (R_bar > C) {
        out.code = SolveCode::Infeasible;
        return out;
    }

    const DcPosynomial poly = dc_posynomial(h_norms, beta2, beta4);
    auto finish = [&](VecR s_I, VecR s_P, double rho) {
        // Report zeros below threshold, then restore the exact power budget.
        const double floor = 1e-6 * std::sqrt(P);
        for (Eigen::Index n = 0; n < N; ++n) {
            if (s_I(n) < floor)
                s_I(n) = 0.0;
            if (s_P(n) < floor)
                s_P(n) = 0.0;
        }
        const double pw = 0.5 * (s_I.squaredNorm() + s_P.squaredNorm());
        if (pw > 0) {
            const double k = std::sqrt(P / pw);
            s_I *= k;
            s_P *= k;
        }
        out.s_I = s_I;
        out.s_P = s_P;
        out.rho = rho;
        out.z = poly.eval(s_I, s_P, rho);
        out.rate = rate_of(h_norms, s_I, 1.0 - rho, sigma2);
    };

    // Rate floor at capacity: the feasible set collapses to the WIT design.
    if (R_bar >= C - std::max(1e-9, 1e-9 * C)) {
        finish(water_filling(h_norms, P, sigma2), VecR::Zero(N), 0.0);
        out.z_seq = {out.z};
        return out;
    }

    const bool with_rate = R_bar > 0.0;

    VecR s_I, s_P;
    double rho;
    if (opt.init.size() == 2 * N + 1) {
        s_I = opt.init.head(N).cwiseMax(1e-9 * std::sqrt(P));
        s_P = opt.init.segment(N, N).cwiseMax(1e-9 * std::sqrt(P));
        rho = std::min(1.0 - 1e-9, std::max(1e-9, opt.init(2 * N)));
        const double pw = 0.5 * (s_I.squaredNorm() + s_P.squaredNorm());
        const double k = std::sqrt(P / pw);
        s_I *= k;
        s_P *= k;
    } else {
        s_I = VecR::Constant(N, std::sqrt(P / N));
        s_P = VecR::Constant(N, std::sqrt(P / N));
        rho = 0.5;
    }

    // The condensation is tight at the expansion point, so the start must
    // satisfy the true rate constraint strictly; blend toward WF if not.
    if (with_rate) {
        const VecR s_wf = water_filling(h_norms, P, sigma2);
        const double margin = std::min(1e-6, 0.5 * (C - R_bar));
        double mu = 0.0;
        while (mu < 1.0) {
            const VecR si = ((1.0 - mu) * s_I.array().square() +
                             mu * s_wf.array().square()).sqrt();
            if (rate_of(h_norms, si, 1.0 - (1.0 - mu) * rho, sigma2) >= R_bar + margin) {
                s_I = si;
                s_P = std::sqrt(1.0 - mu) * s_P;
                rho = (1.0 - mu) * rho;
                break;
            }
            mu = mu == 0.0 ? 0.05 : mu * 1.6;
        }
        if (mu >= 1.0) {
            finish(s_wf, VecR::Zero(N), 0.0);
            out.z_seq = {out.z};
            return out;
        }
    }

    double z_cur = poly.eval(s_I, s_P, rho);
    out.z_seq.push_back(z_cur);

    // Corner polish: the condensation tail shrinks dying tones only
    // geometrically, so propose hard zeros for low-share tones and accept
    // whenever the exact DC improves while the rate floor stays met.
    auto prune_pass = [&]() {
        bool improved = false;
        auto consider = [&](VecR cI, VecR cP) {
            const double pw = 0.5 * (cI.squaredNorm() + cP.squaredNorm());
            if (!(pw > 0))
                return;
            const double k = std::sqrt(P / pw);
            cI *= k;
            cP *= k;
            if (with_rate && rate_of(h_norms, cI, 1.0 - rho, sigma2) < R_bar - 1e-9)
                return;
            const double z_c = poly.eval(cI, cP, rho);
            if (z_c > z_cur) {
                s_I = cI;
                s_P = cP;
                z_cur = z_c;
                out.z_seq.push_back(z_cur);
                improved = true;
            }
        };
        const double tone_floor = 0.02 * P;
        VecR tI = s_I, tP = s_P;
        for (int n = 0; n < N; ++n) {
            if (0.5 * tI(n) * tI(n) < tone_floor)
                tI(n) = 0.0;
            if (0.5 * tP(n) * tP(n) < tone_floor)
                tP(n) = 0.0;
        }
        consider(tI, tP);
        consider(s_I, VecR::Zero(N));
        if (!with_rate)
            consider(VecR::Zero(N), s_P);
        return improved;
    };

    for (int it = 1; it <= opt.max_iterations; ++it) {
        out.iterations = it;

        GpSubproblem sp;
        sp.N = N;
        sp.P = P;
        sp.rate_floor_bits = R_bar;
        sp.include_rate = with_rate;
        sp.snr_gain = (h_norms.array().square() / sigma2.array()).matrix();
        sp.dc_monomials = poly.monomials;
        const VecR vals = poly.monomial_values(s_I, s_P, rho);
        const double total = vals.sum();
        sp.dc_weights = vals / std::max(total, 1e-300);
        if (with_rate) {
            sp.rate_weight_one.resize(N);
            sp.rate_weight_snr.resize(N);
            for (int n = 0; n < N; ++n) {
                const double g2 = (1.0 - rho) * sp.snr_gain(n) * s_I(n) * s_I(n);
                sp.rate_weight_one(n) = 1.0 / (1.0 + g2);
                sp.rate_weight_snr(n) = g2 / (1.0 + g2);
            }
        }
        sp.initial.resize(2 * N + 2);
        sp.initial << s_I, s_P, rho, 1.0 - rho;

        const GpResult r = solve_gp(sp, opt.tol_ipm);
        if (r.code == SolveCode::Infeasible) {
            out.code = SolveCode::Infeasible;
            break;
        }
        const double z_new = poly.eval(r.s_I, r.s_P, r.rho);
        if (!(z_new >= z_cur)) {
            // inner solve stalled below the current iterate; keep the iterate
            break;
        }
        s_I = r.s_I;
        s_P = r.s_P;
        rho = r.rho;
        out.z_seq.push_back(z_new);
        const double dz = z_new - z_cur;
        z_cur = z_new;
        if (dz <= opt.epsilon) {
            if (prune_pass())
                continue;
            break;
        }
        if (it == opt.max_iterations)
            out.code = SolveCode::IterationCap;
    }
    while (prune_pass()) {
    }

    finish(s_I, s_P, rho);
    return out;
}

} // namespace irsswipt

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

#include "irsswipt/experiment.hpp"

#include "irsswipt/active.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>

namespace irsswipt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Sample
{
    std::string series;
    int grid_index = 0;
    double grid_value = 0.0;
    double rate = kNaN;
    double z = kNaN;
    double wit_snr = kNaN;
};

double mean_of(const std::vector<double> &v)
{
    if (v.empty())
        return kNaN;
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / (double)v.size();
}

double ci95_of(const std::vector<double> &v)
{
    if (v.size() < 2)
        return 0.0;
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v)
        acc += (x - m) * (x - m);
    const double sd = std::sqrt(acc / (double)(v.size() - 1));
    return 1.96 * sd / std::sqrt((double)v.size());
}

double per_subband_snr(const Scenario &s, const ChannelRealization &ch, const REPoint &p)
{
    const std::vector<VecC> h = composite_channels(ch, p.phi);
    std::vector<VecC> wI(ch.N);
    for (int n = 0; n < ch.N; ++n)
        wI[n] = p.design.w_I(n);
    const VecC a = subband_weights(h, wI);
    const VecR sig = s.sigma_vec();
    double acc = 0.0;
    for (int n = 0; n < ch.N; ++n)
        acc += std::norm(a(n)) / sig(n);
    return acc / ch.N;
}

/// Composite channel folded into a no-IRS realization; per-subband phase
/// vectors are accepted for the frequency-selective upper bound.
ChannelRealization fold_irs(const ChannelRealization &ch, const std::vector<VecC> &phis)
{
    ChannelRealization out;
    out.M = ch.M;
    out.N = ch.N;
    out.L = 0;
    out.lambda_D = ch.lambda_D;
    out.lambda_I = ch.lambda_I;
    out.lambda_R = ch.lambda_R;
    out.h_D.resize(ch.N);
    out.H_I.assign(ch.N, MatC(0, ch.M));
    out.h_R.assign(ch.N, VecC(0));
    out.V.assign(ch.N, MatC(0, ch.M));
    for (int n = 0; n < ch.N; ++n)
        out.h_D[n] = composite_channel(ch.h_D[n], ch.V[n], phis[n % phis.size()]);
    return out;
}

ChannelRealization fold_irs(const ChannelRealization &ch, const VecC &phi)
{
    return fold_irs(ch, std::vector<VecC>{phi});
}

/// Region sweep emitting one sample per grid point; LC sweeps are driven
/// directly so the grid index stays bound to the delta value.
std::vector<Sample> region_samples(const Scenario &s, const ChannelRealization &ch,
                                   const std::string &mode, double param, int grid)
{
    std::vector<Sample> out;
    auto push = [&](const std::string &series, int gi, double gv, const REPoint &p) {
        Sample smp;
        smp.series = series;
        smp.grid_index = gi;
        smp.grid_value = gv;
        smp.rate = p.rate;
        smp.z = p.z;
        out.push_back(std::move(smp));
    };
    (void)param;
    if (mode == "bcd" || mode == "both") {
        const RERegion reg = re_region(s, ch, RegionMode::Bcd, grid);
        for (int j = 0; j < (int)reg.points.size(); ++j)
            push("bcd", j, (double)j / (grid - 1), reg.points[j]);
    }
    if (mode == "lc" || mode == "both") {
        REPoint prev;
        bool have = false;
        for (int j = 0; j < grid; ++j) {
            const double dr = (double)j / (grid - 1);
            BcdOptions bo;
            if (have)
                bo.warm = &prev;
            const REPoint p = lc_bcd(s, ch, dr, dr, bo);
            prev = p;
            have = true;
            push("lc", j, dr, p);
        }
    }
    return out;
}

} // namespace

void ExperimentSpec::validate() const
{
    static const std::vector<std::string> presets = {
        "subband-sweep", "noise-sweep", "distance-sweep", "tx-scaling",
        "irs-scaling",   "irs-strategy", "csit-robustness", "quantization"};
    bool ok = false;
    for (const auto &p : presets)
        ok = ok || p == preset;
    if (!ok)
        throw std::invalid_argument("experiment: unknown preset '" + preset + "'");
    if (realizations < 1)
        throw std::invalid_argument("experiment: realizations must be >= 1");
    if (grid < 2)
        throw std::invalid_argument("experiment: grid must be >= 2");
    if (mode != "bcd" && mode != "lc" && mode != "both")
        throw std::invalid_argument("experiment: mode must be bcd|lc|both");
    base.validate();
}

std::vector<double> ExperimentSpec::default_params() const
{
    if (preset == "subband-sweep")
        return {2, 4, 8, 16};
    if (preset == "noise-sweep")
        return {dbm2watt(-20), dbm2watt(-30), dbm2watt(-40)};
    if (preset == "distance-sweep")
        return {0.2, 2.0, 6.0, 10.0, 11.8};
    if (preset == "tx-scaling")
        return {1, 2, 4};
    if (preset == "irs-scaling")
        return {1, 2, 4, 8, 16, 32};
    if (preset == "irs-strategy")
        return {1e6, 1e7};
    if (preset == "csit-robustness")
        return {0.0, 0.5, 1.0, std::numeric_limits<double>::infinity()};
    if (preset == "quantization")
        return {};
    return {};
}

namespace {

std::vector<Sample> run_task(const ExperimentSpec &spec, double param,
                             std::uint64_t ch_seed)
{
    const std::string &preset = spec.preset;
    Scenario s = spec.base;

    if (preset == "subband-sweep")
        s.N = (int)param;
    else if (preset == "noise-sweep")
        s.sigma2 = param;
    else if (preset == "distance-sweep")
        s.d_H = param;
    else if (preset == "tx-scaling") {
        s.M = (int)param;
        s.L = 0;
    } else if (preset == "irs-scaling") {
        s.M = 1;
        s.L = (int)param;
    } else if (preset == "irs-strategy")
        s.B = param;
    s.validate();

    const ChannelRealization ch = sample_channels(s, ch_seed);

    if (preset == "tx-scaling" || preset == "irs-scaling") {
        const REPoint wit = lc_bcd(s, ch, 0.0, 0.0);
        const REPoint wpt = lc_bcd(s, ch, 1.0, 1.0);
        Sample sw;
        sw.series = "wit";
        sw.rate = wit.rate;
        sw.wit_snr = per_subband_snr(s, ch, wit);
        Sample sp;
        sp.series = "wpt";
        sp.z = wpt.z;
        return {sw, sp};
    }

    if (preset == "irs-strategy") {
        std::vector<Sample> out;
        auto append = [&](const std::string &series, std::vector<Sample> v) {
            for (auto &smp : v) {
                smp.series = series;
                out.push_back(std::move(smp));
            }
        };
        // adaptive reflection, re-optimized per rate floor
        append("adaptive", region_samples(s, ch, "bcd", param, spec.grid));
        // reflection fixed at the WIT / WPT orientation
        const REPoint wit = lc_bcd(s, ch, 0.0, 0.0);
        const REPoint wpt = lc_bcd(s, ch, 1.0, 1.0);
        append("wit-fixed",
               region_samples(s, fold_irs(ch, wit.phi), "bcd", param, spec.grid));
        append("wpt-fixed",
               region_samples(s, fold_irs(ch, wpt.phi), "bcd", param, spec.grid));
        // random reflection
        Rng rng(derive_seed(ch_seed, 0xF00D));
        VecC phi_rand(s.L);
        for (int l = 0; l < s.L; ++l)
            phi_rand(l) = std::exp(cxd(0.0, 2.0 * kPi * rng.uniform()));
        append("random",
               region_samples(s, fold_irs(ch, phi_rand), "bcd", param, spec.grid));
        // no IRS
        append("none", region_samples(s, fold_irs(ch, VecC(0)), "bcd", param, spec.grid));
        // ideal frequency-selective upper bound
        append("fs-upper", region_samples(s, fold_irs(ch, fs_upper_bound_phases(ch)),
                                          "bcd", param, spec.grid));
        return out;
    }

    if (preset == "csit-robustness") {
        std::vector<Sample> out;
        const double entry_scale = ch.lambda_I * ch.lambda_R * s.rx_gain;
        const double eps = param * entry_scale;
        ChannelRealization ch_est = ch;
        VecC phi_rand(s.L);
        {
            Rng rng(derive_seed(ch_seed, 0xCAFE));
            for (int l = 0; l < s.L; ++l)
                phi_rand(l) = std::exp(cxd(0.0, 2.0 * kPi * rng.uniform()));
        }
        const bool no_csit = std::isinf(param);
        if (!no_csit && param > 0)
            ch_est.V = perturb_csit(ch.V, CsitError::uniform(s.N, eps),
                                    derive_seed(ch_seed, 0xBEEF));

        // Designs on the estimate, scored on the true channel.
        const RERegion reg = no_csit
                                 ? re_region(s, fold_irs(ch, phi_rand), RegionMode::Bcd,
                                             spec.grid)
                                 : re_region(s, ch_est, RegionMode::Bcd, spec.grid);
        for (int j = 0; j < (int)reg.points.size(); ++j) {
            const REPoint &des = reg.points[j];
            const VecC phi_eval = no_csit ? phi_rand : des.phi;
            const REPoint scored = evaluate_design(s, ch, phi_eval, des.design, "PS");
            Sample smp;
            smp.series = "bcd";
            smp.grid_index = j;
            smp.grid_value = (double)j / (spec.grid - 1);
            smp.rate = scored.rate;
            smp.z = scored.z;
            out.push_back(std::move(smp));
        }
        return out;
    }

    if (preset == "quantization") {
        std::vector<Sample> out;
        const RERegion reg = re_region(s, ch, RegionMode::Bcd, spec.grid);
        const VecR sigma2 = s.sigma_vec();
        for (int b : spec.quant_bits) {
            char name[32];
            if (b < 0)
                std::snprintf(name, sizeof name, "continuous");
            else
                std::snprintf(name, sizeof name, "b=%d", b);
            for (int j = 0; j < (int)reg.points.size(); ++j) {
                const REPoint &des = reg.points[j];
                REPoint scored;
                if (b < 0) {
                    scored = des;
                } else {
                    const VecC phi_q = quantize_irs(des.phi, b);
                    const ChannelRealization folded = fold_irs(ch, phi_q);
                    const std::vector<VecC> h = composite_channels(folded, VecC(0));
                    const VecR norms = channel_norms(h);
                    const double cq = wf_capacity(norms, s.P, sigma2);
                    const double R_bar =
                        std::min(reg.c_max * j / (spec.grid - 1), cq * (1.0 - 1e-9));
                    GpOptions go;
                    go.epsilon = s.epsilon;
                    go.init.resize(2 * s.N + 1);
                    go.init << des.design.s_I, des.design.s_P, des.design.rho;
                    const GpOutcome g =
                        gp(norms, s.P, sigma2, R_bar, s.beta2, s.beta4, go);
                    WaveformDesign d;
                    d.s_I = g.s_I;
                    d.s_P = g.s_P;
                    d.b_I = mrt_precoders(h);
                    d.b_P = d.b_I;
                    d.rho = g.rho;
                    d.rho_bar = 1.0 - g.rho;
                    scored = evaluate_design(s, ch, phi_q, d, "PS");
                }
                Sample smp;
                smp.series = name;
                smp.grid_index = j;
                smp.grid_value = (double)j / (spec.grid - 1);
                smp.rate = scored.rate;
                smp.z = scored.z;
                out.push_back(std::move(smp));
            }
        }
        return out;
    }

    // plain R-E sweeps
    return region_samples(s, ch, spec.mode, param, spec.grid);
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string rows_to_csv(const std::vector<ResultRow> &rows)
{
    std::string csv = "preset,param,series,grid_index,grid_value,n_realizations,"
                      "rate,rate_per_subband,rate_ci95,z,z_ci95,wit_snr,wit_snr_ci95\n";
    for (const auto &r : rows) {
        csv += r.preset;
        csv += ',';
        csv += format_double(r.param);
        csv += ',';
        csv += r.series;
        csv += ',';
        csv += std::to_string(r.grid_index);
        csv += ',';
        csv += format_double(r.grid_value);
        csv += ',';
        csv += std::to_string(r.n_realizations);
        csv += ',';
        csv += format_double(r.rate);
        csv += ',';
        csv += format_double(r.rate_per_subband);
        csv += ',';
        csv += format_double(r.rate_ci95);
        csv += ',';
        csv += format_double(r.z);
        csv += ',';
        csv += format_double(r.z_ci95);
        csv += ',';
        csv += format_double(r.wit_snr);
        csv += ',';
        csv += format_double(r.wit_snr_ci95);
        csv += '\n';
    }
    return csv;
}

ExperimentResult run(const ExperimentSpec &spec_in)
{
    ExperimentSpec spec = spec_in;
    spec.validate();
    if (spec.params.empty())
        spec.params = spec.default_params();
    if (spec.params.empty() && spec.preset != "quantization")
        throw std::invalid_argument("experiment: no parameters for preset " + spec.preset);
    if (spec.preset == "quantization" && spec.params.empty())
        spec.params = {0.0}; // single parameter point; bits come from quant_bits

    // Scaling presets share realization seeds across parameters so that the
    // smaller array is a prefix of the larger one (common random numbers).
    const bool crn = spec.preset == "irs-scaling" || spec.preset == "tx-scaling";

    struct Task
    {
        int param_idx;
        int realization;
        double param;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int i = 0; i < (int)spec.params.size(); ++i)
        for (int j = 0; j < spec.realizations; ++j) {
            Task t;
            t.param_idx = i;
            t.realization = j;
            t.param = spec.params[i];
            t.seed = crn ? derive_seed(spec.seed, (std::uint64_t)j)
                         : derive_seed(derive_seed(spec.seed, (std::uint64_t)i),
                                       (std::uint64_t)j);
            tasks.push_back(t);
        }

    std::vector<std::vector<Sample>> results(tasks.size());
    {
        unsigned n_threads = spec.threads > 0 ? (unsigned)spec.threads
                                              : std::thread::hardware_concurrency();
        n_threads = std::max(1u, std::min<unsigned>(n_threads, (unsigned)tasks.size()));
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= tasks.size())
                    return;
                results[k] = run_task(spec, tasks[k].param, tasks[k].seed);
            }
        };
        if (n_threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < n_threads; ++i)
                pool.emplace_back(worker);
            for (auto &th : pool)
                th.join();
        }
    }

    // Deterministic merge ordered by (param index, series, grid index).
    std::map<std::tuple<int, std::string, int>,
             std::tuple<double, std::vector<double>, std::vector<double>,
                        std::vector<double>>>
        groups;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        for (const auto &smp : results[k]) {
            auto &g = groups[{tasks[k].param_idx, smp.series, smp.grid_index}];
            std::get<0>(g) = smp.grid_value;
            if (!std::isnan(smp.rate))
                std::get<1>(g).push_back(smp.rate);
            if (!std::isnan(smp.z))
                std::get<2>(g).push_back(smp.z);
            if (!std::isnan(smp.wit_snr))
                std::get<3>(g).push_back(smp.wit_snr);
        }
    }

    ExperimentResult out;
    for (const auto &[key, g] : groups) {
        const auto &[pi, series, gi] = key;
        ResultRow row;
        row.preset = spec.preset;
        row.param = spec.params[pi];
        row.series = series;
        row.grid_index = gi;
        row.grid_value = std::get<0>(g);
        const auto &rates = std::get<1>(g);
        const auto &zs = std::get<2>(g);
        const auto &snrs = std::get<3>(g);
        row.n_realizations = (int)std::max({rates.size(), zs.size(), snrs.size()});
        row.rate = mean_of(rates);
        Scenario s_tmp = spec.base;
        if (spec.preset == "subband-sweep")
            s_tmp.N = (int)row.param;
        row.rate_per_subband = row.rate / s_tmp.N;
        row.rate_ci95 = ci95_of(rates);
        row.z = mean_of(zs);
        row.z_ci95 = ci95_of(zs);
        row.wit_snr = mean_of(snrs);
        row.wit_snr_ci95 = ci95_of(snrs);
        out.rows.push_back(std::move(row));
    }

    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    out.csv_path = (fs::path(spec.out_dir) / (spec.preset + ".csv")).string();
    out.manifest_path =
        (fs::path(spec.out_dir) / (spec.preset + ".manifest.json")).string();

    {
        std::ofstream f(out.csv_path);
        if (!f)
            throw std::runtime_error("experiment: cannot write " + out.csv_path);
        f << rows_to_csv(out.rows);
    }
    {
        nlohmann::json m;
        m["schema"] = "irsswipt-csv-1";
        m["preset"] = spec.preset;
        m["params"] = spec.params;
        m["realizations"] = spec.realizations;
        m["seed"] = spec.seed;
        m["grid"] = spec.grid;
        m["mode"] = spec.mode;
        m["quant_bits"] = spec.quant_bits;
        std::vector<double> eps = spec.csit_errors;
        m["csit_errors"] = eps;
        m["rows"] = out.rows.size();
        nlohmann::json sc;
        sc["M"] = spec.base.M;
        sc["N"] = spec.base.N;
        sc["L"] = spec.base.L;
        sc["f_c"] = spec.base.f_c;
        sc["B"] = spec.base.B;
        sc["sigma2"] = spec.base.sigma2;
        sc["P"] = spec.base.P;
        sc["beta2"] = spec.base.beta2;
        sc["beta4"] = spec.base.beta4;
        sc["d_D"] = spec.base.d_D;
        sc["d_H"] = spec.base.d_H;
        sc["d_V"] = spec.base.d_V;
        sc["alpha"] = spec.base.alpha;
        sc["epsilon"] = spec.base.epsilon;
        sc["rx_gain"] = spec.base.rx_gain;
        sc["seed"] = spec.base.seed;
        std::vector<std::vector<double>> taps;
        for (Eigen::Index i = 0; i < spec.base.tap_profile.taps(); ++i)
            taps.push_back({spec.base.tap_profile.delays_s(i),
                            spec.base.tap_profile.powers_lin(i)});
        sc["tap_profile"] = taps;
        m["scenario"] = sc;
        std::ofstream f(out.manifest_path);
        if (!f)
            throw std::runtime_error("experiment: cannot write " + out.manifest_path);
        f << m.dump(2) << "\n";
    }
    return out;
}

} // namespace irsswipt

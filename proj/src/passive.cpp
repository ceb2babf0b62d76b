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

#include "irsswipt/passive.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace irsswipt {

namespace {

/// M_n = [V_n^H, h_D,n]^H: first L rows V_n, last row h_D,n^H.
MatC lifted_channel_matrix(const ChannelRealization &ch, int n)
{
    MatC Mn(ch.L + 1, ch.M);
    if (ch.L > 0)
        Mn.topRows(ch.L) = ch.V[n];
    Mn.row(ch.L) = ch.h_D[n].adjoint();
    return Mn;
}

VecC lift(const VecC &phi)
{
    VecC bar(phi.size() + 1);
    bar.head(phi.size()) = phi;
    bar(phi.size()) = 1.0;
    return bar;
}

double real_checked(cxd v, const char *what)
{
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v)))
        throw std::runtime_error(std::string("passive: non-real ") + what);
    return v.real();
}

} // namespace

VecC CouplingMatrices::t_of(const std::vector<VecC> &u, const MatC &Phi) const
{
    VecC t(2 * N - 1);
    for (int k = -N + 1; k <= N - 1; ++k) {
        cxd acc = 0.0;
        for (int n = std::max(0, -k); n < N && n + k < N; ++n)
            acc += u[n + k].dot(Phi * u[n]); // u_{n+k}^H Phi u_n
        t(k + N - 1) = acc;
    }
    return t;
}

VecC CouplingMatrices::t_of_phi(const std::vector<VecC> &u, const VecC &phi) const
{
    const VecC bar = lift(phi);
    VecC a(N);
    for (int n = 0; n < N; ++n)
        a(n) = bar.dot(u[n]); // phibar^H u_n = h_n^H w_n
    VecC t(2 * N - 1);
    for (int k = -N + 1; k <= N - 1; ++k) {
        cxd acc = 0.0;
        for (int n = std::max(0, -k); n < N && n + k < N; ++n)
            acc += a(n) * std::conj(a(n + k));
        t(k + N - 1) = acc;
    }
    return t;
}

MatC CouplingMatrices::C_I0() const
{
    MatC C = MatC::Zero(L + 1, L + 1);
    for (int n = 0; n < N; ++n)
        C += u_I[n] * u_I[n].adjoint();
    return C;
}

MatC CouplingMatrices::C_P0() const
{
    MatC C = MatC::Zero(L + 1, L + 1);
    for (int n = 0; n < N; ++n)
        C += u_P[n] * u_P[n].adjoint();
    return C;
}

MatC CouplingMatrices::C_Pk(int k) const
{
    if (k <= -N || k >= N)
        throw std::domain_error("C_Pk: |k| must be < N");
    MatC C = MatC::Zero(L + 1, L + 1);
    for (int n = std::max(0, -k); n < N && n + k < N; ++n)
        C += u_P[n] * u_P[n + k].adjoint();
    return C;
}

CouplingMatrices build_coupling(const ChannelRealization &ch,
                                const std::vector<VecC> &w_I,
                                const std::vector<VecC> &w_P)
{
    if ((int)w_I.size() != ch.N || (int)w_P.size() != ch.N)
        throw std::invalid_argument("build_coupling: weight count mismatch");
    CouplingMatrices C;
    C.L = ch.L;
    C.N = ch.N;
    C.u_I.resize(ch.N);
    C.u_P.resize(ch.N);
    for (int n = 0; n < ch.N; ++n) {
        if (w_I[n].size() != ch.M || w_P[n].size() != ch.M)
            throw std::invalid_argument("build_coupling: weight dimension mismatch");
        const MatC Mn = lifted_channel_matrix(ch, n);
        C.u_I[n] = Mn * w_I[n];
        C.u_P[n] = Mn * w_P[n];
    }
    return C;
}

double z_of_t(const VecC &t_I, const VecC &t_P, double rho, double beta2, double beta4)
{
    const int N = (int)(t_I.size() + 1) / 2;
    const double tI0 = real_checked(t_I(N - 1), "t_I0");
    const double tP0 = real_checked(t_P(N - 1), "t_P0");
    double sum_p = 0.0;
    for (Eigen::Index i = 0; i < t_P.size(); ++i)
        sum_p += std::norm(t_P(i));
    return 0.5 * beta2 * rho * (tI0 + tP0) +
           0.375 * beta4 * rho * rho * (2.0 * tI0 * tI0 + sum_p) +
           1.5 * beta4 * rho * rho * tI0 * tP0;
}

std::pair<MatC, double> sca_surrogate(const CouplingMatrices &C, const VecC &t_I_prev,
                                      const VecC &t_P_prev, double rho, double beta2,
                                      double beta4)
{
    const int N = C.N;
    const double tI0 = real_checked(t_I_prev(N - 1), "t_I0");
    const double tP0 = real_checked(t_P_prev(N - 1), "t_P0");
    const double r2 = rho * rho;

    const double cI0 = 0.5 * beta2 * rho + 1.5 * beta4 * r2 * (tI0 + tP0);
    const double cP0 = 0.5 * beta2 * rho + 1.5 * beta4 * r2 * tI0;

    MatC A = cI0 * C.C_I0() + cP0 * C.C_P0();
    for (int k = -N + 1; k <= N - 1; ++k)
        A += 0.75 * beta4 * r2 * std::conj(t_P_prev(k + N - 1)) * C.C_Pk(k);
    A = ((A + A.adjoint()) * 0.5).eval();

    double sum_p = 0.0;
    for (Eigen::Index i = 0; i < t_P_prev.size(); ++i)
        sum_p += std::norm(t_P_prev(i));
    const double c = -0.75 * beta4 * r2 * tI0 * tI0 - 0.375 * beta4 * r2 * sum_p -
                     1.5 * beta4 * r2 * tI0 * tP0;
    return {std::move(A), c};
}

std::pair<VecC, double> extract_phase(const MatC &Phi)
{
    const Eigen::Index D = Phi.rows();
    Eigen::SelfAdjointEigenSolver<MatC> eig(Phi);
    const VecR ev = eig.eigenvalues();
    const double l1 = ev(D - 1);
    const double l2 = D > 1 ? ev(D - 2) : 0.0;
    const double ratio = l1 > 0 ? std::max(0.0, l2) / l1 : 1.0;
    if (ratio > 1e-3)
        std::cerr << "[irsswipt] extract_phase: lambda2/lambda1 = " << ratio
                  << ", using leading eigenvector\n";
    const VecC lead = eig.eigenvectors().col(D - 1);

    VecC phi(D - 1);
    const cxd last = lead(D - 1);
    if (std::abs(last) > 1e-12) {
        for (Eigen::Index l = 0; l < D - 1; ++l) {
            const cxd v = lead(l) / last;
            phi(l) = std::abs(v) > 0 ? cxd(v / std::abs(v)) : cxd(1.0, 0.0);
        }
    } else {
        // degenerate auxiliary entry; keep entry phases relative to 1
        for (Eigen::Index l = 0; l < D - 1; ++l) {
            const cxd v = lead(l);
            phi(l) = std::abs(v) > 1e-12 ? cxd(v / std::abs(v)) : cxd(1.0, 0.0);
        }
    }
    return {std::move(phi), ratio};
}

namespace {

ScaResult trivial_no_irs(const Scenario &s, const ChannelRealization &ch,
                         const std::vector<VecC> &w_I, const std::vector<VecC> &w_P,
                         double rho)
{
    const CouplingMatrices C = build_coupling(ch, w_I, w_P);
    ScaResult r;
    r.phi = VecC(0);
    r.Phi = MatC::Ones(1, 1);
    const VecC tI = C.t_of(C.u_I, r.Phi);
    const VecC tP = C.t_of(C.u_P, r.Phi);
    r.z = z_of_t(tI, tP, rho, s.beta2, s.beta4);
    r.z_seq = {r.z};
    return r;
}

/// Shared SCA loop over the linearized DC surrogate.
void run_sca_loop(const Scenario &s, const CouplingMatrices &C, double rho,
                  bool with_rate, double floor_nats, const std::vector<RateTerm> &terms,
                  MatC Phi, ScaResult &out, const ScaOptions &opt)
{
    VecC tI = C.t_of(C.u_I, Phi);
    VecC tP = C.t_of(C.u_P, Phi);
    double z = z_of_t(tI, tP, rho, s.beta2, s.beta4);
    out.z_seq.push_back(z);

    for (int it = 1; it <= opt.max_iterations; ++it) {
        out.iterations = it;

        PsdSubproblem sp;
        sp.dim = C.L + 1;
        sp.objective = sca_surrogate(C, tI, tP, rho, s.beta2, s.beta4).first;
        sp.rate_terms = terms;
        sp.include_rate = with_rate;
        sp.rate_floor_nats = floor_nats;
        sp.initial = Phi;
        const PsdResult r = solve_psd(sp, opt.tol_ipm);
        if (r.status.code == SolveCode::Infeasible) {
            out.infeasible = true;
            break;
        }

        const VecC tI_new = C.t_of(C.u_I, r.Phi);
        const VecC tP_new = C.t_of(C.u_P, r.Phi);
        const double z_new = z_of_t(tI_new, tP_new, rho, s.beta2, s.beta4);
        if (!(z_new >= z)) {
            // solver noise can not improve on the expansion point; stop here
            break;
        }
        Phi = r.Phi;
        tI = tI_new;
        tP = tP_new;
        {
            Eigen::SelfAdjointEigenSolver<MatC> eig(Phi, Eigen::EigenvaluesOnly);
            const VecR ev = eig.eigenvalues();
            out.rank_ratios.push_back(std::max(0.0, ev(ev.size() - 2)) /
                                      ev(ev.size() - 1));
        }
        out.z_seq.push_back(z_new);
        const double dz = z_new - z;
        z = z_new;
        if (dz <= opt.epsilon)
            break;
        if (it == opt.max_iterations)
            out.converged = false;
    }
    out.Phi = Phi;
    out.z = z;
    out.phi = extract_phase(Phi).first;
}

std::vector<RateTerm> make_rate_terms(const CouplingMatrices &C, double rho,
                                      const VecR &sigma2)
{
    std::vector<RateTerm> terms(C.N);
    for (int n = 0; n < C.N; ++n) {
        terms[n].m = C.u_I[n];
        terms[n].a = (1.0 - rho) / sigma2(n);
    }
    return terms;
}

} // namespace

ScaResult sca(const Scenario &s, const ChannelRealization &ch,
              const std::vector<VecC> &w_I, const std::vector<VecC> &w_P, double rho,
              double R_bar, const ScaOptions &opt)
{
    if (ch.L == 0)
        return trivial_no_irs(s, ch, w_I, w_P, rho);

    const CouplingMatrices C = build_coupling(ch, w_I, w_P);
    const VecR sigma2 = s.sigma_vec();
    const bool with_rate = R_bar > 0.0 && rho < 1.0;
    const double floor_nats = R_bar * std::log(2.0);
    const std::vector<RateTerm> terms = make_rate_terms(C, rho, sigma2);

    ScaResult out;

    MatC Phi0;
    if (opt.Phi_init.size() > 0) {
        PsdSubproblem probe;
        probe.dim = C.L + 1;
        probe.rate_terms = terms;
        if (!with_rate || psd_rate_nats(probe, opt.Phi_init) >= floor_nats)
            Phi0 = opt.Phi_init;
    }
    if (Phi0.size() == 0) {
        if (with_rate) {
            // WIT-oriented lift is feasible whenever the floor is reachable.
            ScaResult wit = m_sca(s, ch, w_I, w_P, 0.0, opt);
            const VecC bar = lift(wit.phi);
            Phi0 = bar * bar.adjoint();
        } else {
            const VecC bar = lift(VecC::Ones(ch.L));
            Phi0 = bar * bar.adjoint();
        }
    }

    run_sca_loop(s, C, rho, with_rate, floor_nats, terms, Phi0, out, opt);
    return out;
}

ScaResult m_sca(const Scenario &s, const ChannelRealization &ch,
                const std::vector<VecC> &w_I, const std::vector<VecC> &w_P, double rho,
                const ScaOptions &opt)
{
    if (ch.L == 0)
        return trivial_no_irs(s, ch, w_I, w_P, rho);

    const CouplingMatrices C = build_coupling(ch, w_I, w_P);
    const VecR sigma2 = s.sigma_vec();

    ScaResult out;
    if (rho == 0.0) {
        // WIT point: one rate-maximization solve, no SCA.
        PsdSubproblem sp;
        sp.dim = C.L + 1;
        sp.objective_is_rate = true;
        sp.rate_terms = make_rate_terms(C, 0.0, sigma2);
        if (opt.Phi_init.size() > 0)
            sp.initial = opt.Phi_init;
        const PsdResult r = solve_psd(sp, opt.tol_ipm);
        out.Phi = r.Phi;
        out.iterations = 1;
        {
            Eigen::SelfAdjointEigenSolver<MatC> eig(r.Phi, Eigen::EigenvaluesOnly);
            const VecR ev = eig.eigenvalues();
            out.rank_ratios.push_back(std::max(0.0, ev(ev.size() - 2)) /
                                      ev(ev.size() - 1));
        }
        out.phi = extract_phase(r.Phi).first;
        const VecC tI = C.t_of_phi(C.u_I, out.phi);
        const VecC tP = C.t_of_phi(C.u_P, out.phi);
        out.z = z_of_t(tI, tP, rho, s.beta2, s.beta4);
        out.z_seq = {out.z};
        return out;
    }

    MatC Phi0;
    if (opt.Phi_init.size() > 0)
        Phi0 = opt.Phi_init;
    else {
        const VecC bar = lift(VecC::Ones(ch.L));
        Phi0 = bar * bar.adjoint();
    }
    run_sca_loop(s, C, rho, false, 0.0, {}, Phi0, out, opt);
    return out;
}

std::vector<VecC> fs_upper_bound_phases(const ChannelRealization &ch, double tol_ipm)
{
    std::vector<VecC> phases(ch.N);
    for (int n = 0; n < ch.N; ++n) {
        if (ch.L == 0) {
            phases[n] = VecC(0);
            continue;
        }
        const MatC Mn = lifted_channel_matrix(ch, n);
        PsdSubproblem sp;
        sp.dim = ch.L + 1;
        sp.objective = Mn * Mn.adjoint();
        const PsdResult r = solve_psd(sp, tol_ipm);
        phases[n] = extract_phase(r.Phi).first;
    }
    return phases;
}

} // namespace irsswipt

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

#include "irsswipt/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irsswipt {

namespace {

// ===========================================================================
// PSD kernel
//
// Barrier subproblem at parameter t:
//   minimize  -t*obj(X) - lndet(X) - ln(g(X) - floor)   [last term optional]
//   over Hermitian X with diag(X) = 1,
// where obj is tr(A X) or the rate sum g(X) = sum_n ln(1 + a_n m_n^H X m_n).
//
// The diagonal is pinned at 1, so the Newton direction D solves
//   X^-1 D X^-1 + sum_m gamma_m <B_m, D> B_m + Diag(nu) = -Grad,  diag(D) = 0
// for some multiplier nu. Substituting D = -X(Grad_ext + Diag(nu) +
// sum s_m B_m)X + X (Grad = Grad_ext - X^-1) reduces the step to a dense
// (dim + #terms) real linear system; only the X-sandwich products are O(D^3).
// The Hessian terms B_m are the rank-1 rate directions plus one dense
// gradient-of-g outer term, so #terms <= N + 1.
// ===========================================================================

struct PsdWork
{
    int D = 1;
    bool rate_objective = false;
    bool barrier_rate = false;
    double floor_nats = 0.0;
    MatC A;   // normalized objective (linear mode)
    MatC Mm;  // D x N, columns m_n
    VecR a;   // rate scales
};

struct PsdPoint
{
    MatC X;
    Eigen::LLT<MatC> llt;
    VecR q, d;    // q_n = m_n^H X m_n, d_n = 1 + a_n q_n
    double g = 0; // rate sum, nats
    double lndet = 0;
    double psi = 0; // barrier objective at current t
    bool ok = false;
};

double lndet_from_llt(const Eigen::LLT<MatC> &llt)
{
    double s = 0.0;
    const auto &L = llt.matrixLLT();
    for (Eigen::Index i = 0; i < L.rows(); ++i)
        s += std::log(std::real(L(i, i)));
    return 2.0 * s;
}

/// Evaluates the barrier objective at X; ok=false when X is not strictly
/// feasible (PD and, when active, rate slack positive).
PsdPoint psd_eval(const PsdWork &w, const MatC &X, double t)
{
    PsdPoint p;
    p.X = X;
    p.llt.compute(X);
    if (p.llt.info() != Eigen::Success)
        return p;
    p.lndet = lndet_from_llt(p.llt);

    const Eigen::Index N = w.Mm.cols();
    p.q.resize(N);
    p.d.resize(N);
    p.g = 0.0;
    for (Eigen::Index n = 0; n < N; ++n) {
        const VecC xm = X * w.Mm.col(n);
        p.q(n) = std::real(w.Mm.col(n).dot(xm));
        p.d(n) = 1.0 + w.a(n) * p.q(n);
        if (p.d(n) <= 0.0)
            return p;
        p.g += std::log(p.d(n));
    }
    double obj = 0.0;
    if (w.rate_objective)
        obj = p.g;
    else
        obj = std::real(w.A.cwiseProduct(X.conjugate()).sum()); // tr(A X), X Hermitian
    p.psi = -t * obj - p.lndet;
    if (w.barrier_rate) {
        const double u = p.g - w.floor_nats;
        if (u <= 0.0)
            return p;
        p.psi -= std::log(u);
    }
    p.ok = true;
    return p;
}

double psd_objective(const PsdWork &w, const PsdPoint &p)
{
    return w.rate_objective ? p.g
                            : std::real(w.A.cwiseProduct(p.X.conjugate()).sum());
}

struct PsdSolveOut
{
    MatC X;
    SolveCode code = SolveCode::Converged;
    int newton_steps = 0;
    double gap = 0.0;
};

/// Path-following loop. early_floor: when >= -inf/2, stop as soon as the rate
/// sum exceeds it (phase-1 use).
PsdSolveOut psd_barrier(const PsdWork &w, const MatC &X0, double t0, double tol,
                        int newton_cap, double early_floor)
{
    const int D = w.D;
    const Eigen::Index N = w.Mm.cols();
    const double m_bar = D + (w.barrier_rate ? 1.0 : 0.0);

    PsdSolveOut out;
    double t = t0;
    PsdPoint cur = psd_eval(w, X0, t);
    if (!cur.ok)
        throw std::logic_error("solve_psd: infeasible barrier start");
    out.X = X0;

    const double mu = 30.0;
    while (true) {
        // Center at the current t.
        for (;;) {
            if (out.newton_steps >= newton_cap) {
                out.code = SolveCode::IterationCap;
                out.X = cur.X;
                out.gap = m_bar / t;
                return out;
            }
            ++out.newton_steps;

            // Scales of the rate-derived pieces at the current point.
            VecR kappa(N);
            for (Eigen::Index n = 0; n < N; ++n)
                kappa(n) = w.a(n) / cur.d(n);
            const double u = w.barrier_rate ? cur.g - w.floor_nats : 1.0;

            const MatC XM = cur.X * w.Mm; // D x N
            const MatC Q = w.Mm.adjoint() * XM;

            // T0 = X Grad_ext X (gradient without the -X^-1 part).
            MatC T0;
            VecR lin_coeff = VecR::Zero(N); // coefficient of P_n inside Grad_ext
            if (w.rate_objective)
                lin_coeff = -t * kappa;
            else if (w.barrier_rate)
                lin_coeff = -(1.0 / u) * kappa;
            if (w.rate_objective)
                T0 = XM * lin_coeff.asDiagonal() * XM.adjoint();
            else {
                T0 = -t * (cur.X * w.A * cur.X);
                if (w.barrier_rate)
                    T0 += XM * lin_coeff.asDiagonal() * XM.adjoint();
            }

            // Hessian low-rank terms: gamma_n with B_n = m_n m_n^H, plus one
            // dense grad-g term (linear mode with rate barrier only).
            VecR gam(N);
            if (w.rate_objective)
                gam = t * kappa.array().square();
            else if (w.barrier_rate)
                gam = kappa.array().square() / u;
            else
                gam.setZero();
            const bool dense_term = !w.rate_objective && w.barrier_rate;

            std::vector<int> act;
            for (Eigen::Index n = 0; n < N; ++n)
                if (gam(n) > 0)
                    act.push_back((int)n);
            const int r = (int)act.size() + (dense_term ? 1 : 0);

            // Assemble the (D + r) system.
            MatR K = cur.X.cwiseAbs2(); // K_ij = |X_ij|^2
            MatR lhs = MatR::Zero(D + r, D + r);
            VecR rhs = VecR::Zero(D + r);
            lhs.topLeftCorner(D, D) = K;
            // T = X Grad X = T0 - X; the X(-X^-1)X sandwich contributes -X.
            rhs.head(D) = -T0.diagonal().real() + cur.X.diagonal().real();

            // Rank-1 columns: XP_nX = (Xm_n)(Xm_n)^H.
            for (int j = 0; j < (int)act.size(); ++j) {
                const int n = act[j];
                const VecC xm = XM.col(n);
                const VecR diag_j = xm.cwiseAbs2();
                lhs.block(0, D + j, D, 1) = diag_j;
                lhs.block(D + j, 0, 1, D) = diag_j.transpose();
                // <B_n, X B_i X> = |m_n^H X m_i|^2
                for (int i = 0; i <= j; ++i) {
                    const double v = std::norm(Q(act[i], n));
                    lhs(D + j, D + i) = v;
                    lhs(D + i, D + j) = v;
                }
                lhs(D + j, D + j) += 1.0 / gam(n);
                // <B_n, T0 + (-X)> ; diagonal part of -X has unit diag
                const double bT0 = std::real(w.Mm.col(n).dot(T0 * w.Mm.col(n))) -
                                   std::real(w.Mm.col(n).dot(cur.X * w.Mm.col(n)));
                rhs(D + j) = -bT0;
            }
            if (dense_term) {
                const int j = (int)act.size();
                const double gden = 1.0 / (u * u);
                // B = grad g = sum kappa_n P_n
                VecR diag_g = VecR::Zero(D);
                for (Eigen::Index n = 0; n < N; ++n)
                    diag_g += kappa(n) * XM.col(n).cwiseAbs2();
                lhs.block(0, D + j, D, 1) = diag_g;
                lhs.block(D + j, 0, 1, D) = diag_g.transpose();
                for (int i = 0; i < (int)act.size(); ++i) {
                    double v = 0.0;
                    for (Eigen::Index n = 0; n < N; ++n)
                        v += kappa(n) * std::norm(Q(n, act[i]));
                    lhs(D + j, D + i) = v;
                    lhs(D + i, D + j) = v;
                }
                double vgg = 0.0;
                for (Eigen::Index n = 0; n < N; ++n)
                    for (Eigen::Index i = 0; i < N; ++i)
                        vgg += kappa(n) * kappa(i) * std::norm(Q(n, i));
                lhs(D + j, D + j) = vgg + 1.0 / gden;
                double bg = 0.0;
                for (Eigen::Index n = 0; n < N; ++n)
                    bg += kappa(n) * (std::real(w.Mm.col(n).dot(T0 * w.Mm.col(n))) -
                                      std::real(w.Mm.col(n).dot(cur.X * w.Mm.col(n))));
                rhs(D + j) = -bg;
            }

            Eigen::LDLT<MatR> ldlt(lhs);
            VecR sol = ldlt.solve(rhs);
            if (!sol.allFinite()) {
                lhs.diagonal().array() += 1e-12 * lhs.diagonal().maxCoeff();
                ldlt.compute(lhs);
                sol = ldlt.solve(rhs);
                if (!sol.allFinite())
                    throw std::runtime_error("solve_psd: singular Newton system");
            }

            // Reassemble the direction.
            MatC inner = MatC::Zero(D, D);
            if (!w.rate_objective)
                inner = -t * w.A;
            VecR cvec = lin_coeff;
            for (int j = 0; j < (int)act.size(); ++j)
                cvec(act[j]) += sol(D + j);
            if (dense_term) {
                const double sg = sol(D + (int)act.size());
                cvec += sg * kappa;
            }
            inner += w.Mm * cvec.asDiagonal() * w.Mm.adjoint();
            inner += MatC(sol.head(D).asDiagonal());
            MatC Delta = -(cur.X * inner * cur.X) + cur.X;
            Delta = ((Delta + Delta.adjoint()) * 0.5).eval();
            Delta.diagonal().setZero();

            // Newton decrement: lambda^2 = -<Grad, Delta>.
            const MatC Xinv_D = cur.llt.solve(Delta);
            double grad_dot = -std::real(Xinv_D.trace());
            if (w.rate_objective) {
                for (Eigen::Index n = 0; n < N; ++n)
                    grad_dot += -t * kappa(n) *
                                std::real(w.Mm.col(n).dot(Delta * w.Mm.col(n)));
            } else {
                grad_dot += -t * std::real((w.A * Delta).trace());
                if (w.barrier_rate)
                    for (Eigen::Index n = 0; n < N; ++n)
                        grad_dot += -(1.0 / u) * kappa(n) *
                                    std::real(w.Mm.col(n).dot(Delta * w.Mm.col(n)));
            }
            const double lambda2 = std::max(0.0, -grad_dot);
            const double lambda = std::sqrt(lambda2);

            if (lambda <= 0.2)
                break;

            double alpha = lambda > 1.0 ? 1.0 / (1.0 + lambda) : 1.0;
            bool accepted = false;
            for (int ls = 0; ls < 60; ++ls) {
                PsdPoint trial = psd_eval(w, cur.X + alpha * Delta, t);
                if (trial.ok && trial.psi <= cur.psi - 0.25 * alpha * lambda2) {
                    trial.X.diagonal().setOnes();
                    cur = trial;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted)
                break; // numerically stalled; treat as centered
        }

        if (early_floor > -std::numeric_limits<double>::max() / 2 && cur.g >= early_floor) {
            out.X = cur.X;
            out.gap = m_bar / t;
            return out;
        }

        const double obj_scale = std::max(1.0, std::abs(psd_objective(w, cur)));
        if (m_bar / t <= tol * obj_scale) {
            out.X = cur.X;
            out.gap = m_bar / t;
            return out;
        }
        t *= mu;
        cur = psd_eval(w, cur.X, t);
        if (!cur.ok)
            throw std::logic_error("solve_psd: lost feasibility on t update");
    }
}

/// Blend toward the identity until strictly feasible (PD, positive rate
/// slack when required). Returns false when no blend works.
bool psd_feasible_start(const PsdWork &w, const MatC &hint, MatC &X0)
{
    const int D = w.D;
    std::vector<double> taus = {0.0, 1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.3, 0.7, 1.0};
    for (double tau : taus) {
        MatC X = hint.size() > 0
                     ? MatC((1.0 - tau) * hint + tau * MatC::Identity(D, D))
                     : MatC::Identity(D, D);
        X = ((X + X.adjoint()) * 0.5).eval();
        X.diagonal().setOnes();
        PsdPoint p = psd_eval(w, X, 1.0);
        if (p.ok) {
            X0 = X;
            return true;
        }
        if (hint.size() == 0)
            break;
    }
    return false;
}

} // namespace

double psd_rate_nats(const PsdSubproblem &p, const MatC &Phi)
{
    double g = 0.0;
    for (const auto &rt : p.rate_terms) {
        const double q = std::real(rt.m.dot(Phi * rt.m));
        g += std::log(1.0 + rt.a * std::max(0.0, q));
    }
    return g;
}

PsdResult solve_psd(const PsdSubproblem &p, double tol_ipm)
{
    if (p.dim < 1)
        throw std::invalid_argument("solve_psd: dim must be >= 1");
    if (p.objective_is_rate && p.include_rate)
        throw std::invalid_argument("solve_psd: rate objective cannot carry a rate floor");

    PsdWork w;
    w.D = p.dim;
    w.rate_objective = p.objective_is_rate;
    w.barrier_rate = p.include_rate && p.rate_floor_nats > 0.0;
    w.floor_nats = p.rate_floor_nats;

    double a_scale = 1.0;
    if (!w.rate_objective) {
        if (p.objective.rows() != p.dim || p.objective.cols() != p.dim)
            throw std::invalid_argument("solve_psd: objective must be dim x dim");
        if ((p.objective - p.objective.adjoint()).norm() >
            1e-9 * std::max(1.0, p.objective.norm()))
            throw std::invalid_argument("solve_psd: objective must be Hermitian");
        a_scale = std::max(p.objective.norm(), 1e-300);
        w.A = p.objective / a_scale;
    }

    const int Nr = (int)p.rate_terms.size();
    w.Mm.resize(p.dim, Nr);
    w.a.resize(Nr);
    for (int n = 0; n < Nr; ++n) {
        if (p.rate_terms[n].m.size() != p.dim)
            throw std::invalid_argument("solve_psd: rate term dimension mismatch");
        if (p.rate_terms[n].a < 0)
            throw std::invalid_argument("solve_psd: rate scale must be >= 0");
        w.Mm.col(n) = p.rate_terms[n].m;
        w.a(n) = p.rate_terms[n].a;
    }

    PsdResult res;
    if (p.dim == 1) {
        res.Phi = MatC::Ones(1, 1);
        res.objective = w.rate_objective ? psd_rate_nats(p, res.Phi)
                                         : std::real(p.objective(0, 0));
        res.status.rate_slack = psd_rate_nats(p, res.Phi) - p.rate_floor_nats;
        res.status.min_eigenvalue = 1.0;
        if (w.barrier_rate && res.status.rate_slack < -1e-12)
            res.status.code = SolveCode::Infeasible;
        return res;
    }

    MatC X0;
    bool have_start = psd_feasible_start(w, p.initial, X0);
    bool warm = have_start && p.initial.size() > 0;

    if (!have_start && w.barrier_rate) {
        // Phase 1: push the rate up from the best PD point available.
        PsdWork w1 = w;
        w1.rate_objective = true;
        w1.barrier_rate = false;
        MatC X1 = MatC::Identity(p.dim, p.dim);
        {
            PsdWork wpd = w;
            wpd.barrier_rate = false; // PD-only feasibility of the hint
            MatC tmp;
            if (psd_feasible_start(wpd, p.initial, tmp))
                X1 = tmp;
        }
        const double margin = std::max(1e-9, 1e-9 * std::abs(w.floor_nats));
        PsdSolveOut ph1 = psd_barrier(w1, X1, 1.0, tol_ipm, 200, w.floor_nats + margin);
        PsdPoint chk = psd_eval(w, ph1.X, 1.0);
        if (!chk.ok) {
            res.Phi = ph1.X;
            res.objective = w.rate_objective ? 0.0 : a_scale * std::real((w.A * ph1.X).trace());
            res.status.code = SolveCode::Infeasible;
            res.status.rate_slack = psd_rate_nats(p, ph1.X) - p.rate_floor_nats;
            res.status.newton_steps = ph1.newton_steps;
            return res;
        }
        X0 = ph1.X;
        have_start = true;
    }
    if (!have_start)
        throw std::logic_error("solve_psd: no strictly feasible start");

    const double t0 = warm ? 100.0 : 1.0;
    PsdSolveOut sol =
        psd_barrier(w, X0, t0, tol_ipm, 200, -std::numeric_limits<double>::max());

    res.Phi = sol.X;
    res.Phi.diagonal().setOnes();
    res.Phi = ((res.Phi + res.Phi.adjoint()) * 0.5).eval();
    res.status.code = sol.code;
    res.status.newton_steps = sol.newton_steps;
    res.status.gap = sol.gap * (w.rate_objective ? 1.0 : a_scale);
    res.objective = w.rate_objective
                        ? psd_rate_nats(p, res.Phi)
                        : a_scale * std::real((w.A * res.Phi).trace());
    res.status.rate_slack =
        p.rate_terms.empty() ? 0.0 : psd_rate_nats(p, res.Phi) - p.rate_floor_nats;
    res.status.diag_error =
        (res.Phi.diagonal().real().array() - 1.0).abs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<MatC> eig(res.Phi, Eigen::EigenvaluesOnly);
    res.status.min_eigenvalue = eig.eigenvalues().minCoeff();
    return res;
}

// ===========================================================================
// GP kernel: log-domain barrier over y = log([s_I; s_P; rho; rho_bar; t''])
// ===========================================================================

namespace {

struct LseTerm
{
    VecR a;
    double b = 0.0;
};

struct GpRow
{
    bool is_lse = false;
    VecR a;                    // affine: f = a^T y + b
    double b = 0.0;
    std::vector<LseTerm> lse;  // f = ln sum exp(a_i^T y + b_i)

    double eval(const VecR &y) const
    {
        if (!is_lse)
            return a.dot(y) + b;
        double mx = -std::numeric_limits<double>::infinity();
        for (const auto &t : lse)
            mx = std::max(mx, t.a.dot(y) + t.b);
        double s = 0.0;
        for (const auto &t : lse)
            s += std::exp(t.a.dot(y) + t.b - mx);
        return mx + std::log(s);
    }

    void add_derivatives(const VecR &y, double weight_g, double weight_h, VecR &grad,
                         MatR &hess) const
    {
        // Adds weight_g * grad f and weight_h * (grad f grad f^T) + barrier
        // curvature of f itself scaled by weight_g.
        if (!is_lse) {
            grad += weight_g * a;
            hess += weight_h * (a * a.transpose());
            return;
        }
        double mx = -std::numeric_limits<double>::infinity();
        for (const auto &t : lse)
            mx = std::max(mx, t.a.dot(y) + t.b);
        double total = 0.0;
        std::vector<double> wts(lse.size());
        for (std::size_t i = 0; i < lse.size(); ++i) {
            wts[i] = std::exp(lse[i].a.dot(y) + lse[i].b - mx);
            total += wts[i];
        }
        VecR gf = VecR::Zero(y.size());
        MatR sq = MatR::Zero(y.size(), y.size());
        for (std::size_t i = 0; i < lse.size(); ++i) {
            const double wi = wts[i] / total;
            gf += wi * lse[i].a;
            sq += wi * (lse[i].a * lse[i].a.transpose());
        }
        grad += weight_g * gf;
        hess += weight_h * (gf * gf.transpose()) + weight_g * (sq - gf * gf.transpose());
    }
};

} // namespace

GpResult solve_gp(const GpSubproblem &p, double tol_ipm)
{
    const int N = p.N;
    if (N < 1)
        throw std::invalid_argument("solve_gp: N must be >= 1");
    const int V = 2 * N + 3;
    if (p.initial.size() != 2 * N + 2)
        throw std::invalid_argument("solve_gp: initial must be [s_I; s_P; rho; rho_bar]");
    if ((Eigen::Index)p.dc_monomials.size() != p.dc_weights.size())
        throw std::invalid_argument("solve_gp: dc weights/monomials mismatch");
    if (p.include_rate &&
        (p.rate_weight_one.size() != N || p.rate_weight_snr.size() != N ||
         p.snr_gain.size() != N))
        throw std::invalid_argument("solve_gp: rate weight vectors must have N entries");

    GpResult res;

    // Start point in log coordinates.
    VecR y(V);
    for (int i = 0; i < 2 * N + 2; ++i)
        y(i) = std::log(std::max(p.initial(i), 1e-12));

    // Constraint rows.
    std::vector<GpRow> rows;

    { // power
        GpRow r;
        r.is_lse = true;
        for (int n = 0; n < N; ++n) {
            LseTerm t1;
            t1.a = VecR::Zero(V);
            t1.a(gp_idx_sI(n)) = 2.0;
            t1.b = -std::log(2.0 * p.P);
            r.lse.push_back(t1);
            LseTerm t2;
            t2.a = VecR::Zero(V);
            t2.a(gp_idx_sP(N, n)) = 2.0;
            t2.b = -std::log(2.0 * p.P);
            r.lse.push_back(t2);
        }
        rows.push_back(std::move(r));
    }

    if (p.include_rate) { // rho + rho_bar <= 1
        GpRow r;
        r.is_lse = true;
        LseTerm t1;
        t1.a = VecR::Zero(V);
        t1.a(gp_idx_rho(N)) = 1.0;
        LseTerm t2;
        t2.a = VecR::Zero(V);
        t2.a(gp_idx_rhobar(N)) = 1.0;
        r.lse = {t1, t2};
        rows.push_back(std::move(r));
    } else { // rho <= 1
        GpRow r;
        r.a = VecR::Zero(V);
        r.a(gp_idx_rho(N)) = 1.0;
        rows.push_back(std::move(r));
    }

    { // condensed DC: t'' <= prod (g_m / gamma_m)^gamma_m
        GpRow r;
        r.a = VecR::Zero(V);
        r.a(gp_idx_tpp(N)) = 1.0;
        r.b = 0.0;
        for (Eigen::Index m = 0; m < p.dc_weights.size(); ++m) {
            const double gam = p.dc_weights(m);
            if (gam <= 1e-300)
                continue;
            const auto &mono = p.dc_monomials[m];
            if (!(mono.coeff > 0))
                throw std::invalid_argument("solve_gp: monomial coefficients must be > 0");
            r.b -= gam * (std::log(mono.coeff) - std::log(gam));
            for (const auto &[vi, e] : mono.expo)
                r.a(vi) -= gam * e;
        }
        rows.push_back(std::move(r));
    }

    if (p.include_rate) { // condensed rate floor
        GpRow r;
        r.a = VecR::Zero(V);
        r.b = p.rate_floor_bits * std::log(2.0);
        for (int n = 0; n < N; ++n) {
            const double g1 = p.rate_weight_one(n);
            const double g2 = p.rate_weight_snr(n);
            if (g2 > 1e-300) {
                r.b -= g2 * (std::log(p.snr_gain(n)) - std::log(g2));
                r.a(gp_idx_sI(n)) -= 2.0 * g2;
                r.a(gp_idx_rhobar(N)) -= g2;
            }
            if (g1 > 1e-300)
                r.b -= g1 * (0.0 - std::log(g1));
        }
        rows.push_back(std::move(r));
    }

    const int dc_row = 2;
    // Make the start strictly feasible.
    {
        // power (margin covers log/exp round-trip noise at the exact boundary)
        double pw = 0.0;
        for (int n = 0; n < N; ++n)
            pw += std::exp(2.0 * y(gp_idx_sI(n))) + std::exp(2.0 * y(gp_idx_sP(N, n)));
        pw *= 0.5;
        if (pw >= p.P * (1.0 - 1e-12)) {
            const double shift = 0.5 * std::log(p.P / pw * (1.0 - 1e-9));
            for (int n = 0; n < N; ++n) {
                y(gp_idx_sI(n)) += shift;
                y(gp_idx_sP(N, n)) += shift;
            }
        }
        // split
        const double split = std::exp(y(gp_idx_rho(N))) +
                             (p.include_rate ? std::exp(y(gp_idx_rhobar(N))) : 0.0);
        if (p.include_rate && split >= 1.0 - 1e-12) {
            const double shift = std::log((1.0 - 1e-9) / split);
            y(gp_idx_rho(N)) += shift;
            y(gp_idx_rhobar(N)) += shift;
        }
        if (!p.include_rate && y(gp_idx_rho(N)) >= -1e-12)
            y(gp_idx_rho(N)) = std::log(1.0 - 1e-9);
        // t'' sits 0.05 below the condensed DC value in log units
        y(gp_idx_tpp(N)) = 0.0;
        const double cond = -(rows[dc_row].a.dot(y) + rows[dc_row].b);
        y(gp_idx_tpp(N)) = cond - 0.05;
        // rate row must be strictly feasible at the start
        if (p.include_rate && rows.back().eval(y) >= 0.0) {
            res.code = SolveCode::Infeasible;
            res.s_I = p.initial.head(N);
            res.s_P = p.initial.segment(N, N);
            res.rho = p.initial(2 * N);
            res.rho_bar = p.initial(2 * N + 1);
            return res;
        }
    }

    for (const auto &r : rows)
        if (r.eval(y) >= 0.0)
            throw std::logic_error("solve_gp: start not strictly feasible");

    const double m_bar = (double)rows.size();
    double t = 1.0;
    int steps = 0;
    const int cap = 400;
    const double mu = 30.0;

    auto psi = [&](const VecR &yy, double tt, bool &ok) {
        double v = -tt * yy(gp_idx_tpp(N));
        ok = true;
        for (const auto &r : rows) {
            const double f = r.eval(yy);
            if (f >= 0.0) {
                ok = false;
                return 0.0;
            }
            v -= std::log(-f);
        }
        return v;
    };

    while (true) {
        for (;;) {
            if (steps >= cap) {
                res.code = SolveCode::IterationCap;
                break;
            }
            ++steps;
            VecR grad = VecR::Zero(V);
            grad(gp_idx_tpp(N)) = -t;
            MatR hess = MatR::Zero(V, V);
            for (const auto &r : rows) {
                const double f = r.eval(y);
                r.add_derivatives(y, 1.0 / (-f), 1.0 / (f * f), grad, hess);
            }
            // weak ridge pins coordinates that no constraint references
            hess.diagonal().array() += 1e-12 * std::max(1.0, hess.diagonal().maxCoeff());
            Eigen::LDLT<MatR> ldlt(hess);
            VecR d = ldlt.solve(-grad);
            if (!d.allFinite()) {
                hess.diagonal().array() += 1e-10 * std::max(1.0, hess.diagonal().maxCoeff());
                ldlt.compute(hess);
                d = ldlt.solve(-grad);
                if (!d.allFinite())
                    throw std::runtime_error("solve_gp: singular Newton system");
            }
            const double lambda2 = std::max(0.0, -grad.dot(d));
            const double lambda = std::sqrt(lambda2);
            if (lambda <= 0.2)
                break;
            bool okc = false;
            double base = psi(y, t, okc);
            double alpha = lambda > 1.0 ? 1.0 / (1.0 + lambda) : 1.0;
            bool accepted = false;
            for (int ls = 0; ls < 60; ++ls) {
                bool ok2 = false;
                const VecR cand = y + alpha * d;
                const double v = psi(cand, t, ok2);
                if (ok2 && v <= base - 0.25 * alpha * lambda2) {
                    y = cand;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted)
                break;
        }
        if (res.code == SolveCode::IterationCap)
            break;
        if (m_bar / t <= tol_ipm)
            break;
        t *= mu;
    }

    res.newton_steps = steps;
    res.gap = m_bar / t;
    res.s_I = y.head(N).array().exp();
    res.s_P = y.segment(N, N).array().exp();
    res.rho = std::exp(y(gp_idx_rho(N)));
    res.t_pp = std::exp(y(gp_idx_tpp(N)));

    // Polish: land exactly on the power boundary and spend the whole split.
    const double pw = 0.5 * (res.s_I.squaredNorm() + res.s_P.squaredNorm());
    if (pw > 0) {
        const double k = std::sqrt(p.P / pw);
        res.s_I *= k;
        res.s_P *= k;
    }
    res.rho = std::min(1.0, std::max(0.0, res.rho));
    res.rho_bar = 1.0 - res.rho;
    return res;
}

} // namespace irsswipt

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

#include "irsswipt/solver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

using namespace irsswipt;

namespace {

MatC random_hermitian(Rng &rng, int d)
{
    const MatC A = rng.cscg_matrix(d, d);
    return 0.5 * (A + A.adjoint());
}

/// Independent first-order reference for max tr(A X) over the unit-diagonal
/// PSD cone: projected gradient ascent on the factorization X = R R^H with
/// unit-norm rows (full-width factor, multi-start).
double factored_gradient_reference(const MatC &A, int restarts = 5)
{
    const int d = (int)A.rows();
    double best = -1e300;
    Rng rng(177);
    for (int rs = 0; rs < restarts; ++rs) {
        MatC R = rng.cscg_matrix(d, d);
        for (int i = 0; i < d; ++i)
            R.row(i) /= R.row(i).norm();
        auto value = [&](const MatC &Rm) {
            return std::real((Rm.adjoint() * A * Rm).trace());
        };
        double fv = value(R);
        double step = 1.0 / std::max(1.0, A.norm());
        for (int it = 0; it < 20000; ++it) {
            const MatC G = 2.0 * (A * R);
            MatC Rn = R + step * G;
            for (int i = 0; i < d; ++i)
                Rn.row(i) /= Rn.row(i).norm();
            const double fn = value(Rn);
            if (fn > fv) {
                R = Rn;
                if (fn - fv < 1e-13 * std::max(1.0, std::abs(fv)) && it > 100)
                    break;
                fv = fn;
                step *= 1.2;
            } else {
                step *= 0.5;
                if (step < 1e-14)
                    break;
            }
        }
        best = std::max(best, fv);
    }
    return best;
}

void check_certificates(const PsdResult &r)
{
    const MatC &Phi = r.Phi;
    CHECK((Phi - Phi.adjoint()).norm() <= 1e-9 * std::max(1.0, Phi.norm()));
    CHECK(r.status.diag_error <= 1e-7);
    CHECK(r.status.min_eigenvalue >= -1e-7);
}

} // namespace

TEST_CASE("identity objective pins the trace at the diagonal")
{
    PsdSubproblem p;
    p.dim = 3;
    p.objective = MatC::Identity(3, 3);
    const PsdResult r = solve_psd(p);
    CHECK(r.objective == doctest::Approx(3.0).epsilon(1e-7));
    check_certificates(r);
}

TEST_CASE("dim-2 exchange objective attains the all-ones matrix")
{
    PsdSubproblem p;
    p.dim = 2;
    p.objective = MatC::Zero(2, 2);
    p.objective(0, 1) = 1.0;
    p.objective(1, 0) = 1.0;
    const PsdResult r = solve_psd(p);
    // max over Phi = [[1, e^{j t}], [e^{-j t}, 1]] of 2 cos t is 2
    CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(r.Phi(0, 1) - cxd(1.0, 0.0)) < 1e-4);
    check_certificates(r);
}

TEST_CASE("random instances match the factored first-order reference")
{
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        PsdSubproblem p;
        p.dim = 4;
        p.objective = random_hermitian(rng, 4);
        const PsdResult r = solve_psd(p);
        const double ref = factored_gradient_reference(p.objective);
        CHECK(std::abs(r.objective - ref) <= 1e-5 * std::max(1.0, std::abs(ref)));
        check_certificates(r);
    }
}

TEST_CASE("solution certificates hold across random dimensions")
{
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 + (int)(rng.uniform() * 8);
        PsdSubproblem p;
        p.dim = d;
        p.objective = random_hermitian(rng, d);
        const PsdResult r = solve_psd(p);
        check_certificates(r);
        CHECK(r.status.code == SolveCode::Converged);
    }
}

TEST_CASE("rate-constrained solve respects the floor and beats the start")
{
    Rng rng(33);
    const int d = 5, N = 3;
    PsdSubproblem p;
    p.dim = d;
    p.objective = random_hermitian(rng, d);
    p.objective = (p.objective * p.objective.adjoint()).eval(); // PSD objective
    for (int n = 0; n < N; ++n) {
        RateTerm t;
        t.m = rng.cscg_vector(d);
        t.a = 2.0;
        p.rate_terms.push_back(t);
    }
    // floor at 60% of the rate of the identity start
    const double g_at_I = psd_rate_nats(p, MatC::Identity(d, d));
    p.include_rate = true;
    p.rate_floor_nats = 0.6 * g_at_I;
    const PsdResult r = solve_psd(p);
    CHECK(r.status.code == SolveCode::Converged);
    CHECK(psd_rate_nats(p, r.Phi) >= p.rate_floor_nats - 1e-7);
    const double obj_at_I =
        std::real(p.objective.cwiseProduct(MatC::Identity(d, d)).sum());
    CHECK(r.objective >= obj_at_I - 1e-7);
    check_certificates(r);
}

TEST_CASE("unreachable rate floors are reported, not thrown")
{
    Rng rng(34);
    const int d = 4;
    PsdSubproblem p;
    p.dim = d;
    p.objective = random_hermitian(rng, d);
    RateTerm t;
    t.m = rng.cscg_vector(d);
    t.a = 1.0;
    p.rate_terms.push_back(t);
    p.include_rate = true;
    p.rate_floor_nats = 1e6;
    const PsdResult r = solve_psd(p);
    CHECK(r.status.code == SolveCode::Infeasible);
}

TEST_CASE("rate objective maximizes a single-term instance to cophasing")
{
    // L = 1, M = 1, N = 1: h = h_D + V^* phi; the best phase aligns the two.
    const cxd h_D(0.8, -0.3), V(0.5, 0.9);
    const double a = 2.7;
    PsdSubproblem p;
    p.dim = 2;
    p.objective_is_rate = true;
    RateTerm t;
    t.m = VecC(2);
    t.m << V, h_D;
    t.a = a;
    p.rate_terms.push_back(t);
    const PsdResult r = solve_psd(p);
    const double best = std::log(1.0 + a * std::pow(std::abs(h_D) + std::abs(V), 2.0));
    CHECK(r.objective == doctest::Approx(best).epsilon(1e-6));
    check_certificates(r);
}

TEST_CASE("rank-1 certificate on a generic surrogate instance")
{
    Rng rng(35);
    const int d = 9;
    // PSD objective of the kind the reflection surrogate produces
    MatC A = MatC::Zero(d, d);
    for (int i = 0; i < 4; ++i) {
        const VecC u = rng.cscg_vector(d);
        A += u * u.adjoint();
    }
    PsdSubproblem p;
    p.dim = d;
    p.objective = A;
    const PsdResult r = solve_psd(p);
    Eigen::SelfAdjointEigenSolver<MatC> eig(r.Phi, Eigen::EigenvaluesOnly);
    const VecR ev = eig.eigenvalues();
    CHECK(ev(d - 2) / ev(d - 1) < 1e-5);
}

// --------------------------------------------------------------------------
// geometric-program kernel
// --------------------------------------------------------------------------

namespace {

GpSubproblem single_tone_problem(double P, double beta2, double h2, double rho0)
{
    GpSubproblem p;
    p.N = 1;
    p.P = P;
    p.include_rate = false;
    p.snr_gain = VecR::Ones(1);
    // z = (beta2/2) h^2 rho (s_I^2 + s_P^2)
    GpMonomial m1;
    m1.coeff = 0.5 * beta2 * h2;
    m1.expo = {{gp_idx_sI(0), 2.0}, {gp_idx_rho(1), 1.0}};
    GpMonomial m2;
    m2.coeff = 0.5 * beta2 * h2;
    m2.expo = {{gp_idx_sP(1, 0), 2.0}, {gp_idx_rho(1), 1.0}};
    p.dc_monomials = {m1, m2};
    const double g1 = 0.5 * beta2 * h2 * P * rho0; // both monomials equal at start
    p.dc_weights = VecR::Constant(2, g1 / (2.0 * g1));
    p.initial.resize(4);
    p.initial << std::sqrt(P), std::sqrt(P), rho0, 1.0 - rho0;
    return p;
}

} // namespace

TEST_CASE("linear-model single tone pushes all power at rho = 1")
{
    const double P = 4.0, beta2 = 0.17, h2 = 0.5;
    const GpResult r = solve_gp(single_tone_problem(P, beta2, h2, 0.5), 1e-10);
    CHECK(r.code == SolveCode::Converged);
    const double power = 0.5 * (r.s_I.squaredNorm() + r.s_P.squaredNorm());
    CHECK(power == doctest::Approx(P).epsilon(1e-12)); // exact boundary
    CHECK(r.rho == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.rho + r.rho_bar == doctest::Approx(1.0).epsilon(1e-12));
    const double z = 0.5 * beta2 * h2 * r.rho * (r.s_I.squaredNorm() + r.s_P.squaredNorm());
    CHECK(z == doctest::Approx(beta2 * h2 * P).epsilon(1e-5));
    CHECK(r.t_pp <= z * (1.0 + 1e-6));
}

TEST_CASE("condensed solve respects a rate floor")
{
    // One tone, rate floor forces rho_bar (and s_I) to stay active.
    const double P = 1.0, snr = 8.0;
    GpSubproblem p;
    p.N = 1;
    p.P = P;
    p.include_rate = true;
    p.rate_floor_bits = 2.0; // needs rho_bar * snr * s^2 >= 3
    p.snr_gain = VecR::Constant(1, snr);
    GpMonomial m1;
    m1.coeff = 0.1;
    m1.expo = {{gp_idx_sI(0), 2.0}, {gp_idx_rho(1), 1.0}};
    GpMonomial m2;
    m2.coeff = 0.1;
    m2.expo = {{gp_idx_sP(1, 0), 2.0}, {gp_idx_rho(1), 1.0}};
    p.dc_monomials = {m1, m2};
    VecR s0(4);
    const double rho0 = 0.2;
    s0 << std::sqrt(P), std::sqrt(P), rho0, 1.0 - rho0;
    p.initial = s0;
    // weights from the initial point
    const double vI = 0.1 * P * rho0, vP = 0.1 * P * rho0;
    p.dc_weights.resize(2);
    p.dc_weights << vI / (vI + vP), vP / (vI + vP);
    const double g2 = (1.0 - rho0) * snr * P;
    p.rate_weight_one = VecR::Constant(1, 1.0 / (1.0 + g2));
    p.rate_weight_snr = VecR::Constant(1, g2 / (1.0 + g2));

    const GpResult r = solve_gp(p, 1e-10);
    CHECK(r.code == SolveCode::Converged);
    const double rate = std::log2(1.0 + r.rho_bar * snr * r.s_I(0) * r.s_I(0));
    CHECK(rate >= p.rate_floor_bits - 1e-6);
    CHECK(0.5 * (r.s_I.squaredNorm() + r.s_P.squaredNorm()) ==
          doctest::Approx(P).epsilon(1e-12));
}

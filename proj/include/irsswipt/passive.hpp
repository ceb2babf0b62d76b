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

#ifndef IRSSWIPT_PASSIVE_HPP
#define IRSSWIPT_PASSIVE_HPP

#include "irsswipt/scenario.hpp"
#include "irsswipt/solver.hpp"
#include "irsswipt/types.hpp"

#include <vector>

namespace irsswipt {

// IRS phase-shift optimization over the lifted matrix Phi = phibar phibar^H,
// phibar = [phi^H, t']^H. The reflection is frequency-flat: one phi serves
// all subbands.

/// Reflection state: unit-modulus phase vector and, while an SCA runs, the
/// lifted unit-diagonal PSD matrix.
struct IrsState
{
    VecC phi;
    MatC Phi; ///< (L+1)x(L+1), empty outside SCA
};

/// Quadratic-form couplings of the lifted variable:
///   |h_n^H w_{I,n}|^2   = phibar^H (u_{I,n} u_{I,n}^H) phibar
///   h^H W_{X,k} h       = tr(C_{X,k} Phi),  C_{X,k} = sum_n u_{X,n} u_{X,n+k}^H
/// with u_{X,n} = M_n w_{X,n} and M_n = [V_n^H, h_D,n]^H.
struct CouplingMatrices
{
    int L = 0, N = 0;
    std::vector<VecC> u_I, u_P; ///< N vectors of length L+1

    /// t_{X,k} = tr(C_{X,k} Phi) for a Hermitian Phi; k in [-N+1, N-1],
    /// returned indexed by k + N - 1.
    VecC t_of(const std::vector<VecC> &u, const MatC &Phi) const;

    /// t values at a rank-1 lift of the given unit-modulus phi (t' = 1).
    VecC t_of_phi(const std::vector<VecC> &u, const VecC &phi) const;

    MatC C_I0() const;
    MatC C_P0() const;
    MatC C_Pk(int k) const; ///< k in [-N+1, N-1]
};

CouplingMatrices build_coupling(const ChannelRealization &ch,
                                const std::vector<VecC> &w_I,
                                const std::vector<VecC> &w_P);

/// Exact DC (model units) as a function of the t values, given rho.
double z_of_t(const VecC &t_I, const VecC &t_P, double rho, double beta2, double beta4);

/// Tangent minorant of the DC at the expansion point's t values: returns the
/// Hermitian matrix A and constant c with ztilde(Phi) = tr(A Phi) + c.
std::pair<MatC, double> sca_surrogate(const CouplingMatrices &C, const VecC &t_I_prev,
                                      const VecC &t_P_prev, double rho, double beta2,
                                      double beta4);

/// Leading-eigenvector phase extraction, normalized by the auxiliary entry.
/// Returns phi and the eigenvalue ratio lambda2/lambda1.
std::pair<VecC, double> extract_phase(const MatC &Phi);

struct ScaOptions
{
    double epsilon = 1e-8;
    int max_iterations = 100;
    double tol_ipm = 1e-8;
    MatC Phi_init; ///< optional feasible start for the first subproblem
};

struct ScaResult
{
    VecC phi;
    MatC Phi;
    double z = 0.0;               ///< exact DC at the final lifted iterate
    std::vector<double> z_seq;    ///< per-iteration exact DC, nondecreasing
    std::vector<double> rank_ratios; ///< lambda2/lambda1 of converged subproblems
    int iterations = 0;
    bool infeasible = false;
    bool converged = true;
};

/// SCA with the rate floor (bits): iterates solve_psd on the linearized DC
/// surrogate, keeping every iterate rate-feasible. Initialization follows the
/// WIT-oriented lift when a positive floor is present (guaranteed feasible
/// whenever the floor is reachable), the all-ones phase otherwise.
ScaResult sca(const Scenario &s, const ChannelRealization &ch,
              const std::vector<VecC> &w_I, const std::vector<VecC> &w_P, double rho,
              double R_bar, const ScaOptions &opt = {});

/// Modified SCA for the low-complexity pipeline: no rate floor. rho = 0 is a
/// single rate-maximization solve; rho > 0 runs the surrogate loop.
ScaResult m_sca(const Scenario &s, const ChannelRealization &ch,
                const std::vector<VecC> &w_I, const std::vector<VecC> &w_P, double rho,
                const ScaOptions &opt = {});

/// Ideal frequency-selective upper bound: maximizes ||h_n|| independently per
/// subband (one linear SDP each); returns N phase vectors. Baseline only.
std::vector<VecC> fs_upper_bound_phases(const ChannelRealization &ch, double tol_ipm = 1e-8);

} // namespace irsswipt

#endif

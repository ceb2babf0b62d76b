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

#ifndef IRSSWIPT_SOLVER_HPP
#define IRSSWIPT_SOLVER_HPP

#include "irsswipt/types.hpp"

#include <utility>
#include <vector>

namespace irsswipt {

// Self-contained convex kernels for the two subproblem families. Both are
// primal barrier interior-point methods with damped Newton steps; problem
// sizes are small (matrix side <= ~130, a few dozen scalar variables) so all
// factorizations are dense.

enum class SolveCode
{
    Converged,
    IterationCap,
    Infeasible,
};

/// One concave rate term ln(1 + a * m^H Phi m). The full rate constraint is
/// sum_n of these >= rate_floor_nats.
struct RateTerm
{
    VecC m;       ///< rank-1 direction, length = dim
    double a = 0; ///< (1 - rho) / sigma_n^2 scale, >= 0
};

/// Linear-objective PSD program with unit diagonal:
///     maximize tr(A Phi)  (or the rate sum itself when objective_is_rate)
///     s.t. diag(Phi) = 1, Phi >= 0,
///          sum_n ln(1 + a_n m_n^H Phi m_n) >= rate_floor_nats  [optional]
struct PsdSubproblem
{
    int dim = 1;
    MatC objective;                  ///< Hermitian A; ignored when objective_is_rate
    bool objective_is_rate = false;
    std::vector<RateTerm> rate_terms;
    double rate_floor_nats = 0.0;
    bool include_rate = false;
    MatC initial;                    ///< optional warm start; must be feasible
};

struct PsdStatus
{
    SolveCode code = SolveCode::Converged;
    int newton_steps = 0;
    double gap = 0.0;            ///< barrier duality-gap estimate (objective units)
    double rate_slack = 0.0;     ///< g(Phi) - floor in nats (0 when unconstrained)
    double diag_error = 0.0;     ///< max |Phi_ii - 1|
    double min_eigenvalue = 0.0;
};

struct PsdResult
{
    MatC Phi;
    double objective = 0.0; ///< tr(A Phi) or the rate sum in nats
    PsdStatus status;
};

/// Barrier path-following solve. Infeasible rate floors are detected via a
/// phase-1 rate maximization and reported through status (never thrown).
PsdResult solve_psd(const PsdSubproblem &p, double tol_ipm = 1e-8);

/// Rate sum (nats) at a given Phi for the subproblem's rate terms.
double psd_rate_nats(const PsdSubproblem &p, const MatC &Phi);

// ---------------------------------------------------------------------------

/// Monomial c * prod_v x_v^{e_v} over the GP variable layout
/// [s_I(0..N-1), s_P(N..2N-1), rho, rho_bar, t''].
struct GpMonomial
{
    double coeff = 1.0;
    std::vector<std::pair<int, double>> expo; ///< (variable index, exponent)
};

inline int gp_idx_sI(int n) { return n; }
inline int gp_idx_sP(int N, int n) { return N + n; }
inline int gp_idx_rho(int N) { return 2 * N; }
inline int gp_idx_rhobar(int N) { return 2 * N + 1; }
inline int gp_idx_tpp(int N) { return 2 * N + 2; }

/// Condensed geometric program for one inner solve:
///     maximize t''
///     s.t. t'' <= prod_m (g_m / gamma_m)^{gamma_m}          (DC posynomial)
///          2^Rbar <= prod_n prod_m (g_{m,n} / gamma)^{gamma} (rate, optional)
///          (||s_I||^2 + ||s_P||^2)/2 <= P,  rho + rho_bar <= 1
/// where the rate posynomial of subband n is 1 + rho_bar snr_n s_{I,n}^2 and
/// all weights are the caller's AM-GM condensation at the previous iterate.
struct GpSubproblem
{
    int N = 1;
    double P = 1.0;
    double rate_floor_bits = 0.0;
    bool include_rate = false;

    VecR snr_gain; ///< ||h_n||^2 / sigma_n^2, length N

    std::vector<GpMonomial> dc_monomials;
    VecR dc_weights; ///< same length, nonnegative, sums to 1

    /// Rate condensation weights per subband: weight of the "1" monomial and
    /// of the SNR monomial; each pair sums to 1. Sizes N when include_rate.
    VecR rate_weight_one;
    VecR rate_weight_snr;

    /// Strictly positive initial point [s_I; s_P; rho; rho_bar], linear units.
    VecR initial;
};

struct GpResult
{
    VecR s_I, s_P;
    double rho = 0.0, rho_bar = 1.0, t_pp = 0.0;
    SolveCode code = SolveCode::Converged;
    int newton_steps = 0;
    double gap = 0.0;
};

GpResult solve_gp(const GpSubproblem &p, double tol_ipm = 1e-8);

} // namespace irsswipt

#endif

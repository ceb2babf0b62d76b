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

#ifndef IRSSWIPT_WAVEFORM_HPP
#define IRSSWIPT_WAVEFORM_HPP

#include "irsswipt/solver.hpp"
#include "irsswipt/types.hpp"

#include <array>
#include <vector>

namespace irsswipt {

// Frequency-domain amplitude allocation for the MRT-reduced link: the
// composite channel enters only through its per-subband norms.

/// Ordered index quadruples (n1,n2,n3,n4) in [0,N) with n1+n2 = n3+n4;
/// there are (2N^3+N)/3 of them. Cached per N.
const std::vector<std::array<int, 4>> &multisine_quadruples(int N);

/// DC posynomial in the GP variable layout: z as a flat monomial list.
/// Groups: beta2 second-order terms, modulated fourth-order (N^2), multisine
/// fourth-order ((2N^3+N)/3 quadruples), and the cross I^2 P^2 terms (N^2).
struct DcPosynomial
{
    int N = 0;
    std::vector<GpMonomial> monomials;

    double eval(const VecR &s_I, const VecR &s_P, double rho) const;
    VecR monomial_values(const VecR &s_I, const VecR &s_P, double rho) const;
};

DcPosynomial dc_posynomial(const VecR &h_norms, double beta2, double beta4);

struct GpOutcome
{
    VecR s_I, s_P;
    double rho = 0.0;
    double z = 0.0;    ///< exact DC of the returned design
    double rate = 0.0; ///< exact rate of the returned design [bits]
    std::vector<double> z_seq; ///< accepted-iterate DC values, nondecreasing
    int iterations = 0;
    SolveCode code = SolveCode::Converged;
};

/// Joint waveform-amplitude and splitting-ratio design: AM-GM condensation
/// re-weighted around each iterate, inner solves via solve_gp, terminated on
/// |z_i - z_{i-1}| <= epsilon. A rate floor at (or numerically above) the
/// water-filling capacity returns the boundary WIT design directly.
struct GpOptions
{
    double epsilon = 1e-8;
    int max_iterations = 100;
    double tol_ipm = 1e-9;
    VecR init; ///< optional [s_I; s_P; rho] warm start (size 2N+1)
};

GpOutcome gp(const VecR &h_norms, double P, const VecR &sigma2, double R_bar,
             double beta2, double beta4, const GpOptions &opt = {});

/// Water-filling amplitudes: s_{I,n} = sqrt(2 (lambda - sigma_n^2 /
/// (P ||h_n||^2))^+), lambda fixed by bisection so ||s||^2/2 = P.
VecR water_filling(const VecR &h_norms, double P, const VecR &sigma2);

/// Scaled matched filter: s_{P,n} proportional to ||h_n||^alpha, exact power.
VecR smf(const VecR &h_norms, double P, double alpha);

/// Superposed low-complexity split: WF scaled by sqrt(1-delta) and SMF scaled
/// by sqrt(delta).
std::pair<VecR, VecR> superposed_lc(const VecR &h_norms, double P, double delta,
                                    const VecR &sigma2, double alpha);

/// Water-filling capacity at rho = 0 [bits].
double wf_capacity(const VecR &h_norms, double P, const VecR &sigma2);

} // namespace irsswipt

#endif

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

#ifndef IRSSWIPT_EXPERIMENT_HPP
#define IRSSWIPT_EXPERIMENT_HPP

#include "irsswipt/orchestrate.hpp"
#include "irsswipt/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace irsswipt {

// Experiment runner. Every (parameter, realization) task derives its own
// seed from (base seed, parameter index, realization index), so results are
// independent of scheduling, and reruns with the same manifest are
// bit-identical.

struct ExperimentSpec
{
    std::string preset;   ///< subband-sweep | noise-sweep | distance-sweep |
                          ///< tx-scaling | irs-scaling | irs-strategy |
                          ///< csit-robustness | quantization
    Scenario base;
    std::vector<double> params; ///< preset parameter list (empty -> default)
    int realizations = 20;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int grid = 21;
    std::string mode = "bcd"; ///< bcd | lc | both
    std::vector<int> quant_bits = {0, 1, 2, 4, -1}; ///< -1 = continuous
    std::vector<double> csit_errors; ///< used by csit-robustness (inf allowed)
    int threads = 0; ///< 0 = hardware concurrency

    void validate() const;
    std::vector<double> default_params() const;
};

/// One averaged output row. Fields that do not apply to a preset are NaN.
struct ResultRow
{
    std::string preset;
    double param = 0.0;
    std::string series;
    int grid_index = 0;
    double grid_value = 0.0;
    int n_realizations = 0;
    double rate = 0.0;
    double rate_per_subband = 0.0;
    double rate_ci95 = 0.0;
    double z = 0.0;
    double z_ci95 = 0.0;
    double wit_snr = 0.0;
    double wit_snr_ci95 = 0.0;
};

struct ExperimentResult
{
    std::vector<ResultRow> rows;
    std::string csv_path;
    std::string manifest_path;
};

/// Runs the preset, writes <preset>.csv and <preset>.manifest.json under
/// spec.out_dir and returns the rows.
ExperimentResult run(const ExperimentSpec &spec);

/// CSV serialization (stable schema, documented in the README).
std::string rows_to_csv(const std::vector<ResultRow> &rows);

} // namespace irsswipt

#endif

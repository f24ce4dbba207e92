// Copyright 2026 The lprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Monte Carlo and exact experiments on recovery thresholds.
//
// Every random draw is keyed by derive_seed(spec seed, grid indices, trial),
// so a report depends only on its spec and never on the worker count.

#ifndef LPREC_EXPERIMENTS_HPP
#define LPREC_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lprec/conditions.hpp"
#include "lprec/linalg.hpp"

namespace lprec {

using Json = nlohmann::ordered_json;

enum class AmplitudeModel {
  kStandardNormal,
  // Half N(0, 1), a quarter each N(1000, 1) and N(-1000, 1). Nonnegative
  // variants draw |N(0, 1)| and N(1000, 1) with equal probability.
  kMixture,
};

std::string_view to_string(AmplitudeModel model);

struct TrialRecord {
  std::uint64_t seed = 0;
  bool recovered = false;
  double objective = 0.0;
  std::string error;  // solver failure, if any; counted as a failure
};

struct GridPoint {
  std::string mode;  // "strong", "weak" or "recovery"
  double p = 0.0;
  double rho = 0.0;
  int support_size = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;  // successes / trials
  std::vector<TrialRecord> records;
};

struct ExperimentReport {
  std::string experiment;
  Json spec;
  std::vector<GridPoint> points;
  Json summary = Json::object();
  // Rows for experiments that are not grids (example1, concentration).
  std::vector<std::string> table_header;
  std::vector<std::vector<std::string>> table_rows;
  std::vector<std::string> notes;
  double wall_time_s = 0.0;
};

// Timing is left out by default so that reruns are byte-identical.
Json report_to_json(const ExperimentReport& report, bool include_timing = false);
// Grid reports: mode,p,rho,support_size,success_rate,trials. Others: their
// table.
std::string report_to_csv(const ExperimentReport& report);

// Support size used for a sparsity ratio: round(rho n), at least 1.
int support_size(double rho, int n);

// Exact checks on the (6k-1) x 6k example whose null space is spanned by
// (1^k, (-1)^k, (1/64)^{4k}).
ExperimentReport run_example1(int k, double p = 0.5);
Matrix example1_null_vector(int k);

struct PhaseDiagramSpec {
  int n = 200;
  int m = 100;
  std::vector<double> p_list{0.2, 0.5, 0.8};
  std::vector<double> rho_grid;
  int trials_per_point = 100;
  AmplitudeModel amplitude_model = AmplitudeModel::kStandardNormal;
  RngSeed seed{1};

  void validate() const;
};

// Recovery rate of lp minimization (IRLS for p < 1, LP for p = 1) over
// random supports and Gaussian matrices.
ExperimentReport run_phase_transition(const PhaseDiagramSpec& spec);

struct StrongVsWeakSpec {
  int n = 50;
  int m = 48;
  std::vector<double> p_list{0.5, 1.0};
  std::vector<double> rho_grid;
  int matrices = 100;
  int weak_vectors = 150;
  int strong_vectors = 200;
  RngSeed seed{1};

  void validate() const;
};

// Per matrix and sparsity: weak mode fixes T = {0..k-1} with nonnegative
// mixture amplitudes, strong mode draws the support and signed mixture
// amplitudes per vector. A matrix succeeds at a point when every vector is
// recovered. Reports the fraction of successful matrices.
ExperimentReport run_strong_vs_weak(const StrongVsWeakSpec& spec);

struct WeakProbeSpec {
  int n = 600;
  int codim = 6;
  double p = 0.5;
  std::vector<double> rho_list{0.5, 0.8};
  int trials = 50;
  SearchBudget budget;
  RngSeed seed{1};

  void validate() const;
};

// Fraction of Gaussian null-space bases (n x codim) for which the weak
// condition on T = {0..k-1} with nonnegative signs is falsified.
ExperimentReport run_weak_threshold_probe(const WeakProbeSpec& spec);

struct ConcentrationSpec {
  int n = 20000;
  double p = 0.5;
  double rho = 2.0 / 3.0;  // for the split-sum brackets
  int trials = 100;
  double delta = 0.05;            // band on |S_rho - E S_rho| / S_1
  double ratio_band = 0.02;       // band on S_{rho*} / S_1 around 1/2
  double epsilon_fraction = 0.03; // epsilon = epsilon_fraction * E|X|^p
  RngSeed seed{1};

  void validate() const;
};

// Samples X ~ N(0, I_n) and reports, per trial: the top-sum ratio at the
// limiting strong threshold, the deviation of the top ceil(rho n) sum from
// its limiting mean, and the two split sums for a nonnegative pattern on
// T = {0..ceil(rho n)-1}.
ExperimentReport run_concentration_check(const ConcentrationSpec& spec);

// JSON spec parsing. Unknown keys are rejected; missing keys keep defaults.
// Errors are ParseError naming the field.
PhaseDiagramSpec phase_spec_from_json(const Json& j);
StrongVsWeakSpec strong_vs_weak_spec_from_json(const Json& j);
WeakProbeSpec weak_probe_spec_from_json(const Json& j);
ConcentrationSpec concentration_spec_from_json(const Json& j);
Json to_json(const PhaseDiagramSpec& s);
Json to_json(const StrongVsWeakSpec& s);
Json to_json(const WeakProbeSpec& s);
Json to_json(const ConcentrationSpec& s);

}  // namespace lprec

#endif  // LPREC_EXPERIMENTS_HPP

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

#include "lprec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "lprec/errors.hpp"
#include "lprec/gaussian.hpp"
#include "lprec/io.hpp"
#include "lprec/limit.hpp"
#include "lprec/parallel.hpp"
#include "lprec/solvers.hpp"

namespace lprec {

std::string_view to_string(AmplitudeModel model) {
  return model == AmplitudeModel::kMixture ? "mixture" : "standard_normal";
}

int support_size(double rho, int n) {
  return std::max(1, static_cast<int>(std::lround(rho * n)));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void validate_fractions(const std::vector<double>& grid, const char* name,
                        bool closed_right) {
  require(!grid.empty(), std::string(name) + " must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    require(r > 0.0 && (closed_right ? r <= 1.0 : r < 1.0),
            std::string(name) + " entries must lie in (0, 1)");
    if (i > 0) require(r > grid[i - 1], std::string(name) + " must be ascending");
  }
}

void validate_exponents(const std::vector<double>& ps, bool allow_zero) {
  require(!ps.empty(), "p_list must not be empty");
  for (double p : ps)
    require((allow_zero ? p >= 0.0 : p > 0.0) && p <= 1.0,
            "p_list entries must lie in (0, 1]");
}

double signed_amplitude(AmplitudeModel model, NormalStream& rng) {
  if (model == AmplitudeModel::kStandardNormal) return rng.normal();
  const double u = rng.uniform();
  const double g = rng.normal();
  if (u < 0.5) return g;
  return u < 0.75 ? 1000.0 + g : -1000.0 + g;
}

double nonnegative_amplitude(NormalStream& rng) {
  const double u = rng.uniform();
  const double g = rng.normal();
  return u < 0.5 ? std::abs(g) : 1000.0 + g;
}

// Solves with the program matching p and reports the 1e-4 criterion.
TrialRecord solve_trial(const Matrix& A, const Vector& x, double p,
                        std::uint64_t seed) {
  TrialRecord rec;
  rec.seed = seed;
  try {
    RecoveryInstance inst;
    inst.A = A;
    inst.y = A * x;
    inst.p = p;
    inst.x_true = x;
    const SolverResult r = p == 1.0 ? solve_l1(inst) : solve_lp_irls(inst);
    rec.recovered = r.recovered.value_or(false);
    rec.objective = r.objective;
  } catch (const Error& e) {
    rec.recovered = false;
    rec.error = e.what();
  }
  return rec;
}

void tally(GridPoint& pt) {
  pt.trials = static_cast<int>(pt.records.size());
  pt.successes = static_cast<int>(std::count_if(
      pt.records.begin(), pt.records.end(), [](const auto& r) { return r.recovered; }));
  pt.success_rate =
      pt.trials > 0 ? static_cast<double>(pt.successes) / pt.trials : 0.0;
}

Json point_to_json(const GridPoint& pt) {
  Json records = Json::array();
  for (const auto& r : pt.records) {
    Json rec{{"seed", r.seed}, {"recovered", r.recovered}, {"objective", r.objective}};
    if (!r.error.empty()) rec["error"] = r.error;
    records.push_back(std::move(rec));
  }
  return Json{{"mode", pt.mode},       {"p", pt.p},
              {"rho", pt.rho},         {"support_size", pt.support_size},
              {"trials", pt.trials},   {"successes", pt.successes},
              {"success_rate", pt.success_rate}, {"records", std::move(records)}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

Json report_to_json(const ExperimentReport& report, bool include_timing) {
  Json j;
  j["experiment"] = report.experiment;
  j["spec"] = report.spec;
  j["summary"] = report.summary;
  if (!report.points.empty()) {
    Json pts = Json::array();
    for (const auto& pt : report.points) pts.push_back(point_to_json(pt));
    j["points"] = std::move(pts);
  }
  if (!report.table_header.empty()) {
    j["table"] = Json{{"header", report.table_header}, {"rows", report.table_rows}};
  }
  if (!report.notes.empty()) j["notes"] = report.notes;
  if (include_timing) j["wall_time_s"] = report.wall_time_s;
  return j;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  if (!report.points.empty()) {
    out << "mode,p,rho,support_size,success_rate,trials\n";
    for (const auto& pt : report.points)
      out << pt.mode << ',' << fmt(pt.p) << ',' << fmt(pt.rho) << ','
          << pt.support_size << ',' << fmt(pt.success_rate) << ',' << pt.trials
          << '\n';
    return out.str();
  }
  for (std::size_t i = 0; i < report.table_header.size(); ++i)
    out << (i ? "," : "") << csv_field(report.table_header[i]);
  out << '\n';
  for (const auto& row : report.table_rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- example 1

Matrix example1_null_vector(int k) {
  require(k >= 1, "example1: k must be >= 1");
  Matrix b(6 * k, 1);
  b.topRows(k).setConstant(1.0);
  b.middleRows(k, k).setConstant(-1.0);
  b.bottomRows(4 * k).setConstant(1.0 / 64.0);
  return b;
}

ExperimentReport run_example1(int k, double p) {
  require(k >= 1, "example1: k must be >= 1");
  require(p > 0.0 && p < 1.0, "example1: p must lie in (0, 1)");
  const Matrix B = example1_null_vector(k);
  const int n = 6 * k;

  auto max_sparsity = [&](double q) {
    int best = 0;
    for (int s = 1; s <= n; ++s) {
      if (!certify(B, ConditionQuery{ConditionMode::kStrong, q, s, {}}).holds) break;
      best = s;
    }
    return best;
  };
  std::vector<int> T(2 * k);
  std::iota(T.begin(), T.end(), 0);
  const auto pattern = SupportPattern::nonnegative(T);
  const ConditionQuery weak1{ConditionMode::kWeakL1, 1.0, 0, pattern};
  const ConditionQuery weakp{ConditionMode::kWeakLp, p, 0, pattern};
  const auto v1 = certify(B, weak1);
  const auto vp = certify(B, weakp);

  Vector planted = Vector::Zero(n);
  planted.head(k).setConstant(9.0);
  planted.segment(k, k).setConstant(1.0);
  const Vector shifted = planted + B.col(0);
  const double planted_obj = lp_quasinorm(planted, p);
  const double shifted_obj = lp_quasinorm(shifted, p);

  const int l1_max = max_sparsity(1.0);
  const int lp_max = max_sparsity(p);
  const int l1_expected = (33 * k + 31) / 32 - 1;
  const bool half = p == 0.5;
  const int lp_expected = (5 * k + 3) / 4 - 1;
  const bool witness_ok = vp.witness && witness_violates(B, weakp, *vp.witness);
  const bool denser_wins = shifted_obj < planted_obj;

  ExperimentReport rep;
  rep.experiment = "example1";
  rep.spec = Json{{"k", k}, {"p", p}};
  Json& s = rep.summary;
  s["n"] = n;
  s["strong_l1_max_sparsity"] = l1_max;
  s["strong_l1_expected"] = l1_expected;
  s["strong_lp_max_sparsity"] = lp_max;
  s["strong_lp_expected"] = half ? Json(lp_expected) : Json(nullptr);
  s["weak_l1_holds"] = v1.holds;
  s["weak_lp_holds"] = vp.holds;
  if (vp.witness) {
    s["weak_lp_witness"] = Json{{"z", vp.witness->z(0)},
                                {"lhs", vp.witness->lhs},
                                {"rhs", vp.witness->rhs},
                                {"reverified", witness_ok}};
  }
  s["planted_objective"] = planted_obj;
  s["shifted_objective"] = shifted_obj;
  if (half) s["shifted_expected"] = (std::sqrt(10.0) + 0.5) * k;

  Json claims = Json::object();
  claims["strong_l1"] = l1_max == l1_expected;
  if (half) claims["strong_lp"] = lp_max == lp_expected;
  claims["weak_l1_holds"] = v1.holds;
  claims["weak_lp_falsified"] = !vp.holds && witness_ok;
  // The denser vector beating the planted one is claimed for k >= 2 only.
  claims["shifted_beats_planted"] = k >= 2 && denser_wins;
  bool all = true;
  for (const auto& [key, val] : claims.items()) all = all && val.get<bool>();
  s["matches_expected"] = claims;
  s["all_match"] = all;

  rep.table_header = {"claim", "expected", "measured", "matches"};
  auto row = [&](std::string name, std::string expected, std::string measured,
                 bool ok) {
    rep.table_rows.push_back({std::move(name), std::move(expected),
                              std::move(measured), ok ? "true" : "false"});
  };
  row("strong_l1_max_sparsity", std::to_string(l1_expected), std::to_string(l1_max),
      l1_max == l1_expected);
  if (half)
    row("strong_lp_max_sparsity", std::to_string(lp_expected),
        std::to_string(lp_max), lp_max == lp_expected);
  row("weak_l1", "holds", v1.holds ? "holds" : "falsified", v1.holds);
  row("weak_lp", "falsified", vp.holds ? "holds" : "falsified",
      !vp.holds && witness_ok);
  row("shifted_objective", half ? fmt((std::sqrt(10.0) + 0.5) * k) : "",
      fmt(shifted_obj), k >= 2 && denser_wins);
  return rep;
}

// ---------------------------------------------------------- phase transition

void PhaseDiagramSpec::validate() const {
  require(n >= 2 && m >= 1 && m < n, "phase: need 1 <= m < n");
  validate_exponents(p_list, false);
  validate_fractions(rho_grid, "rho_grid", false);
  require(trials_per_point >= 1, "phase: trials_per_point must be >= 1");
}

ExperimentReport run_phase_transition(const PhaseDiagramSpec& spec) {
  spec.validate();
  const std::size_t np = spec.p_list.size();
  const std::size_t nr = spec.rho_grid.size();
  const std::size_t nt = static_cast<std::size_t>(spec.trials_per_point);
  std::vector<GridPoint> points(np * nr);
  for (std::size_t pi = 0; pi < np; ++pi)
    for (std::size_t ri = 0; ri < nr; ++ri) {
      auto& pt = points[pi * nr + ri];
      pt.mode = "recovery";
      pt.p = spec.p_list[pi];
      pt.rho = spec.rho_grid[ri];
      pt.support_size = support_size(pt.rho, spec.n);
      pt.records.resize(nt);
    }
  parallel_for(points.size() * nt, [&](std::size_t job) {
    const std::size_t idx = job / nt;
    const std::size_t t = job % nt;
    auto& pt = points[idx];
    const RngSeed trial = derive_seed(spec.seed, idx / nr, idx % nr, t);
    const Matrix A = sample_gaussian_matrix(spec.m, spec.n, derive_seed(trial, 0));
    NormalStream rng(derive_seed(trial, 1));
    Vector x = Vector::Zero(spec.n);
    for (int i : sample_support(spec.n, pt.support_size, rng))
      x(i) = signed_amplitude(spec.amplitude_model, rng);
    pt.records[t] = solve_trial(A, x, pt.p, trial.seed);
  });
  ExperimentReport rep;
  rep.experiment = "phase";
  rep.spec = to_json(spec);
  int failures = 0;
  for (auto& pt : points) {
    tally(pt);
    for (const auto& r : pt.records) failures += !r.error.empty();
  }
  rep.points = std::move(points);
  rep.summary["solver_errors"] = failures;
  return rep;
}

// ------------------------------------------------------------ strong vs weak

void StrongVsWeakSpec::validate() const {
  require(n >= 2 && m >= 1 && m < n, "strong-vs-weak: need 1 <= m < n");
  validate_exponents(p_list, false);
  validate_fractions(rho_grid, "rho_grid", true);
  require(matrices >= 1 && weak_vectors >= 1 && strong_vectors >= 1,
          "strong-vs-weak: matrices and vector counts must be >= 1");
}

ExperimentReport run_strong_vs_weak(const StrongVsWeakSpec& spec) {
  spec.validate();
  const std::size_t np = spec.p_list.size();
  const std::size_t nr = spec.rho_grid.size();
  const std::size_t nm = static_cast<std::size_t>(spec.matrices);
  std::vector<Matrix> matrices(nm);
  parallel_for(nm, [&](std::size_t j) {
    matrices[j] = sample_gaussian_matrix(spec.m, spec.n, derive_seed(spec.seed, 0, j));
  });
  std::vector<GridPoint> points(2 * np * nr);
  for (std::size_t mode = 0; mode < 2; ++mode)
    for (std::size_t pi = 0; pi < np; ++pi)
      for (std::size_t ri = 0; ri < nr; ++ri) {
        auto& pt = points[(mode * np + pi) * nr + ri];
        pt.mode = mode == 0 ? "strong" : "weak";
        pt.p = spec.p_list[pi];
        pt.rho = spec.rho_grid[ri];
        pt.support_size = support_size(pt.rho, spec.n);
        pt.records.resize(nm);
      }
  parallel_for(points.size() * nm, [&](std::size_t job) {
    const std::size_t idx = job / nm;
    const std::size_t j = job % nm;
    auto& pt = points[idx];
    const bool weak = pt.mode == "weak";
    const std::size_t ri = idx % nr;
    // Vectors do not depend on p, so every exponent sees the same draws.
    const RngSeed key = derive_seed(spec.seed, weak ? 2 : 1, ri, j);
    NormalStream rng(key);
    const int count = weak ? spec.weak_vectors : spec.strong_vectors;
    TrialRecord rec;
    rec.seed = key.seed;
    rec.recovered = true;
    for (int v = 0; v < count; ++v) {
      Vector x = Vector::Zero(spec.n);
      if (weak) {
        for (int i = 0; i < pt.support_size; ++i) x(i) = nonnegative_amplitude(rng);
      } else {
        for (int i : sample_support(spec.n, pt.support_size, rng))
          x(i) = signed_amplitude(AmplitudeModel::kMixture, rng);
      }
      const TrialRecord r = solve_trial(matrices[j], x, pt.p, key.seed);
      if (!r.recovered) {
        rec.recovered = false;
        rec.error = r.error;
        break;
      }
      rec.objective += 1.0;  // vectors recovered so far
    }
    pt.records[j] = rec;
  });
  for (auto& pt : points) tally(pt);
  ExperimentReport rep;
  rep.experiment = "strong-vs-weak";
  rep.spec = to_json(spec);
  rep.points = std::move(points);
  rep.notes.push_back(
      "Each record is one matrix; objective counts the vectors recovered before "
      "the first failure.");
  return rep;
}

// ---------------------------------------------------------- weak probe

void WeakProbeSpec::validate() const {
  require(n >= 2 && codim >= 1 && codim < n && codim <= 12,
          "weak-probe: need 1 <= codim <= 12 and codim < n");
  require(p >= 0.0 && p <= 1.0, "weak-probe: p must lie in [0, 1]");
  validate_fractions(rho_list, "rho_list", true);
  require(trials >= 1, "weak-probe: trials must be >= 1");
  budget.validate();
}

ExperimentReport run_weak_threshold_probe(const WeakProbeSpec& spec) {
  spec.validate();
  const ConditionMode mode = spec.p == 1.0   ? ConditionMode::kWeakL1
                             : spec.p == 0.0 ? ConditionMode::kWeakL0
                                             : ConditionMode::kWeakLp;
  const std::size_t nr = spec.rho_list.size();
  const std::size_t nt = static_cast<std::size_t>(spec.trials);
  std::vector<GridPoint> points(nr);
  for (std::size_t ri = 0; ri < nr; ++ri) {
    points[ri].mode = std::string(to_string(mode));
    points[ri].p = spec.p;
    points[ri].rho = spec.rho_list[ri];
    points[ri].support_size = support_size(spec.rho_list[ri], spec.n);
    points[ri].records.resize(nt);
  }
  parallel_for(nr * nt, [&](std::size_t job) {
    const std::size_t ri = job / nt;
    const std::size_t t = job % nt;
    auto& pt = points[ri];
    const RngSeed trial = derive_seed(spec.seed, ri, t);
    const Matrix B = sample_gaussian_matrix(spec.n, spec.codim, derive_seed(trial, 0));
    std::vector<int> T(pt.support_size);
    std::iota(T.begin(), T.end(), 0);
    SearchBudget budget = spec.budget;
    budget.seed = derive_seed(trial, 1);
    const auto v =
        certify(B, ConditionQuery{mode, spec.p, 0, SupportPattern::nonnegative(T)}, budget);
    TrialRecord rec;
    rec.seed = trial.seed;
    rec.recovered = v.holds;
    rec.objective = v.best_margin;
    pt.records[t] = rec;
  });
  ExperimentReport rep;
  rep.experiment = "weak-probe";
  rep.spec = to_json(spec);
  Json freq = Json::array();
  for (auto& pt : points) {
    tally(pt);
    freq.push_back(Json{{"rho", pt.rho}, {"falsification_frequency", 1.0 - pt.success_rate}});
  }
  rep.points = std::move(points);
  rep.summary["falsification"] = std::move(freq);
  rep.notes.push_back(
      "success_rate is the fraction of matrices whose weak condition was not "
      "falsified; record objective is the smallest margin rhs - lhs found.");
  return rep;
}

// ---------------------------------------------------------- concentration

void ConcentrationSpec::validate() const {
  require(n >= 1000, "concentration: n must be >= 1000");
  require(p > 0.0 && p < 1.0, "concentration: p must lie in (0, 1)");
  require(rho > 0.0 && rho <= 1.0, "concentration: rho must lie in (0, 1]");
  require(trials >= 1, "concentration: trials must be >= 1");
  require(delta > 0.0 && ratio_band > 0.0 && epsilon_fraction > 0.0,
          "concentration: bands must be positive");
}

namespace {

// z with P(|X| <= z) = q.
double half_normal_quantile(double q) {
  double lo = 0.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (half_normal_cdf(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int ceil_count(double rho, int n) {
  return std::min(n, static_cast<int>(std::ceil(rho * n - 1e-9)));
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (pos - i) * (v[i + 1] - v[i]);
}

}  // namespace

ExperimentReport run_concentration_check(const ConcentrationSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const double p = spec.p;
  const double mu = abs_moment_closed_form(p);
  const double eps = spec.epsilon_fraction * mu;
  const double rho_star = strong_limit_threshold(p).rho_star;
  const int k_star = ceil_count(rho_star, n);
  const int k = ceil_count(spec.rho, n);
  // Limiting mean of the top ceil(rho n) sum.
  const double top_mean =
      spec.rho >= 1.0 ? n * mu
                      : n * upper_partial_moment(half_normal_quantile(1.0 - spec.rho), p);

  struct Row {
    double ratio, deviation, split_neg, split_comp, top_equals_total;
    bool ratio_ok, deviation_ok, neg_ok, comp_ok;
  };
  std::vector<Row> rows(spec.trials);
  parallel_for(rows.size(), [&](std::size_t t) {
    NormalStream rng(derive_seed(spec.seed, t));
    std::vector<double> x(n), mag(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.normal();
      mag[i] = std::pow(std::abs(x[i]), p);
    }
    std::vector<double> sorted = mag;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    // Summed in sorted order so the top sum at k = n is the total bit for bit.
    const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    const double top_star = std::accumulate(sorted.begin(), sorted.begin() + k_star, 0.0);
    const double top = std::accumulate(sorted.begin(), sorted.begin() + k, 0.0);
    double neg = 0.0;
    for (int i = 0; i < k; ++i)
      if (x[i] < 0.0) neg += mag[i];
    const double comp = std::accumulate(mag.begin() + k, mag.end(), 0.0);
    Row r;
    r.ratio = top_star / total;
    r.deviation = std::abs(top - top_mean) / total;
    r.split_neg = neg / k;
    r.split_comp = n > k ? comp / (n - k) : 0.0;
    r.top_equals_total = top == total ? 1.0 : 0.0;
    r.ratio_ok = std::abs(r.ratio - 0.5) <= spec.ratio_band;
    r.deviation_ok = r.deviation <= spec.delta;
    r.neg_ok = 0.5 * k * (mu - eps) < neg && neg < 0.5 * k * (mu + eps);
    r.comp_ok = n == k || ((n - k) * (mu - eps) < comp && comp < (n - k) * (mu + eps));
    rows[t] = r;
  });

  ExperimentReport rep;
  rep.experiment = "concentration";
  rep.spec = to_json(spec);
  auto frac = [&](auto pick) {
    return static_cast<double>(std::count_if(rows.begin(), rows.end(), pick)) /
           rows.size();
  };
  auto quantiles = [&](auto get) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(get(r));
    return Json{{"q05", quantile(v, 0.05)}, {"q50", quantile(v, 0.5)},
                {"q95", quantile(v, 0.95)}};
  };
  Json& s = rep.summary;
  s["mu"] = mu;
  s["epsilon"] = eps;
  s["rho_star"] = rho_star;
  s["top_count_at_rho_star"] = k_star;
  s["top_count_at_rho"] = k;
  s["top_sum_limit_mean"] = top_mean;
  s["ratio_in_band"] = frac([](const Row& r) { return r.ratio_ok; });
  s["deviation_in_band"] = frac([](const Row& r) { return r.deviation_ok; });
  s["split_negative_in_band"] = frac([](const Row& r) { return r.neg_ok; });
  s["split_complement_in_band"] = frac([](const Row& r) { return r.comp_ok; });
  s["split_both_in_band"] = frac([](const Row& r) { return r.neg_ok && r.comp_ok; });
  s["ratio_quantiles"] = quantiles([](const Row& r) { return r.ratio; });
  s["deviation_quantiles"] = quantiles([](const Row& r) { return r.deviation; });
  s["split_negative_quantiles"] = quantiles([](const Row& r) { return r.split_neg; });
  s["split_complement_quantiles"] = quantiles([](const Row& r) { return r.split_comp; });
  if (k == n) s["top_equals_total"] = frac([](const Row& r) { return r.top_equals_total == 1.0; });

  rep.table_header = {"trial", "top_ratio", "deviation", "split_negative_mean",
                      "split_complement_mean"};
  for (std::size_t t = 0; t < rows.size(); ++t)
    rep.table_rows.push_back({std::to_string(t), fmt(rows[t].ratio),
                              fmt(rows[t].deviation), fmt(rows[t].split_neg),
                              fmt(rows[t].split_comp)});
  return rep;
}

// ---------------------------------------------------------- JSON specs

namespace {

class Fields {
 public:
  Fields(const Json& j, std::string what) : j_(j), what_(std::move(what)) {
    if (!j.is_object()) throw ParseError(what_ + ": expected a JSON object");
  }

  template <class T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      if constexpr (std::is_same_v<T, RngSeed>) {
        out.seed = it->template get<std::uint64_t>();
      } else if constexpr (std::is_same_v<T, int>) {
        if (!it->is_number_integer()) throw ParseError("");
        out = it->template get<int>();
      } else if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ParseError("");
        out = it->template get<double>();
      } else {
        out = it->template get<T>();
      }
    } catch (const std::exception&) {
      throw ParseError(what_ + ": field '" + key + "' has the wrong type");
    }
  }

  void finish() const {
    for (const auto& [key, val] : j_.items())
      if (!seen_.count(key))
        throw ParseError(what_ + ": unknown field '" + key + "'");
  }

 private:
  const Json& j_;
  std::string what_;
  std::set<std::string> seen_;
};

template <class S>
S checked(S s, const std::string& what) {
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ParseError(what + ": " + e.what());
  }
  return s;
}

}  // namespace

PhaseDiagramSpec phase_spec_from_json(const Json& j) {
  PhaseDiagramSpec s;
  Fields f(j, "phase spec");
  f.read("n", s.n);
  f.read("m", s.m);
  f.read("p_list", s.p_list);
  f.read("rho_grid", s.rho_grid);
  f.read("trials_per_point", s.trials_per_point);
  std::string model(to_string(s.amplitude_model));
  f.read("amplitude_model", model);
  f.read("seed", s.seed);
  f.finish();
  if (model == "mixture")
    s.amplitude_model = AmplitudeModel::kMixture;
  else if (model == "standard_normal")
    s.amplitude_model = AmplitudeModel::kStandardNormal;
  else
    throw ParseError("phase spec: field 'amplitude_model' must be standard_normal or mixture");
  return checked(s, "phase spec");
}

StrongVsWeakSpec strong_vs_weak_spec_from_json(const Json& j) {
  StrongVsWeakSpec s;
  Fields f(j, "strong-vs-weak spec");
  f.read("n", s.n);
  f.read("m", s.m);
  f.read("p_list", s.p_list);
  f.read("rho_grid", s.rho_grid);
  f.read("matrices", s.matrices);
  f.read("weak_vectors", s.weak_vectors);
  f.read("strong_vectors", s.strong_vectors);
  f.read("seed", s.seed);
  f.finish();
  return checked(s, "strong-vs-weak spec");
}

WeakProbeSpec weak_probe_spec_from_json(const Json& j) {
  WeakProbeSpec s;
  Fields f(j, "weak-probe spec");
  f.read("n", s.n);
  f.read("codim", s.codim);
  f.read("p", s.p);
  f.read("rho_list", s.rho_list);
  f.read("trials", s.trials);
  f.read("sphere_samples", s.budget.sphere_samples);
  f.read("refine_steps", s.budget.refine_steps);
  f.read("step_shrink", s.budget.step_shrink);
  f.read("seed", s.seed);
  f.finish();
  return checked(s, "weak-probe spec");
}

ConcentrationSpec concentration_spec_from_json(const Json& j) {
  ConcentrationSpec s;
  Fields f(j, "concentration spec");
  f.read("n", s.n);
  f.read("p", s.p);
  f.read("rho", s.rho);
  f.read("trials", s.trials);
  f.read("delta", s.delta);
  f.read("ratio_band", s.ratio_band);
  f.read("epsilon_fraction", s.epsilon_fraction);
  f.read("seed", s.seed);
  f.finish();
  return checked(s, "concentration spec");
}

Json to_json(const PhaseDiagramSpec& s) {
  return Json{{"n", s.n},
              {"m", s.m},
              {"p_list", s.p_list},
              {"rho_grid", s.rho_grid},
              {"trials_per_point", s.trials_per_point},
              {"amplitude_model", std::string(to_string(s.amplitude_model))},
              {"seed", s.seed.seed}};
}

Json to_json(const StrongVsWeakSpec& s) {
  return Json{{"n", s.n},
              {"m", s.m},
              {"p_list", s.p_list},
              {"rho_grid", s.rho_grid},
              {"matrices", s.matrices},
              {"weak_vectors", s.weak_vectors},
              {"strong_vectors", s.strong_vectors},
              {"seed", s.seed.seed}};
}

Json to_json(const WeakProbeSpec& s) {
  return Json{{"n", s.n},
              {"codim", s.codim},
              {"p", s.p},
              {"rho_list", s.rho_list},
              {"trials", s.trials},
              {"sphere_samples", s.budget.sphere_samples},
              {"refine_steps", s.budget.refine_steps},
              {"step_shrink", s.budget.step_shrink},
              {"seed", s.seed.seed}};
}

Json to_json(const ConcentrationSpec& s) {
  return Json{{"n", s.n},
              {"p", s.p},
              {"rho", s.rho},
              {"trials", s.trials},
              {"delta", s.delta},
              {"ratio_band", s.ratio_band},
              {"epsilon_fraction", s.epsilon_fraction},
              {"seed", s.seed.seed}};
}

}  // namespace lprec

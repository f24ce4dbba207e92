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

#include "lprec/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "lprec/errors.hpp"
#include "lprec/parallel.hpp"
#include "lprec/solvers.hpp"

namespace lprec {

std::string_view to_string(ConditionMode mode) {
  switch (mode) {
    case ConditionMode::kStrong: return "strong";
    case ConditionMode::kWeakL1: return "weak_l1";
    case ConditionMode::kWeakLp: return "weak_lp";
    case ConditionMode::kWeakL0: return "weak_l0";
    case ConditionMode::kSectional: return "sectional";
  }
  return "unknown";
}

ConditionMode parse_condition_mode(std::string_view name) {
  for (auto mode : {ConditionMode::kStrong, ConditionMode::kWeakL1,
                    ConditionMode::kWeakLp, ConditionMode::kWeakL0,
                    ConditionMode::kSectional})
    if (to_string(mode) == name) return mode;
  throw ParseError("unknown condition mode '" + std::string(name) +
                   "' (expected strong, weak_l1, weak_lp, weak_l0 or sectional)");
}

SupportPattern SupportPattern::nonnegative(std::vector<int> support) {
  SupportPattern pat;
  pat.signs.assign(support.size(), 1);
  pat.support = std::move(support);
  return pat;
}

void SupportPattern::validate(int n) const {
  if (signs.size() != support.size()) {
    std::ostringstream msg;
    msg << "support pattern: " << support.size() << " indices but "
        << signs.size() << " signs";
    throw DomainError(msg.str());
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= n) {
      std::ostringstream msg;
      msg << "support pattern: index " << support[i] << " outside [0, " << n << ")";
      throw DomainError(msg.str());
    }
    if (i > 0 && support[i] <= support[i - 1])
      throw DomainError("support pattern: indices must be ascending and distinct");
    if (signs[i] != 1 && signs[i] != -1) {
      std::ostringstream msg;
      msg << "support pattern: sign " << signs[i] << " is not +1 or -1";
      throw DomainError(msg.str());
    }
  }
}

bool strictly_less(double lhs, double rhs) {
  return rhs - lhs > 1e-12 * std::max(1.0, lhs + rhs);
}

namespace {

// B z together with the per-row zero threshold.
struct Projection {
  Vector v;
  Vector zero_tol;

  Projection(const Matrix& B, const Vector& z) : v(B * z) {
    if (z.size() != B.cols()) {
      std::ostringstream msg;
      msg << "condition check: z has " << z.size() << " entries, B has "
          << B.cols() << " columns";
      throw DomainError(msg.str());
    }
    zero_tol = 1e-12 * z.norm() * B.rowwise().norm();
  }

  bool is_zero(Eigen::Index i) const { return std::abs(v(i)) <= zero_tol(i); }

  double term(Eigen::Index i, double p) const {
    if (p == 0.0) return is_zero(i) ? 0.0 : 1.0;
    if (p == 1.0) return std::abs(v(i));
    return is_zero(i) ? 0.0 : std::pow(std::abs(v(i)), p);
  }
};

void require_p(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": p must lie in [0, 1], got " << p;
    throw DomainError(msg.str());
  }
}

std::vector<char> membership(int n, const std::vector<int>& support) {
  std::vector<char> in(n, 0);
  for (int i : support) {
    if (i < 0 || i >= n) {
      std::ostringstream msg;
      msg << "support index " << i << " outside [0, " << n << ")";
      throw DomainError(msg.str());
    }
    in[i] = 1;
  }
  return in;
}

SignPartition partition(const Projection& proj, const SupportPattern& pat) {
  SignPartition out;
  for (std::size_t k = 0; k < pat.support.size(); ++k) {
    const int i = pat.support[k];
    if (!proj.is_zero(i) && proj.v(i) * pat.signs[k] < 0.0)
      out.negative.push_back(i);
    else
      out.positive.push_back(i);
  }
  return out;
}

ConditionSides strong_sides(const Projection& proj, double p, int rho_n,
                            std::vector<int>* top) {
  const int n = static_cast<int>(proj.v.size());
  std::vector<double> terms(n);
  for (int i = 0; i < n; ++i) terms[i] = proj.term(i, p);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + rho_n, order.end(),
                    [&](int a, int b) {
                      return terms[a] > terms[b] || (terms[a] == terms[b] && a < b);
                    });
  ConditionSides s;
  for (int k = 0; k < n; ++k) (k < rho_n ? s.lhs : s.rhs) += terms[order[k]];
  if (top) {
    top->assign(order.begin(), order.begin() + rho_n);
    std::sort(top->begin(), top->end());
  }
  return s;
}

WeakCheck weak_check(const Projection& proj, double p, const SupportPattern& pat) {
  const int n = static_cast<int>(proj.v.size());
  const auto in = membership(n, pat.support);
  const SignPartition part = partition(proj, pat);
  WeakCheck c;
  for (int i : part.negative) c.lhs += proj.term(i, p);
  for (int i = 0; i < n; ++i)
    if (!in[i]) c.rhs += proj.term(i, p);
  if (p == 1.0) {
    for (int i : part.positive) c.rhs += proj.term(i, p);
    c.strict = true;
  } else if (p == 0.0) {
    c.strict = true;
  } else {
    c.strict = std::all_of(part.positive.begin(), part.positive.end(),
                           [&](int i) { return proj.is_zero(i); });
  }
  if (c.strict)
    c.holds = strictly_less(c.lhs, c.rhs);
  else
    c.holds = c.lhs <= c.rhs + 1e-12 * std::max(1.0, c.lhs + c.rhs);
  return c;
}

ConditionSides sectional_sides(const Projection& proj, double p,
                               const std::vector<int>& support) {
  const int n = static_cast<int>(proj.v.size());
  const auto in = membership(n, support);
  ConditionSides s;
  for (int i = 0; i < n; ++i) (in[i] ? s.lhs : s.rhs) += proj.term(i, p);
  return s;
}

struct Evaluation {
  WeakCheck check;
  std::vector<int> support;
  double margin() const { return check.rhs - check.lhs; }
};

Evaluation evaluate(const Matrix& B, const Vector& z, const ConditionQuery& q) {
  const Projection proj(B, z);
  Evaluation e;
  switch (q.mode) {
    case ConditionMode::kStrong: {
      const auto s = strong_sides(proj, q.p, q.rho_n, &e.support);
      e.check = {strictly_less(s.lhs, s.rhs), true, s.lhs, s.rhs};
      break;
    }
    case ConditionMode::kSectional: {
      const auto s = sectional_sides(proj, q.p, q.pattern.support);
      e.check = {strictly_less(s.lhs, s.rhs), true, s.lhs, s.rhs};
      e.support = q.pattern.support;
      break;
    }
    default:
      e.check = weak_check(proj, q.p, q.pattern);
      e.support = q.pattern.support;
      break;
  }
  return e;
}

Vector unit(Vector z) {
  const double nz = z.norm();
  return nz > 0.0 ? Vector(z / nz) : z;
}

}  // namespace

SignPartition partition_support(const Matrix& B, const Vector& z,
                                const SupportPattern& pattern) {
  pattern.validate(static_cast<int>(B.rows()));
  return partition(Projection(B, z), pattern);
}

ConditionSides strong_condition_holds_for(const Matrix& B, const Vector& z,
                                          double p, int rho_n) {
  require_p(p, "strong condition");
  if (rho_n < 0 || rho_n > B.rows()) {
    std::ostringstream msg;
    msg << "strong condition: rho_n must lie in [0, " << B.rows() << "], got "
        << rho_n;
    throw DomainError(msg.str());
  }
  return strong_sides(Projection(B, z), p, rho_n, nullptr);
}

WeakCheck weak_condition_holds_for(const Matrix& B, const Vector& z, double p,
                                   const SupportPattern& pattern) {
  require_p(p, "weak condition");
  pattern.validate(static_cast<int>(B.rows()));
  return weak_check(Projection(B, z), p, pattern);
}

ConditionSides sectional_condition_holds_for(const Matrix& B, const Vector& z,
                                             double p,
                                             const std::vector<int>& support) {
  require_p(p, "sectional condition");
  return sectional_sides(Projection(B, z), p, support);
}

void SearchBudget::validate() const {
  if (sphere_samples < 1 || refine_steps < 0 ||
      !(step_shrink > 0.0 && step_shrink < 1.0)) {
    std::ostringstream msg;
    msg << "search budget: need sphere_samples >= 1, refine_steps >= 0 and "
           "step_shrink in (0, 1); got "
        << sphere_samples << ", " << refine_steps << ", " << step_shrink;
    throw DomainError(msg.str());
  }
}

void ConditionQuery::validate(int n) const {
  require_p(p, "condition query");
  switch (mode) {
    case ConditionMode::kStrong:
      if (rho_n < 0 || rho_n > n) {
        std::ostringstream msg;
        msg << "strong condition: rho_n must lie in [0, " << n << "], got " << rho_n;
        throw DomainError(msg.str());
      }
      return;
    case ConditionMode::kWeakL1:
      if (p != 1.0) throw DomainError("weak_l1 requires p = 1");
      break;
    case ConditionMode::kWeakL0:
      if (p != 0.0) throw DomainError("weak_l0 requires p = 0");
      break;
    case ConditionMode::kWeakLp:
      if (!(p > 0.0 && p < 1.0)) throw DomainError("weak_lp requires 0 < p < 1");
      break;
    case ConditionMode::kSectional: {
      SupportPattern plain = SupportPattern::nonnegative(pattern.support);
      plain.validate(n);
      return;
    }
  }
  pattern.validate(n);
}

WeakCheck evaluate_condition(const Matrix& B, const Vector& z,
                             const ConditionQuery& query) {
  query.validate(static_cast<int>(B.rows()));
  return evaluate(B, z, query).check;
}

bool witness_violates(const Matrix& B, const ConditionQuery& query,
                      const Witness& w) {
  query.validate(static_cast<int>(B.rows()));
  const int n = static_cast<int>(B.rows());
  const Vector v = B * w.z;
  const auto in = membership(n, w.support);
  auto gather = [&](auto&& pick) {
    std::vector<double> vals;
    for (int i = 0; i < n; ++i)
      if (pick(i)) vals.push_back(v(i));
    return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()))
        .eval();
  };
  const Vector outside = gather([&](int i) { return !in[i]; });
  if (query.mode == ConditionMode::kStrong || query.mode == ConditionMode::kSectional) {
    if (query.mode == ConditionMode::kStrong &&
        static_cast<int>(w.support.size()) > query.rho_n)
      return false;
    const Vector inside = gather([&](int i) { return in[i] != 0; });
    return !strictly_less(lp_quasinorm(inside, query.p), lp_quasinorm(outside, query.p));
  }
  if (w.support != query.pattern.support) return false;
  const SignPartition part = partition_support(B, w.z, query.pattern);
  std::vector<char> neg(n, 0);
  for (int i : part.negative) neg[i] = 1;
  const Vector minus = gather([&](int i) { return neg[i] != 0; });
  const Vector plus = gather([&](int i) { return in[i] && !neg[i]; });
  const double lhs = lp_quasinorm(minus, query.p);
  double rhs = lp_quasinorm(outside, query.p);
  bool strict = true;
  if (query.mode == ConditionMode::kWeakL1) rhs += lp_quasinorm(plus, 1.0);
  if (query.mode == ConditionMode::kWeakLp) {
    const double scale = w.z.norm() * B.rowwise().norm().maxCoeff();
    strict = plus.size() == 0 || plus.cwiseAbs().maxCoeff() <= 1e-12 * scale;
  }
  if (strict) return !strictly_less(lhs, rhs);
  return lhs > rhs + 1e-12 * std::max(1.0, lhs + rhs);
}

ConditionVerdict certify(const Matrix& B, const ConditionQuery& query,
                         const SearchBudget& budget) {
  const int d = static_cast<int>(B.cols());
  if (d < 1 || B.rows() < 1) throw DomainError("certify: B must be non-empty");
  if (!B.allFinite()) throw DomainError("certify: B has non-finite entries");
  query.validate(static_cast<int>(B.rows()));
  budget.validate();

  ConditionVerdict verdict;
  verdict.mode = query.mode;
  verdict.best_margin = INFINITY;
  std::optional<Evaluation> worst;
  Vector worst_z;
  // Keeps the violating point with the smallest margin, or failing that the
  // smallest margin overall.
  auto consider = [&](const Vector& z, Evaluation e) {
    ++verdict.evaluations;
    const bool better =
        !worst || (!e.check.holds && worst->check.holds) ||
        (e.check.holds == worst->check.holds && e.margin() < worst->margin());
    if (better) {
      worst = std::move(e);
      worst_z = z;
    }
  };

  if (d == 1) {
    for (double s : {1.0, -1.0}) {
      const Vector z = Vector::Constant(1, s);
      consider(z, evaluate(B, z, query));
    }
    verdict.certificate_exact = true;
  } else {
    // Candidate directions: an angle sweep when d = 2, random points on the
    // sphere otherwise. Each candidate is generated from its own seed.
    const int samples = d == 2 ? std::max(4096, budget.sphere_samples)
                               : budget.sphere_samples;
    std::vector<Vector> zs(samples);
    std::vector<Evaluation> evals(samples);
    parallel_for(samples, [&](std::size_t i) {
      Vector z(d);
      if (d == 2) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / samples;
        z << std::cos(theta), std::sin(theta);
      } else {
        NormalStream rng(derive_seed(budget.seed, i));
        for (int j = 0; j < d; ++j) z(j) = rng.normal();
        z = unit(z);
      }
      evals[i] = evaluate(B, z, query);
      zs[i] = std::move(z);
    });
    std::vector<int> order(samples);
    for (int i = 0; i < samples; ++i) {
      order[i] = i;
      consider(zs[i], evals[i]);
    }

    // Pattern search from the best few candidates: coordinate moves of
    // shrinking size, projected back to the sphere.
    if (worst->check.holds && budget.refine_steps > 0) {
      const int starts = std::min(samples, 4);
      std::partial_sort(order.begin(), order.begin() + starts, order.end(),
                        [&](int a, int b) {
                          return evals[a].margin() < evals[b].margin() ||
                                 (evals[a].margin() == evals[b].margin() && a < b);
                        });
      for (int s = 0; s < starts && worst->check.holds; ++s) {
        Vector z = zs[order[s]];
        Evaluation cur = evals[order[s]];
        double step = 0.5;
        for (int it = 0; it < budget.refine_steps && cur.check.holds; ++it) {
          bool moved = false;
          for (int j = 0; j < d && cur.check.holds; ++j) {
            for (double dir : {step, -step}) {
              Vector cand = z;
              cand(j) += dir;
              cand = unit(cand);
              Evaluation e = evaluate(B, cand, query);
              consider(cand, e);
              if (!e.check.holds || e.margin() < cur.margin()) {
                z = std::move(cand);
                cur = std::move(e);
                moved = true;
                break;
              }
            }
          }
          if (!moved) step *= budget.step_shrink;
          if (step < 1e-12) break;
        }
      }
    }
  }

  verdict.holds = worst->check.holds;
  verdict.best_margin = worst->margin();
  if (!verdict.holds) {
    Witness w;
    w.z = worst_z;
    w.support = worst->support;
    w.lhs = worst->check.lhs;
    w.rhs = worst->check.rhs;
    verdict.witness = std::move(w);
  }
  return verdict;
}

}  // namespace lprec

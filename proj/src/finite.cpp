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

#include "lprec/finite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lprec/gaussian.hpp"
#include "lprec/parallel.hpp"

namespace lprec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kACap = 1e6;

void require_open_fraction(double v, const char* name, const char* where) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream msg;
    msg << where << ": " << name << " must lie in (0, 1), got " << v;
    throw DomainError(msg.str());
  }
}

void require_exponent(double p, const char* where) {
  if (!(p > 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": exponent p must lie in (0, 1], got " << p;
    throw DomainError(msg.str());
  }
}

double net_term(double alpha, double gamma) {
  return (1.0 - alpha) * std::log1p(2.0 / gamma);
}

// Moments of the tilted law of Y; which Y depends on the flag.
TiltedMoments moments(double t, double p, bool indicator,
                      const QuadratureConfig& q) {
  return indicator ? tilted_moments_indicator(t, p, q)
                   : tilted_moments_pos(t, p, q);
}

// Minimizes log E[e^{tY}] - a t over t > 0 by safeguarded Newton on the
// stationarity equation E_t[Y] = a. The cumulant function is convex, so
// the root is unique and bracketed by [0, hi] once E_hi[Y] > a.
ChernoffResult minimize_cgf(double a, double p, bool indicator,
                            const ExponentSearchConfig& cfg) {
  const auto& q = cfg.quad;
  double lo = 0.0;
  double hi = 1.0;
  TiltedMoments mh = moments(hi, p, indicator, q);
  while (mh.mean <= a) {
    lo = hi;
    hi *= 4.0;
    if (hi > cfg.t_max) {
      std::ostringstream msg;
      msg << "Chernoff minimization: tilt exceeds t_max=" << cfg.t_max
          << " for a=" << a << ", p=" << p;
      throw BudgetError(msg.str());
    }
    mh = moments(hi, p, indicator, q);
  }
  double t = 0.5 * (lo + hi);
  TiltedMoments m = moments(t, p, indicator, q);
  for (int iter = 0; iter < 200; ++iter) {
    const double r = m.mean - a;
    if (r > 0.0) hi = t; else lo = t;
    if (std::abs(r) <= 1e-12 * std::max(1.0, a) ||
        hi - lo <= cfg.t_tol * std::max(1e-300, t))
      break;
    double next = m.variance > 0.0 ? t - r / m.variance : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
    m = moments(t, p, indicator, q);
  }
  ChernoffResult out;
  out.t_opt = t;
  out.value = std::min(0.0, m.log_mgf - a * t);
  out.residual = m.mean - a;
  return out;
}

// Smallest a with net + scale * min_t(log E[e^{tY}] - a t) < 0. Along the
// curve t -> a(t) = E_t[Y] the Chernoff value is log M(t) - t a(t), which is
// strictly decreasing in t, so bisecting on t bisects on a monotonically.
// Returns +inf if no a below the cap qualifies.
double smallest_level(double net, double scale, double p, bool indicator,
                      const ExponentSearchConfig& cfg) {
  const auto& q = cfg.quad;
  const double target = -net / scale;
  auto value_at = [&](const TiltedMoments& m, double t) {
    return m.log_mgf - t * m.mean;
  };
  double lo = 0.0;
  double a_lo = moments(0.0, p, indicator, q).mean;
  double hi = 1.0;
  TiltedMoments mh = moments(hi, p, indicator, q);
  while (!(value_at(mh, hi) < target)) {
    lo = hi;
    a_lo = mh.mean;
    hi *= 2.0;
    if (hi > cfg.t_max || mh.mean > kACap) return kInf;
    mh = moments(hi, p, indicator, q);
  }
  double a_hi = mh.mean;
  while (a_hi - a_lo > cfg.a_tol) {
    const double mid = 0.5 * (lo + hi);
    const TiltedMoments mm = moments(mid, p, indicator, q);
    if (value_at(mm, mid) < target) {
      hi = mid;
      a_hi = mm.mean;
    } else {
      lo = mid;
      a_lo = mm.mean;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return a_hi > kACap ? kInf : a_hi;
}

// Shared body of the lambda_max and lambda-tilde-max searches.
LambdaMax level_search(double alpha, double p, double scale, bool indicator,
                       const ExponentSearchConfig& cfg) {
  const auto& grid = cfg.gamma_grid;
  std::vector<double> levels(grid.size(), kInf);
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        levels[i] = smallest_level(net_term(alpha, grid[i]), scale, p,
                                   indicator, cfg);
      },
      cfg.threads);
  LambdaMax best;
  best.value = kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = levels[i] / (1.0 - std::pow(grid[i], p));
    if (v < best.value) {
      best.value = v;
      best.gamma = grid[i];
      best.a = levels[i];
    }
  }
  if (!std::isfinite(best.value)) {
    std::ostringstream msg;
    msg << "level search: no net radius yields a level below " << kACap
        << " (alpha=" << alpha << ", p=" << p << ")";
    throw BudgetError(msg.str());
  }
  const ChernoffResult c = minimize_cgf(best.a, p, indicator, cfg);
  best.exponent = net_term(alpha, best.gamma) + scale * c.value;
  return best;
}

}  // namespace

ExponentSearchConfig ExponentSearchConfig::defaults() {
  ExponentSearchConfig cfg;
  const int n_gamma = 60;
  const double lo = std::log(1e-6);
  const double hi = std::log(0.9);
  for (int i = 0; i < n_gamma; ++i)
    cfg.gamma_grid.push_back(std::exp(lo + (hi - lo) * i / (n_gamma - 1)));
  for (int j = 1; j <= 20; ++j) cfg.epsilon_grid.push_back(j / 20.0);
  return cfg;
}

void ExponentSearchConfig::validate() const {
  quad.validate();
  if (gamma_grid.empty() || epsilon_grid.empty())
    throw DomainError("exponent search: gamma and epsilon grids must be non-empty");
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    if (!(gamma_grid[i] > 0.0 && gamma_grid[i] < 1.0))
      throw DomainError("exponent search: every gamma must lie in (0, 1)");
    if (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1]))
      throw DomainError("exponent search: gamma grid must be ascending");
  }
  for (double e : epsilon_grid)
    if (!(e > 0.0 && e <= 1.0))
      throw DomainError("exponent search: epsilon fractions must lie in (0, 1]");
  if (!(t_tol > 0.0) || !(a_tol > 0.0) || !(t_max > 1.0) ||
      rho_grid_resolution < 1)
    throw DomainError("exponent search: t_tol, a_tol must be positive, t_max > 1, "
                      "rho_grid_resolution >= 1");
}

double binary_entropy(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    std::ostringstream msg;
    msg << "binary_entropy: rho must lie in [0, 1], got " << rho;
    throw DomainError(msg.str());
  }
  if (rho == 0.0 || rho == 1.0) return 0.0;
  return -(rho * std::log2(rho) + (1.0 - rho) * std::log2(1.0 - rho));
}

ChernoffResult chernoff_upper_exponent(double a, double p,
                                       const ExponentSearchConfig& cfg) {
  require_exponent(p, "chernoff_upper_exponent");
  const double mu = abs_moment_closed_form(p);
  if (!(a > mu)) {
    std::ostringstream msg;
    msg << "chernoff_upper_exponent: a=" << a << " must exceed E|X|^p=" << mu;
    throw DomainError(msg.str());
  }
  return minimize_cgf(a, p, false, cfg);
}

ChernoffResult chernoff_indicator_exponent(double a_tilde, double p,
                                           const ExponentSearchConfig& cfg) {
  require_exponent(p, "chernoff_indicator_exponent");
  const double half_mu = 0.5 * abs_moment_closed_form(p);
  if (!(a_tilde > half_mu)) {
    std::ostringstream msg;
    msg << "chernoff_indicator_exponent: a_tilde=" << a_tilde
        << " must exceed E|X|^p/2=" << half_mu;
    throw DomainError(msg.str());
  }
  return minimize_cgf(a_tilde, p, true, cfg);
}

LambdaMax lambda_max_search(double alpha, double p,
                            const ExponentSearchConfig& cfg) {
  require_open_fraction(alpha, "alpha", "compute_lambda_max");
  require_exponent(p, "compute_lambda_max");
  cfg.validate();
  return level_search(alpha, p, 1.0, false, cfg);
}

double compute_lambda_max(double alpha, double p,
                          const ExponentSearchConfig& cfg) {
  return lambda_max_search(alpha, p, cfg).value;
}

LambdaMin lambda_min_search(double alpha, double p,
                            const ExponentSearchConfig& cfg) {
  require_open_fraction(alpha, "alpha", "compute_lambda_min");
  require_exponent(p, "compute_lambda_min");
  cfg.validate();
  const LambdaMax lmax = level_search(alpha, p, 1.0, false, cfg);
  const auto& gammas = cfg.gamma_grid;
  const auto& fracs = cfg.epsilon_grid;

  struct Cell {
    double value = -kInf;
    double exponent = kInf;
    bool bound_ok = false;
  };
  std::vector<Cell> cells(gammas.size() * fracs.size());
  parallel_for(
      gammas.size(),
      [&](std::size_t i) {
        const double g = gammas[i];
        const double net = net_term(alpha, g);
        for (std::size_t j = 0; j < fracs.size(); ++j) {
          const double eps = fracs[j] * alpha;
          const double power = p * (1.0 - alpha + eps);
          const double t = std::pow(g, -power);
          Cell& c = cells[i * fracs.size() + j];
          // The closed-form bound dominates the exact transform, so a pair
          // that passes it also passes the exact test; the union of the two
          // feasible sets is therefore the exact one.
          c.bound_ok = net + std::log(mgf_neg_upper_bound(t, p)) + 1.0 < 0.0;
          c.exponent = net + std::log(mgf_neg(t, p, cfg.quad)) + 1.0;
          if (c.bound_ok || c.exponent < 0.0)
            c.value = std::pow(g, power) - std::pow(g, p) * lmax.value;
        }
      },
      cfg.threads);

  LambdaMin best;
  best.value = -kInf;
  best.lambda_max = lmax;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    for (std::size_t j = 0; j < fracs.size(); ++j) {
      const Cell& c = cells[i * fracs.size() + j];
      if (c.value > best.value) {
        best.value = c.value;
        best.gamma = gammas[i];
        best.epsilon = fracs[j] * alpha;
        best.exponent = c.exponent;
        best.bound_feasible = c.bound_ok;
      }
    }
  }
  if (!(best.value > 0.0)) {
    std::ostringstream msg;
    msg << "compute_lambda_min: no feasible (gamma, epsilon) pair gives a "
           "positive lower level (alpha="
        << alpha << ", p=" << p << ")";
    throw InfeasibleError(msg.str());
  }
  return best;
}

double compute_lambda_min(double alpha, double p,
                          const ExponentSearchConfig& cfg) {
  return lambda_min_search(alpha, p, cfg).value;
}

LambdaMax lambda_tilde_max_search(double alpha, double p, double rho,
                                  const ExponentSearchConfig& cfg) {
  require_open_fraction(alpha, "alpha", "compute_lambda_tilde_max");
  require_exponent(p, "compute_lambda_tilde_max");
  if (!(rho > 0.0 && rho < alpha)) {
    std::ostringstream msg;
    msg << "compute_lambda_tilde_max: rho must lie in (0, alpha), got " << rho;
    throw DomainError(msg.str());
  }
  cfg.validate();
  return level_search(alpha, p, rho, true, cfg);
}

double compute_lambda_tilde_max(double alpha, double p, double rho,
                                const ExponentSearchConfig& cfg) {
  return lambda_tilde_max_search(alpha, p, rho, cfg).value;
}

double strong_exponent(double rho, double gamma, double alpha, double p,
                       double lambda_min, const ExponentSearchConfig& cfg) {
  const double c = 0.5 * lambda_min * (1.0 - std::pow(gamma, p));
  const double mu = abs_moment_closed_form(p);
  if (!(rho > 0.0) || !(c / rho > mu)) return kInf;
  const ChernoffResult inner = minimize_cgf(c / rho, p, false, cfg);
  return binary_entropy(rho) * std::numbers::ln2 + net_term(alpha, gamma) +
         rho * inner.value;
}

BoundResult strong_bound(double alpha, double p,
                         const ExponentSearchConfig& cfg) {
  require_open_fraction(alpha, "alpha", "strong_bound");
  require_exponent(p, "strong_bound");
  cfg.validate();
  const LambdaMin lmin = lambda_min_search(alpha, p, cfg);
  const double mu = abs_moment_closed_form(p);
  const auto& gammas = cfg.gamma_grid;

  std::vector<double> rho_of(gammas.size(), 0.0);
  std::vector<double> expo_of(gammas.size(), kInf);
  parallel_for(
      gammas.size(),
      [&](std::size_t i) {
        const double g = gammas[i];
        const double c = 0.5 * lmin.value * (1.0 - std::pow(g, p));
        // The exponent increases with rho on (0, min(c/mu, 1/2)) and tends to
        // -inf as rho -> 0, so bisection finds the largest admissible rho.
        double lo = 0.0;
        double hi = std::min(c / mu, 0.5);
        double expo_lo = kInf;
        while (hi - lo > cfg.a_tol) {
          const double mid = 0.5 * (lo + hi);
          double e;
          try {
            e = strong_exponent(mid, g, alpha, p, lmin.value, cfg);
          } catch (const BudgetError&) {
            e = kInf;
          }
          if (e < 0.0) {
            lo = mid;
            expo_lo = e;
          } else {
            hi = mid;
          }
        }
        rho_of[i] = lo;
        expo_of[i] = expo_lo;
      },
      cfg.threads);

  BoundResult out;
  out.kind = "strong";
  out.alpha = alpha;
  out.p = p;
  out.lambda_max = lmin.lambda_max.value;
  out.lambda_min = lmin.value;
  out.winning_epsilon = lmin.epsilon;
  out.gamma_grid = cfg.gamma_grid;
  out.epsilon_grid = cfg.epsilon_grid;
  out.a_tol = cfg.a_tol;
  out.t_tol = cfg.t_tol;
  double best_expo = kInf;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (rho_of[i] > out.rho_bound) {
      out.rho_bound = rho_of[i];
      out.winning_gamma = gammas[i];
      best_expo = expo_of[i];
    }
  }
  if (!(out.rho_bound > 0.0)) {
    std::ostringstream msg;
    msg << "strong_bound: no net radius admits a positive sparsity ratio "
           "(alpha="
        << alpha << ", p=" << p << ")";
    throw InfeasibleError(msg.str());
  }
  out.exponent_margin =
      std::max({best_expo, lmin.exponent, lmin.lambda_max.exponent});
  return out;
}

namespace {

struct WeakProbe {
  RhoProbe probe;
  double lambda_tilde = 0.0;
  double shifted_alpha = 0.0;
  double margin = kInf;  // largest exponent among the chain
  double gamma = 0.0;
  double epsilon = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

WeakProbe weak_probe(double rho, double alpha, double p,
                     const ExponentSearchConfig& cfg) {
  WeakProbe w;
  w.probe.rho = rho;
  const LambdaMax lt = level_search(alpha, p, rho, true, cfg);
  w.lambda_tilde = lt.value;
  w.probe.lhs = rho * lt.value;
  w.shifted_alpha = (alpha - rho) / (1.0 - rho);
  w.gamma = lt.gamma;
  double rhs = 0.0;
  double chain = lt.exponent;
  try {
    const LambdaMin lm = lambda_min_search(w.shifted_alpha, p, cfg);
    rhs = (1.0 - rho) * lm.value;
    w.epsilon = lm.epsilon;
    w.lambda_min = lm.value;
    w.lambda_max = lm.lambda_max.value;
    chain = std::max({chain, lm.exponent, lm.lambda_max.exponent});
  } catch (const InfeasibleError&) {
    rhs = 0.0;  // no certified lower level at the shifted ratio
  } catch (const BudgetError&) {
    rhs = 0.0;
  }
  w.probe.rhs = rhs;
  w.probe.holds = rhs > 0.0 && w.probe.lhs <= rhs;
  w.margin = chain;
  return w;
}

}  // namespace

BoundResult weak_bound(double alpha, double p, const ExponentSearchConfig& cfg) {
  require_open_fraction(alpha, "alpha", "weak_bound");
  require_exponent(p, "weak_bound");
  cfg.validate();

  std::vector<WeakProbe> probes;
  auto check_monotone = [&](const WeakProbe& w) {
    // Against every earlier probe: rho * lambda-tilde-max must not grow and
    // the shifted lambda_min term must not shrink as rho decreases.
    for (const auto& o : probes) {
      const auto& [lo, hi] = o.probe.rho < w.probe.rho
                                 ? std::pair{&o, &w}
                                 : std::pair{&w, &o};
      const double tol_l = 10.0 * cfg.a_tol * std::max(1.0, hi->probe.lhs);
      const double tol_r = 10.0 * cfg.a_tol * std::max(1.0, lo->probe.rhs);
      if (lo->probe.lhs > hi->probe.lhs + tol_l ||
          (lo->probe.rhs > 0.0 && hi->probe.rhs > 0.0 &&
           (lo->probe.rhs / (1.0 - lo->probe.rho)) + tol_r <
               hi->probe.rhs / (1.0 - hi->probe.rho)) ||
          (lo->probe.rhs == 0.0 && hi->probe.rhs > 0.0)) {
        std::ostringstream msg;
        msg << "weak_bound: monotonicity assumption violated between rho="
            << lo->probe.rho << " (lhs " << lo->probe.lhs << ", rhs "
            << lo->probe.rhs << ") and rho=" << hi->probe.rho << " (lhs "
            << hi->probe.lhs << ", rhs " << hi->probe.rhs << ")";
        throw NonConvergenceError(msg.str());
      }
    }
    probes.push_back(w);
  };

  // Coarse scan from the small end; the condition holds near rho = 0.
  const int res = cfg.rho_grid_resolution;
  double lo = 0.0;
  double hi = alpha;
  for (int j = 1; j <= res; ++j) {
    const double rho = alpha * j / (res + 1);
    const WeakProbe w = weak_probe(rho, alpha, p, cfg);
    check_monotone(w);
    if (w.probe.holds) {
      lo = rho;
    } else {
      hi = rho;
      break;
    }
  }
  while (hi - lo > cfg.a_tol) {
    const double mid = 0.5 * (lo + hi);
    const WeakProbe w = weak_probe(mid, alpha, p, cfg);
    check_monotone(w);
    if (w.probe.holds) lo = mid; else hi = mid;
  }

  BoundResult out;
  out.kind = "weak";
  out.alpha = alpha;
  out.p = p;
  out.gamma_grid = cfg.gamma_grid;
  out.epsilon_grid = cfg.epsilon_grid;
  out.a_tol = cfg.a_tol;
  out.t_tol = cfg.t_tol;
  std::sort(probes.begin(), probes.end(),
            [](const WeakProbe& a, const WeakProbe& b) {
              return a.probe.rho < b.probe.rho;
            });
  for (std::size_t i = 0; i < probes.size(); ++i) {
    out.probes.push_back(probes[i].probe);
    if (i > 0 && probes[i - 1].lambda_tilde > probes[i].lambda_tilde)
      out.lambda_tilde_monotone = false;
  }
  const WeakProbe* win = nullptr;
  for (const auto& w : probes)
    if (w.probe.rho == lo && w.probe.holds) win = &w;
  if (win == nullptr) {
    std::ostringstream msg;
    msg << "weak_bound: condition fails at every probed rho (alpha=" << alpha
        << ", p=" << p << ")";
    throw InfeasibleError(msg.str());
  }
  out.rho_bound = lo;
  out.lambda_tilde_max = win->lambda_tilde;
  out.shifted_alpha = win->shifted_alpha;
  out.lambda_min = win->lambda_min;
  out.lambda_max = win->lambda_max;
  out.winning_gamma = win->gamma;
  out.winning_epsilon = win->epsilon;
  out.exponent_margin = win->margin;
  return out;
}

}  // namespace lprec

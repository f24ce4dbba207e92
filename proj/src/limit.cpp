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

#include "lprec/limit.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "lprec/gaussian.hpp"

namespace lprec {

namespace {

void require_exponent(double p, const char* where) {
  if (!(p > 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": exponent p must lie in (0, 1], got " << p;
    throw DomainError(msg.str());
  }
}

void require_closed_exponent(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": exponent p must lie in [0, 1], got " << p;
    throw DomainError(msg.str());
  }
}

// Panels for [lo, hi] with extra resolution near the origin, where x^p has
// its cusp.
std::vector<double> panel_breaks(double lo, double hi) {
  std::vector<double> b{lo};
  for (double x = 1.0 / 1024; x < hi; x *= 2.0)
    if (x > lo) b.push_back(x);
  b.push_back(hi);
  return b;
}

double moment_density(double x, double p) {
  return std::pow(x, p) * half_normal_pdf(x);
}

double partial_log_moment(double lo, double hi, double p,
                          const QuadratureConfig& cfg) {
  const auto breaks = panel_breaks(lo, hi);
  return integrate_scalar(
      [p](double x) { return std::pow(x, p) * std::log(x) * half_normal_pdf(x); },
      breaks, cfg);
}

}  // namespace

double lower_partial_moment(double z, double p, const QuadratureConfig& cfg) {
  if (z <= 0.0) return 0.0;
  const auto breaks = panel_breaks(0.0, z);
  return integrate_scalar([p](double x) { return moment_density(x, p); },
                          breaks, cfg);
}

double upper_partial_moment(double z, double p, const QuadratureConfig& cfg) {
  const double lo = std::max(z, 0.0);
  const double hi = std::max(lo, std::sqrt(p)) + cfg.tail_cutoff_sigma;
  const auto breaks = panel_breaks(lo, hi);
  return integrate_scalar([p](double x) { return moment_density(x, p); },
                          breaks, cfg);
}

SplitPoint solve_z_star(double p, const QuadratureConfig& cfg) {
  require_exponent(p, "solve_z_star");
  cfg.validate();
  auto phi = [&](double z) {
    return lower_partial_moment(z, p, cfg) - upper_partial_moment(z, p, cfg);
  };
  double lo = 0.0;
  double hi = cfg.tail_cutoff_sigma;
  if (!(phi(hi) > 0.0)) {
    std::ostringstream msg;
    msg << "solve_z_star: root not bracketed in [0, " << hi << "] for p=" << p;
    throw NonConvergenceError(msg.str());
  }
  SplitPoint out;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) < 0.0) lo = mid; else hi = mid;
    ++out.iterations;
  }
  // Newton polish; phi'(z) = 2 z^p f(z).
  double z = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double r = phi(z);
    const double slope = 2.0 * moment_density(z, p);
    if (!(slope > 0.0)) break;
    const double next = z - r / slope;
    ++out.iterations;
    if (std::abs(next - z) < 1e-16 * z) break;
    z = next;
  }
  out.z = z;
  out.residual = phi(z);
  return out;
}

LimitThreshold strong_limit_threshold(double p, const QuadratureConfig& cfg) {
  const SplitPoint sp = solve_z_star(p, cfg);
  LimitThreshold out;
  out.p = p;
  out.z_star = sp.z;
  out.rho_star = 1.0 - half_normal_cdf(sp.z);
  out.solver_iters = sp.iterations;
  out.residual = sp.residual;
  out.derivative = strong_threshold_derivative(p, cfg);
  return out;
}

double strong_threshold_derivative(double p, const QuadratureConfig& cfg) {
  require_exponent(p, "strong_threshold_derivative");
  const double z = solve_z_star(p, cfg).z;
  // Near the origin use x = e^u; x^p ln x f(x) dx becomes
  // e^{(p+1)u} u f(e^u) du, which decays exponentially as u -> -inf.
  const double cut = 1e-3;
  const double u_hi = std::log(cut);
  const double u_lo = -(45.0 + std::log(45.0)) / (p + 1.0) + u_hi;
  std::vector<double> ubreaks;
  for (double u = u_lo; u < u_hi; u += 4.0) ubreaks.push_back(u);
  ubreaks.push_back(u_hi);
  const double head = integrate_scalar(
      [p](double u) {
        const double x = std::exp(u);
        return std::exp((p + 1.0) * u) * u * half_normal_pdf(x);
      },
      ubreaks, cfg);
  const double lower = head + partial_log_moment(cut, z, p, cfg);
  const double upper =
      partial_log_moment(z, std::max(z, std::sqrt(p)) + cfg.tail_cutoff_sigma,
                         p, cfg);
  return (lower - upper) / (2.0 * std::pow(z, p));
}

double weak_limit_threshold(double p) {
  require_closed_exponent(p, "weak_limit_threshold");
  return p == 1.0 ? 1.0 : 2.0 / 3.0;
}

double sectional_limit_threshold(double p) {
  require_closed_exponent(p, "sectional_limit_threshold");
  return 0.5;
}

}  // namespace lprec

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

#include "lprec/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace lprec {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0) || max_subdivisions < 1 ||
      !(tail_cutoff_sigma >= 8)) {
    std::ostringstream msg;
    msg << "invalid quadrature config: rel_tol=" << rel_tol
        << " abs_tol=" << abs_tol << " max_subdivisions=" << max_subdivisions
        << " tail_cutoff_sigma=" << tail_cutoff_sigma;
    throw DomainError(msg.str());
  }
}

namespace {

void require_exponent(double p, const char* where) {
  if (!(p > 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": exponent p must lie in (0, 1], got " << p;
    throw DomainError(msg.str());
  }
}

// Breakpoints 0, 2^-k, ..., 1, 2, 4, ... up to hi. Geometric spacing resolves
// the x^p cusp at the origin and heavy e^{-y^p} tails alike.
std::vector<double> geometric_breaks(double lo, double hi) {
  std::vector<double> b{lo};
  double x = std::ldexp(1.0, -20);
  while (x < hi) {
    if (x > lo) b.push_back(x);
    x *= 2.0;
  }
  b.push_back(hi);
  return b;
}

}  // namespace

double half_normal_pdf(double z) {
  if (z < 0.0) return 0.0;
  return kSqrt2OverPi * std::exp(-0.5 * z * z);
}

double half_normal_cdf(double z) {
  if (z <= 0.0) return 0.0;
  return std::erf(z / std::numbers::sqrt2);
}

double abs_moment_closed_form(double p) {
  return std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) /
         std::sqrt(std::numbers::pi);
}

double abs_moment(double p, const QuadratureConfig& cfg) {
  if (!(p > 0.0)) {
    std::ostringstream msg;
    msg << "abs_moment: p must be positive, got " << p;
    throw DomainError(msg.str());
  }
  cfg.validate();
  const double peak = std::sqrt(p);
  const double hi = peak + cfg.tail_cutoff_sigma;
  std::vector<double> breaks = geometric_breaks(0.0, std::min(peak, hi));
  breaks.push_back(hi);
  return integrate_scalar(
      [p](double x) { return std::pow(x, p) * half_normal_pdf(x); }, breaks,
      cfg);
}

// The tilted integrand exp(t x^p - x^2/2) is log-concave with second
// derivative at most -1, so after centering at its mode x0 the window
// [x0 - C, x0 + C] captures everything up to exp(-C^2/2).
TiltedMoments tilted_moments_pos(double t, double p,
                                 const QuadratureConfig& cfg) {
  require_exponent(p, "tilted_moments_pos");
  if (!(t >= 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "tilted_moments_pos: t must be finite and >= 0, got " << t;
    throw DomainError(msg.str());
  }
  cfg.validate();
  const double mode = t > 0.0 ? std::pow(t * p, 1.0 / (2.0 - p)) : 0.0;
  const double h_mode = t * std::pow(mode, p) - 0.5 * mode * mode;
  const double center = std::pow(mode, p);  // shift for central moments
  const double lo = std::max(0.0, mode - cfg.tail_cutoff_sigma);
  const double hi = mode + cfg.tail_cutoff_sigma;

  std::vector<double> breaks;
  if (lo == 0.0) {
    breaks = geometric_breaks(0.0, hi);
    if (mode > 0.0) {
      breaks.insert(std::lower_bound(breaks.begin(), breaks.end(), mode), mode);
      breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    }
  } else {
    breaks = {lo, mode, hi};
  }

  // Exponent and centered power are formed as differences from the mode so
  // that no large terms cancel when the mode is far from the origin.
  auto integrand = [&](double x) {
    double d;
    if (mode > 0.0) {
      const double u = (x - mode) / mode;
      d = u > -1.0 ? center * std::expm1(p * std::log1p(u)) : -center;
    } else {
      d = std::pow(x, p);
    }
    const double w =
        std::exp(t * d - 0.5 * (x - mode) * (x + mode));
    return std::array<double, 3>{w, d * w, d * d * w};
  };
  auto r = integrate<3>(integrand, breaks, cfg);
  const double mass = r.value[0];
  const double shift = r.value[1] / mass;
  TiltedMoments out;
  out.log_mgf = std::log(kSqrt2OverPi) + h_mode + std::log(mass);
  out.mean = center + shift;
  out.variance = std::max(0.0, r.value[2] / mass - shift * shift);
  return out;
}

TiltedMoments tilted_moments_indicator(double t, double p,
                                       const QuadratureConfig& cfg) {
  const TiltedMoments pos = tilted_moments_pos(t, p, cfg);
  // q = M / (M + 1) with M = exp(log_mgf), computed without overflow.
  const double q = 1.0 / (1.0 + std::exp(-pos.log_mgf));
  TiltedMoments out;
  out.log_mgf = pos.log_mgf > 0.0
                    ? pos.log_mgf + std::log1p(std::exp(-pos.log_mgf)) -
                          std::numbers::ln2
                    : std::log1p(std::exp(pos.log_mgf)) - std::numbers::ln2;
  out.mean = q * pos.mean;
  out.variance =
      q * (pos.variance + pos.mean * pos.mean) - out.mean * out.mean;
  return out;
}

double log_mgf_pos(double t, double p, const QuadratureConfig& cfg) {
  return tilted_moments_pos(t, p, cfg).log_mgf;
}

double mgf_pos(double t, double p, const QuadratureConfig& cfg) {
  return std::exp(log_mgf_pos(t, p, cfg));
}

double mgf_indicator(double t, double p, const QuadratureConfig& cfg) {
  return 0.5 * mgf_pos(t, p, cfg) + 0.5;
}

namespace {

// Smallest U with Gamma(1/p, U) / p below 1e-18, so that the e^{-y^p} tail
// beyond y = U^{1/p} is negligible.
double stretched_tail_cut(double p) {
  const double a = 1.0 / p;
  double u = 40.0;
  while ((a - 1.0) * std::log(u) - u - std::log(p) > std::log(1e-18)) u *= 1.2;
  return u;
}

}  // namespace

double mgf_neg(double t, double p, const QuadratureConfig& cfg) {
  require_exponent(p, "mgf_neg");
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "mgf_neg: t must be finite and > 0, got " << t;
    throw DomainError(msg.str());
  }
  cfg.validate();
  if (t <= 1.0) {
    const double hi = cfg.tail_cutoff_sigma;
    auto breaks = geometric_breaks(0.0, hi);
    return kSqrt2OverPi *
           integrate_scalar(
               [t, p](double x) {
                 return std::exp(-t * std::pow(x, p) - 0.5 * x * x);
               },
               breaks, cfg);
  }
  // x = s y with s = t^{-1/p} moves the e^{-t x^p} scale to y ~ 1.
  const double s = std::pow(t, -1.0 / p);
  const double y_hi = std::min(std::pow(stretched_tail_cut(p), 1.0 / p),
                               cfg.tail_cutoff_sigma / s);
  auto breaks = geometric_breaks(0.0, y_hi);
  const double inner = integrate_scalar(
      [s, p](double y) {
        const double x = s * y;
        return std::exp(-std::pow(y, p) - 0.5 * x * x);
      },
      breaks, cfg);
  return s * kSqrt2OverPi * inner;
}

double mgf_neg_upper_bound(double t, double p) {
  require_exponent(p, "mgf_neg_upper_bound");
  return std::pow(t, -1.0 / p) * kSqrt2OverPi * std::tgamma(1.0 / p) / p;
}

double mgf_neg_lower_bound(double t, double p, const QuadratureConfig& cfg) {
  require_exponent(p, "mgf_neg_lower_bound");
  const double hi = cfg.tail_cutoff_sigma;
  auto breaks = geometric_breaks(0.0, hi);
  const double inner = integrate_scalar(
      [p](double y) { return std::exp(-std::pow(y, p) - 0.5 * y * y); },
      breaks, cfg);
  return std::pow(t, -1.0 / p) * kSqrt2OverPi * inner;
}

}  // namespace lprec

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

// Scalar integrals of the standard Gaussian X ~ N(0,1) and of |X|^p.
//
// All moment generating functions are expectations over X, evaluated by
// adaptive quadrature of the half-normal density
//   f(z) = sqrt(2/pi) exp(-z^2/2),  z >= 0.

#ifndef LPREC_GAUSSIAN_HPP
#define LPREC_GAUSSIAN_HPP

#include "lprec/quadrature.hpp"

namespace lprec {

inline constexpr double kSqrt2OverPi = 0.79788456080286535587989211986876;

// Density and CDF of |X|. Both vanish for z < 0.
double half_normal_pdf(double z);
double half_normal_cdf(double z);

// E[|X|^p] for p > 0, by quadrature.
double abs_moment(double p, const QuadratureConfig& cfg = {});

// E[|X|^p] by the closed form 2^{p/2} Gamma((p+1)/2) / sqrt(pi).
double abs_moment_closed_form(double p);

// Cumulant-generating function of |X|^p together with the mean and variance
// of |X|^p under the exponentially tilted law. mean is the derivative of
// log_mgf in t, variance the second derivative.
struct TiltedMoments {
  double log_mgf = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

// t >= 0, p in (0, 1].
TiltedMoments tilted_moments_pos(double t, double p,
                                 const QuadratureConfig& cfg = {});

// Same for E[exp(t |X|^p S)] with S = 1{X < 0}: the tilted law of the
// sign-mismatched contribution used by the weak-recovery bounds.
TiltedMoments tilted_moments_indicator(double t, double p,
                                       const QuadratureConfig& cfg = {});

// E[exp(t |X|^p)], t >= 0, p in (0, 1].
double mgf_pos(double t, double p, const QuadratureConfig& cfg = {});
double log_mgf_pos(double t, double p, const QuadratureConfig& cfg = {});

// E[exp(-t |X|^p)], t > 0, p in (0, 1].
double mgf_neg(double t, double p, const QuadratureConfig& cfg = {});

// Upper bound t^{-1/p} sqrt(2/pi) Gamma(1/p) / p on mgf_neg, valid for t > 0.
double mgf_neg_upper_bound(double t, double p);

// Lower bound t^{-1/p} sqrt(2/pi) int_0^inf exp(-y^p - y^2/2) dy on mgf_neg,
// valid for t > 1.
double mgf_neg_lower_bound(double t, double p, const QuadratureConfig& cfg = {});

// E[exp(t |X|^p S)] = (mgf_pos(t, p) + 1) / 2.
double mgf_indicator(double t, double p, const QuadratureConfig& cfg = {});

}  // namespace lprec

#endif  // LPREC_GAUSSIAN_HPP

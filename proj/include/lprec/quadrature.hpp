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

// Globally adaptive Gauss-Kronrod (7/15) quadrature over finite intervals.
//
// Integrands may be vector valued (std::array<double, N>): all components
// share one subdivision, which is how the tilted moments of the Gaussian
// MGFs are computed in a single pass. Semi-infinite integrals are truncated
// by the callers, who know where their integrands are concentrated.

#ifndef LPREC_QUADRATURE_HPP
#define LPREC_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <sstream>
#include <vector>

#include "lprec/errors.hpp"

namespace lprec {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  // Truncation point of semi-infinite integrals, in standard deviations of
  // the (tilted) Gaussian factor.
  double tail_cutoff_sigma = 12.0;

  // Throws DomainError when a field violates its invariant.
  void validate() const;
};

template <std::size_t N>
struct QuadratureResult {
  std::array<double, N> value{};
  std::array<double, N> error{};
  int subdivisions = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the 7-point rule living on the odd Kronrod nodes.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
  double a;
  double b;
  std::array<double, N> value;
  std::array<double, N> error;
  std::array<double, N> magnitude;  // Kronrod estimate of the integral of |f|
  double priority;  // normalized error used to pick the next panel to split
  bool operator<(const Panel& o) const { return priority < o.priority; }
};

template <std::size_t N, class F>
Panel<N> kronrod_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, N> kronrod{};
  std::array<double, N> gauss{};
  std::array<double, N> absolute{};
  const std::array<double, N> fc = f(center);
  for (std::size_t k = 0; k < N; ++k) {
    kronrod[k] = fc[k] * kKronrodWeights[7];
    gauss[k] = fc[k] * kGaussWeights[3];
    absolute[k] = std::abs(fc[k]) * kKronrodWeights[7];
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const std::array<double, N> f1 = f(center - dx);
    const std::array<double, N> f2 = f(center + dx);
    for (std::size_t k = 0; k < N; ++k) {
      kronrod[k] += kKronrodWeights[j] * (f1[k] + f2[k]);
      absolute[k] += kKronrodWeights[j] * (std::abs(f1[k]) + std::abs(f2[k]));
      if (j % 2 == 1) gauss[k] += kGaussWeights[j / 2] * (f1[k] + f2[k]);
    }
  }
  Panel<N> panel{a, b, {}, {}, {}, 0.0};
  for (std::size_t k = 0; k < N; ++k) {
    panel.value[k] = kronrod[k] * half;
    panel.magnitude[k] = absolute[k] * half;
    panel.error[k] = std::abs((kronrod[k] - gauss[k]) * half);
  }
  return panel;
}

}  // namespace detail

// Integrates f over the union of [breakpoints[i], breakpoints[i+1]].
// Breakpoints must be ascending; they seed the initial partition, so put one
// wherever the integrand has a kink, a peak, or an endpoint singularity.
template <std::size_t N, class F>
QuadratureResult<N> integrate(F&& f, std::span<const double> breakpoints,
                              const QuadratureConfig& cfg) {
  QuadratureResult<N> result;
  if (breakpoints.size() < 2) return result;

  std::priority_queue<detail::Panel<N>> panels;
  std::array<double, N> total{};
  std::array<double, N> total_err{};
  std::array<double, N> total_mag{};

  // Relative accuracy is measured against the integral of |f|, which keeps
  // the test meaningful for components that integrate to nearly zero.
  auto tolerance = [&](std::size_t k) {
    return std::max(cfg.abs_tol, cfg.rel_tol * total_mag[k]);
  };
  auto push = [&](detail::Panel<N> panel) {
    for (std::size_t k = 0; k < N; ++k) {
      total[k] += panel.value[k];
      total_err[k] += panel.error[k];
      total_mag[k] += panel.magnitude[k];
    }
    panels.push(panel);
  };
  auto reprioritize = [&] {
    // Priorities are relative to the current tolerance; rebuilding the heap
    // is cheap compared with integrand evaluations.
    std::vector<detail::Panel<N>> all;
    all.reserve(panels.size());
    while (!panels.empty()) {
      all.push_back(panels.top());
      panels.pop();
    }
    for (auto& p : all) {
      double prio = 0.0;
      for (std::size_t k = 0; k < N; ++k)
        prio = std::max(prio, p.error[k] / tolerance(k));
      p.priority = prio;
      panels.push(p);
    }
  };

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i])
      push(detail::kronrod_panel<N>(f, breakpoints[i], breakpoints[i + 1]));
  }
  reprioritize();

  auto converged = [&] {
    for (std::size_t k = 0; k < N; ++k)
      if (!(total_err[k] <= tolerance(k))) return false;
    return true;
  };

  int splits = 0;
  while (!converged()) {
    if (splits >= cfg.max_subdivisions || panels.empty()) {
      std::ostringstream msg;
      msg << "quadrature did not converge after " << splits
          << " subdivisions; achieved error " << total_err[0]
          << " on value " << total[0];
      throw QuadratureError(msg.str(), total_err[0]);
    }
    detail::Panel<N> worst = panels.top();
    panels.pop();
    for (std::size_t k = 0; k < N; ++k) {
      total[k] -= worst.value[k];
      total_err[k] -= worst.error[k];
      total_mag[k] -= worst.magnitude[k];
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval collapsed to machine resolution; keep its contribution.
      push(worst);
      std::ostringstream msg;
      msg << "quadrature panel collapsed near x=" << worst.a
          << "; achieved error " << total_err[0];
      throw QuadratureError(msg.str(), total_err[0]);
    }
    auto left = detail::kronrod_panel<N>(f, worst.a, mid);
    auto right = detail::kronrod_panel<N>(f, mid, worst.b);
    for (auto* p : {&left, &right}) {
      double prio = 0.0;
      for (std::size_t k = 0; k < N; ++k)
        prio = std::max(prio, p->error[k] / tolerance(k));
      p->priority = prio;
    }
    push(left);
    push(right);
    ++splits;
    if ((splits & 31) == 0) reprioritize();
  }

  // Recompute the sums from the panels to shed accumulated cancellation.
  std::array<double, N> value{};
  std::array<double, N> error{};
  while (!panels.empty()) {
    const auto& p = panels.top();
    for (std::size_t k = 0; k < N; ++k) {
      value[k] += p.value[k];
      error[k] += p.error[k];
    }
    panels.pop();
  }
  result.value = value;
  result.error = error;
  result.subdivisions = splits;
  return result;
}

// Scalar convenience overload.
template <class F>
double integrate_scalar(F&& f, std::span<const double> breakpoints,
                        const QuadratureConfig& cfg) {
  auto wrapped = [&](double x) { return std::array<double, 1>{f(x)}; };
  return integrate<1>(wrapped, breakpoints, cfg).value[0];
}

}  // namespace lprec

#endif  // LPREC_QUADRATURE_HPP

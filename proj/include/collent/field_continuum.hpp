#pragma once

// Vacuum correlations of window-averaged Klein-Gordon operators in 1+1 D,
//
//   Phi_L(x0) = L^{-1/2} int_{-L/2}^{L/2} phi(x0 + x) dx   (Pi_L likewise),
//
//   D_Phi(r) = (1 / pi L) int dk sin^2(kL/2) cos(kr) / (k^2 w_k),
//   D_Pi(r)  = (1 / pi L) int dk sin^2(kL/2) cos(kr) w_k / k^2,   w_k = sqrt(k^2 + m^2).
//
// Both integrands are even. [0, K] is integrated adaptively in the product
// form (sin(kL/2)/k)^2 cos(kr), which is regular at k = 0. Beyond K the
// product is split as (1/4)[2 cos(kr) - cos(k(r+L)) - cos(k(r-L))] and w_k is
// expanded in powers of m^2/k^2, so the tail reduces to cosine integrals
// int_K^inf cos(ak) k^{-n} dk. K starts at max(100/L, 100/max(r-L, L)),
// raised so the expansion converges and the tail formulas apply, and is
// doubled until head + tail stabilises.
//
// D_Pi carries a 1/k tail. Whenever one of the three frequencies vanishes
// (r = 0 or r = L) that tail is not oscillatory and the integral diverges
// logarithmically; d_pi then returns +inf or -inf.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "collent/block_geometry.hpp"
#include "collent/errors.hpp"
#include "collent/gaussian_entanglement.hpp"
#include "collent/quadrature.hpp"

namespace collent {

struct FieldRegionSpec {
  double mass = 1.0;        // Klein-Gordon mass m > 0
  double length = 1.0;      // window length L > 0
  double separation = 0.0;  // centre distance r >= 0
};

inline void validate(const FieldRegionSpec& spec) {
  if (!(spec.mass > 0.0) || !std::isfinite(spec.mass)) {
    throw DomainError("field mass must be positive and finite");
  }
  if (!(spec.length > 0.0) || !std::isfinite(spec.length)) {
    throw DomainError("smearing length must be positive and finite");
  }
  if (!(spec.separation >= 0.0) || !std::isfinite(spec.separation)) {
    throw DomainError("region separation must be non-negative and finite");
  }
}

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_segments = 400000;
  int max_doublings = 16;
};

namespace detail {

enum class FieldQuadrature { kPhi, kPi };

// (sin(kL/2) / k)^2, regular at k = 0.
inline double window_kernel(double k, double length) {
  const double x = 0.5 * k * length;
  if (std::abs(x) < 1e-4) {
    const double s = 0.5 * length * (1.0 - x * x / 6.0);
    return s * s;
  }
  const double s = std::sin(x) / k;
  return s * s;
}

inline std::size_t panels_for(double lo, double hi, double frequency) {
  const double periods = (hi - lo) * frequency / (2.0 * std::numbers::pi);
  return static_cast<std::size_t>(std::ceil(periods)) + 4;
}

// Binomial series coefficients of (1 + u)^power.
inline double series_coefficient(double power, int j) {
  double c = 1.0;
  for (int i = 0; i < j; ++i) c *= (power - i) / (i + 1);
  return c;
}

struct TailTerm {
  double frequency;
  double weight;
};

// int_K^inf [sum_f weight_f cos(a_f k)] * (1 + m^2/k^2)^power / k^p dk,
// p = 3 for D_Phi (power -1/2), p = 1 for D_Pi (power +1/2).
inline double tail_integral(FieldQuadrature which, double mass, double k0,
                            const std::array<TailTerm, 3>& terms, double abs_tol) {
  const int p = which == FieldQuadrature::kPhi ? 3 : 1;
  const double power = which == FieldQuadrature::kPhi ? -0.5 : 0.5;
  const double m2 = mass * mass;
  double total = 0.0;
  double weight_sum = 0.0;
  for (const auto& t : terms) weight_sum += std::abs(t.weight);
  for (int j = 0; j < 64; ++j) {
    const int n = p + 2 * j;
    const double coeff = series_coefficient(power, j) * std::pow(m2, j);
    // |contribution| <= |coeff| * weight_sum * K^{1-n} / (n-1) for n > 1.
    const double bound = std::abs(coeff) * weight_sum * std::pow(k0, 1 - n) / std::max(n - 1, 1);
    if (j > 0 && bound < 1e-3 * abs_tol) return total;
    for (const auto& t : terms) {
      if (t.weight == 0.0) continue;
      const double integral = t.frequency == 0.0
                                  ? std::pow(k0, 1 - n) / (n - 1)
                                  : quad::cosine_tail(t.frequency, k0, n);
      total += coeff * t.weight * integral;
    }
  }
  throw QuadratureError("tail expansion in m^2/k^2 did not converge");
}

inline double propagator(FieldQuadrature which, const FieldRegionSpec& spec, double r,
                         const QuadratureOptions& opts) {
  validate(spec);
  if (!std::isfinite(r)) throw DomainError("propagator distance must be finite");
  r = std::abs(r);
  const double m = spec.mass;
  const double length = spec.length;
  const double prefactor = 2.0 / (std::numbers::pi * length);

  const std::array<TailTerm, 3> terms = {{
      {r, 0.5},
      {r + length, -0.25},
      {std::abs(r - length), -0.25},
  }};

  if (which == FieldQuadrature::kPi) {
    // Non-oscillating 1/k tail: log divergence with the sign of its weight.
    double constant_weight = 0.0;
    for (const auto& t : terms) {
      if (t.frequency == 0.0) constant_weight += t.weight;
    }
    if (constant_weight != 0.0) {
      return std::copysign(std::numeric_limits<double>::infinity(), constant_weight);
    }
  }

  double min_frequency = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (t.frequency > 0.0) min_frequency = std::min(min_frequency, t.frequency);
  }
  const double max_frequency = r + length;

  double cutoff = std::max(100.0 / length, 100.0 / std::max(r - length, length));
  cutoff = std::max(cutoff, 20.0 * m);
  cutoff = std::max(cutoff, 60.0 / min_frequency);

  auto integrand = [&](double k) {
    const double w = std::sqrt(k * k + m * m);
    const double base = window_kernel(k, length) * std::cos(k * r);
    return which == FieldQuadrature::kPhi ? base / w : base * w;
  };

  const double seg_tol = 0.25 * opts.abs_tol / prefactor;
  double head = quad::integrate_adaptive(integrand, 0.0, cutoff, seg_tol,
                                         panels_for(0.0, cutoff, max_frequency),
                                         opts.max_segments)
                    .value;
  double total = prefactor * (head + tail_integral(which, m, cutoff, terms, seg_tol));
  for (int i = 0; i < opts.max_doublings; ++i) {
    const double next_cutoff = 2.0 * cutoff;
    head += quad::integrate_adaptive(integrand, cutoff, next_cutoff, seg_tol,
                                     panels_for(cutoff, next_cutoff, max_frequency),
                                     opts.max_segments)
                .value;
    const double next_total =
        prefactor * (head + tail_integral(which, m, next_cutoff, terms, seg_tol));
    cutoff = next_cutoff;
    if (std::abs(next_total - total) <= opts.abs_tol) return next_total;
    total = next_total;
  }
  throw QuadratureError("propagator tail estimate did not stabilise after " +
                        std::to_string(opts.max_doublings) + " cutoff doublings");
}

}  // namespace detail

/// <Phi_L(x0) Phi_L(x0 + r)> in the vacuum. Finite for every r.
inline double d_phi(const FieldRegionSpec& spec, double r, const QuadratureOptions& opts = {}) {
  return detail::propagator(detail::FieldQuadrature::kPhi, spec, r, opts);
}

/// <Pi_L(x0) Pi_L(x0 + r)> in the vacuum. +inf at r = 0, -inf at r = L
/// (sharp window edges coincide), finite otherwise.
inline double d_pi(const FieldRegionSpec& spec, double r, const QuadratureOptions& opts = {}) {
  return detail::propagator(detail::FieldQuadrature::kPi, spec, r, opts);
}

/// D_Pi with all modes |k| > k_max removed. Grows like ln(k_max) / (pi L)
/// at r = 0; used to exhibit the divergence of d_pi there.
inline double d_pi_truncated(const FieldRegionSpec& spec, double r, double k_max,
                             const QuadratureOptions& opts = {}) {
  validate(spec);
  if (!(k_max > 0.0)) throw DomainError("mode cutoff must be positive");
  const double m = spec.mass;
  const double length = spec.length;
  r = std::abs(r);
  auto integrand = [&](double k) {
    return detail::window_kernel(k, length) * std::cos(k * r) * std::sqrt(k * k + m * m);
  };
  const double prefactor = 2.0 / (std::numbers::pi * length);
  return prefactor * quad::integrate_adaptive(integrand, 0.0, k_max, opts.abs_tol / prefactor,
                                              detail::panels_for(0.0, k_max, r + length),
                                              opts.max_segments)
                         .value;
}

/// Collective-operator covariance of two windows at centre distance
/// spec.separation: G = D_Phi(0), H = D_Pi(0), G_AB = D_Phi(r), H_AB = D_Pi(r).
inline CollectiveCovariance field_covariance(const FieldRegionSpec& spec,
                                             const QuadratureOptions& opts = {}) {
  validate(spec);
  return {
      d_phi(spec, 0.0, opts),
      d_pi(spec, 0.0, opts),
      d_phi(spec, spec.separation, opts),
      d_pi(spec, spec.separation, opts),
  };
}

/// Negativity of two non-overlapping windows (separation > length). With
/// sharp windows H = D_Pi(0) is infinite, so delta2 is infinite and eps = 0.
inline EntanglementResult field_negativity(const FieldRegionSpec& spec,
                                           const QuadratureOptions& opts = {}) {
  validate(spec);
  if (!(spec.separation > spec.length)) {
    throw DomainError("field regions overlap: separation must exceed the window length");
  }
  return negativity(field_covariance(spec, opts));
}

/// Two interleaved sets of `windows` windows each, alternating A, B, A, ...
/// with centres `pitch` apart; each block operator averages over its windows.
struct PeriodicFieldSpec {
  double mass = 1.0;
  double length = 1.0;
  double pitch = 2.0;
  std::size_t windows = 1;
};

inline EntanglementResult periodic_field_negativity(const PeriodicFieldSpec& spec,
                                                    const QuadratureOptions& opts = {}) {
  if (spec.windows < 1) throw DomainError("periodic field blocks need at least one window");
  if (!(spec.pitch > spec.length)) {
    throw DomainError("field windows overlap: pitch must exceed the window length");
  }
  const FieldRegionSpec single{spec.mass, spec.length, spec.pitch};
  validate(single);
  const auto idx = block_indices(BlockSpec{spec.windows, 1, 0});
  const auto aa = lag_multiset(idx.a, idx.a);
  const auto ab = lag_multiset(idx.a, idx.b);
  const double inv = 1.0 / static_cast<double>(spec.windows);
  CollectiveCovariance cov;
  for (const auto& [lag, count] : aa) {
    const double r = spec.pitch * static_cast<double>(lag);
    cov.g_diag += inv * static_cast<double>(count) * d_phi(single, r, opts);
    cov.h_diag += inv * static_cast<double>(count) * d_pi(single, r, opts);
  }
  for (const auto& [lag, count] : ab) {
    const double r = spec.pitch * static_cast<double>(lag);
    cov.g_cross += inv * static_cast<double>(count) * d_phi(single, r, opts);
    cov.h_cross += inv * static_cast<double>(count) * d_pi(single, r, opts);
  }
  return negativity(cov);
}

}  // namespace collent

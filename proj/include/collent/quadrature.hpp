#pragma once

// Numerical building blocks for the field propagators: globally adaptive
// 15-point Gauss-Kronrod integration and the sine/cosine integrals.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "collent/errors.hpp"

namespace collent::quad {

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices are the embedded 7-point Gauss nodes.
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

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(F&& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t segments = 0;
};

/// Integrates f over [lo, hi] to absolute tolerance `abs_tol`.
///
/// The interval is first cut into `initial_panels` equal pieces (use roughly
/// one per oscillation period), then the piece with the largest error
/// estimate is bisected until the summed estimate drops below `abs_tol`.
/// The error estimate is |K15 - G7|, which is conservative for smooth f.
template <class F>
IntegrationResult integrate_adaptive(F&& f, double lo, double hi, double abs_tol,
                                     std::size_t initial_panels = 1,
                                     std::size_t max_segments = 200000) {
  initial_panels = std::max<std::size_t>(initial_panels, 1);
  if (initial_panels > max_segments) {
    throw QuadratureError("integration range needs " + std::to_string(initial_panels) +
                          " panels, more than the limit of " + std::to_string(max_segments));
  }
  std::priority_queue<detail::Segment> heap;
  double value = 0.0;
  double error = 0.0;
  const double width = (hi - lo) / static_cast<double>(initial_panels);
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double a = lo + width * static_cast<double>(i);
    const double b = (i + 1 == initial_panels) ? hi : a + width;
    auto seg = detail::gauss_kronrod_15(f, a, b);
    value += seg.value;
    error += seg.error;
    heap.push(seg);
  }
  while (error > abs_tol) {
    if (heap.size() >= max_segments) {
      throw QuadratureError("adaptive quadrature reached " + std::to_string(max_segments) +
                            " segments with error estimate " + std::to_string(error) +
                            " above tolerance " + std::to_string(abs_tol));
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw QuadratureError("adaptive quadrature cannot bisect further");
    }
    const auto left = detail::gauss_kronrod_15(f, worst.lo, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to drop the drift of the running updates.
  IntegrationResult out;
  out.segments = heap.size();
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.error += heap.top().error;
    heap.pop();
  }
  return out;
}

struct SineCosineIntegrals {
  double si;  // int_0^x sin(t)/t dt
  double ci;  // gamma + ln x + int_0^x (cos t - 1)/t dt
};

/// Si(x) and Ci(x) for x > 0: power series below 2, continued fraction for
/// E1(ix) above.
inline SineCosineIntegrals sine_cosine_integrals(double x) {
  constexpr double kEuler = 0.577215664901532860606512090082;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::min() * 4.0;
  constexpr int kMaxIter = 10000;
  if (!(x > 0.0)) throw DomainError("sine_cosine_integrals requires x > 0");

  if (x > 2.0) {
    using C = std::complex<double>;
    C b(1.0, x);
    C c(1.0 / kTiny, 0.0);
    C d = 1.0 / b;
    C h = d;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
      const double a = -static_cast<double>((i - 1) * (i - 1));
      b += 2.0;
      d = 1.0 / (a * d + b);
      c = b + a / c;
      const C del = c * d;
      h *= del;
      if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    if (i > kMaxIter) throw ConvergenceError("continued fraction for Ci/Si did not converge");
    h *= C(std::cos(x), -std::sin(x));
    return {std::numbers::pi / 2.0 + h.imag(), -h.real()};
  }

  double sum = 0.0;
  double sums = 0.0;
  double sumc = 0.0;
  double sign = 1.0;
  double fact = 1.0;
  bool odd = true;
  int k = 1;
  for (; k <= kMaxIter; ++k) {
    fact *= x / k;
    const double term = fact / k;
    sum += sign * term;
    const double err = term / std::abs(sum);
    if (odd) {
      sign = -sign;
      sums = sum;
      sum = sumc;
    } else {
      sumc = sum;
      sum = sums;
    }
    if (err < kEps) break;
    odd = !odd;
  }
  if (k > kMaxIter) throw ConvergenceError("series for Ci/Si did not converge");
  return {sums, sumc + std::log(x) + kEuler};
}

/// int_K^inf cos(a k) / k^n dk for a > 0, K > 0, n >= 1.
///
/// n = 1 is -Ci(aK). Higher powers use the integration-by-parts expansion
///   int_K^inf e^{iak} k^{-n} dk = (i e^{iaK} / (a K^n)) sum_q (n)_q (iaK)^{-q},
/// truncated at its smallest term; this needs aK well above n.
inline double cosine_tail(double a, double k0, int n) {
  if (n == 1) return -sine_cosine_integrals(a * k0).ci;
  const double x = a * k0;
  if (x < 2.0 * n + 20.0) {
    throw QuadratureError("cosine tail expansion needs a*K >> n (a*K = " + std::to_string(x) +
                          ", n = " + std::to_string(n) + ")");
  }
  using C = std::complex<double>;
  const C inv(0.0, -1.0 / x);  // 1 / (i a K)
  C term(1.0, 0.0);
  C sum(1.0, 0.0);
  double last = 1.0;
  for (int q = 0; q < 200; ++q) {
    term *= static_cast<double>(n + q) * inv;
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < 1e-18) break;
  }
  const C lead = C(0.0, 1.0) * std::polar(1.0, x) / (a * std::pow(k0, n));
  return (lead * sum).real();
}

}  // namespace collent::quad

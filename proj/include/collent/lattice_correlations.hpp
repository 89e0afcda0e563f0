#pragma once

// Ground-state two-point functions of the linear harmonic chain
//
//   H = (E0/2) sum_j (p_j^2 + q_j^2 - alpha q_j q_{j+1}),   0 < alpha < 1,
//
// with g_l = <q_i q_{i+l}> and h_l = <p_i p_{i+l}>. The infinite chain is
// evaluated through Gauss hypergeometric closed forms; the finite periodic
// chain through its spectral sum, which serves as the validation oracle.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "collent/errors.hpp"

namespace collent {

/// Dimensionless nearest-neighbour coupling alpha, restricted to (0, 1).
class Coupling {
 public:
  explicit Coupling(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw DomainError("coupling alpha must lie in the open interval (0, 1), got " +
                        std::to_string(alpha));
    }
  }

  double value() const noexcept { return alpha_; }

  friend bool operator==(const Coupling&, const Coupling&) = default;

 private:
  double alpha_;
};

struct ReducedCoupling {
  double z;   // (1 - sqrt(1 - alpha^2)) / alpha
  double mu;  // 1 / sqrt(1 + z^2)
};

inline ReducedCoupling reduced_coupling(Coupling alpha) {
  const double a = alpha.value();
  // Same as (1 - sqrt(1 - a^2)) / a without the cancellation at small a.
  const double z = a / (1.0 + std::sqrt((1.0 - a) * (1.0 + a)));
  return {z, 1.0 / std::sqrt(1.0 + z * z)};
}

/// nu(theta) = sqrt(1 - alpha cos theta).
inline double dispersion(double theta, Coupling alpha) {
  return std::sqrt(1.0 - alpha.value() * std::cos(theta));
}

struct SeriesOptions {
  double tolerance = 1e-14;
  std::size_t max_terms = 1'000'000;
};

/// Gauss hypergeometric series 2F1(a, b; c; x) for |x| < 1.
///
/// Summation stops once two consecutive terms are below `opts.tolerance` in
/// magnitude. Throws ConvergenceError when `opts.max_terms` is exceeded.
inline double hyp2f1(double a, double b, double c, double x, const SeriesOptions& opts = {}) {
  if (!(std::abs(x) < 1.0)) {
    throw DomainError("hyp2f1 requires |x| < 1");
  }
  if (c <= 0.0 && c == std::floor(c)) {
    throw DomainError("hyp2f1 requires c not to be a non-positive integer");
  }
  double sum = 1.0;
  double term = 1.0;
  int small_in_a_row = 0;
  for (std::size_t k = 0; k < opts.max_terms; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * x;
    sum += term;
    if (std::abs(term) < opts.tolerance) {
      if (++small_in_a_row == 2) return sum;
    } else {
      small_in_a_row = 0;
    }
  }
  throw ConvergenceError("hyp2f1 series did not converge within " +
                         std::to_string(opts.max_terms) + " terms (x = " + std::to_string(x) +
                         ")");
}

namespace detail {

// log|Gamma(x)| together with the sign of Gamma(x), x not a non-positive integer.
inline std::pair<double, double> log_abs_gamma(double x) {
  const double sign = (x > 0.0 || static_cast<std::int64_t>(std::floor(x)) % 2 == 0) ? 1.0 : -1.0;
  return {std::lgamma(x), sign};
}

}  // namespace detail

/// Generalized binomial coefficient (x choose k) for real x and integer k >= 0.
///
/// Non-integer x goes through log-gamma so large k does not overflow; the
/// sign of Gamma at negative arguments follows from the reflection formula.
inline double generalized_binomial(double x, std::size_t k) {
  const double kk = static_cast<double>(k);
  if (x == std::floor(x)) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      r *= (x - static_cast<double>(i)) / static_cast<double>(i + 1);
    }
    return r;
  }
  const auto [ln_num, s_num] = detail::log_abs_gamma(x + 1.0);
  const auto [ln_den, s_den] = detail::log_abs_gamma(x - kk + 1.0);
  return s_num * s_den * std::exp(ln_num - std::lgamma(kk + 1.0) - ln_den);
}

/// <q_i q_{i+l}> on the infinite chain.
inline double g_infinite(std::size_t l, Coupling alpha, const SeriesOptions& opts = {}) {
  const auto [z, mu] = reduced_coupling(alpha);
  const double ll = static_cast<double>(l);
  return std::pow(z, ll) / (2.0 * mu) * generalized_binomial(ll - 0.5, l) *
         hyp2f1(0.5, ll + 0.5, ll + 1.0, z * z, opts);
}

/// <p_i p_{i+l}> on the infinite chain. Negative for every l >= 1.
inline double h_infinite(std::size_t l, Coupling alpha, const SeriesOptions& opts = {}) {
  const auto [z, mu] = reduced_coupling(alpha);
  const double ll = static_cast<double>(l);
  return mu * std::pow(z, ll) / 2.0 * generalized_binomial(ll - 1.5, l) *
         hyp2f1(-0.5, ll - 0.5, ll + 1.0, z * z, opts);
}

namespace detail {

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

enum class Quadrature { kPosition, kMomentum };

inline double finite_chain_sum(std::size_t l, Coupling alpha, std::size_t chain_size,
                               Quadrature which) {
  if (chain_size < 2) throw DomainError("finite chain needs at least 2 oscillators");
  if (l >= chain_size) throw DomainError("lag must be smaller than the chain length");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(chain_size);
  CompensatedSum acc;
  for (std::size_t k = 0; k < chain_size; ++k) {
    const double nu = dispersion(step * static_cast<double>(k), alpha);
    // Exact reduction of l*theta_k modulo 2 pi.
    const std::uint64_t phase = (static_cast<std::uint64_t>(l) * k) % chain_size;
    const double c = std::cos(step * static_cast<double>(phase));
    acc.add((which == Quadrature::kPosition ? 1.0 / nu : nu) * c);
  }
  return acc.value() / (2.0 * static_cast<double>(chain_size));
}

}  // namespace detail

/// <q_i q_{i+l}> on a periodic chain of `chain_size` oscillators, by direct
/// summation over all modes. Validation path only.
inline double g_finite(std::size_t l, Coupling alpha, std::size_t chain_size) {
  return detail::finite_chain_sum(l, alpha, chain_size, detail::Quadrature::kPosition);
}

/// <p_i p_{i+l}> on a periodic chain. Validation path only.
inline double h_finite(std::size_t l, Coupling alpha, std::size_t chain_size) {
  return detail::finite_chain_sum(l, alpha, chain_size, detail::Quadrature::kMomentum);
}

struct FiniteChainCorrelations {
  std::vector<double> g;
  std::vector<double> h;
};

/// All lags 0..l_max of the finite-chain spectral sums in one pass over the
/// modes. cos(l theta) comes from the Chebyshev recurrence, and the mode sum
/// is folded onto 0 <= theta <= pi using theta -> 2 pi - theta symmetry.
inline FiniteChainCorrelations finite_correlations(Coupling alpha, std::size_t l_max,
                                                   std::size_t chain_size) {
  if (chain_size < 2) throw DomainError("finite chain needs at least 2 oscillators");
  if (l_max >= chain_size) throw DomainError("l_max must be smaller than the chain length");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(chain_size);
  std::vector<detail::CompensatedSum> gs(l_max + 1);
  std::vector<detail::CompensatedSum> hs(l_max + 1);
  const std::size_t half = chain_size / 2;
  for (std::size_t k = 0; k <= half; ++k) {
    // Modes k and N-k coincide except for k = 0 and k = N/2.
    const double weight = (k == 0 || 2 * k == chain_size) ? 1.0 : 2.0;
    const double theta = step * static_cast<double>(k);
    const double c1 = std::cos(theta);
    const double nu = std::sqrt(1.0 - alpha.value() * c1);
    const double wg = weight / nu;
    const double wh = weight * nu;
    double prev = 1.0;
    double cur = c1;
    gs[0].add(wg);
    hs[0].add(wh);
    for (std::size_t l = 1; l <= l_max; ++l) {
      gs[l].add(wg * cur);
      hs[l].add(wh * cur);
      const double next = 2.0 * c1 * cur - prev;
      prev = cur;
      cur = next;
    }
  }
  FiniteChainCorrelations out;
  out.g.reserve(l_max + 1);
  out.h.reserve(l_max + 1);
  const double norm = 2.0 * static_cast<double>(chain_size);
  for (std::size_t l = 0; l <= l_max; ++l) {
    out.g.push_back(gs[l].value() / norm);
    out.h.push_back(hs[l].value() / norm);
  }
  return out;
}

/// g_l and h_l for l = 0..l_max at one coupling. Immutable once built.
class CorrelationTable {
 public:
  CorrelationTable(Coupling alpha, std::size_t l_max, const SeriesOptions& opts = {})
      : alpha_(alpha) {
    g_.reserve(l_max + 1);
    h_.reserve(l_max + 1);
    for (std::size_t l = 0; l <= l_max; ++l) {
      g_.push_back(g_infinite(l, alpha, opts));
      h_.push_back(h_infinite(l, alpha, opts));
    }
  }

  /// Table from externally supplied values (finite-chain oracle, fault injection).
  static CorrelationTable from_values(Coupling alpha, std::vector<double> g,
                                      std::vector<double> h) {
    if (g.empty() || g.size() != h.size()) {
      throw DomainError("correlation table needs equally long, non-empty g and h");
    }
    return CorrelationTable(alpha, std::move(g), std::move(h));
  }

  Coupling alpha() const noexcept { return alpha_; }
  std::size_t l_max() const noexcept { return g_.size() - 1; }
  double g(std::size_t l) const { return g_.at(l); }
  double h(std::size_t l) const { return h_.at(l); }
  std::span<const double> g_values() const noexcept { return g_; }
  std::span<const double> h_values() const noexcept { return h_; }

 private:
  CorrelationTable(Coupling alpha, std::vector<double> g, std::vector<double> h)
      : alpha_(alpha), g_(std::move(g)), h_(std::move(h)) {}

  Coupling alpha_;
  std::vector<double> g_;
  std::vector<double> h_;
};

inline CorrelationTable correlation_table(Coupling alpha, std::size_t l_max,
                                          const SeriesOptions& opts = {}) {
  return CorrelationTable(alpha, l_max, opts);
}

}  // namespace collent

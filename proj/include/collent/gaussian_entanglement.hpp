#pragma once

// Entanglement between the k = 0 collective operators
//
//   Q_X = c_Q sum_{j in X} q_j,   P_X = c_P sum_{j in X} p_j,   X in {A, B},
//
// of two blocks in the chain ground state. The covariance matrix of
// (Q_A, P_A, Q_B, P_B) has vanishing QP entries, so four scalars describe it:
//
//   V = [[G, 0, G_AB, 0], [0, H, 0, H_AB], [G_AB, 0, G, 0], [0, H_AB, 0, H]].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "collent/block_geometry.hpp"
#include "collent/errors.hpp"
#include "collent/lattice_correlations.hpp"

namespace collent {

// Quad precision keeps eps independent of the normalization convention even
// close to separability, where floor / (delta1 delta2) - 1 cancels.
#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
#else
using Wide = long double;
#endif

inline Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

struct CollectiveCovariance {
  Wide g_diag = 0;   // G    = <Q_A^2> = <Q_B^2>
  Wide h_diag = 0;   // H    = <P_A^2> = <P_B^2>
  Wide g_cross = 0;  // G_AB = <Q_A Q_B>
  Wide h_cross = 0;  // H_AB = <P_A P_B>
};

/// delta1 * delta2 below the floor by less than this counts as separable.
inline constexpr double kSeparabilitySlack = 1e-12;

struct EntanglementResult {
  double epsilon = 0.0;
  double delta1 = 0.0;  // G - |G_AB|
  double delta2 = 0.0;  // H - |H_AB|
  double duan = 0.0;
  double uncertainty_floor = 0.25;  // (delta1 delta2)_0
  CollectiveCovariance cov;

  double delta_product() const noexcept { return delta1 * delta2; }

  bool separable() const noexcept {
    return delta_product() >= uncertainty_floor * (1.0 - 4.0 * kSeparabilitySlack);
  }
};

/// Prefactor convention of the collective sums.
enum class Normalization {
  kSqrtN,  // (1/sqrt(n)) sum, canonical: [Q, P] = i
  kSum,    // plain sum
  kMean,   // (1/n) sum
};

/// (delta1 delta2)_0 = (|<[Q, P]>| / 2)^2 for the given convention.
inline Wide uncertainty_floor(Normalization norm, std::size_t n) {
  const Wide nn = static_cast<Wide>(n);
  const Wide quarter = 0.25;
  switch (norm) {
    case Normalization::kSqrtN:
      return quarter;
    case Normalization::kSum:
      return quarter * nn * nn;
    case Normalization::kMean:
      return quarter / (nn * nn);
  }
  return quarter;
}

namespace detail {

// Plain pair sum rescaled to the convention: / n, * 1 or / n^2.
inline Wide normalize(Normalization norm, std::size_t n, Wide sum) {
  const Wide nn = static_cast<Wide>(n);
  switch (norm) {
    case Normalization::kSqrtN:
      return sum / nn;
    case Normalization::kSum:
      return sum;
    case Normalization::kMean:
      return sum / (nn * nn);
  }
  return sum / nn;
}

inline Wide weighted_sum(const LagCounts& counts, std::span<const double> values) {
  Wide sum = 0;
  for (const auto& [lag, count] : counts) {
    sum += static_cast<Wide>(count) * static_cast<Wide>(values[lag]);
  }
  return sum;
}

}  // namespace detail

/// Covariance of the collective operators of two arbitrary, equally sized
/// index sets.
inline CollectiveCovariance covariance_of_indices(const CorrelationTable& table,
                                                  std::span<const std::int64_t> a,
                                                  std::span<const std::int64_t> b,
                                                  Normalization norm = Normalization::kSqrtN) {
  if (a.empty() || a.size() != b.size()) {
    throw DomainError("both blocks must be non-empty and of equal size");
  }
  const auto aa = lag_multiset(a, a);
  const auto ab = lag_multiset(a, b);
  const std::size_t needed = std::max(aa.rbegin()->first, ab.rbegin()->first);
  if (needed > table.l_max()) {
    throw LagBoundError("correlation table reaches lag " + std::to_string(table.l_max()) +
                        " but the block geometry needs lag " + std::to_string(needed));
  }
  const std::size_t n = a.size();
  return {
      detail::normalize(norm, n, detail::weighted_sum(aa, table.g_values())),
      detail::normalize(norm, n, detail::weighted_sum(aa, table.h_values())),
      detail::normalize(norm, n, detail::weighted_sum(ab, table.g_values())),
      detail::normalize(norm, n, detail::weighted_sum(ab, table.h_values())),
  };
}

/// G, H, G_AB, H_AB for the periodic block layout `spec`.
inline CollectiveCovariance covariance_of_blocks(const CorrelationTable& table,
                                                 const BlockSpec& spec,
                                                 Normalization norm = Normalization::kSqrtN) {
  const auto idx = block_indices(spec);
  return covariance_of_indices(table, idx.a, idx.b, norm);
}

/// Variance witness <(Q_A - Q_B)^2> + <(P_A + P_B)^2>; below 2 certifies
/// entanglement.
inline double duan_witness(const CollectiveCovariance& cov) {
  return static_cast<double>(2 * (cov.g_diag - cov.g_cross + cov.h_diag + cov.h_cross));
}

/// Partial-transpose negativity degree eps = max(0, floor / (delta1 delta2) - 1).
inline EntanglementResult negativity(const CollectiveCovariance& cov, Wide floor = 0.25) {
  const Wide delta1 = cov.g_diag - wide_abs(cov.g_cross);
  const Wide delta2 = cov.h_diag - wide_abs(cov.h_cross);
  if (!(delta1 > 0) || !(delta2 > 0)) {
    throw InvalidStateError("unphysical collective covariance: delta1 = " +
                            std::to_string(static_cast<double>(delta1)) +
                            ", delta2 = " + std::to_string(static_cast<double>(delta2)));
  }
  EntanglementResult r;
  r.cov = cov;
  r.uncertainty_floor = static_cast<double>(floor);
  r.delta1 = static_cast<double>(delta1);
  r.delta2 = static_cast<double>(delta2);
  const Wide excess = floor / (delta1 * delta2) - 1;
  r.epsilon = excess > 0 ? static_cast<double>(excess) : 0.0;
  r.duan = duan_witness(cov);
  return r;
}

/// Nearest-neighbour estimate of eps for d = 0 periodic blocks of n = m s
/// oscillators. Unclamped: negative values mean "no entanglement predicted".
inline double approx_negativity(double g0, double g1, double h0, double h1, std::size_t n,
                                std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double position = g0 + (2.0 - (4.0 * mm - 1.0) / nn) * g1;
  const double momentum = h0 + (2.0 - 1.0 / nn) * h1;
  return 1.0 / (4.0 * position * momentum) - 1.0;
}

inline double approx_negativity(const CorrelationTable& table, const BlockSpec& spec) {
  return approx_negativity(table.g(0), table.g(1), table.h(0), table.h(1), spec.n(), spec.m);
}

}  // namespace collent

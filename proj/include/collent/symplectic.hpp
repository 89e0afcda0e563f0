#pragma once

// Fourier map from single-oscillator quadratures to the frequency-dependent
// collective operators of both blocks:
//
//   Q_X^(k) = n^{-1/2} sum_t q_{x_t} e^{+2 pi i t k / n}
//   P_X^(k) = n^{-1/2} sum_t p_{x_t} e^{-2 pi i t k / n},   k = 0..n-1,
//
// where x_t is the t-th site of block X in increasing order. Rows of S are
// ordered (Q_A^0, P_A^0, ..., Q_A^{n-1}, P_A^{n-1}, Q_B^0, ..., then q_j, p_j
// of every uninvolved site in increasing j); columns are (q_0, p_0, q_1, ...).
// With this pair-preserving ordering det S = +1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "collent/block_geometry.hpp"
#include "collent/errors.hpp"

namespace collent {

using ComplexMatrix = Eigen::MatrixXcd;

/// Largest chain handled by the dense verification path.
inline constexpr std::size_t kMaxSymplecticChain = 64;

/// Direct sum of `modes` copies of [[0, 1], [-1, 0]].
inline ComplexMatrix symplectic_form(std::size_t modes) {
  const auto dim = static_cast<Eigen::Index>(2 * modes);
  ComplexMatrix omega = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; j += 2) {
    omega(j, j + 1) = 1.0;
    omega(j + 1, j) = -1.0;
  }
  return omega;
}

inline ComplexMatrix collective_symplectic(std::size_t chain_size, const BlockSpec& spec) {
  validate(spec);
  if (chain_size > kMaxSymplecticChain) {
    throw DomainError("collective_symplectic is a verification path limited to chains of " +
                      std::to_string(kMaxSymplecticChain) + " oscillators");
  }
  if (spec.span() > chain_size) {
    throw DomainError("block layout " + to_string(spec) + " does not fit in a chain of " +
                      std::to_string(chain_size));
  }
  const auto idx = block_indices(spec);
  const std::size_t n = spec.n();
  const auto dim = static_cast<Eigen::Index>(2 * chain_size);
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  Eigen::Index row = 0;
  for (const auto* block : {&idx.a, &idx.b}) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t t = 0; t < n; ++t) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t * k % n) /
                             static_cast<double>(n);
        const std::complex<double> phase = std::polar(scale, angle);
        const auto col = static_cast<Eigen::Index>(2 * (*block)[t]);
        s(row, col) = phase;                   // Q^(k) <- q
        s(row + 1, col + 1) = std::conj(phase);  // P^(k) <- p
      }
      row += 2;
    }
  }
  std::vector<bool> involved(chain_size, false);
  for (const auto j : idx.a) involved[static_cast<std::size_t>(j)] = true;
  for (const auto j : idx.b) involved[static_cast<std::size_t>(j)] = true;
  for (std::size_t j = 0; j < chain_size; ++j) {
    if (involved[j]) continue;
    const auto col = static_cast<Eigen::Index>(2 * j);
    s(row, col) = 1.0;
    s(row + 1, col + 1) = 1.0;
    row += 2;
  }
  return s;
}

struct SymplecticCheck {
  double max_deviation = 0.0;  // max |(S^T Omega S - Omega)_ij|
  std::complex<double> determinant;
};

/// Checks S^T Omega S = Omega with the plain (non-conjugating) transpose.
inline SymplecticCheck verify_symplectic(const ComplexMatrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) {
    throw DomainError("symplectic check needs a square matrix of even dimension");
  }
  const auto omega = symplectic_form(static_cast<std::size_t>(s.rows() / 2));
  const ComplexMatrix residual = s.transpose() * omega * s - omega;
  return {residual.cwiseAbs().maxCoeff(), s.partialPivLu().determinant()};
}

}  // namespace collent

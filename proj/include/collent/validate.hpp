#pragma once

// End-to-end self checks run by `collent validate`.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "collent/block_geometry.hpp"
#include "collent/errors.hpp"
#include "collent/field_continuum.hpp"
#include "collent/gaussian_entanglement.hpp"
#include "collent/lattice_correlations.hpp"
#include "collent/symplectic.hpp"

namespace collent {

enum class Fault { kNone, kFlipG1Sign };

struct ValidateOptions {
  std::size_t oracle_chain = std::size_t{1} << 22;
  double oracle_tolerance = 1e-8;
  std::size_t oracle_l_max = 100;
  Fault fault = Fault::kNone;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline const std::vector<double>& validation_alphas() {
  static const std::vector<double> alphas = {0.1, 0.3, 0.5, 0.9, 0.99};
  return alphas;
}

// Infinite-chain table, possibly corrupted by the requested fault.
inline CorrelationTable production_table(Coupling alpha, std::size_t l_max, Fault fault) {
  auto table = correlation_table(alpha, l_max);
  if (fault == Fault::kNone) return table;
  std::vector<double> g(table.g_values().begin(), table.g_values().end());
  std::vector<double> h(table.h_values().begin(), table.h_values().end());
  if (g.size() > 1) g[1] = -g[1];
  return CorrelationTable::from_values(alpha, std::move(g), std::move(h));
}

inline CheckResult check_oracle(const ValidateOptions& opts) {
  double worst = 0.0;
  for (double a : validation_alphas()) {
    const Coupling alpha(a);
    const auto table = production_table(alpha, opts.oracle_l_max, opts.fault);
    const auto fin = finite_correlations(alpha, opts.oracle_l_max, opts.oracle_chain);
    for (std::size_t l = 0; l <= opts.oracle_l_max; ++l) {
      worst = std::max({worst, std::abs(table.g(l) - fin.g[l]), std::abs(table.h(l) - fin.h[l])});
    }
  }
  return {"oracle_equivalence", worst <= opts.oracle_tolerance,
          "max |infinite - finite| = " + sci(worst) + " (N = " +
              std::to_string(opts.oracle_chain) + ", tol " + sci(opts.oracle_tolerance) + ")"};
}

inline CheckResult check_sign_pattern(const ValidateOptions& opts) {
  std::size_t bad = 0;
  for (double a : validation_alphas()) {
    const auto table = production_table(Coupling(a), opts.oracle_l_max, opts.fault);
    for (std::size_t l = 1; l <= opts.oracle_l_max; ++l) {
      if (!(table.g(l) > 0.0) || !(table.h(l) < 0.0)) ++bad;
    }
    if (!(table.g(0) > 0.0) || !(table.h(0) > 0.0)) ++bad;
  }
  return {"sign_pattern", bad == 0, std::to_string(bad) + " lags with an unexpected sign"};
}

inline CheckResult check_symplectic() {
  double worst_dev = 0.0;
  double worst_det = 0.0;
  for (const BlockSpec spec : {BlockSpec{1, 2, 1}, BlockSpec{2, 3, 1}, BlockSpec{3, 1, 0},
                               BlockSpec{1, 4, 0}}) {
    for (std::size_t chain : {spec.span(), spec.span() + 3}) {
      const auto check = verify_symplectic(collective_symplectic(chain, spec));
      worst_dev = std::max(worst_dev, check.max_deviation);
      worst_det = std::max(worst_det, std::abs(check.determinant - 1.0));
    }
  }
  return {"symplectic", worst_dev <= 1e-12 && worst_det <= 1e-12,
          "max |S^T Omega S - Omega| = " + sci(worst_dev) + ", max |det S - 1| = " +
              sci(worst_det)};
}

inline CheckResult check_rescaling(const ValidateOptions& opts) {
  double worst = 0.0;
  for (double a : {0.5, 0.9, 0.99}) {
    const auto table = production_table(Coupling(a), 80, opts.fault);
    for (const BlockSpec spec : {BlockSpec{1, 1, 0}, BlockSpec{1, 4, 0}, BlockSpec{6, 1, 0},
                                 BlockSpec{3, 2, 1}}) {
      const double base = negativity(covariance_of_blocks(table, spec)).epsilon;
      for (auto norm : {Normalization::kSum, Normalization::kMean}) {
        const double e = negativity(covariance_of_blocks(table, spec, norm),
                                    uncertainty_floor(norm, spec.n()))
                             .epsilon;
        const double scale = std::max(std::abs(base), 1e-300);
        worst = std::max(worst, std::abs(e - base) / scale);
      }
    }
  }
  return {"rescaling_invariance", worst <= 1e-14, "max relative change " + sci(worst)};
}

inline CheckResult check_exchange(const ValidateOptions& opts) {
  double worst = 0.0;
  for (double a : {0.5, 0.99}) {
    const auto table = production_table(Coupling(a), 80, opts.fault);
    for (const BlockSpec spec : {BlockSpec{1, 4, 1}, BlockSpec{3, 2, 0}, BlockSpec{5, 3, 2}}) {
      const auto idx = block_indices(spec);
      const auto ab = negativity(covariance_of_indices(table, idx.a, idx.b));
      const auto ba = negativity(covariance_of_indices(table, idx.b, idx.a));
      worst = std::max({worst, std::abs(ab.epsilon - ba.epsilon), std::abs(ab.duan - ba.duan)});
    }
  }
  return {"exchange_symmetry", worst <= 1e-14, "max |A<->B change| = " + sci(worst)};
}

inline CheckResult check_witness(const ValidateOptions& opts) {
  std::size_t violations = 0;
  std::size_t entangled = 0;
  for (double a : {0.1, 0.5, 0.9, 0.99}) {
    const auto table = production_table(Coupling(a), 200, opts.fault);
    for (std::size_t m = 1; m <= 6; ++m) {
      for (std::size_t s = 1; s <= 6; ++s) {
        for (std::size_t d = 0; d <= 3; ++d) {
          const auto r = negativity(covariance_of_blocks(table, {m, s, d}));
          if (r.duan < 2.0 && r.separable()) ++violations;
          if (!r.separable()) ++entangled;
        }
      }
    }
  }
  return {"witness_dominance", violations == 0,
          std::to_string(violations) + " points with Delta < 2 but eps = 0, " +
              std::to_string(entangled) + " entangled points"};
}

inline CheckResult check_field_null() {
  std::size_t entangled = 0;
  for (double m : {0.1, 1.0, 10.0}) {
    for (double length : {0.5, 1.0, 2.0}) {
      for (double ratio : {1.1, 2.0, 5.0}) {
        if (!field_negativity({m, length, ratio * length}).separable()) ++entangled;
      }
    }
  }
  return {"field_null_result", entangled == 0,
          std::to_string(entangled) + " of 27 window pairs entangled"};
}

}  // namespace detail

inline std::vector<CheckResult> run_validation(const ValidateOptions& opts = {}) {
  if (opts.oracle_chain <= opts.oracle_l_max) {
    throw DomainError("oracle chain must be longer than the highest checked lag");
  }
  if (!(opts.oracle_tolerance > 0.0)) throw DomainError("oracle tolerance must be positive");
  struct NamedCheck {
    const char* name;
    std::function<CheckResult()> run;
  };
  const std::vector<NamedCheck> checks = {
      {"oracle_equivalence", [&] { return detail::check_oracle(opts); }},
      {"sign_pattern", [&] { return detail::check_sign_pattern(opts); }},
      {"symplectic", [] { return detail::check_symplectic(); }},
      {"rescaling_invariance", [&] { return detail::check_rescaling(opts); }},
      {"exchange_symmetry", [&] { return detail::check_exchange(opts); }},
      {"witness_dominance", [&] { return detail::check_witness(opts); }},
      {"field_null_result", [] { return detail::check_field_null(); }},
  };
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    try {
      results.push_back(check.run());
    } catch (const NumericalError& e) {
      results.push_back({check.name, false, e.what()});
    }
  }
  return results;
}

}  // namespace collent

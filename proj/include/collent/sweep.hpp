#pragma once

// Grid evaluation of eps over (alpha, m, s, d). One correlation table per
// alpha, long enough for the widest spec; grid points run on a thread pool
// and are sorted by (alpha, m, s, d) before they are returned, so the result
// does not depend on the number of workers.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <tuple>
#include <vector>

#include "collent/block_geometry.hpp"
#include "collent/errors.hpp"
#include "collent/gaussian_entanglement.hpp"
#include "collent/lattice_correlations.hpp"
#include "collent/report.hpp"

namespace collent {

struct SweepConfig {
  std::vector<double> alphas;
  std::vector<BlockSpec> specs;
  SeriesOptions series;
  std::size_t l_max = 0;           // 0: just long enough for the widest spec
  bool approx = false;             // add the nearest-neighbour estimate (d = 0 only)
  std::size_t oracle_chain = 0;    // > 0: also evaluate eps from an N-site finite chain
  std::size_t jobs = 1;
};

struct SweepRow {
  double alpha = 0.0;
  BlockSpec spec;
  EntanglementResult result;
  std::optional<double> epsilon_approx;
  std::optional<double> epsilon_finite;
};

inline void validate(const SweepConfig& config) {
  if (config.alphas.empty()) throw DomainError("sweep needs at least one alpha");
  if (config.specs.empty()) throw DomainError("sweep needs at least one block spec");
  for (double a : config.alphas) (void)Coupling(a);
  for (const auto& spec : config.specs) validate(spec);
  if (config.oracle_chain != 0) {
    std::size_t widest = 0;
    for (const auto& spec : config.specs) widest = std::max(widest, spec.max_lag());
    widest = std::max(widest, config.l_max);
    if (config.oracle_chain <= widest) {
      throw DomainError("oracle chain of " + std::to_string(config.oracle_chain) +
                        " sites is too short for lag " + std::to_string(widest));
    }
  }
}

namespace detail {

// Runs task(i) for i in [0, count) on `jobs` threads. Every task runs; the
// exception of the lowest failing index is rethrown afterwards.
template <class Task>
void parallel_for(std::size_t count, std::size_t jobs, Task&& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

inline std::vector<SweepRow> run_sweep(SweepConfig config) {
  validate(config);
  std::sort(config.alphas.begin(), config.alphas.end());
  config.alphas.erase(std::unique(config.alphas.begin(), config.alphas.end()),
                      config.alphas.end());
  std::sort(config.specs.begin(), config.specs.end());
  config.specs.erase(std::unique(config.specs.begin(), config.specs.end()), config.specs.end());

  std::size_t l_max = config.l_max;
  if (l_max == 0) {
    for (const auto& spec : config.specs) l_max = std::max(l_max, spec.max_lag());
  }

  std::vector<std::optional<CorrelationTable>> tables(config.alphas.size());
  std::vector<std::optional<CorrelationTable>> finite_tables(config.alphas.size());
  detail::parallel_for(config.alphas.size(), config.jobs, [&](std::size_t i) {
    const Coupling alpha(config.alphas[i]);
    tables[i].emplace(alpha, l_max, config.series);
    if (config.oracle_chain != 0) {
      auto fin = finite_correlations(alpha, l_max, config.oracle_chain);
      finite_tables[i].emplace(
          CorrelationTable::from_values(alpha, std::move(fin.g), std::move(fin.h)));
    }
  });

  const std::size_t per_alpha = config.specs.size();
  std::vector<SweepRow> rows(config.alphas.size() * per_alpha);
  detail::parallel_for(rows.size(), config.jobs, [&](std::size_t i) {
    const std::size_t ai = i / per_alpha;
    const auto& spec = config.specs[i % per_alpha];
    const auto& table = *tables[ai];
    SweepRow& row = rows[i];
    row.alpha = config.alphas[ai];
    row.spec = spec;
    row.result = negativity(covariance_of_blocks(table, spec));
    if (config.approx && spec.d == 0) row.epsilon_approx = approx_negativity(table, spec);
    if (finite_tables[ai]) {
      row.epsilon_finite = negativity(covariance_of_blocks(*finite_tables[ai], spec)).epsilon;
    }
  });
  return rows;
}

inline report::Table sweep_table(const std::vector<SweepRow>& rows, const SweepConfig& config) {
  report::Table table;
  table.schema = "collent-sweep/1";
  table.columns = {"alpha", "m",  "s",      "d",      "n",       "G",     "H",
                   "G_AB",  "H_AB", "delta1", "delta2", "epsilon", "Delta"};
  if (config.approx) table.columns.push_back("epsilon_approx");
  if (config.oracle_chain != 0) table.columns.push_back("epsilon_finite");
  for (const auto& row : rows) {
    const auto& r = row.result;
    std::vector<report::Cell> cells = {
        row.alpha,
        static_cast<std::int64_t>(row.spec.m),
        static_cast<std::int64_t>(row.spec.s),
        static_cast<std::int64_t>(row.spec.d),
        static_cast<std::int64_t>(row.spec.n()),
        static_cast<double>(r.cov.g_diag),
        static_cast<double>(r.cov.h_diag),
        static_cast<double>(r.cov.g_cross),
        static_cast<double>(r.cov.h_cross),
        r.delta1,
        r.delta2,
        report::clean_epsilon(r.epsilon),
        r.duan,
    };
    if (config.approx) cells.push_back(report::optional_cell(row.epsilon_approx));
    if (config.oracle_chain != 0) {
      cells.push_back(report::clean_epsilon(row.epsilon_finite.value_or(0.0)));
    }
    table.add_row(std::move(cells));
  }
  return table;
}

}  // namespace collent

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "collent/cli_args.hpp"
#include "collent/report.hpp"
#include "collent/sweep.hpp"

using namespace collent;

TEST(Format, SeventeenSignificantDigitsRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.9108718817705917}) {
    const auto text = report::format_double(x);
    EXPECT_EQ(std::stod(text), x) << text;
  }
  EXPECT_EQ(report::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(report::format_double(-0.0), "0");
  EXPECT_EQ(report::format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(report::format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Format, TinyEpsilonIsWrittenAsZero) {
  EXPECT_EQ(report::clean_epsilon(9.9e-13), 0.0);
  EXPECT_EQ(report::clean_epsilon(1e-12), 1e-12);
  EXPECT_EQ(report::clean_epsilon(0.3), 0.3);
}

TEST(Csv, VersionLineHeaderAndEmptyCells) {
  report::Table t;
  t.schema = "demo/1";
  t.columns = {"a", "b", "c"};
  t.add_row({std::int64_t{3}, 0.5, report::Cell{}});
  t.add_row({std::int64_t{-1}, 2.0, std::string("x,y")});
  EXPECT_EQ(report::to_csv(t), "# demo/1\na,b,c\n3,0.5,\n-1,2,\"x,y\"\n");
  EXPECT_THROW(t.add_row({1.0}), std::logic_error);
}

TEST(Json, RowsKeyedByColumnWithNullAndNonFinite) {
  report::Table t;
  t.schema = "demo/1";
  t.columns = {"x", "y"};
  t.add_row({1.5, report::Cell{}});
  t.add_row({std::numeric_limits<double>::infinity(), std::int64_t{4}});
  const auto doc = nlohmann::json::parse(report::to_json(t));
  EXPECT_EQ(doc["schema"], "demo/1");
  EXPECT_EQ(doc["columns"], (std::vector<std::string>{"x", "y"}));
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][0]["x"], 1.5);
  EXPECT_TRUE(doc["rows"][0]["y"].is_null());
  EXPECT_EQ(doc["rows"][1]["x"], "inf");
  EXPECT_EQ(doc["rows"][1]["y"], 4);
}

TEST(Json, DoublesRoundTrip) {
  report::Table t;
  t.schema = "demo/1";
  t.columns = {"x"};
  t.add_row({0.9108718817705917});
  const auto doc = nlohmann::json::parse(report::to_json(t));
  EXPECT_EQ(doc["rows"][0]["x"].get<double>(), 0.9108718817705917);
}

TEST(GridArgs, IntegerListsAndRanges) {
  EXPECT_EQ(cli::parse_size_list("3", "m"), (std::vector<std::size_t>{3}));
  EXPECT_EQ(cli::parse_size_list("1..4", "m"), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_EQ(cli::parse_size_list("1,5..6,2", "m"), (std::vector<std::size_t>{1, 5, 6, 2}));
  for (const char* bad : {"", "a", "1..", "..3", "4..2", "1,,2", "-1", "1.5"}) {
    EXPECT_THROW(cli::parse_size_list(bad, "m"), DomainError) << bad;
  }
}

TEST(GridArgs, RealListsAndSteppedRanges) {
  EXPECT_EQ(cli::parse_real_list("0.5,0.99", "alpha"), (std::vector<double>{0.5, 0.99}));
  const auto r = cli::parse_real_list("0.1..0.9:0.1", "alpha");
  ASSERT_EQ(r.size(), 9u);
  EXPECT_NEAR(r.back(), 0.9, 1e-15);
  EXPECT_EQ(cli::parse_real_list("1..2:0.5", "r"), (std::vector<double>{1.0, 1.5, 2.0}));
  for (const char* bad : {"", "x", "0.1..0.9", "0.1..0.9:0", "0.9..0.1:0.1", "0.5;0.6"}) {
    EXPECT_THROW(cli::parse_real_list(bad, "alpha"), DomainError) << bad;
  }
}

TEST(Sweep, RowsSortedAndDeduplicated) {
  SweepConfig config;
  config.alphas = {0.9, 0.5, 0.9};
  config.specs = {{2, 1, 0}, {1, 2, 1}, {1, 1, 0}, {1, 2, 1}};
  const auto rows = run_sweep(config);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& p = rows[i - 1];
    const auto& q = rows[i];
    EXPECT_TRUE(p.alpha < q.alpha || (p.alpha == q.alpha && p.spec < q.spec));
  }
}

TEST(Sweep, IndependentOfWorkerCount) {
  SweepConfig config;
  config.alphas = {0.3, 0.5, 0.9, 0.99};
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t s = 1; s <= 4; ++s) {
      for (std::size_t d = 0; d <= 2; ++d) config.specs.push_back({m, s, d});
    }
  }
  config.approx = true;
  config.jobs = 1;
  const auto serial = report::to_csv(sweep_table(run_sweep(config), config));
  for (std::size_t jobs : {2u, 3u, 8u}) {
    config.jobs = jobs;
    EXPECT_EQ(report::to_csv(sweep_table(run_sweep(config), config)), serial) << jobs;
  }
}

TEST(Sweep, MatchesDirectEvaluation) {
  SweepConfig config;
  config.alphas = {0.99};
  config.specs = {{1, 3, 1}};
  const auto rows = run_sweep(config);
  ASSERT_EQ(rows.size(), 1u);
  const auto table = correlation_table(Coupling(0.99), BlockSpec{1, 3, 1}.max_lag());
  const auto direct = negativity(covariance_of_blocks(table, {1, 3, 1}));
  EXPECT_EQ(rows[0].result.epsilon, direct.epsilon);
  EXPECT_EQ(rows[0].result.duan, direct.duan);
}

TEST(Sweep, ApproxOnlyForContiguousBlocks) {
  SweepConfig config;
  config.alphas = {0.3};
  config.specs = {{4, 1, 0}, {4, 1, 1}};
  config.approx = true;
  const auto rows = run_sweep(config);
  EXPECT_TRUE(rows[0].epsilon_approx.has_value());
  EXPECT_FALSE(rows[1].epsilon_approx.has_value());
}

TEST(Sweep, FiniteChainColumnAgrees) {
  SweepConfig config;
  config.alphas = {0.9};
  config.specs = {{2, 2, 0}, {1, 3, 1}};
  config.oracle_chain = std::size_t{1} << 16;
  for (const auto& row : run_sweep(config)) {
    ASSERT_TRUE(row.epsilon_finite.has_value());
    EXPECT_NEAR(*row.epsilon_finite, row.result.epsilon, 1e-8) << to_string(row.spec);
  }
}

TEST(Sweep, InvalidConfigurations) {
  SweepConfig config;
  config.specs = {{1, 1, 0}};
  EXPECT_THROW(run_sweep(config), DomainError);
  config.alphas = {1.0};
  EXPECT_THROW(run_sweep(config), DomainError);
  config.alphas = {0.5};
  config.specs = {};
  EXPECT_THROW(run_sweep(config), DomainError);
  config.specs = {{1, 4, 1}};
  config.l_max = 3;
  EXPECT_THROW(run_sweep(config), LagBoundError);
  config.l_max = 0;
  config.oracle_chain = 5;
  EXPECT_THROW(run_sweep(config), DomainError);
}

TEST(Sweep, TableColumns) {
  SweepConfig config;
  config.alphas = {0.5};
  config.specs = {{1, 1, 0}};
  config.approx = true;
  const auto t = sweep_table(run_sweep(config), config);
  EXPECT_EQ(t.schema, "collent-sweep/1");
  EXPECT_EQ(t.columns.back(), "epsilon_approx");
  EXPECT_EQ(t.columns.size(), 14u);
}

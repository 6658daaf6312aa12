#pragma once

#include "nilequi_cli/config.hpp"

#include <nilequi/diagnostics.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nilequi::cli {

using ordered_json = nlohmann::ordered_json;

/// Command-line overrides applied on top of a config.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<long long> panels;
  std::optional<long> height;
};

void apply(ExperimentConfig& cfg, const Overrides& o);

ordered_json verdict_to_json(const Verdict& v);

/// Classification of the configured measure.
ordered_json cmd_check(const ExperimentConfig& cfg);

/// Weyl sums (and, with samples, empirical discrepancies) over the grid.
/// Throws BudgetError before computing if the estimated work is too large.
ConvergenceTable cmd_simulate(const ExperimentConfig& cfg);

/// "csv" or "json".
std::string render_table(const ConvergenceTable& table, std::string_view format);

struct CounterexampleOptions {
  int m = 3;
  std::optional<int> depth;
  long height = 5;
  bool self_similarity = false;
  bool check = false;
};

struct Report {
  ordered_json json;
  bool ok = true;
};

/// Known names: cantor-measure, cantor-curve, product-cantor:<d>. Unknown
/// names throw ConfigError listing them.
Report cmd_counterexample(const std::string& name, const CounterexampleOptions& opts);

/// Exact BCH against matrix exp/log on the stock matrix realisations.
Report cmd_bch_selftest(std::uint64_t seed, int trials);

}  // namespace nilequi::cli

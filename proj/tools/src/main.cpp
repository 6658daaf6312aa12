#include "nilequi_cli/commands.hpp"

#include <nilequi/errors.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kBudget = 3 };

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw nilequi::cli::ConfigError("--out", "cannot write " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nilequi::cli;

  CLI::App app{"Equidistribution of dilated measures on nilmanifolds"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json";
  Overrides ov;
  std::uint64_t seed = 0;
  long long panels = 0;
  long height = 0;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--panels", panels, "Quadrature panels (default: oscillation guard)");
    sub->add_option("--height", height, "Character height bound");
    sub->add_option("--out", out_path, "Write output to a file instead of stdout");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* check = app.add_subcommand("check", "Classify the configured measure");
  add_common(check, true);
  auto* simulate = app.add_subcommand("simulate", "Weyl sums and discrepancies over the parameter grid");
  add_common(simulate, true);
  std::string fixture;
  CounterexampleOptions cx;
  int depth = 0;
  auto* counter = app.add_subcommand("counterexample", "Run the Cantor counterexample checks");
  counter->add_option("name", fixture, "cantor-measure, cantor-curve or product-cantor:<d>")->required();
  counter->add_option("--m", cx.m, "Largest m in the t = 3^m identities");
  counter->add_option("--depth", depth, "Ternary depth");
  counter->add_flag("--self-similarity", cx.self_similarity, "Check 3 psi(b/3 + u) - psi(3u) on a ternary grid");
  counter->add_flag("--check", cx.check, "Require the expected verdict");
  add_common(counter, false);
  int trials = 20;
  auto* selftest = app.add_subcommand("bch-selftest", "Compare BCH with matrix exp/log");
  selftest->add_option("--trials", trials, "Random pairs per realisation");
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  auto sub = app.get_subcommands().front();
  if (sub->count("--seed")) ov.seed = seed;
  if (sub->count("--panels")) ov.panels = panels;
  if (sub->count("--height")) ov.height = height;

  try {
    if (sub == check) {
      auto cfg = load_config(config_path);
      apply(cfg, ov);
      emit(cmd_check(cfg).dump(2) + "\n", out_path);
      return kOk;
    }
    if (sub == simulate) {
      auto cfg = load_config(config_path);
      apply(cfg, ov);
      if (!sub->count("--format")) format = "csv";
      emit(render_table(cmd_simulate(cfg), format), out_path);
      return kOk;
    }
    if (sub == counter) {
      if (counter->count("--depth")) cx.depth = depth;
      if (ov.height) cx.height = *ov.height;
      auto rep = cmd_counterexample(fixture, cx);
      emit(rep.json.dump(2) + "\n", out_path);
      return rep.ok ? kOk : kFailed;
    }
    auto rep = cmd_bch_selftest(ov.seed.value_or(0), trials);
    emit(rep.json.dump(2) + "\n", out_path);
    return rep.ok ? kOk : kFailed;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const nilequi::UndecidableError& e) {
    std::cerr << "undecidable: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}

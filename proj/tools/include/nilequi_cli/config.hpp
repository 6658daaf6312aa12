#pragma once

#include <nilequi/measure.hpp>
#include <nilequi/obstruction.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilequi::cli {

/// Invalid experiment config; `path` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Estimated work beyond the configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string name;
  std::shared_ptr<const Nilsystem> system;
  std::shared_ptr<const MeasureSpec> measure;
  std::vector<double> grid;
  std::vector<Character> characters;
  long height = 20;
  ParameterMode parameter = ParameterMode::Continuous;
  std::optional<long long> panels;
  std::uint64_t seed = 0;
  double budget = 2e9;  // integrand evaluations
  std::size_t samples = 0;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

Rational parse_rational_field(const nlohmann::json& v, const std::string& path);

}  // namespace nilequi::cli

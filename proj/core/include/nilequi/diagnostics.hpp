#pragma once

#include "nilequi/measure.hpp"
#include "nilequi/obstruction.hpp"

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nilequi {

/// int chi o q dmu. The trivial character gives exactly 1.
std::complex<double> weyl_sum(const Character& chi, const DilatedMeasure& mu, const IntegrationOptions& opts = {});

/// x -> e(k . x_{1..m}) on the nilmanifold.
TestFunction character_function(std::vector<std::int64_t> k);

/// t -> int f dmu_t
using Transform = std::function<std::complex<double>(double)>;

struct WeakAverage {
  double value = 0.0;
  double step = 0.0;
  std::vector<std::string> warnings;
};

/// (1/N) sum_{n=1}^{N} |int f dmu_n|^2
double weak_average_discrete(const Transform& transform, long long N);

/// (1/(T - t0)) int_{t0}^T |int f dmu_t|^2 dt by the trapezoid rule with the
/// given step (the last step is shortened to end at T).
WeakAverage weak_average_continuous(const Transform& transform, double T, double step = 0.5, double t0 = 0.0);

/// Warning text when the Haar mean of f is not (numerically) zero.
std::optional<std::string> haar_mean_warning(const TestFunction& f, int dim, int panels = 16);

/// Exact star discrepancy of points in [0, 1) against Lebesgue measure.
double star_discrepancy_1d(std::vector<double> points);

/// max over non-zero k with |k|_inf <= H of |mean e(k . q(x))|, the
/// truncated Erdos-Turan proxy for discrepancy on the torus factor.
double character_discrepancy(const std::vector<NilmanifoldPoint>& points, int abelian_dim, int height);

/// log(exp(rho_t phi(u + xi)) exp(-rho_t phi(u))).
Vec<double> psi_t(const NilAlgebra& g, const Curve& phi, const DilationFamily& family, double u, double xi, double t);

/// (t / l) int_{s0}^{s0 + l/t} f(exp(rho_t phi(s)) x0) ds, midpoint rule.
std::complex<double> shrinking_window_average(const TestFunction& f, const Curve& phi, const Nilsystem& system,
                                              double s0, double ell, double t, long long panels);

/// Rows of (parameter, statistic, value, meta) kept sorted by parameter.
class ConvergenceTable {
 public:
  struct Row {
    double param;
    std::string stat;
    double value;
    std::string meta;
  };

  void add(double param, std::string stat, double value, std::string meta = {});
  void set_metadata(const std::string& key, std::string value) { metadata_[key] = std::move(value); }

  /// Stable sort by parameter.
  const std::vector<Row>& rows() const;
  const std::map<std::string, std::string>& metadata() const { return metadata_; }

  std::string to_csv() const;

 private:
  mutable std::vector<Row> rows_;
  mutable bool sorted_ = true;
  std::map<std::string, std::string> metadata_;
};

/// Shortest round-trip decimal for a double.
std::string format_number(double x);

}  // namespace nilequi

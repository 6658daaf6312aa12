#pragma once

#include "nilequi/curve.hpp"
#include "nilequi/dilation.hpp"
#include "nilequi/lattice.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nilequi {

struct AtomicMeasure {
  std::vector<Vec<Rational>> points;
  std::vector<Rational> weights;  // positive, summing to one
};

struct CurvePushforward {
  Curve curve;
};

/// psi_* lambda placed on coordinate `coord` of a `dim`-dimensional algebra.
struct Cantor1D {
  int dim = 1;
  int coord = 0;
  int depth = 12;
};

class MeasureSpec;

/// One one-dimensional factor per coordinate of g.
struct ProductMeasure {
  std::vector<MeasureSpec> factors;
};

/// Probability measure nu on g.
class MeasureSpec {
 public:
  using Variant = std::variant<AtomicMeasure, CurvePushforward, Cantor1D, ProductMeasure>;

  static MeasureSpec atomic(std::vector<Vec<Rational>> points, std::vector<Rational> weights);
  static MeasureSpec dirac(Vec<Rational> point);
  static MeasureSpec curve(Curve c);
  static MeasureSpec cantor(int dim = 1, int coord = 0, int depth = 12);
  /// Each factor must have dimension one.
  static MeasureSpec product(std::vector<MeasureSpec> factors);

  int dim() const;
  const Variant& variant() const { return v_; }

  /// Factor has no atoms (used by the product criterion).
  bool non_atomic() const;
  /// Heaviest atom (first among ties); nullopt when there is none.
  std::optional<std::pair<Vec<Rational>, Rational>> heaviest_atom() const;

 private:
  explicit MeasureSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// The (algebra, family, base point) triple shared by a family of measures.
class Nilsystem {
 public:
  Nilsystem(NilAlgebra algebra, DilationFamily family, NilmanifoldPoint base);
  Nilsystem(NilAlgebra algebra, DilationFamily family);

  const NilAlgebra& algebra() const { return algebra_; }
  const DilationFamily& family() const { return family_; }
  const NilmanifoldPoint& base() const { return base_; }
  const TorusCoefficients& torus() const { return torus_; }

  /// exp(rho_t y) . x0, reduced into the fundamental domain.
  NilmanifoldPoint map(const Vec<double>& y, double t) const;

 private:
  NilAlgebra algebra_;
  DilationFamily family_;
  NilmanifoldPoint base_;
  Vec<double> base_log_;
  TorusCoefficients torus_;
};

/// mu_{nu, x0, rho_t}: a handle, nothing is evaluated until integrated.
struct DilatedMeasure {
  std::shared_ptr<const MeasureSpec> spec;
  std::shared_ptr<const Nilsystem> system;
  double t = 0.0;
};

DilatedMeasure dilate(std::shared_ptr<const MeasureSpec> spec, std::shared_ptr<const Nilsystem> system, double t);

struct IntegrationOptions {
  std::optional<long long> panels;      // curve quadrature; default oscillation_guard
  std::optional<int> cantor_depth;      // overrides the spec depth
  long long product_budget = 2'000'000;  // grid points for product measures
};

struct IntegrationResult {
  std::complex<double> value;
  long long evaluations = 0;
  std::vector<std::string> warnings;
};

using TestFunction = std::function<std::complex<double>(const NilmanifoldPoint&)>;

/// ceil(64 (1 + |t|)^{d_max} deg_max).
long long oscillation_guard(double t, int family_degree, int curve_degree);
long long oscillation_guard(const DilatedMeasure& mu);

IntegrationResult integrate(const TestFunction& f, const DilatedMeasure& mu, const IntegrationOptions& opts = {});

/// Integral of chi o q against mu through the torus projection:
/// chi(q(x0)) * int e(sum_i t^i k . A_i y) dnu(y). Atomic and Cantor parts
/// are evaluated in closed form, curves by midpoint quadrature of the phase
/// polynomial.
IntegrationResult integrate_character(const std::vector<std::int64_t>& k, const DilatedMeasure& mu,
                                      const IntegrationOptions& opts = {});

std::vector<NilmanifoldPoint> sample(const DilatedMeasure& mu, std::size_t count, std::uint64_t seed);

/// Lazily evaluated handles over a non-empty increasing grid.
std::vector<std::pair<double, DilatedMeasure>> cesaro_family(std::shared_ptr<const MeasureSpec> spec,
                                                             std::shared_ptr<const Nilsystem> system,
                                                             const std::vector<double>& grid);

/// Grids used by the simulations.
std::vector<double> integer_grid(long long first, long long last);
std::vector<double> geometric_grid(double base, int first_exp, int last_exp);

}  // namespace nilequi

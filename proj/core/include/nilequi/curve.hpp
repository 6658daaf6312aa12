#pragma once

#include "nilequi/rational.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace nilequi {

/// phi(u) = sum_j coeffs[j] u^j for u in [from, to].
struct PolySegment {
  Rational from;
  Rational to;
  std::vector<Vec<Rational>> coeffs;  // coeffs[j] in g, length dim
};

/// Continuous or discontinuous piecewise-polynomial curve on [0, 1]. The
/// segments partition [0, 1] in order.
struct PiecewisePolynomial {
  int dim = 0;
  std::vector<PolySegment> segments;
};

/// u -> u e_{u_coord} + psi(u) e_{psi_coord}; without `u_coord` the curve is
/// psi(u) e_{psi_coord} alone. Coordinates are 0-based.
struct CantorStaircase {
  int dim = 0;
  std::optional<int> u_coord;
  int psi_coord = 0;
  int depth = 12;  // digits used when the curve is sampled pointwise
};

/// Opaque curve; equidistribution questions about it are not decided.
struct CallableCurve {
  int dim = 0;
  std::function<Vec<double>(double)> value;
  std::function<Vec<double>(double)> derivative;  // may be empty
};

class Curve {
 public:
  using Variant = std::variant<PiecewisePolynomial, CantorStaircase, CallableCurve>;

  static constexpr int kMaxDegree = 12;

  /// Validates dimensions, ordering and coverage of [0, 1].
  static Curve polynomial(int dim, std::vector<PolySegment> segments);
  /// Single polynomial on [0, 1].
  static Curve polynomial(int dim, std::vector<Vec<Rational>> coeffs);
  static Curve cantor(int dim, std::optional<int> u_coord, int psi_coord, int depth = 12);
  static Curve callable(int dim, std::function<Vec<double>(double)> value,
                        std::function<Vec<double>(double)> derivative = {});

  int dim() const;
  /// Largest polynomial degree; 1 for the staircase and callable curves.
  int degree() const;
  const Variant& variant() const { return v_; }

  Vec<double> value(double u) const;
  /// nullopt when no derivative is available at u.
  std::optional<Vec<double>> derivative(double u) const;

 private:
  explicit Curve(Variant v);
  std::size_t segment_index(double u) const;

  Variant v_;
  // double copies of polynomial segments
  std::vector<double> bounds_d_;
  std::vector<std::vector<Vec<double>>> coeffs_d_;
};

/// Horner evaluation of sum_j c[j] u^j.
Vec<double> eval_poly(const std::vector<Vec<double>>& c, double u);

}  // namespace nilequi

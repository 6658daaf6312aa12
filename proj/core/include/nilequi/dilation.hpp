#pragma once

#include "nilequi/lie_algebra.hpp"
#include "nilequi/matrix.hpp"

#include <vector>

namespace nilequi {

/// rho_t = sum_j t^j B_j, each B_j an n x n rational matrix acting on g.
class DilationFamily {
 public:
  explicit DilationFamily(std::vector<Matrix<Rational>> coeffs);

  /// rho_t = t * Id.
  static DilationFamily scalar(int dim);
  /// rho_t = sum_j t^j diag(powers) where each basis vector e_i gets t^powers[i].
  static DilationFamily diagonal_powers(const std::vector<int>& powers);

  int dim() const { return static_cast<int>(coeffs_.front().rows()); }
  /// Highest power of t with a nonzero coefficient (0 for constant families).
  int degree() const;
  const std::vector<Matrix<Rational>>& coeffs() const { return coeffs_; }

  /// rho_t v, Horner evaluation.
  Vec<double> apply(double t, const Vec<double>& v) const;

 private:
  std::vector<Matrix<Rational>> coeffs_;
  std::vector<Matrix<double>> coeffs_d_;
};

Matrix<double> eval_rho(const DilationFamily& family, double t);

/// dq o rho_t = sum_{i=0}^{d1} t^i A_i with A_i the first m rows of B_i.
struct TorusCoefficients {
  std::vector<Matrix<Rational>> A;  // A[0..d1]; always at least A[0]
  int d1 = 0;
  bool degenerate = false;  // A_i = 0 for every i >= 1
  bool has_constant_term() const { return !A.front().is_zero(); }
};

TorusCoefficients torus_coefficients(const DilationFamily& family, const NilAlgebra& g);

struct DegreeData {
  std::vector<int> Dk;  // Dk[k-1] = degree in t of Q_k o rho_t, k = 1..kappa
  int D = 0;
};

/// D_k from the leading rows of each B_j; D by enumerating every composition
/// k_1 + ... + k_r <= kappa with parts in [1, kappa].
DegreeData degree_data(const DilationFamily& family, const NilAlgebra& g);

/// max { sum D_{k_m} : sum k_m <= kappa, 1 <= k_m <= kappa, 1 <= r <= kappa }.
int combine_degrees(const std::vector<int>& Dk);

/// Q_k o rho_t has degree <= k in t for every k.
bool check_graded_condition(const DilationFamily& family, const NilAlgebra& g);

}  // namespace nilequi

#pragma once

#include "nilequi/lie_algebra.hpp"
#include "nilequi/matrix.hpp"

#include <string>
#include <vector>

namespace nilequi {

/// A nilpotent Lie algebra realised by strictly upper-triangular rational
/// matrices. exp and log are finite series here, so products in the group can
/// be computed by matrix multiplication with no truncation.
class MatrixRealization {
 public:
  MatrixRealization(std::string name, std::vector<Matrix<Rational>> basis);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  std::size_t size() const { return basis_.front().rows(); }

  Matrix<Rational> to_matrix(const Vec<Rational>& x) const;
  /// Coordinates of a matrix in the span of the basis; throws if outside.
  Vec<Rational> from_matrix(const Matrix<Rational>& m) const;

  /// Structure constants read off from matrix commutators.
  NilAlgebra algebra() const;

  /// log(exp(X) exp(Y)) through matrix exponentials.
  Vec<Rational> product_log(const Vec<Rational>& x, const Vec<Rational>& y) const;

 private:
  std::string name_;
  std::vector<Matrix<Rational>> basis_;
  Matrix<Rational> coord_system_;  // entries x basis, for from_matrix
  std::vector<std::size_t> pivot_entries_;
};

Matrix<Rational> exp_nilpotent(const Matrix<Rational>& n);
Matrix<Rational> log_unipotent(const Matrix<Rational>& u);

/// Heisenberg (3x3), standard filiform (4x4), five-dimensional Heisenberg
/// (4x4), strictly upper 4x4, filiform 5x5.
std::vector<MatrixRealization> standard_realizations();

}  // namespace nilequi

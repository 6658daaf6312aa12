#include "nilequi/unipotent.hpp"

#include "nilequi/errors.hpp"
#include "nilequi/exact_linalg.hpp"

namespace nilequi {

namespace {

Matrix<Rational> elementary(std::size_t n, std::size_t i, std::size_t j) {
  Matrix<Rational> m(n, n);
  m(i - 1, j - 1) = 1;
  return m;
}

Matrix<Rational> shift(std::size_t n) {
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1;
  return m;
}

}  // namespace

MatrixRealization::MatrixRealization(std::string name, std::vector<Matrix<Rational>> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
  if (basis_.empty()) throw DimensionError("matrix realization needs a basis");
  const std::size_t n = basis_.front().rows();
  for (const auto& b : basis_) {
    if (b.rows() != n || b.cols() != n) throw DimensionError("basis matrices must be square of equal size");
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c <= r; ++c)
        if (b(r, c) != 0) throw ValidationError("basis matrices must be strictly upper triangular");
  }
  // Each column of coord_system_ is a flattened basis matrix; pick rows
  // (matrix entries) that determine the coordinates.
  Matrix<Rational> sys(n * n, basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k)
    for (std::size_t e = 0; e < n * n; ++e) sys(e, k) = basis_[k](e / n, e % n);
  Matrix<Rational> t(basis_.size(), n * n);
  for (std::size_t r = 0; r < n * n; ++r)
    for (std::size_t c = 0; c < basis_.size(); ++c) t(c, r) = sys(r, c);
  pivot_entries_ = row_reduce(t);
  if (pivot_entries_.size() != basis_.size()) throw ValidationError("basis matrices are linearly dependent");
  coord_system_ = sys;
}

Matrix<Rational> MatrixRealization::to_matrix(const Vec<Rational>& x) const {
  if (x.size() != basis_.size()) throw DimensionError("coordinate vector has wrong length");
  Matrix<Rational> m(size(), size());
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != 0) m = m + x[k] * basis_[k];
  return m;
}

Vec<Rational> MatrixRealization::from_matrix(const Matrix<Rational>& m) const {
  const std::size_t n = size(), d = basis_.size();
  Matrix<Rational> a(d, d);
  Vec<Rational> b(d);
  for (std::size_t r = 0; r < d; ++r) {
    const std::size_t e = pivot_entries_[r];
    for (std::size_t c = 0; c < d; ++c) a(r, c) = coord_system_(e, c);
    b[r] = m(e / n, e % n);
  }
  auto x = solve(a, b);
  if (!(to_matrix(x) == m)) throw ValidationError("matrix lies outside the realised algebra");
  return x;
}

NilAlgebra MatrixRealization::algebra() const {
  std::vector<BracketSpec> specs;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      auto c = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      if (c.is_zero()) continue;
      specs.push_back(BracketSpec{static_cast<int>(i), static_cast<int>(j), from_matrix(c)});
    }
  return NilAlgebra::create(dim(), specs);
}

Vec<Rational> MatrixRealization::product_log(const Vec<Rational>& x, const Vec<Rational>& y) const {
  return from_matrix(log_unipotent(exp_nilpotent(to_matrix(x)) * exp_nilpotent(to_matrix(y))));
}

Matrix<Rational> exp_nilpotent(const Matrix<Rational>& n) {
  const std::size_t sz = n.rows();
  auto out = Matrix<Rational>::identity(sz);
  auto term = Matrix<Rational>::identity(sz);
  for (std::size_t k = 1; k < sz; ++k) {
    term = Rational(1, static_cast<unsigned long>(k)) * (term * n);
    out = out + term;
  }
  return out;
}

Matrix<Rational> log_unipotent(const Matrix<Rational>& u) {
  const std::size_t sz = u.rows();
  const auto n = u - Matrix<Rational>::identity(sz);
  Matrix<Rational> out(sz, sz);
  auto power = Matrix<Rational>::identity(sz);
  for (std::size_t k = 1; k < sz; ++k) {
    power = power * n;
    Rational c(k % 2 == 1 ? 1 : -1, static_cast<unsigned long>(k));
    c.canonicalize();
    out = out + c * power;
  }
  return out;
}

std::vector<MatrixRealization> standard_realizations() {
  std::vector<MatrixRealization> out;
  out.emplace_back("heisenberg3", std::vector{elementary(3, 1, 2), elementary(3, 2, 3), elementary(3, 1, 3)});
  out.emplace_back("filiform4", std::vector{shift(4), elementary(4, 3, 4), elementary(4, 2, 4), elementary(4, 1, 4)});
  out.emplace_back("heisenberg5", std::vector{elementary(4, 1, 2), elementary(4, 1, 3), elementary(4, 2, 4),
                                              elementary(4, 3, 4), elementary(4, 1, 4)});
  out.emplace_back("upper4", std::vector{elementary(4, 1, 2), elementary(4, 2, 3), elementary(4, 3, 4),
                                         elementary(4, 1, 3), elementary(4, 2, 4), elementary(4, 1, 4)});
  out.emplace_back("filiform5", std::vector{shift(5), elementary(5, 4, 5), elementary(5, 3, 5), elementary(5, 2, 5),
                                            elementary(5, 1, 5)});
  return out;
}

}  // namespace nilequi

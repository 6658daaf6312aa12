#include "nilequi/lie_algebra.hpp"

#include "nilequi/exact_linalg.hpp"

#include <fmt/format.h>

namespace nilequi {

namespace {

std::size_t idx(int n, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)) *
             static_cast<std::size_t>(n) +
         static_cast<std::size_t>(k);
}

}  // namespace

void NilAlgebra::check_dims(std::size_t a, std::size_t b) const {
  if (a != static_cast<std::size_t>(dim_) || b != static_cast<std::size_t>(dim_))
    throw DimensionError(fmt::format("expected vectors of length {}, got {} and {}", dim_, a, b));
}

int NilAlgebra::weight(int i) const {
  int w = 0;
  for (int k = 1; k < kappa_; ++k)
    if (i >= level_start_[static_cast<std::size_t>(k)]) w = k;
  return w;
}

const Rational& NilAlgebra::structure_constant(int i, int j, int k) const { return c_.at(idx(dim_, i, j, k)); }

NilAlgebra NilAlgebra::create(int dim, const std::vector<BracketSpec>& brackets, std::optional<int> declared_kappa,
                              std::optional<int> declared_abelian_dim) {
  if (dim < 1) throw ValidationError("algebra dimension must be positive");
  NilAlgebra a;
  a.dim_ = dim;
  a.specs_ = brackets;
  a.c_.assign(static_cast<std::size_t>(dim) * dim * dim, Rational(0));
  std::vector<bool> given(static_cast<std::size_t>(dim) * dim, false);

  for (const auto& b : brackets) {
    if (b.i < 0 || b.i >= dim || b.j < 0 || b.j >= dim)
      throw ValidationError(fmt::format("bracket index ({}, {}) out of range", b.i + 1, b.j + 1));
    if (static_cast<int>(b.coeffs.size()) != dim)
      throw ValidationError(fmt::format("bracket [e{}, e{}] needs {} coefficients, got {}", b.i + 1, b.j + 1, dim,
                                        b.coeffs.size()));
    if (b.i == b.j) {
      if (!is_zero(b.coeffs))
        throw ValidationError(fmt::format("antisymmetry violated: [e{0}, e{0}] != 0", b.i + 1));
      continue;
    }
    const auto key = static_cast<std::size_t>(b.i) * dim + b.j;
    if (given[key]) throw ValidationError(fmt::format("bracket [e{}, e{}] given twice", b.i + 1, b.j + 1));
    given[key] = true;
    const auto mirror = static_cast<std::size_t>(b.j) * dim + b.i;
    for (int k = 0; k < dim; ++k) {
      const auto& v = b.coeffs[static_cast<std::size_t>(k)];
      if (given[mirror] && a.c_[idx(dim, b.j, b.i, k)] != -v)
        throw ValidationError(fmt::format("antisymmetry violated: [e{0}, e{1}] != -[e{1}, e{0}] (component e{2})",
                                          b.i + 1, b.j + 1, k + 1));
      a.c_[idx(dim, b.i, b.j, k)] = v;
      a.c_[idx(dim, b.j, b.i, k)] = -v;
    }
  }

  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        const auto& c = a.c_[idx(dim, i, j, k)];
        if (c != 0) {
          a.terms_q_.push_back({i, j, k, c});
          a.terms_d_.push_back({i, j, k, c.get_d()});
        }
      }

  // Jacobi on basis triples.
  for (int x = 0; x < dim; ++x)
    for (int y = x + 1; y < dim; ++y)
      for (int z = y + 1; z < dim; ++z) {
        auto ex = a.basis_vector<Rational>(x), ey = a.basis_vector<Rational>(y), ez = a.basis_vector<Rational>(z);
        auto jac = a.bracket(ex, a.bracket(ey, ez)) + a.bracket(ey, a.bracket(ez, ex)) +
                   a.bracket(ez, a.bracket(ex, ey));
        if (!is_zero(jac))
          throw ValidationError(fmt::format("Jacobi identity fails on (e{}, e{}, e{})", x + 1, y + 1, z + 1));
      }

  // Lower central series g^(k) = [g, g^(k-1)], checked against basis tails.
  std::vector<Vec<Rational>> level;  // spanning set of g^(k)
  for (int i = 0; i < dim; ++i) level.push_back(a.basis_vector<Rational>(i));
  a.level_start_ = {0};
  int k = 0;
  while (true) {
    std::vector<Vec<Rational>> next;
    for (int i = 0; i < dim; ++i)
      for (const auto& v : level) {
        auto b = a.bracket(a.basis_vector<Rational>(i), v);
        if (!is_zero(b)) next.push_back(std::move(b));
      }
    const auto r = static_cast<int>(rational_rank(next));
    if (r == 0) break;
    ++k;
    if (r == static_cast<int>(rational_rank(level)))
      throw ValidationError("lower central series stabilises at a nonzero ideal: algebra is not nilpotent");
    const int start = dim - r;
    std::vector<Vec<Rational>> tail;
    for (int i = start; i < dim; ++i) tail.push_back(a.basis_vector<Rational>(i));
    if (!in_span(tail, next))
      throw ValidationError(
          fmt::format("basis is not adapted: g^({}) is not spanned by e{}..e{}", k, start + 1, dim));
    a.level_start_.push_back(start);
    level = tail;
  }
  a.level_start_.push_back(dim);
  a.kappa_ = k + 1;
  if (a.kappa_ > kMaxClass)
    throw ValidationError(fmt::format("nilpotency class {} exceeds supported maximum {}", a.kappa_, kMaxClass));
  if (declared_kappa && *declared_kappa != a.kappa_)
    throw ValidationError(fmt::format("declared kappa {} but lower central series gives {}", *declared_kappa, a.kappa_));
  if (declared_abelian_dim && *declared_abelian_dim != a.abelian_dim())
    throw ValidationError(
        fmt::format("declared abelian_dim {} but dim - dim[g,g] = {}", *declared_abelian_dim, a.abelian_dim()));
  return a;
}

NilAlgebra NilAlgebra::abelian(int dim) { return create(dim, {}); }

NilAlgebra NilAlgebra::heisenberg(int r) {
  const int n = 2 * r + 1;
  std::vector<BracketSpec> b;
  for (int i = 0; i < r; ++i) {
    Vec<Rational> c(static_cast<std::size_t>(n), Rational(0));
    c[static_cast<std::size_t>(n - 1)] = 1;
    b.push_back({i, r + i, c});
  }
  return create(n, b);
}

NilAlgebra NilAlgebra::filiform(int dim) {
  std::vector<BracketSpec> b;
  for (int i = 1; i + 1 < dim; ++i) {
    Vec<Rational> c(static_cast<std::size_t>(dim), Rational(0));
    c[static_cast<std::size_t>(i + 1)] = 1;
    b.push_back({0, i, c});
  }
  return create(dim, b);
}

}  // namespace nilequi

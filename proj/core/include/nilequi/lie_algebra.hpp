#pragma once

#include "nilequi/errors.hpp"
#include "nilequi/rational.hpp"

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace nilequi {

/// One structure-constant record: [e_i, e_j] = sum_k coeffs[k] e_k (0-based indices).
struct BracketSpec {
  int i = 0;
  int j = 0;
  Vec<Rational> coeffs;
};

/// Finite-dimensional nilpotent Lie algebra over Q in an adapted basis.
///
/// The basis is adapted to the lower central series: for every level k the
/// trailing basis vectors e_{level_start(k)}, ..., e_{n-1} span g^(k), and the
/// first `abelian_dim()` vectors project isomorphically onto g/[g,g]. These
/// are checked at construction, together with antisymmetry and the Jacobi
/// identity; nothing is computed about the basis itself.
class NilAlgebra {
 public:
  static constexpr int kMaxClass = 6;

  /// Validates and builds. `declared_kappa` / `declared_abelian_dim` are
  /// cross-checked against the computed values when present.
  static NilAlgebra create(int dim, const std::vector<BracketSpec>& brackets,
                           std::optional<int> declared_kappa = std::nullopt,
                           std::optional<int> declared_abelian_dim = std::nullopt);

  static NilAlgebra abelian(int dim);
  /// Heisenberg algebra of dimension 2r+1: [e_i, e_{r+i}] = e_{2r}.
  static NilAlgebra heisenberg(int r = 1);
  /// Standard filiform algebra: [e_0, e_i] = e_{i+1} for 1 <= i < dim-1.
  static NilAlgebra filiform(int dim);

  int dim() const { return dim_; }
  int abelian_dim() const { return level_start_[1]; }
  int kappa() const { return kappa_; }
  bool is_abelian() const { return kappa_ == 1; }

  /// First basis index of g^(k), for 0 <= k <= kappa (level_start(kappa) == dim).
  int level_start(int k) const { return level_start_.at(static_cast<std::size_t>(k)); }
  /// Largest k with e_i in g^(k).
  int weight(int i) const;

  const Rational& structure_constant(int i, int j, int k) const;

  template <class S>
  Vec<S> bracket(const Vec<S>& x, const Vec<S>& y) const;

  /// Projection onto the abelianization: the first m coordinates.
  template <class S>
  Vec<S> dq(const Vec<S>& x) const;

  template <class S>
  Vec<S> basis_vector(int i, const S& scale = S(1)) const {
    Vec<S> v(static_cast<std::size_t>(dim_), S(0));
    v.at(static_cast<std::size_t>(i)) = scale;
    return v;
  }

  const std::vector<BracketSpec>& bracket_specs() const { return specs_; }

 private:
  template <class S>
  struct Term {
    int i, j, k;
    S c;
  };

  NilAlgebra() = default;
  void check_dims(std::size_t a, std::size_t b) const;

  int dim_ = 0;
  int kappa_ = 1;
  std::vector<int> level_start_;
  std::vector<Rational> c_;  // c_[(i*dim+j)*dim+k]
  std::vector<BracketSpec> specs_;
  std::vector<Term<Rational>> terms_q_;  // i < j only
  std::vector<Term<double>> terms_d_;
};

template <class S>
Vec<S> NilAlgebra::bracket(const Vec<S>& x, const Vec<S>& y) const {
  check_dims(x.size(), y.size());
  Vec<S> out(static_cast<std::size_t>(dim_), S(0));
  auto accumulate = [&](const auto& terms) {
    for (const auto& t : terms) {
      const auto i = static_cast<std::size_t>(t.i), j = static_cast<std::size_t>(t.j);
      S w = x[i] * y[j] - x[j] * y[i];
      if (w != 0) out[static_cast<std::size_t>(t.k)] += t.c * w;
    }
  };
  if constexpr (std::is_same_v<S, double>)
    accumulate(terms_d_);
  else
    accumulate(terms_q_);
  return out;
}

template <class S>
Vec<S> NilAlgebra::dq(const Vec<S>& x) const {
  check_dims(x.size(), static_cast<std::size_t>(dim_));
  return Vec<S>(x.begin(), x.begin() + abelian_dim());
}

}  // namespace nilequi

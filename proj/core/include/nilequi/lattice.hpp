#pragma once

#include "nilequi/bch.hpp"
#include "nilequi/lie_algebra.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nilequi {

/// Point of X = G/Gamma as its fundamental-domain representative: coordinates
/// of the second kind, each in [0, 1).
struct NilmanifoldPoint {
  std::vector<double> coords;

  friend bool operator==(const NilmanifoldPoint&, const NilmanifoldPoint&) = default;
};

/// Gamma = { exp(m_1 e_1) ... exp(m_n e_n) : m in Z^n } for the adapted basis.
///
/// Construction checks that this set is closed under multiplication: the
/// conjugates exp(+-e_i) exp(e_j) exp(-+e_i), i < j, must have integer
/// second-kind coordinates.
class LatticeSpec {
 public:
  explicit LatticeSpec(NilAlgebra algebra);

  const NilAlgebra& algebra() const { return algebra_; }

 private:
  NilAlgebra algebra_;
};

/// Cell-boundary band used by floating-point reduction.
inline constexpr double kReductionBand = 1e-9;

/// (t_1..t_n) with exp(X) = exp(t_1 e_1) ... exp(t_n e_n).
template <class S>
Vec<S> to_second_kind(const NilAlgebra& g, const Vec<S>& log_coords);

template <class S>
Vec<S> from_second_kind(const NilAlgebra& g, const Vec<S>& coords);

/// exp(word[n-1] e_n) ... exp(word[0] e_1), the lattice element returned by reduction.
template <class S>
GroupElement<S> word_element(const NilAlgebra& g, const std::vector<std::int64_t>& word);

template <class S>
struct LatticeReduction {
  Vec<S> representative;           // second-kind coordinates in [0, 1)
  std::vector<std::int64_t> word;  // g = exp(representative) * word_element(word)
};

/// Reduces g modulo Gamma on the right: for i = 1..n the current element is
/// multiplied by exp(-floor(t_i) e_i), which fixes t_1..t_{i-1}.
template <class S>
LatticeReduction<S> reduce_mod_lattice(const NilAlgebra& g, const GroupElement<S>& x);

NilmanifoldPoint reduce_to_point(const NilAlgebra& g, const Vec<double>& log_coords);

/// Composite midpoint rule on the unit cube of second-kind coordinates, where
/// Haar measure is Lebesgue measure. `panels` per axis.
template <class F>
auto haar_integrate(F&& f, int dim, int panels) {
  if (panels < 1) throw DomainError("haar_integrate: panel count must be positive");
  if (dim < 1) throw DomainError("haar_integrate: dimension must be positive");
  using R = std::decay_t<decltype(f(std::declval<const NilmanifoldPoint&>()))>;
  NilmanifoldPoint p{std::vector<double>(static_cast<std::size_t>(dim))};
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  const double h = 1.0 / panels;
  R sum{};
  while (true) {
    for (std::size_t a = 0; a < idx.size(); ++a) p.coords[a] = (idx[a] + 0.5) * h;
    sum += f(p);
    std::size_t a = 0;
    while (a < idx.size() && ++idx[a] == panels) idx[a++] = 0;
    if (a == idx.size()) break;
  }
  return sum * std::pow(h, dim);
}

extern template Vec<Rational> to_second_kind(const NilAlgebra&, const Vec<Rational>&);
extern template Vec<double> to_second_kind(const NilAlgebra&, const Vec<double>&);
extern template Vec<Rational> from_second_kind(const NilAlgebra&, const Vec<Rational>&);
extern template Vec<double> from_second_kind(const NilAlgebra&, const Vec<double>&);
extern template GroupElement<Rational> word_element(const NilAlgebra&, const std::vector<std::int64_t>&);
extern template GroupElement<double> word_element(const NilAlgebra&, const std::vector<std::int64_t>&);
extern template LatticeReduction<Rational> reduce_mod_lattice(const NilAlgebra&, const GroupElement<Rational>&);
extern template LatticeReduction<double> reduce_mod_lattice(const NilAlgebra&, const GroupElement<double>&);

}  // namespace nilequi

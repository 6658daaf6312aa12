#pragma once

#include "nilequi/lie_algebra.hpp"
#include "nilequi/rational.hpp"

#include <cstdint>
#include <vector>

namespace nilequi {

/// A word in two letters (bit set = Y) paired with its Dynkin coefficient.
struct DynkinTerm {
  int length = 0;
  std::uint32_t letters = 0;  // bit (length-1-p) holds letter p, so bit 0 is the last letter
  Rational coeff;
  double coeff_d = 0.0;
};

/// Dynkin series for log(exp X exp Y) through words of length `max_degree`,
/// with terms whose coefficient vanishes dropped. Cached per degree.
const std::vector<DynkinTerm>& dynkin_terms(int max_degree);

/// log(exp X exp Y). Exact: all terms with bracket depth >= kappa vanish.
template <class S>
Vec<S> bch(const NilAlgebra& g, const Vec<S>& x, const Vec<S>& y);

/// Group element in exponential coordinates of the first kind.
template <class S>
struct GroupElement {
  Vec<S> log;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

template <class S>
GroupElement<S> identity(const NilAlgebra& g) {
  return {zeros<S>(static_cast<std::size_t>(g.dim()))};
}

template <class S>
GroupElement<S> group_mul(const NilAlgebra& g, const GroupElement<S>& a, const GroupElement<S>& b) {
  return {bch(g, a.log, b.log)};
}

template <class S>
GroupElement<S> group_inv(const GroupElement<S>& a) {
  return {-a.log};
}

extern template Vec<Rational> bch(const NilAlgebra&, const Vec<Rational>&, const Vec<Rational>&);
extern template Vec<double> bch(const NilAlgebra&, const Vec<double>&, const Vec<double>&);

}  // namespace nilequi

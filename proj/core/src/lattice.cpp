#include "nilequi/lattice.hpp"

#include <fmt/format.h>

namespace nilequi {

namespace {

template <class S>
std::int64_t floor_to_int(const S& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    return to_int64(floor(x));
  } else {
    // Values within the band below an integer are taken to be that integer.
    return static_cast<std::int64_t>(std::floor(x + kReductionBand));
  }
}

}  // namespace

template <class S>
Vec<S> to_second_kind(const NilAlgebra& g, const Vec<S>& log_coords) {
  const int n = g.dim();
  if (log_coords.size() != static_cast<std::size_t>(n)) throw DimensionError("to_second_kind: wrong length");
  Vec<S> t(static_cast<std::size_t>(n), S(0));
  Vec<S> h = log_coords;
  for (int i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    t[ii] = h[ii];
    if (t[ii] == 0) continue;
    if (g.is_abelian()) {
      h[ii] = 0;
    } else {
      h = bch(g, g.basis_vector<S>(i, -t[ii]), h);
      h[ii] = 0;  // exact in rational mode; removes rounding residue in float mode
    }
  }
  return t;
}

template <class S>
Vec<S> from_second_kind(const NilAlgebra& g, const Vec<S>& coords) {
  const int n = g.dim();
  if (coords.size() != static_cast<std::size_t>(n)) throw DimensionError("from_second_kind: wrong length");
  if (g.is_abelian()) return coords;
  Vec<S> x = zeros<S>(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const auto& c = coords[static_cast<std::size_t>(i)];
    if (c != 0) x = bch(g, g.basis_vector<S>(i, c), x);
  }
  return x;
}

template <class S>
GroupElement<S> word_element(const NilAlgebra& g, const std::vector<std::int64_t>& word) {
  if (word.size() != static_cast<std::size_t>(g.dim())) throw DimensionError("word_element: wrong length");
  GroupElement<S> out = identity<S>(g);
  for (int i = 0; i < g.dim(); ++i) {
    const auto m = word[static_cast<std::size_t>(i)];
    if (m != 0) out.log = bch(g, g.basis_vector<S>(i, scalar_from_int<S>(m)), out.log);
  }
  return out;
}

template <class S>
LatticeReduction<S> reduce_mod_lattice(const NilAlgebra& g, const GroupElement<S>& x) {
  const int n = g.dim();
  LatticeReduction<S> out;
  out.word.assign(static_cast<std::size_t>(n), 0);
  Vec<S> h = x.log;
  Vec<S> t = to_second_kind(g, h);
  for (int i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const std::int64_t k = floor_to_int(t[ii]);
    if (k == 0) continue;
    out.word[ii] = k;
    if (g.is_abelian()) {
      t[ii] -= scalar_from_int<S>(k);
    } else {
      h = bch(g, h, g.basis_vector<S>(i, scalar_from_int<S>(-k)));
      t = to_second_kind(g, h);
    }
  }
  if constexpr (std::is_same_v<S, double>) {
    for (auto& c : t)
      if (c < 0.0) c = 0.0;  // band residue just below the cell boundary
  }
  out.representative = std::move(t);
  return out;
}

NilmanifoldPoint reduce_to_point(const NilAlgebra& g, const Vec<double>& log_coords) {
  return {reduce_mod_lattice(g, GroupElement<double>{log_coords}).representative};
}

LatticeSpec::LatticeSpec(NilAlgebra algebra) : algebra_(std::move(algebra)) {
  const auto& g = algebra_;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j)
      for (int sign : {1, -1}) {
        auto a = g.basis_vector<Rational>(i, Rational(sign));
        auto conj = bch(g, bch(g, a, g.basis_vector<Rational>(j)), Vec<Rational>(-a));
        auto t = to_second_kind(g, conj);
        for (std::size_t k = 0; k < t.size(); ++k)
          if (!is_integer(t[k]))
            throw ValidationError(fmt::format(
                "integer points do not form a lattice: exp({}e{}) exp(e{}) exp({}e{}) has second-kind coordinate "
                "t{} = {}",
                sign, i + 1, j + 1, -sign, i + 1, k + 1, to_string(t[k])));
      }
}

template Vec<Rational> to_second_kind(const NilAlgebra&, const Vec<Rational>&);
template Vec<double> to_second_kind(const NilAlgebra&, const Vec<double>&);
template Vec<Rational> from_second_kind(const NilAlgebra&, const Vec<Rational>&);
template Vec<double> from_second_kind(const NilAlgebra&, const Vec<double>&);
template GroupElement<Rational> word_element(const NilAlgebra&, const std::vector<std::int64_t>&);
template GroupElement<double> word_element(const NilAlgebra&, const std::vector<std::int64_t>&);
template LatticeReduction<Rational> reduce_mod_lattice(const NilAlgebra&, const GroupElement<Rational>&);
template LatticeReduction<double> reduce_mod_lattice(const NilAlgebra&, const GroupElement<double>&);

}  // namespace nilequi

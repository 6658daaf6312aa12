#include "nilequi/bch.hpp"

#include "nilequi/errors.hpp"

#include <array>
#include <mutex>
#include <optional>

namespace nilequi {

namespace {

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Sum over splittings of the word into blocks X^r Y^s (r + s > 0) of
// (-1)^(n-1)/n * 1/(N * prod r! s!), n = number of blocks, N = word length.
Rational dynkin_coefficient(int length, std::uint32_t letters) {
  auto letter = [&](int p) { return (letters >> (length - 1 - p)) & 1U; };
  // dp[pos][blocks] = sum over splittings of the prefix [0, pos) of prod 1/(r! s!)
  std::vector<std::vector<Rational>> dp(static_cast<std::size_t>(length + 1),
                                        std::vector<Rational>(static_cast<std::size_t>(length + 1), Rational(0)));
  dp[0][0] = 1;
  for (int pos = 0; pos < length; ++pos)
    for (int blocks = 0; blocks <= pos; ++blocks) {
      if (dp[pos][blocks] == 0) continue;
      int r = 0, s = 0;
      for (int end = pos; end < length; ++end) {
        if (letter(end) == 0) {
          if (s > 0) break;  // an X after a Y ends the admissible block
          ++r;
        } else {
          ++s;
        }
        dp[end + 1][blocks + 1] += dp[pos][blocks] / (factorial(r) * factorial(s));
      }
    }
  Rational total = 0;
  for (int n = 1; n <= length; ++n) {
    Rational sign = (n % 2 == 1) ? 1 : -1;
    total += sign / n * dp[length][n];
  }
  return total / length;
}

std::vector<DynkinTerm> build_terms(int max_degree) {
  std::vector<DynkinTerm> out;
  for (int len = 1; len <= max_degree; ++len)
    for (std::uint32_t w = 0; w < (1U << len); ++w) {
      // Right-nested brackets ending in a repeated letter vanish.
      if (len >= 2 && ((w & 1U) == ((w >> 1) & 1U))) continue;
      Rational c = dynkin_coefficient(len, w);
      if (c == 0) continue;
      out.push_back({len, w, c, c.get_d()});
    }
  return out;
}

}  // namespace

const std::vector<DynkinTerm>& dynkin_terms(int max_degree) {
  if (max_degree < 1 || max_degree > NilAlgebra::kMaxClass)
    throw DomainError("Dynkin series supported for degrees 1.." + std::to_string(NilAlgebra::kMaxClass));
  static std::array<std::vector<DynkinTerm>, NilAlgebra::kMaxClass + 1> cache;
  static std::array<std::once_flag, NilAlgebra::kMaxClass + 1> once;
  const auto d = static_cast<std::size_t>(max_degree);
  std::call_once(once[d], [&] { cache[d] = build_terms(max_degree); });
  return cache[d];
}

template <class S>
Vec<S> bch(const NilAlgebra& g, const Vec<S>& x, const Vec<S>& y) {
  if (x.size() != static_cast<std::size_t>(g.dim()) || y.size() != static_cast<std::size_t>(g.dim()))
    throw DimensionError("bch: vector length does not match algebra dimension");
  Vec<S> out = x + y;
  const int kappa = g.kappa();
  if (kappa == 1) return out;

  // Memo of right-nested brackets of word suffixes, indexed by (1 << len) | bits.
  std::vector<std::optional<Vec<S>>> memo(std::size_t{1} << (kappa + 1));
  auto nested = [&](auto&& self, int len, std::uint32_t bits) -> const Vec<S>& {
    auto& slot = memo[(std::size_t{1} << len) | bits];
    if (!slot) {
      const bool top_is_y = (bits >> (len - 1)) & 1U;
      const Vec<S>& head = top_is_y ? y : x;
      if (len == 1)
        slot = head;
      else
        slot = g.bracket(head, self(self, len - 1, bits & ((1U << (len - 1)) - 1U)));
    }
    return *slot;
  };

  for (const auto& term : dynkin_terms(kappa)) {
    if (term.length == 1) continue;  // X + Y already added
    const Vec<S>& b = nested(nested, term.length, term.letters);
    if (is_zero(b)) continue;
    if constexpr (std::is_same_v<S, double>)
      axpy(term.coeff_d, b, out);
    else
      axpy(term.coeff, b, out);
  }
  return out;
}

template Vec<Rational> bch(const NilAlgebra&, const Vec<Rational>&, const Vec<Rational>&);
template Vec<double> bch(const NilAlgebra&, const Vec<double>&, const Vec<double>&);

}  // namespace nilequi

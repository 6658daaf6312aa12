#include "nilequi/cantor.hpp"

#include "nilequi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace nilequi {

namespace {

Rational frac(const Rational& u) { return u - Rational(floor(u)); }

// 3^n as doubles; exact for n <= 33.
const std::vector<double>& pow3_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(34);
    double p = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = p;
      p *= 3.0;
    }
    return t;
  }();
  return table;
}

double inv_pow3(int n) {
  if (n < 34) return 1.0 / pow3_table()[static_cast<std::size_t>(n)];
  return std::pow(3.0, -n);
}

// alpha / 3^n, correctly rounded for n <= 33.
double div_pow3(double alpha, int n) {
  if (n < 34) return alpha / pow3_table()[static_cast<std::size_t>(n)];
  return alpha / pow3_table()[33] / std::pow(3.0, n - 33);
}

std::complex<double> digit_factor(double alpha, double beta, int n) {
  return (1.0 + unit_phase(div_pow3(alpha + beta, n)) + unit_phase(div_pow3(2.0 * alpha, n))) / 3.0;
}

}  // namespace

std::complex<double> unit_phase(double x) {
  const double f = x - std::floor(x);
  if (f == 0.0) return {1.0, 0.0};
  const double a = 2.0 * std::numbers::pi * f;
  return {std::cos(a), std::sin(a)};
}

TernaryExpansion ternary_expansion(const Rational& u, int depth) {
  if (depth < 0) throw DomainError("ternary expansion depth must be non-negative");
  TernaryExpansion out;
  Rational r = frac(u);
  for (int n = 0; n < depth; ++n) {
    r *= 3;
    Integer a = floor(r);
    out.digits.push_back(static_cast<int>(a.get_si()));
    r -= Rational(a);
  }
  out.exact = r == 0;
  return out;
}

Rational cantor_psi_truncated(const Rational& u, int depth) {
  auto e = ternary_expansion(u, depth);
  Rational psi = 0, scale = 1;
  for (int a : e.digits) {
    scale /= 3;
    if (a == 1) psi += scale;
  }
  return psi;
}

Rational cantor_psi_exact(const Rational& u) {
  // Remainders r_n = frac(3^n u) have denominator dividing den(u), so they
  // repeat; the digits from the first repeat on form the period.
  Rational r = frac(u);
  std::map<Rational, int> seen;
  std::vector<int> digits;
  while (!seen.count(r)) {
    seen.emplace(r, static_cast<int>(digits.size()));
    if (r == 0) break;
    r *= 3;
    Integer a = floor(r);
    digits.push_back(static_cast<int>(a.get_si()));
    r -= Rational(a);
  }
  if (r == 0 && seen.at(r) == static_cast<int>(digits.size())) {
    Rational psi = 0, scale = 1;
    for (int a : digits) {
      scale /= 3;
      if (a == 1) psi += scale;
    }
    return psi;
  }
  const int start = seen.at(r);
  const int period = static_cast<int>(digits.size()) - start;
  Rational pre = 0, cyc = 0, scale = 1;
  for (int n = 0; n < static_cast<int>(digits.size()); ++n) {
    scale /= 3;
    if (digits[static_cast<std::size_t>(n)] != 1) continue;
    if (n < start)
      pre += scale;
    else
      cyc += scale;
  }
  // cyc repeats every `period` digits with ratio 3^-period.
  Rational ratio = 1;
  for (int i = 0; i < period; ++i) ratio /= 3;
  return pre + cyc / (1 - ratio);
}

double cantor_psi(double u, int depth) {
  if (depth < 0 || depth > 33) throw DomainError("cantor_psi: depth must be in [0, 33]");
  double f = u - std::floor(u);
  double psi = 0.0;
  const auto scale = static_cast<std::uint64_t>(pow3_table()[static_cast<std::size_t>(depth)]);
  // a point within a millionth of a cell below a cell edge is taken to be on the edge
  auto j = static_cast<std::uint64_t>(f * static_cast<double>(scale) + 1e-6);
  if (j >= scale) j = scale - 1;
  // digits of j in base 3, most significant first
  for (int n = depth; n >= 1; --n) {
    if (j % 3 == 1) psi += inv_pow3(n);
    j /= 3;
  }
  return psi;
}

Integer self_similarity_residue(const Rational& u, int b) {
  if (b < 0 || b > 2) throw DomainError("self_similarity_residue: b must be 0, 1 or 2");
  if (u < 0 || u >= Rational(1, 3)) throw DomainError("self_similarity_residue: u must lie in [0, 1/3)");
  Rational diff = 3 * cantor_psi_exact(Rational(b) / 3 + u) - cantor_psi_exact(3 * u);
  if (!is_integer(diff))
    throw std::logic_error("3 psi(b/3 + u) - psi(3u) is not an integer at u = " + to_string(u));
  return diff.get_num();
}

std::complex<double> cantor_fourier_tail(double alpha, double beta, int depth) {
  std::complex<double> prod{1.0, 0.0};
  const double scale = std::abs(alpha + beta) + std::abs(2.0 * alpha);
  for (int n = depth + 1; n < 400; ++n) {
    if (scale * inv_pow3(n) < 1e-18) break;
    prod *= digit_factor(alpha, beta, n);
  }
  return prod;
}

std::complex<double> cantor_fourier(double alpha, double beta) { return cantor_fourier_tail(alpha, beta, 0); }

std::vector<std::complex<double>> cantor_fourier_enumerated(std::span<const std::pair<double, double>> freqs,
                                                             int depth) {
  if (depth < 0 || depth > 20) throw DomainError("cantor_fourier_enumerated: depth must be in [0, 20]");
  const std::size_t nf = freqs.size();
  // step[n][digit][f] = e(3^-n * (alpha a + beta [a == 1]))
  std::vector<std::vector<std::vector<std::complex<double>>>> step(
      static_cast<std::size_t>(depth + 1),
      std::vector<std::vector<std::complex<double>>>(3, std::vector<std::complex<double>>(nf)));
  for (int n = 1; n <= depth; ++n)
    for (std::size_t f = 0; f < nf; ++f) {
      const auto [alpha, beta] = freqs[f];
      step[static_cast<std::size_t>(n)][0][f] = {1.0, 0.0};
      step[static_cast<std::size_t>(n)][1][f] = unit_phase(div_pow3(alpha + beta, n));
      step[static_cast<std::size_t>(n)][2][f] = unit_phase(div_pow3(2.0 * alpha, n));
    }

  // Depth-first walk over digit strings; prefix[l] is the phase product of
  // the first l digits and sums[l] collects the leaves below the current node.
  std::vector<std::vector<std::complex<double>>> prefix(static_cast<std::size_t>(depth + 1),
                                                        std::vector<std::complex<double>>(nf, {1.0, 0.0}));
  std::vector<std::vector<std::complex<double>>> sums(static_cast<std::size_t>(depth + 1),
                                                      std::vector<std::complex<double>>(nf, {0.0, 0.0}));
  auto walk = [&](auto&& self, int level) -> void {
    const auto l = static_cast<std::size_t>(level);
    auto& acc = sums[l];
    std::fill(acc.begin(), acc.end(), std::complex<double>{0.0, 0.0});
    const auto& cur = prefix[l];
    if (level + 1 == depth) {
      const auto& s = step[l + 1];
      for (std::size_t f = 0; f < nf; ++f) acc[f] = cur[f] * (s[0][f] + s[1][f] + s[2][f]);
      return;
    }
    for (int a = 0; a < 3; ++a) {
      auto& next = prefix[l + 1];
      const auto& w = step[l + 1][static_cast<std::size_t>(a)];
      for (std::size_t f = 0; f < nf; ++f) next[f] = cur[f] * w[f];
      self(self, level + 1);
      for (std::size_t f = 0; f < nf; ++f) acc[f] += sums[l + 1][f];
    }
  };
  std::vector<std::complex<double>> total(nf, {1.0, 0.0});
  if (depth > 0) {
    walk(walk, 0);
    total = sums[0];
  }

  const double weight = inv_pow3(depth);
  for (std::size_t f = 0; f < nf; ++f)
    total[f] *= weight * cantor_fourier_tail(freqs[f].first, freqs[f].second, depth);
  return total;
}

double verify_selfsimilar_measure(int m, int height, int depth) {
  if (m < 0) throw DomainError("verify_selfsimilar_measure: m must be non-negative");
  if (height < 1) throw DomainError("verify_selfsimilar_measure: height must be positive");
  if (depth < m + 8)
    throw DomainError("verify_selfsimilar_measure: depth " + std::to_string(depth) + " too shallow for m = " +
                      std::to_string(m) + " (need >= m + 8)");
  if (m == 0) return 0.0;
  double scale = 1.0;
  for (int i = 0; i < m; ++i) scale *= 3.0;
  std::vector<std::pair<double, double>> freqs;
  for (int k = 1; k <= height; ++k) {
    freqs.emplace_back(0.0, static_cast<double>(k));
    freqs.emplace_back(0.0, static_cast<double>(k) * scale);
  }
  auto v = cantor_fourier_enumerated(freqs, depth);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); i += 2) worst = std::max(worst, std::abs(v[i + 1] - v[i]));
  return worst;
}

double line_slice_cover_bound(std::int64_t p, std::int64_t q, int depth) {
  if (p == 0) throw DomainError("line_slice_cover_bound requires p != 0");
  return std::pow(2.0 / 3.0, depth) * std::abs(static_cast<double>(q) / (2.0 * static_cast<double>(p)));
}

double line_slice_cover_measure(std::int64_t p, std::int64_t q, double z, int depth) {
  if (p == 0) throw DomainError("line_slice_cover_measure requires p != 0");
  if (depth < 0 || depth > 16) throw DomainError("line_slice_cover_measure: depth must be in [0, 16]");
  const double cell = inv_pow3(depth);
  const double dp = static_cast<double>(p), dq = static_cast<double>(q);
  std::vector<std::pair<double, double>> pieces;
  const auto boxes = static_cast<std::uint64_t>(std::llround(1.0 / cell));
  for (std::uint64_t j = 0; j < boxes; ++j) {
    double s = 0.0;
    std::uint64_t r = j;
    for (int n = depth; n >= 1; --n) {
      if (r % 3 == 1) s += inv_pow3(n);
      r /= 3;
    }
    const double x0 = static_cast<double>(j) * cell;
    // x = (z - q y) / p for y in [s, s + cell / 2]
    double xa = (z - dq * s) / dp, xb = (z - dq * (s + cell / 2)) / dp;
    if (xa > xb) std::swap(xa, xb);
    const double lo = std::max(xa, x0), hi = std::min(xb, x0 + cell);
    if (hi > lo) pieces.emplace_back(lo, hi);
  }
  std::sort(pieces.begin(), pieces.end());
  double total = 0.0, end = -1e300;
  for (auto [lo, hi] : pieces) {
    lo = std::max(lo, end);
    if (hi > lo) total += hi - lo;
    end = std::max(end, hi);
  }
  return total;
}

}  // namespace nilequi

#include "nilequi/exact_linalg.hpp"

#include "nilequi/errors.hpp"

#include <algorithm>
#include <utility>

namespace nilequi {

std::vector<std::size_t> row_reduce(Matrix<Rational>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

namespace {

Matrix<Rational> stack(const std::vector<Vec<Rational>>& rows) {
  if (rows.empty()) return {};
  Matrix<Rational> m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw DimensionError("rows of unequal length");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace

std::size_t rational_rank(const std::vector<Vec<Rational>>& rows) {
  if (rows.empty()) return 0;
  auto m = stack(rows);
  return row_reduce(m).size();
}

bool in_span(const std::vector<Vec<Rational>>& basis, const std::vector<Vec<Rational>>& rows) {
  auto all = basis;
  all.insert(all.end(), rows.begin(), rows.end());
  return rational_rank(all) == rational_rank(basis);
}

std::vector<std::vector<Integer>> integer_kernel(const Matrix<Rational>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  // Integer copy with each row scaled by the lcm of its denominators.
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) {
      Rational scaled = m(r, c) * l;
      a[r][c] = scaled.get_num();
    }
  }
  std::vector<std::vector<Integer>> u(cols, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  auto col_op = [&](std::size_t j, std::size_t k, const Integer& p, const Integer& q, const Integer& s,
                    const Integer& t) {
    // (col_j, col_k) <- (p col_j + q col_k, s col_j + t col_k), with pt - qs = +-1
    for (std::size_t r = 0; r < rows; ++r) {
      Integer x = a[r][j], y = a[r][k];
      a[r][j] = p * x + q * y;
      a[r][k] = s * x + t * y;
    }
    for (std::size_t r = 0; r < cols; ++r) {
      Integer x = u[r][j], y = u[r][k];
      u[r][j] = p * x + q * y;
      u[r][k] = s * x + t * y;
    }
  };

  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < rows && pivot_col < cols; ++r) {
    for (std::size_t k = pivot_col + 1; k < cols; ++k) {
      if (a[r][k] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][pivot_col].get_mpz_t(),
                 a[r][k].get_mpz_t());
      Integer x = a[r][pivot_col] / g, y = a[r][k] / g;
      // new pivot = s*col_p + t*col_k (entry g); new col_k = -y*col_p + x*col_k (entry 0)
      col_op(pivot_col, k, s, t, -y, x);
    }
    if (a[r][pivot_col] != 0) ++pivot_col;
  }

  std::vector<std::vector<Integer>> kernel;
  for (std::size_t c = pivot_col; c < cols; ++c) {
    std::vector<Integer> v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][c];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

std::vector<Integer> primitive_part(std::vector<Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

std::vector<Integer> canonical_sign(std::vector<Integer> v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

Integer sup_norm(const std::vector<Integer>& v) {
  Integer h = 0;
  for (const auto& x : v) h = std::max<Integer>(h, abs(x));
  return h;
}

std::optional<std::vector<Integer>> smallest_kernel_vector(const Matrix<Rational>& m, long max_height) {
  const std::size_t n = m.cols();
  if (n == 0 || integer_kernel(m).empty()) return std::nullopt;
  auto annihilates = [&](const std::vector<long>& k) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (k[c] != 0) s += m(r, c) * k[c];
      if (s != 0) return false;
    }
    return true;
  };
  for (long h = 1; h <= max_height; ++h) {
    // Lexicographic sweep over [-h, h]^n keeping sup-norm exactly h and a
    // positive leading entry.
    std::vector<long> k(n, -h);
    while (true) {
      long height = 0;
      long lead = 0;
      for (long x : k) {
        height = std::max(height, std::labs(x));
        if (lead == 0) lead = x;
      }
      if (height == h && lead > 0 && annihilates(k)) {
        std::vector<Integer> out;
        for (long x : k) out.emplace_back(x);
        return out;
      }
      std::size_t i = n;
      while (i > 0 && k[i - 1] == h) {
        k[i - 1] = -h;
        --i;
      }
      if (i == 0) break;
      ++k[i - 1];
    }
  }
  return std::nullopt;
}

Vec<Rational> solve(Matrix<Rational> a, Vec<Rational> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionError("solve expects a square system");
  Matrix<Rational> aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  auto piv = row_reduce(aug);
  if (piv.size() != n || piv.back() != n - 1) throw ValidationError("singular system");
  Vec<Rational> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

}  // namespace nilequi

#pragma once

#include "nilequi/matrix.hpp"
#include "nilequi/rational.hpp"

#include <optional>
#include <vector>

namespace nilequi {

/// Rank over Q of the row vectors (all of equal length).
std::size_t rational_rank(const std::vector<Vec<Rational>>& rows);

/// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix<Rational>& m);

/// True when every vector of `rows` lies in the span of `basis`.
bool in_span(const std::vector<Vec<Rational>>& basis, const std::vector<Vec<Rational>>& rows);

/// Z-basis of { k in Z^cols : m k = 0 }.
///
/// Rows are cleared of denominators, then unimodular column operations bring
/// the integer matrix to column-echelon (Hermite) form H = m U. Columns of U
/// that map to zero columns of H span the integer kernel.
std::vector<std::vector<Integer>> integer_kernel(const Matrix<Rational>& m);

/// Divides out the content so the gcd of entries is one; sign unchanged.
std::vector<Integer> primitive_part(std::vector<Integer> v);

/// Flips sign so the first nonzero entry is positive.
std::vector<Integer> canonical_sign(std::vector<Integer> v);

Integer sup_norm(const std::vector<Integer>& v);

/// The canonical (first nonzero entry positive) integer vector of smallest
/// sup-norm in the kernel of `m`, ties broken lexicographically. Searches
/// heights up to `max_height`; nullopt when the kernel is trivial or no
/// vector of that height exists.
std::optional<std::vector<Integer>> smallest_kernel_vector(const Matrix<Rational>& m, long max_height);

/// Unique solution of a x = b for square nonsingular a (exact).
Vec<Rational> solve(Matrix<Rational> a, Vec<Rational> b);

}  // namespace nilequi

#pragma once

#include "nilequi/rational.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace nilequi {

/// Greedy base-3 digits of u in [0, 1): 1/3 is 0.1, never 0.0222...
struct TernaryExpansion {
  std::vector<int> digits;  // a_1 .. a_N
  bool exact = false;       // the digits after a_N are all zero
};

TernaryExpansion ternary_expansion(const Rational& u, int depth);

/// psi(u) = sum over n with a_n(u) = 1 of 3^-n, for u taken mod 1.
///
/// The expansion of a rational is eventually periodic, so the sum is a
/// finite part plus a geometric series; the result is exact.
Rational cantor_psi_exact(const Rational& u);

/// psi truncated after `depth` digits (exact arithmetic).
Rational cantor_psi_truncated(const Rational& u, int depth);

/// Floating-point psi from the first `depth` digits (depth <= 33).
double cantor_psi(double u, int depth = 33);

/// 3 psi(b/3 + u) - psi(3u) for u in [0, 1/3), b in {0, 1, 2}. Throws
/// std::logic_error if the difference is not an integer.
Integer self_similarity_residue(const Rational& u, int b);

/// Integral over u in (0,1) of exp(2 pi i (alpha u + beta psi(u))).
///
/// Uniform u has i.i.d. uniform ternary digits and both u and psi(u) are
/// digit sums, so the integral is the product over n of
/// (1 + e(3^-n (alpha + beta)) + e(3^-n 2 alpha)) / 3, continued until the
/// remaining phases are below double resolution.
std::complex<double> cantor_fourier(double alpha, double beta);

/// Same integral, with the first `depth` digits enumerated explicitly over
/// all 3^depth ternary intervals and only the remaining digits factorised.
/// Evaluates several (alpha, beta) pairs in one sweep.
std::vector<std::complex<double>> cantor_fourier_enumerated(std::span<const std::pair<double, double>> freqs,
                                                             int depth);

/// Product over digits n > depth of the per-digit averages.
std::complex<double> cantor_fourier_tail(double alpha, double beta, int depth);

/// max over 1 <= k <= height of |nu^(k 3^m) - nu^(k)| for the Cantor measure
/// nu = psi_* lambda on the circle, each transform by depth-`depth`
/// enumeration. Requires depth >= m + 8.
double verify_selfsimilar_measure(int m, int height, int depth);

/// Bound 2^N |q / (2p)| / 3^N on the Lebesgue measure of the u with
/// (u, psi(u)) on the line p x + q y = z, from the box cover B_N.
double line_slice_cover_bound(std::int64_t p, std::int64_t q, int depth);

/// Lebesgue measure of the projection to the x-axis of L(p,q,z) intersected
/// with the box cover B_N (union of 3^N boxes), computed box by box.
double line_slice_cover_measure(std::int64_t p, std::int64_t q, double z, int depth);

/// exp(2 pi i x) computed from the fractional part of x.
std::complex<double> unit_phase(double x);

}  // namespace nilequi

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace nilequi {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor(const Rational& q);

std::int64_t to_int64(const Integer& z);

template <class S>
S scalar_from(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) {
    return q;
  } else {
    static_assert(std::is_same_v<S, double>, "scalar must be Rational or double");
    return q.get_d();
  }
}

template <class S>
S scalar_from_int(std::int64_t v) {
  if constexpr (std::is_same_v<S, Rational>) {
    return Rational(static_cast<long>(v));
  } else {
    return static_cast<double>(v);
  }
}

template <class S>
using Vec = std::vector<S>;

template <class S>
Vec<S> zeros(std::size_t n) {
  return Vec<S>(n, S(0));
}

template <class S>
Vec<S> convert(const Vec<Rational>& v) {
  Vec<S> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(scalar_from<S>(x));
  return out;
}

template <class S>
bool is_zero(const Vec<S>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

template <class S>
Vec<S> operator+(Vec<S> a, const Vec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class S>
Vec<S> operator-(Vec<S> a, const Vec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class S>
Vec<S> operator-(Vec<S> a) {
  for (auto& x : a) x = -x;
  return a;
}

template <class S>
Vec<S> scaled(Vec<S> a, const S& c) {
  for (auto& x : a) x *= c;
  return a;
}

template <class S>
void axpy(const S& c, const Vec<S>& x, Vec<S>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

}  // namespace nilequi

#pragma once

#include "nilequi/dilation.hpp"
#include "nilequi/measure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilequi {

/// Horizontal character chi(y + Z^m) = e(k . y) of the torus Z^m \ R^m.
struct Character {
  std::vector<Integer> k;

  bool trivial() const;
  /// max |k_i|
  Integer height() const;
  Rational dchi(const Vec<Rational>& y) const;

  friend bool operator==(const Character&, const Character&) = default;
};

Character make_character(const std::vector<long>& k);
std::vector<std::int64_t> to_int64(const Character& chi);

/// Result of the slice test nu({ v : dchi(A_i v) = z_i, 1 <= i <= d1 }) = 0.
struct WeakCheck {
  bool satisfied = false;
  std::vector<Rational> z;  // the slice with positive mass when not satisfied
  std::string certificate;
};

WeakCheck check_weak_condition(const MeasureSpec& nu, const TorusCoefficients& A, const Character& chi);

/// Some u -> dchi(A_i phi(u)), 1 <= i <= d1, is non-constant. Single-segment
/// polynomial curves only.
bool check_analytic_condition(const Curve& phi, const TorusCoefficients& A, const Character& chi);

/// For almost every u some dchi(A_i phi'(u)) is non-zero.
bool check_tangent_condition(const Curve& phi, const TorusCoefficients& A, const Character& chi);

enum class VerdictKind { Equidistributed, WeaklyEquidistributed, Obstructed };
enum class ParameterMode { Continuous, Discrete };
enum class Criterion { Analytic, Tangent, NotApplicable };

std::string to_string(VerdictKind k);
std::string to_string(ParameterMode p);
std::string to_string(Criterion c);

struct Witness {
  Character chi;
  std::vector<Rational> z;  // z_1 .. z_{d1}
};

struct Verdict {
  VerdictKind kind = VerdictKind::Obstructed;
  std::optional<Witness> witness;         // set when Obstructed
  std::optional<Witness> strong_witness;  // character failing the strong criterion, if any
  bool sufficient_only = false;           // A_0 != 0
  bool degenerate = false;
  ParameterMode parameter = ParameterMode::Continuous;
  std::optional<bool> witness_rational;  // discrete parameter: all z_i rational
  Criterion criterion = Criterion::NotApplicable;
  std::optional<long> height_bound;  // set when characters were enumerated
  std::string certificate;
};

struct ClassifyOptions {
  ParameterMode parameter = ParameterMode::Continuous;
  long height = 20;
  /// Force per-character enumeration up to `height` instead of the exact
  /// reduction (used for cross-validation).
  bool enumerate = false;
};

/// Decides the weak and strong conditions for every non-trivial character.
/// The all-characters quantifier is reduced to an integer kernel: the
/// obstructing characters are the integer vectors annihilating the relevant
/// span of A_i-images.
Verdict classify(const MeasureSpec& nu, const TorusCoefficients& A, const NilAlgebra& g,
                 const ClassifyOptions& opts = {});

/// Re-checks an Obstructed verdict's witness with check_weak_condition.
bool verify_witness(const MeasureSpec& nu, const TorusCoefficients& A, const Verdict& v);

/// Canonical primitive characters (first non-zero entry positive) of height
/// 1..max_height, ordered by (height, entries).
std::vector<Character> primitive_characters(int m, long max_height);

}  // namespace nilequi

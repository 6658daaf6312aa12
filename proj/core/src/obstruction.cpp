#include "nilequi/obstruction.hpp"

#include "nilequi/errors.hpp"
#include "nilequi/exact_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace nilequi {

bool Character::trivial() const {
  return std::all_of(k.begin(), k.end(), [](const Integer& x) { return x == 0; });
}

Integer Character::height() const { return sup_norm(k); }

Rational Character::dchi(const Vec<Rational>& y) const {
  if (y.size() < k.size()) throw DimensionError("dchi: vector shorter than the character");
  Rational s = 0;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] != 0) s += Rational(k[i]) * y[i];
  return s;
}

Character make_character(const std::vector<long>& k) {
  Character c;
  for (long x : k) c.k.emplace_back(x);
  return c;
}

std::vector<std::int64_t> to_int64(const Character& chi) {
  std::vector<std::int64_t> out;
  for (const auto& x : chi.k) out.push_back(to_int64(x));
  return out;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Equidistributed: return "Equidistributed";
    case VerdictKind::WeaklyEquidistributed: return "WeaklyEquidistributed";
    case VerdictKind::Obstructed: return "Obstructed";
  }
  return "?";
}

std::string to_string(ParameterMode p) { return p == ParameterMode::Continuous ? "continuous" : "discrete"; }

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::Analytic: return "analytic";
    case Criterion::Tangent: return "tangent";
    case Criterion::NotApplicable: return "not-applicable";
  }
  return "?";
}

namespace {

std::size_t torus_dim(const TorusCoefficients& A) { return A.A.front().rows(); }
std::size_t alg_dim(const TorusCoefficients& A) { return A.A.front().cols(); }

// k^T A_i as a vector on g
Vec<Rational> pullback(const TorusCoefficients& A, const Character& chi, int i) {
  const auto& M = A.A.at(static_cast<std::size_t>(i));
  Vec<Rational> out(M.cols(), Rational(0));
  for (std::size_t r = 0; r < M.rows(); ++r) {
    if (chi.k[r] == 0) continue;
    Rational kr(chi.k[r]);
    for (std::size_t c = 0; c < M.cols(); ++c) out[c] += kr * M(r, c);
  }
  return out;
}

Rational dot(const Vec<Rational>& a, const Vec<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

void check_character(const TorusCoefficients& A, const Character& chi) {
  if (chi.k.size() != torus_dim(A))
    throw DimensionError(fmt::format("character has {} entries, torus dimension is {}", chi.k.size(), torus_dim(A)));
  if (chi.trivial()) throw DomainError("character must be non-trivial");
}

std::vector<Vec<Rational>> pullbacks(const TorusCoefficients& A, const Character& chi) {
  std::vector<Vec<Rational>> out;
  for (int i = 1; i <= A.d1; ++i) out.push_back(pullback(A, chi, i));
  return out;
}

// Every u -> dchi(A_i phi(u)) constant on the segment.
bool segment_constant(const PolySegment& s, const std::vector<Vec<Rational>>& ls) {
  for (const auto& l : ls)
    for (std::size_t j = 1; j < s.coeffs.size(); ++j)
      if (dot(l, s.coeffs[j]) != 0) return false;
  return true;
}

std::string cover_certificate(const Rational& p, const Rational& q) {
  constexpr int N = 20;
  const double bound = std::pow(2.0 / 3.0, N) * std::abs(Rational(q / (2 * p)).get_d());
  return fmt::format("slice p u + q psi(u) = z with p = {}, q = {}: box-cover bound 2^N |q/2p| / 3^N = {:.3e} at N = {}",
                     to_string(p), to_string(q), bound, N);
}

std::string fiber_certificate() {
  return fmt::format("slice fixes psi(u); psi-fibres lie in 2^N of the 3^N ternary cells, mass <= (2/3)^20 = {:.3e}",
                     std::pow(2.0 / 3.0, 20));
}

WeakCheck staircase_weak(std::optional<int> u_coord, int psi_coord, const std::vector<Vec<Rational>>& ls) {
  WeakCheck out;
  for (const auto& l : ls) {
    Rational alpha = u_coord ? l[static_cast<std::size_t>(*u_coord)] : Rational(0);
    const Rational& beta = l[static_cast<std::size_t>(psi_coord)];
    if (alpha != 0) {
      out.satisfied = true;
      out.certificate = cover_certificate(alpha, beta);
      return out;
    }
    if (beta != 0) {
      out.satisfied = true;
      out.certificate = fiber_certificate();
      return out;
    }
  }
  out.z.assign(ls.size(), Rational(0));
  out.certificate = "all pullbacks vanish on the staircase coordinates";
  return out;
}

[[noreturn]] void undecidable_callable() {
  throw UndecidableError("undecidable for this spec: callable curves have no exact algebraic description");
}

}  // namespace

WeakCheck check_weak_condition(const MeasureSpec& nu, const TorusCoefficients& A, const Character& chi) {
  check_character(A, chi);
  if (static_cast<std::size_t>(nu.dim()) != alg_dim(A)) throw DimensionError("measure and dilation dimensions differ");
  const auto ls = pullbacks(A, chi);
  const auto& v = nu.variant();
  WeakCheck out;

  if (const auto* a = std::get_if<AtomicMeasure>(&v)) {
    (void)a;
    auto atom = nu.heaviest_atom();
    for (const auto& l : ls) out.z.push_back(dot(l, atom->first));
    out.certificate = "atom of mass " + to_string(atom->second) + " lies on the slice";
    return out;
  }
  if (const auto* c = std::get_if<Cantor1D>(&v)) return staircase_weak(std::nullopt, c->coord, ls);
  if (const auto* p = std::get_if<ProductMeasure>(&v)) {
    for (std::size_t j = 0; j < p->factors.size(); ++j) {
      if (!p->factors[j].non_atomic()) continue;
      for (const auto& l : ls)
        if (l[j] != 0) {
          out.satisfied = true;
          out.certificate = fmt::format("slice is a graph over coordinate {}, whose factor has no atoms", j + 1);
          return out;
        }
    }
    // Only coordinates carrying atoms enter; fix each at its heaviest atom.
    Vec<Rational> point(p->factors.size(), Rational(0));
    Rational mass = 1;
    for (std::size_t j = 0; j < p->factors.size(); ++j) {
      if (auto atom = p->factors[j].heaviest_atom()) {
        point[j] = atom->first.front();
        mass *= atom->second;
      }
    }
    for (const auto& l : ls) out.z.push_back(dot(l, point));
    out.certificate = "slice constrains only atomic coordinates; atoms carry mass " + to_string(mass);
    return out;
  }
  const auto& curve = std::get<CurvePushforward>(v).curve;
  if (const auto* cs = std::get_if<CantorStaircase>(&curve.variant()))
    return staircase_weak(cs->u_coord, cs->psi_coord, ls);
  const auto* pp = std::get_if<PiecewisePolynomial>(&curve.variant());
  if (!pp) undecidable_callable();
  for (std::size_t s = 0; s < pp->segments.size(); ++s) {
    const auto& seg = pp->segments[s];
    if (!segment_constant(seg, ls)) continue;
    for (const auto& l : ls) out.z.push_back(dot(l, seg.coeffs.front()));
    out.certificate = fmt::format("every dchi(A_i phi(u)) is constant on segment {} of length {}", s + 1,
                                  to_string(seg.to - seg.from));
    return out;
  }
  out.satisfied = true;
  out.certificate = "some dchi(A_i phi(u)) is non-constant on every segment";
  return out;
}

bool check_analytic_condition(const Curve& phi, const TorusCoefficients& A, const Character& chi) {
  check_character(A, chi);
  const auto* pp = std::get_if<PiecewisePolynomial>(&phi.variant());
  if (!pp) throw UndecidableError("analytic condition needs a polynomial curve");
  if (pp->segments.size() != 1)
    throw ValidationError("analytic condition applies to single-segment curves; use the tangent condition");
  return !segment_constant(pp->segments.front(), pullbacks(A, chi));
}

bool check_tangent_condition(const Curve& phi, const TorusCoefficients& A, const Character& chi) {
  check_character(A, chi);
  const auto ls = pullbacks(A, chi);
  if (const auto* pp = std::get_if<PiecewisePolynomial>(&phi.variant())) {
    // The derivative polynomials vanish on a set of positive measure only if
    // they vanish identically on a segment.
    for (const auto& seg : pp->segments)
      if (segment_constant(seg, ls)) return false;
    return true;
  }
  if (const auto* cs = std::get_if<CantorStaircase>(&phi.variant())) {
    if (!cs->u_coord) return false;
    for (const auto& l : ls)
      if (l[static_cast<std::size_t>(*cs->u_coord)] != 0) return true;
    return false;
  }
  throw UndecidableError("tangent condition needs exact derivative information");
}

std::vector<Character> primitive_characters(int m, long max_height) {
  std::vector<std::vector<Integer>> all;
  std::vector<long> k(static_cast<std::size_t>(m), -max_height);
  if (m < 1 || max_height < 1) return {};
  while (true) {
    long g = 0, lead = 0;
    for (long x : k) {
      g = std::gcd(g, std::labs(x));
      if (lead == 0) lead = x;
    }
    if (g == 1 && lead > 0) {
      std::vector<Integer> v;
      for (long x : k) v.emplace_back(x);
      all.push_back(std::move(v));
    }
    std::size_t i = k.size();
    while (i > 0 && k[i - 1] == max_height) k[--i] = -max_height;
    if (i == 0) break;
    ++k[i - 1];
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return sup_norm(a) < sup_norm(b); });
  std::vector<Character> out;
  for (auto& v : all) out.push_back(Character{std::move(v)});
  return out;
}

namespace {

bool witness_less(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  const auto ha = sup_norm(a), hb = sup_norm(b);
  if (ha != hb) return ha < hb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Smallest obstructing character over several components, each component the
// integer kernel of the matrix whose rows are its directions.
std::optional<std::vector<Integer>> minimal_kernel_vector(const std::vector<std::vector<Vec<Rational>>>& components,
                                                          std::size_t m, long height, bool& certified) {
  std::optional<std::vector<Integer>> best;
  certified = true;
  for (const auto& rows : components) {
    Matrix<Rational> M(rows.size(), m);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < m; ++c) M(r, c) = rows[r][c];
    auto basis = integer_kernel(M);
    if (basis.empty()) continue;
    std::optional<std::vector<Integer>> fallback;
    for (auto& b : basis) {
      auto v = canonical_sign(primitive_part(b));
      if (!fallback || witness_less(v, *fallback)) fallback = v;
    }
    // The minimum is at most the smallest basis height; keep the sweep cheap.
    long limit = std::min<long>(height, static_cast<long>(sup_norm(*fallback).get_si()));
    while (limit > 1 && std::pow(2.0 * static_cast<double>(limit) + 1.0, static_cast<double>(m)) > 2e7) --limit;
    auto found = smallest_kernel_vector(M, limit);
    std::vector<Integer> cand;
    if (found) {
      cand = *found;
    } else {
      cand = *fallback;
      certified = false;
    }
    if (!best || witness_less(cand, *best)) best = cand;
  }
  return best;
}

Vec<Rational> column(const Matrix<Rational>& M, std::size_t c) { return M.col(c); }

// Directions whose annihilator gives the obstructing characters.
struct Components {
  std::vector<std::vector<Vec<Rational>>> weak;
  std::optional<std::vector<std::vector<Vec<Rational>>>> strong;  // nullopt: criterion not applicable
  Criterion criterion = Criterion::NotApplicable;
};

Components components_for(const MeasureSpec& nu, const TorusCoefficients& A) {
  Components out;
  const auto& v = nu.variant();
  auto images = [&](std::size_t coord) {
    std::vector<Vec<Rational>> rows;
    for (int i = 1; i <= A.d1; ++i) rows.push_back(column(A.A[static_cast<std::size_t>(i)], coord));
    return rows;
  };
  auto staircase = [&](std::optional<int> u, int psi) {
    std::vector<Vec<Rational>> tangent;
    if (u) tangent = images(static_cast<std::size_t>(*u));
    auto weak = tangent;
    for (auto& r : images(static_cast<std::size_t>(psi))) weak.push_back(std::move(r));
    out.weak = {weak};
    out.strong = std::vector<std::vector<Vec<Rational>>>{tangent};
    out.criterion = Criterion::Tangent;
  };
  if (std::holds_alternative<AtomicMeasure>(v)) {
    out.weak = {{}};
  } else if (const auto* c = std::get_if<Cantor1D>(&v)) {
    staircase(std::nullopt, c->coord);
  } else if (const auto* p = std::get_if<ProductMeasure>(&v)) {
    std::vector<Vec<Rational>> rows;
    for (std::size_t j = 0; j < p->factors.size(); ++j)
      if (p->factors[j].non_atomic())
        for (auto& r : images(j)) rows.push_back(std::move(r));
    out.weak = {rows};
  } else {
    const auto& curve = std::get<CurvePushforward>(v).curve;
    if (const auto* cs = std::get_if<CantorStaircase>(&curve.variant())) {
      staircase(cs->u_coord, cs->psi_coord);
    } else if (const auto* pp = std::get_if<PiecewisePolynomial>(&curve.variant())) {
      for (const auto& seg : pp->segments) {
        std::vector<Vec<Rational>> rows;
        for (int i = 1; i <= A.d1; ++i)
          for (std::size_t j = 1; j < seg.coeffs.size(); ++j)
            rows.push_back(A.A[static_cast<std::size_t>(i)].apply(seg.coeffs[j]));
        out.weak.push_back(std::move(rows));
      }
      out.strong = out.weak;
      out.criterion = pp->segments.size() == 1 ? Criterion::Analytic : Criterion::Tangent;
    } else {
      undecidable_callable();
    }
  }
  return out;
}

bool strong_holds(const MeasureSpec& nu, const TorusCoefficients& A, const Character& chi) {
  const auto& curve = std::get<CurvePushforward>(nu.variant()).curve;
  if (const auto* pp = std::get_if<PiecewisePolynomial>(&curve.variant()); pp && pp->segments.size() == 1)
    return check_analytic_condition(curve, A, chi);
  return check_tangent_condition(curve, A, chi);
}

void finish(Verdict& v, const TorusCoefficients& A, const ClassifyOptions& opts) {
  v.sufficient_only = A.has_constant_term();
  v.degenerate = A.degenerate;
  v.parameter = opts.parameter;
  if (v.kind == VerdictKind::Obstructed && opts.parameter == ParameterMode::Discrete && v.witness)
    v.witness_rational = true;  // z_i are computed in Q
}

Verdict classify_enumerated(const MeasureSpec& nu, const TorusCoefficients& A, std::size_t m,
                            const ClassifyOptions& opts) {
  Verdict v;
  v.height_bound = opts.height;
  const auto comps = components_for(nu, A);
  v.criterion = comps.criterion;
  const auto chars = primitive_characters(static_cast<int>(m), opts.height);
  for (const auto& chi : chars) {
    auto w = check_weak_condition(nu, A, chi);
    if (!w.satisfied) {
      v.kind = VerdictKind::Obstructed;
      v.witness = Witness{chi, w.z};
      v.certificate = w.certificate;
      return v;
    }
  }
  v.kind = VerdictKind::WeaklyEquidistributed;
  if (comps.strong) {
    const bool is_cantor_measure = std::holds_alternative<Cantor1D>(nu.variant());
    for (const auto& chi : chars) {
      const bool ok = !is_cantor_measure && strong_holds(nu, A, chi);
      if (!ok) {
        v.strong_witness = Witness{chi, {}};
        break;
      }
    }
    if (!v.strong_witness) v.kind = VerdictKind::Equidistributed;
  }
  v.certificate = fmt::format("no obstruction among primitive characters of height <= {}", opts.height);
  return v;
}

}  // namespace

Verdict classify(const MeasureSpec& nu, const TorusCoefficients& A, const NilAlgebra& g, const ClassifyOptions& opts) {
  const auto m = static_cast<std::size_t>(g.abelian_dim());
  if (torus_dim(A) != m || alg_dim(A) != static_cast<std::size_t>(g.dim()))
    throw DimensionError("torus coefficients do not match the algebra");
  if (nu.dim() != g.dim()) throw DimensionError("measure and algebra dimensions differ");
  if (opts.height < 1) throw DomainError("height bound must be positive");

  Verdict v;
  if (opts.enumerate) {
    v = classify_enumerated(nu, A, m, opts);
    finish(v, A, opts);
    return v;
  }
  const auto comps = components_for(nu, A);
  v.criterion = comps.criterion;
  bool certified = true;
  if (auto k = minimal_kernel_vector(comps.weak, m, opts.height, certified)) {
    Character chi{*k};
    auto w = check_weak_condition(nu, A, chi);
    v.kind = VerdictKind::Obstructed;
    v.witness = Witness{chi, w.z};
    v.strong_witness = v.witness;
    v.certificate = w.certificate;
    if (!certified) {
      v.height_bound = opts.height;
      v.certificate += fmt::format("; no obstructing character of height <= {}, minimality beyond it not certified",
                                   opts.height);
    }
    finish(v, A, opts);
    return v;
  }
  v.kind = VerdictKind::WeaklyEquidistributed;
  v.certificate = "the slice directions have trivial integer annihilator";
  if (comps.strong) {
    bool c2 = true;
    if (auto k = minimal_kernel_vector(*comps.strong, m, opts.height, c2)) {
      v.strong_witness = Witness{Character{*k}, {}};
      std::string ks;
      for (const auto& x : v.strong_witness->chi.k) ks += (ks.empty() ? "" : ", ") + x.get_str();
      v.certificate += fmt::format("; the {} condition fails for chi = ({})", to_string(comps.criterion), ks);
    } else {
      v.kind = VerdictKind::Equidistributed;
      v.certificate += fmt::format("; the {} condition holds for every character", to_string(comps.criterion));
    }
  }
  finish(v, A, opts);
  return v;
}

bool verify_witness(const MeasureSpec& nu, const TorusCoefficients& A, const Verdict& v) {
  if (v.kind != VerdictKind::Obstructed) return true;
  if (!v.witness) return false;
  auto w = check_weak_condition(nu, A, v.witness->chi);
  return !w.satisfied && w.z == v.witness->z;
}

}  // namespace nilequi

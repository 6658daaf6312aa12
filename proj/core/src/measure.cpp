#include "nilequi/measure.hpp"

#include "nilequi/cantor.hpp"
#include "nilequi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace nilequi {

namespace {

// 1-D quadrature node for the product grid.
struct Node {
  double x;
  double w;
};

double pow3(int n) { return std::pow(3.0, n); }

// Neumaier summation; grids reach millions of nodes.
class ComplexSum {
 public:
  void add(std::complex<double> z) {
    step(re_, cre_, z.real());
    step(im_, cim_, z.imag());
  }
  std::complex<double> value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void step(double& sum, double& comp, double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

// psi truncated to the first `depth` digits of the index j of a ternary cell.
double cell_psi(std::uint64_t j, int depth) {
  double psi = 0.0, scale = 1.0 / pow3(depth);
  for (int n = depth; n >= 1; --n) {
    if (j % 3 == 1) psi += scale;
    j /= 3;
    scale *= 3.0;
  }
  return psi;
}

// Visits every depth-N ternary cell: (u midpoint, psi representative, weight).
// psi on a cell is psi_N + 3^-N psi(rest), whose mean is psi_N + 3^-N / 6.
template <class F>
void for_each_cantor_cell(int depth, F&& visit) {
  if (depth < 1 || depth > 20) throw DomainError("cantor enumeration depth must be in [1, 20]");
  const auto cells = static_cast<std::uint64_t>(std::llround(pow3(depth)));
  const double w = 1.0 / static_cast<double>(cells);
  for (std::uint64_t j = 0; j < cells; ++j)
    visit((static_cast<double>(j) + 0.5) * w, cell_psi(j, depth) + w / 6.0, w);
}

double dot(const Vec<double>& a, const Vec<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Node> factor_nodes(const MeasureSpec& f, long long resolution, int cantor_depth_override) {
  std::vector<Node> out;
  const auto& v = f.variant();
  if (const auto* a = std::get_if<AtomicMeasure>(&v)) {
    for (std::size_t i = 0; i < a->points.size(); ++i)
      out.push_back({a->points[i][0].get_d(), a->weights[i].get_d()});
  } else if (const auto* c = std::get_if<Cantor1D>(&v)) {
    int depth = cantor_depth_override > 0 ? cantor_depth_override : c->depth;
    while (depth > 1 && pow3(depth) > static_cast<double>(resolution)) --depth;
    for_each_cantor_cell(depth, [&](double, double psi, double w) { out.push_back({psi, w}); });
  } else if (const auto* cp = std::get_if<CurvePushforward>(&v)) {
    if (const auto* cs = std::get_if<CantorStaircase>(&cp->curve.variant())) {
      int depth = cantor_depth_override > 0 ? cantor_depth_override : cs->depth;
      while (depth > 1 && pow3(depth) > static_cast<double>(resolution)) --depth;
      for_each_cantor_cell(depth, [&](double u, double psi, double w) {
        out.push_back({cs->u_coord ? u : psi, w});
      });
    } else {
      for (long long j = 0; j < resolution; ++j) {
        const double u = (static_cast<double>(j) + 0.5) / static_cast<double>(resolution);
        out.push_back({cp->curve.value(u)[0], 1.0 / static_cast<double>(resolution)});
      }
    }
  } else {
    throw ValidationError("nested product measures are not supported");
  }
  return out;
}

struct FourierContext {
  long long panels;
  int cantor_depth;  // unused by the closed forms, kept for symmetry
  long long evaluations = 0;
};

// int e(l . y) dnu(y)
std::complex<double> fourier(const MeasureSpec& spec, const Vec<double>& l, FourierContext& ctx) {
  const auto& v = spec.variant();
  if (const auto* a = std::get_if<AtomicMeasure>(&v)) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a->points.size(); ++i)
      s += a->weights[i].get_d() * unit_phase(dot(l, convert<double>(a->points[i])));
    ctx.evaluations += static_cast<long long>(a->points.size());
    return s;
  }
  if (const auto* c = std::get_if<Cantor1D>(&v)) {
    ++ctx.evaluations;
    return cantor_fourier(0.0, l[static_cast<std::size_t>(c->coord)]);
  }
  if (const auto* p = std::get_if<ProductMeasure>(&v)) {
    std::complex<double> prod{1.0, 0.0};
    for (std::size_t j = 0; j < p->factors.size(); ++j) prod *= fourier(p->factors[j], Vec<double>{l[j]}, ctx);
    return prod;
  }
  const auto& curve = std::get<CurvePushforward>(v).curve;
  const auto& cv = curve.variant();
  if (const auto* cs = std::get_if<CantorStaircase>(&cv)) {
    ++ctx.evaluations;
    const double alpha = cs->u_coord ? l[static_cast<std::size_t>(*cs->u_coord)] : 0.0;
    return cantor_fourier(alpha, l[static_cast<std::size_t>(cs->psi_coord)]);
  }
  std::complex<double> s{0.0, 0.0};
  if (const auto* pp = std::get_if<PiecewisePolynomial>(&cv)) {
    for (const auto& seg : pp->segments) {
      // phase polynomial sum_j (l . c_j) u^j
      std::vector<double> phase;
      for (const auto& c : seg.coeffs) phase.push_back(dot(l, convert<double>(c)));
      const double a = seg.from.get_d(), b = seg.to.get_d();
      const auto n = std::max<long long>(1, static_cast<long long>(std::ceil(static_cast<double>(ctx.panels) * (b - a))));
      const double h = (b - a) / static_cast<double>(n);
      ComplexSum part;
      for (long long j = 0; j < n; ++j) {
        const double u = a + (static_cast<double>(j) + 0.5) * h;
        double x = phase.back();
        for (std::size_t q = phase.size() - 1; q-- > 0;) x = x * u + phase[q];
        part.add(unit_phase(x));
      }
      s += part.value() * h;
      ctx.evaluations += n;
    }
    return s;
  }
  const double h = 1.0 / static_cast<double>(ctx.panels);
  ComplexSum acc;
  for (long long j = 0; j < ctx.panels; ++j) acc.add(unit_phase(dot(l, curve.value((static_cast<double>(j) + 0.5) * h))));
  ctx.evaluations += ctx.panels;
  return acc.value() * h;
}

void check_curve_segments_constant(const PiecewisePolynomial& p, std::map<Vec<Rational>, Rational>& mass) {
  for (const auto& s : p.segments) {
    bool constant = true;
    for (std::size_t j = 1; j < s.coeffs.size(); ++j)
      if (!is_zero(s.coeffs[j])) constant = false;
    if (constant) mass[s.coeffs.front()] += s.to - s.from;
  }
}

Vec<double> sample_point(const MeasureSpec& spec, std::mt19937_64& rng) {
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const auto& v = spec.variant();
  if (const auto* a = std::get_if<AtomicMeasure>(&v)) {
    const double u = uniform();
    double cum = 0.0;
    for (std::size_t i = 0; i < a->points.size(); ++i) {
      cum += a->weights[i].get_d();
      if (u < cum || i + 1 == a->points.size()) return convert<double>(a->points[i]);
    }
  }
  if (const auto* c = std::get_if<Cantor1D>(&v)) {
    Vec<double> y(static_cast<std::size_t>(c->dim), 0.0);
    y[static_cast<std::size_t>(c->coord)] = cantor_psi(uniform(), c->depth);
    return y;
  }
  if (const auto* p = std::get_if<ProductMeasure>(&v)) {
    Vec<double> y;
    for (const auto& f : p->factors) y.push_back(sample_point(f, rng)[0]);
    return y;
  }
  return std::get<CurvePushforward>(v).curve.value(uniform());
}

}  // namespace

MeasureSpec MeasureSpec::atomic(std::vector<Vec<Rational>> points, std::vector<Rational> weights) {
  if (points.empty()) throw ValidationError("atomic measure needs at least one atom");
  if (points.size() != weights.size()) throw ValidationError("atomic measure: points and weights differ in length");
  const auto dim = points.front().size();
  if (dim == 0) throw DimensionError("atomic measure: empty point");
  Rational total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw DimensionError("atomic measure: points of unequal dimension");
    if (weights[i] <= 0) throw ValidationError("atomic measure: weight " + std::to_string(i + 1) + " is not positive");
    total += weights[i];
  }
  if (total != 1) throw ValidationError("atomic measure: weights sum to " + to_string(total) + ", not 1");
  return MeasureSpec(AtomicMeasure{std::move(points), std::move(weights)});
}

MeasureSpec MeasureSpec::dirac(Vec<Rational> point) { return atomic({std::move(point)}, {Rational(1)}); }

MeasureSpec MeasureSpec::curve(Curve c) { return MeasureSpec(CurvePushforward{std::move(c)}); }

MeasureSpec MeasureSpec::cantor(int dim, int coord, int depth) {
  if (dim < 1) throw DimensionError("cantor measure dimension must be positive");
  if (coord < 0 || coord >= dim) throw DimensionError("cantor measure coordinate out of range");
  if (depth < 1 || depth > 20) throw ValidationError("cantor depth must be in [1, 20]");
  return MeasureSpec(Cantor1D{dim, coord, depth});
}

MeasureSpec MeasureSpec::product(std::vector<MeasureSpec> factors) {
  if (factors.empty()) throw ValidationError("product measure needs at least one factor");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].dim() != 1)
      throw DimensionError("product factor " + std::to_string(i + 1) + " must be one-dimensional");
    if (std::holds_alternative<ProductMeasure>(factors[i].variant()))
      throw ValidationError("product factor " + std::to_string(i + 1) + " is itself a product");
  }
  return MeasureSpec(ProductMeasure{std::move(factors)});
}

int MeasureSpec::dim() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AtomicMeasure>)
          return static_cast<int>(m.points.front().size());
        else if constexpr (std::is_same_v<T, CurvePushforward>)
          return m.curve.dim();
        else if constexpr (std::is_same_v<T, Cantor1D>)
          return m.dim;
        else
          return static_cast<int>(m.factors.size());
      },
      v_);
}

bool MeasureSpec::non_atomic() const {
  if (std::holds_alternative<CurvePushforward>(v_) &&
      std::holds_alternative<CallableCurve>(std::get<CurvePushforward>(v_).curve.variant()))
    throw UndecidableError("atoms of a callable curve pushforward cannot be determined");
  return !heaviest_atom().has_value();
}

std::optional<std::pair<Vec<Rational>, Rational>> MeasureSpec::heaviest_atom() const {
  std::optional<std::pair<Vec<Rational>, Rational>> best;
  auto consider = [&](const Vec<Rational>& p, const Rational& w) {
    if (!best || w > best->second) best = std::make_pair(p, w);
  };
  if (const auto* a = std::get_if<AtomicMeasure>(&v_)) {
    std::map<Vec<Rational>, Rational> mass;
    for (std::size_t i = 0; i < a->points.size(); ++i) mass[a->points[i]] += a->weights[i];
    for (std::size_t i = 0; i < a->points.size(); ++i) consider(a->points[i], mass[a->points[i]]);
    return best;
  }
  if (const auto* c = std::get_if<CurvePushforward>(&v_)) {
    if (const auto* p = std::get_if<PiecewisePolynomial>(&c->curve.variant())) {
      std::map<Vec<Rational>, Rational> mass;
      check_curve_segments_constant(*p, mass);
      for (const auto& s : p->segments)
        if (auto it = mass.find(s.coeffs.front()); it != mass.end()) consider(it->first, it->second);
    }
    return best;
  }
  if (const auto* p = std::get_if<ProductMeasure>(&v_)) {
    Vec<Rational> point;
    Rational w = 1;
    for (const auto& f : p->factors) {
      auto a = f.heaviest_atom();
      if (!a) return std::nullopt;
      point.push_back(a->first.front());
      w *= a->second;
    }
    return std::make_pair(point, w);
  }
  return std::nullopt;
}

Nilsystem::Nilsystem(NilAlgebra algebra, DilationFamily family, NilmanifoldPoint base)
    : algebra_(std::move(algebra)), family_(std::move(family)), base_(std::move(base)) {
  const auto n = static_cast<std::size_t>(algebra_.dim());
  if (static_cast<std::size_t>(family_.dim()) != n)
    throw DimensionError("dilation family acts on dimension " + std::to_string(family_.dim()) + ", algebra has " +
                         std::to_string(n));
  if (base_.coords.size() != n) throw DimensionError("base point has wrong dimension");
  for (double x : base_.coords)
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("base point coordinates must lie in [0, 1)");
  base_log_ = from_second_kind(algebra_, base_.coords);
  torus_ = torus_coefficients(family_, algebra_);
}

Nilsystem::Nilsystem(NilAlgebra algebra, DilationFamily family)
    : Nilsystem(algebra, std::move(family),
                NilmanifoldPoint{std::vector<double>(static_cast<std::size_t>(algebra.dim()), 0.0)}) {}

NilmanifoldPoint Nilsystem::map(const Vec<double>& y, double t) const {
  return reduce_to_point(algebra_, bch(algebra_, family_.apply(t, y), base_log_));
}

DilatedMeasure dilate(std::shared_ptr<const MeasureSpec> spec, std::shared_ptr<const Nilsystem> system, double t) {
  if (!spec || !system) throw ValidationError("dilated measure needs a spec and a system");
  if (spec->dim() != system->algebra().dim())
    throw DimensionError("measure lives in dimension " + std::to_string(spec->dim()) + ", algebra has " +
                         std::to_string(system->algebra().dim()));
  if (!std::isfinite(t)) throw DomainError("dilation parameter must be finite");
  return DilatedMeasure{std::move(spec), std::move(system), t};
}

long long oscillation_guard(double t, int family_degree, int curve_degree) {
  const double g = 64.0 * std::pow(1.0 + std::abs(t), std::max(family_degree, 0)) * std::max(curve_degree, 1);
  return static_cast<long long>(std::ceil(g));
}

long long oscillation_guard(const DilatedMeasure& mu) {
  int deg = 1;
  if (const auto* c = std::get_if<CurvePushforward>(&mu.spec->variant())) deg = c->curve.degree();
  return oscillation_guard(mu.t, mu.system->family().degree(), deg);
}

IntegrationResult integrate(const TestFunction& f, const DilatedMeasure& mu, const IntegrationOptions& opts) {
  IntegrationResult r{{0.0, 0.0}, 0, {}};
  ComplexSum acc;
  const auto& sys = *mu.system;
  const auto& v = mu.spec->variant();
  auto eval = [&](const Vec<double>& y) {
    ++r.evaluations;
    return f(sys.map(y, mu.t));
  };
  if (opts.panels && *opts.panels < 1) throw DomainError("panel count must be positive");

  if (const auto* a = std::get_if<AtomicMeasure>(&v)) {
    for (std::size_t i = 0; i < a->points.size(); ++i) acc.add(a->weights[i].get_d() * eval(convert<double>(a->points[i])));
    r.value = acc.value();
    return r;
  }
  if (const auto* c = std::get_if<Cantor1D>(&v)) {
    const int depth = opts.cantor_depth.value_or(c->depth);
    Vec<double> y(static_cast<std::size_t>(c->dim), 0.0);
    for_each_cantor_cell(depth, [&](double, double psi, double w) {
      y[static_cast<std::size_t>(c->coord)] = psi;
      acc.add(w * eval(y));
    });
    r.value = acc.value();
    return r;
  }
  if (const auto* p = std::get_if<ProductMeasure>(&v)) {
    std::size_t continuous = 0;
    for (const auto& fct : p->factors)
      if (!std::holds_alternative<AtomicMeasure>(fct.variant())) ++continuous;
    long long res = 1;
    if (continuous > 0) {
      res = static_cast<long long>(
          std::floor(std::pow(static_cast<double>(opts.product_budget), 1.0 / static_cast<double>(continuous))));
      res = std::max<long long>(res, 3);
      if (opts.panels) res = std::min(res, *opts.panels);
      r.warnings.push_back("product quadrature with at most " + std::to_string(res) + " nodes per factor");
    }
    std::vector<std::vector<Node>> nodes;
    for (const auto& fct : p->factors) nodes.push_back(factor_nodes(fct, res, opts.cantor_depth.value_or(0)));
    std::vector<std::size_t> idx(nodes.size(), 0);
    Vec<double> y(nodes.size());
    while (true) {
      double w = 1.0;
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        y[a] = nodes[a][idx[a]].x;
        w *= nodes[a][idx[a]].w;
      }
      acc.add(w * eval(y));
      std::size_t a = 0;
      while (a < idx.size() && ++idx[a] == nodes[a].size()) idx[a++] = 0;
      if (a == idx.size()) break;
    }
    r.value = acc.value();
    return r;
  }

  const auto& curve = std::get<CurvePushforward>(v).curve;
  if (const auto* cs = std::get_if<CantorStaircase>(&curve.variant())) {
    const int depth = opts.cantor_depth.value_or(cs->depth);
    Vec<double> y(static_cast<std::size_t>(cs->dim), 0.0);
    for_each_cantor_cell(depth, [&](double u, double psi, double w) {
      if (cs->u_coord) y[static_cast<std::size_t>(*cs->u_coord)] = u;
      y[static_cast<std::size_t>(cs->psi_coord)] = psi;
      acc.add(w * eval(y));
    });
    r.value = acc.value();
    return r;
  }
  const long long guard = oscillation_guard(mu);
  const long long panels = opts.panels.value_or(guard);
  if (panels < guard)
    r.warnings.push_back("panels " + std::to_string(panels) + " below oscillation guard " + std::to_string(guard));
  const double h = 1.0 / static_cast<double>(panels);
  for (long long j = 0; j < panels; ++j) acc.add(eval(curve.value((static_cast<double>(j) + 0.5) * h)));
  r.value = acc.value() * h;
  return r;
}

IntegrationResult integrate_character(const std::vector<std::int64_t>& k, const DilatedMeasure& mu,
                                      const IntegrationOptions& opts) {
  const auto& sys = *mu.system;
  const auto& torus = sys.torus();
  const auto m = static_cast<std::size_t>(sys.algebra().abelian_dim());
  const auto n = static_cast<std::size_t>(sys.algebra().dim());
  if (k.size() != m)
    throw DimensionError("character has " + std::to_string(k.size()) + " entries, torus dimension is " +
                         std::to_string(m));
  if (opts.panels && *opts.panels < 1) throw DomainError("panel count must be positive");

  // l_t = sum_i t^i k^T A_i, each k^T A_i exact before rounding
  Vec<double> l(n, 0.0);
  double tp = 1.0;
  for (const auto& A : torus.A) {
    for (std::size_t c = 0; c < n; ++c) {
      Rational s = 0;
      for (std::size_t r = 0; r < m; ++r)
        if (k[r] != 0) s += A(r, c) * Rational(static_cast<long>(k[r]));
      if (s != 0) l[c] += s.get_d() * tp;
    }
    tp *= mu.t;
  }
  double base_phase = 0.0;
  for (std::size_t r = 0; r < m; ++r) base_phase += static_cast<double>(k[r]) * sys.base().coords[r];

  IntegrationResult res{{0.0, 0.0}, 0, {}};
  const long long guard = oscillation_guard(mu);
  FourierContext ctx{opts.panels.value_or(guard), opts.cantor_depth.value_or(0)};
  if (ctx.panels < guard && std::holds_alternative<CurvePushforward>(mu.spec->variant()))
    res.warnings.push_back("panels " + std::to_string(ctx.panels) + " below oscillation guard " +
                           std::to_string(guard));
  res.value = unit_phase(base_phase) * fourier(*mu.spec, l, ctx);
  res.evaluations = ctx.evaluations;
  return res;
}

std::vector<NilmanifoldPoint> sample(const DilatedMeasure& mu, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw DomainError("sample count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<NilmanifoldPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(mu.system->map(sample_point(*mu.spec, rng), mu.t));
  return out;
}

std::vector<std::pair<double, DilatedMeasure>> cesaro_family(std::shared_ptr<const MeasureSpec> spec,
                                                             std::shared_ptr<const Nilsystem> system,
                                                             const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("parameter grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("parameter grid must be strictly increasing");
  std::vector<std::pair<double, DilatedMeasure>> out;
  for (double t : grid) out.emplace_back(t, dilate(spec, system, t));
  return out;
}

std::vector<double> integer_grid(long long first, long long last) {
  if (last < first) throw DomainError("integer grid: last < first");
  std::vector<double> g;
  for (long long n = first; n <= last; ++n) g.push_back(static_cast<double>(n));
  return g;
}

std::vector<double> geometric_grid(double base, int first_exp, int last_exp) {
  if (!(base > 1.0)) throw DomainError("geometric grid base must exceed 1");
  if (last_exp < first_exp) throw DomainError("geometric grid: last exponent < first");
  std::vector<double> g;
  for (int e = first_exp; e <= last_exp; ++e) {
    double v = 1.0;
    for (int i = 0; i < std::abs(e); ++i) v = e > 0 ? v * base : v / base;
    g.push_back(v);
  }
  return g;
}

}  // namespace nilequi

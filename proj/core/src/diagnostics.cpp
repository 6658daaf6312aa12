#include "nilequi/diagnostics.hpp"

#include "nilequi/cantor.hpp"
#include "nilequi/errors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace nilequi {

std::complex<double> weyl_sum(const Character& chi, const DilatedMeasure& mu, const IntegrationOptions& opts) {
  if (chi.trivial()) return {1.0, 0.0};
  return integrate_character(to_int64(chi), mu, opts).value;
}

TestFunction character_function(std::vector<std::int64_t> k) {
  return [k = std::move(k)](const NilmanifoldPoint& x) {
    if (x.coords.size() < k.size()) throw DimensionError("character longer than the point");
    double s = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) s += static_cast<double>(k[i]) * x.coords[i];
    return unit_phase(s);
  };
}

double weak_average_discrete(const Transform& transform, long long N) {
  if (N < 1) throw DomainError("weak average needs N >= 1");
  double s = 0.0;
  for (long long n = 1; n <= N; ++n) s += std::norm(transform(static_cast<double>(n)));
  return s / static_cast<double>(N);
}

WeakAverage weak_average_continuous(const Transform& transform, double T, double step, double t0) {
  if (!(T > t0)) throw DomainError("weak average needs T > t0");
  if (!(step > 0.0)) throw DomainError("weak average needs a positive step");
  WeakAverage out;
  out.step = step;
  double prev_t = t0, prev_v = std::norm(transform(t0)), s = 0.0;
  for (long long i = 1;; ++i) {
    const double t = std::min(T, t0 + static_cast<double>(i) * step);
    const double v = std::norm(transform(t));
    s += 0.5 * (prev_v + v) * (t - prev_t);
    prev_t = t;
    prev_v = v;
    if (t >= T) break;
  }
  out.value = s / (T - t0);
  return out;
}

std::optional<std::string> haar_mean_warning(const TestFunction& f, int dim, int panels) {
  const auto mean = haar_integrate(f, dim, panels);
  if (std::abs(mean) > 1e-6)
    return fmt::format("test function has Haar mean {:.3e}; the weak average does not tend to 0", std::abs(mean));
  return std::nullopt;
}

double star_discrepancy_1d(std::vector<double> points) {
  if (points.empty()) throw DomainError("discrepancy of an empty point set");
  std::sort(points.begin(), points.end());
  const auto n = static_cast<double>(points.size());
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    if (x < 0.0 || x >= 1.0) throw DomainError("discrepancy points must lie in [0, 1)");
    d = std::max({d, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

double character_discrepancy(const std::vector<NilmanifoldPoint>& points, int abelian_dim, int height) {
  if (points.empty()) throw DomainError("discrepancy of an empty point set");
  if (abelian_dim < 1 || height < 1) throw DomainError("character discrepancy needs m >= 1 and H >= 1");
  const auto m = static_cast<std::size_t>(abelian_dim);
  std::vector<long> k(m, -height);
  double worst = 0.0;
  while (true) {
    long lead = 0;
    for (long x : k)
      if (lead == 0) lead = x;
    if (lead > 0) {
      std::complex<double> s{0.0, 0.0};
      for (const auto& p : points) {
        double phase = 0.0;
        for (std::size_t i = 0; i < m; ++i) phase += static_cast<double>(k[i]) * p.coords.at(i);
        s += unit_phase(phase);
      }
      worst = std::max(worst, std::abs(s) / static_cast<double>(points.size()));
    }
    std::size_t i = m;
    while (i > 0 && k[i - 1] == height) k[--i] = -height;
    if (i == 0) break;
    ++k[i - 1];
  }
  return worst;
}

Vec<double> psi_t(const NilAlgebra& g, const Curve& phi, const DilationFamily& family, double u, double xi, double t) {
  if (!(u > 0.0 && u < 1.0) || !(u + xi > 0.0 && u + xi < 1.0))
    throw DomainError(fmt::format("psi_t needs u and u + xi in (0, 1), got u = {}, xi = {}", u, xi));
  const auto a = family.apply(t, phi.value(u + xi));
  const auto b = family.apply(t, phi.value(u));
  return bch(g, a, -b);
}

std::complex<double> shrinking_window_average(const TestFunction& f, const Curve& phi, const Nilsystem& system,
                                              double s0, double ell, double t, long long panels) {
  if (!(t > 0.0) || !(ell > 0.0)) throw DomainError("window needs t > 0 and l > 0");
  if (panels < 1) throw DomainError("panel count must be positive");
  const double width = ell / t;
  if (!(s0 > 0.0) || !(s0 + width < 1.0))
    throw DomainError(fmt::format("window [{}, {}] escapes (0, 1)", s0, s0 + width));
  std::complex<double> s{0.0, 0.0};
  const double h = width / static_cast<double>(panels);
  for (long long j = 0; j < panels; ++j) {
    const double xi = s0 + (static_cast<double>(j) + 0.5) * h;
    s += f(system.map(phi.value(xi), t));
  }
  return s / static_cast<double>(panels);
}

void ConvergenceTable::add(double param, std::string stat, double value, std::string meta) {
  if (!rows_.empty() && param < rows_.back().param) sorted_ = false;
  rows_.push_back(Row{param, std::move(stat), value, std::move(meta)});
}

const std::vector<ConvergenceTable::Row>& ConvergenceTable::rows() const {
  if (!sorted_) {
    std::stable_sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.param < b.param; });
    sorted_ = true;
  }
  return rows_;
}

std::string format_number(double x) { return fmt::format("{}", x); }

std::string ConvergenceTable::to_csv() const {
  std::string out = "param,stat,value,meta\n";
  for (const auto& r : rows()) {
    std::string meta = r.meta;
    if (meta.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : meta) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      meta = q + "\"";
    }
    out += fmt::format("{},{},{},{}\n", format_number(r.param), r.stat, format_number(r.value), meta);
  }
  return out;
}

}  // namespace nilequi

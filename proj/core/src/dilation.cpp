#include "nilequi/dilation.hpp"

#include <algorithm>
#include <functional>

namespace nilequi {

DilationFamily::DilationFamily(std::vector<Matrix<Rational>> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ValidationError("dilation family needs at least B_0");
  const auto n = coeffs_.front().rows();
  for (const auto& b : coeffs_) {
    if (b.rows() != n || b.cols() != n) throw ValidationError("dilation matrices must all be square of equal size");
    coeffs_d_.push_back(convert<double>(b));
  }
}

DilationFamily DilationFamily::scalar(int dim) {
  const auto n = static_cast<std::size_t>(dim);
  return DilationFamily({Matrix<Rational>(n, n), Matrix<Rational>::identity(n)});
}

DilationFamily DilationFamily::diagonal_powers(const std::vector<int>& powers) {
  const auto n = powers.size();
  const int top = powers.empty() ? 0 : *std::max_element(powers.begin(), powers.end());
  std::vector<Matrix<Rational>> b(static_cast<std::size_t>(top + 1), Matrix<Rational>(n, n));
  for (std::size_t i = 0; i < n; ++i) b[static_cast<std::size_t>(powers[i])](i, i) = 1;
  return DilationFamily(std::move(b));
}

int DilationFamily::degree() const {
  for (int j = static_cast<int>(coeffs_.size()) - 1; j > 0; --j)
    if (!coeffs_[static_cast<std::size_t>(j)].is_zero()) return j;
  return 0;
}

Vec<double> DilationFamily::apply(double t, const Vec<double>& v) const {
  Vec<double> acc = coeffs_d_.back().apply(v);
  for (auto it = coeffs_d_.rbegin() + 1; it != coeffs_d_.rend(); ++it) {
    for (auto& x : acc) x *= t;
    acc = acc + it->apply(v);
  }
  return acc;
}

Matrix<double> eval_rho(const DilationFamily& family, double t) {
  const auto& b = family.coeffs();
  Matrix<double> acc = convert<double>(b.back());
  for (auto it = b.rbegin() + 1; it != b.rend(); ++it) acc = t * acc + convert<double>(*it);
  return acc;
}

TorusCoefficients torus_coefficients(const DilationFamily& family, const NilAlgebra& g) {
  if (family.dim() != g.dim()) throw DimensionError("dilation family and algebra dimensions differ");
  TorusCoefficients out;
  const auto m = static_cast<std::size_t>(g.abelian_dim());
  for (const auto& b : family.coeffs()) out.A.push_back(b.top_rows(m));
  for (std::size_t i = 1; i < out.A.size(); ++i)
    if (!out.A[i].is_zero()) out.d1 = static_cast<int>(i);
  out.A.resize(static_cast<std::size_t>(out.d1) + 1);
  out.degenerate = out.d1 == 0;
  return out;
}

int combine_degrees(const std::vector<int>& Dk) {
  const int kappa = static_cast<int>(Dk.size());
  int best = 0;
  std::function<void(int, int, int)> walk = [&](int budget, int parts, int acc) {
    if (parts > 0) best = std::max(best, acc);
    if (parts == kappa) return;
    for (int k = 1; k <= std::min(budget, kappa); ++k) walk(budget - k, parts + 1, acc + Dk[static_cast<std::size_t>(k - 1)]);
  };
  walk(kappa, 0, 0);
  return best;
}

DegreeData degree_data(const DilationFamily& family, const NilAlgebra& g) {
  if (family.dim() != g.dim()) throw DimensionError("dilation family and algebra dimensions differ");
  DegreeData out;
  const auto& b = family.coeffs();
  for (int k = 1; k <= g.kappa(); ++k) {
    // Q_k keeps the coordinates below g^(k): rows 0 .. level_start(k)-1.
    const auto rows = static_cast<std::size_t>(g.level_start(k));
    int deg = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].top_rows(rows).is_zero()) deg = static_cast<int>(j);
    out.Dk.push_back(deg);
  }
  out.D = combine_degrees(out.Dk);
  return out;
}

bool check_graded_condition(const DilationFamily& family, const NilAlgebra& g) {
  auto d = degree_data(family, g);
  for (std::size_t k = 0; k < d.Dk.size(); ++k)
    if (d.Dk[k] > static_cast<int>(k) + 1) return false;
  return true;
}

}  // namespace nilequi

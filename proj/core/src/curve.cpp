#include "nilequi/curve.hpp"

#include "nilequi/cantor.hpp"
#include "nilequi/errors.hpp"

#include <algorithm>
#include <string>

namespace nilequi {

namespace {

void check_coord(int c, int dim, const char* what) {
  if (c < 0 || c >= dim) throw DimensionError(std::string(what) + " index out of range");
}

}  // namespace

Curve::Curve(Variant v) : v_(std::move(v)) {
  if (auto* p = std::get_if<PiecewisePolynomial>(&v_)) {
    for (const auto& s : p->segments) {
      bounds_d_.push_back(s.from.get_d());
      std::vector<Vec<double>> cd;
      for (const auto& c : s.coeffs) cd.push_back(convert<double>(c));
      coeffs_d_.push_back(std::move(cd));
    }
    bounds_d_.push_back(1.0);
  }
}

Curve Curve::polynomial(int dim, std::vector<PolySegment> segments) {
  if (dim < 1) throw DimensionError("curve dimension must be positive");
  if (segments.empty()) throw ValidationError("curve needs at least one segment");
  Rational expect = 0;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    const std::string where = "segment " + std::to_string(s + 1);
    if (seg.from != expect) throw ValidationError(where + " must start at " + to_string(expect));
    if (seg.to <= seg.from) throw ValidationError(where + " has non-positive length");
    if (seg.coeffs.empty()) throw ValidationError(where + " has no coefficients");
    if (static_cast<int>(seg.coeffs.size()) > kMaxDegree + 1)
      throw ValidationError(where + " exceeds degree " + std::to_string(kMaxDegree));
    for (const auto& c : seg.coeffs)
      if (static_cast<int>(c.size()) != dim)
        throw DimensionError(where + ": coefficient length " + std::to_string(c.size()) + " != " +
                             std::to_string(dim));
    expect = seg.to;
  }
  if (expect != 1) throw ValidationError("segments must cover [0, 1]");
  return Curve(PiecewisePolynomial{dim, std::move(segments)});
}

Curve Curve::polynomial(int dim, std::vector<Vec<Rational>> coeffs) {
  std::vector<PolySegment> segs;
  segs.push_back(PolySegment{0, 1, std::move(coeffs)});
  return polynomial(dim, std::move(segs));
}

Curve Curve::cantor(int dim, std::optional<int> u_coord, int psi_coord, int depth) {
  if (dim < 1) throw DimensionError("curve dimension must be positive");
  check_coord(psi_coord, dim, "psi coordinate");
  if (u_coord) {
    check_coord(*u_coord, dim, "u coordinate");
    if (*u_coord == psi_coord) throw ValidationError("u and psi coordinates must differ");
  }
  if (depth < 1 || depth > 33) throw ValidationError("cantor depth must be in [1, 33]");
  return Curve(CantorStaircase{dim, u_coord, psi_coord, depth});
}

Curve Curve::callable(int dim, std::function<Vec<double>(double)> value,
                      std::function<Vec<double>(double)> derivative) {
  if (dim < 1) throw DimensionError("curve dimension must be positive");
  if (!value) throw ValidationError("callable curve needs a value function");
  return Curve(CallableCurve{dim, std::move(value), std::move(derivative)});
}

int Curve::dim() const {
  return std::visit([](const auto& c) { return c.dim; }, v_);
}

int Curve::degree() const {
  if (const auto* p = std::get_if<PiecewisePolynomial>(&v_)) {
    int d = 0;
    for (const auto& s : p->segments) {
      for (int j = static_cast<int>(s.coeffs.size()) - 1; j > d; --j)
        if (!is_zero(s.coeffs[static_cast<std::size_t>(j)])) {
          d = j;
          break;
        }
    }
    return std::max(d, 1);
  }
  return 1;
}

std::size_t Curve::segment_index(double u) const {
  auto it = std::upper_bound(bounds_d_.begin(), bounds_d_.end() - 1, u);
  std::size_t idx = it == bounds_d_.begin() ? 0 : static_cast<std::size_t>(it - bounds_d_.begin()) - 1;
  return std::min(idx, coeffs_d_.size() - 1);
}

Vec<double> eval_poly(const std::vector<Vec<double>>& c, double u) {
  Vec<double> out = c.back();
  for (std::size_t j = c.size() - 1; j-- > 0;) {
    for (std::size_t a = 0; a < out.size(); ++a) out[a] = out[a] * u + c[j][a];
  }
  return out;
}

Vec<double> Curve::value(double u) const {
  if (std::holds_alternative<PiecewisePolynomial>(v_)) return eval_poly(coeffs_d_[segment_index(u)], u);
  if (const auto* c = std::get_if<CantorStaircase>(&v_)) {
    Vec<double> out(static_cast<std::size_t>(c->dim), 0.0);
    if (c->u_coord) out[static_cast<std::size_t>(*c->u_coord)] = u;
    out[static_cast<std::size_t>(c->psi_coord)] = cantor_psi(u, c->depth);
    return out;
  }
  const auto& c = std::get<CallableCurve>(v_);
  auto out = c.value(u);
  if (static_cast<int>(out.size()) != c.dim) throw DimensionError("callable curve returned wrong dimension");
  return out;
}

std::optional<Vec<double>> Curve::derivative(double u) const {
  if (std::holds_alternative<PiecewisePolynomial>(v_)) {
    const auto& c = coeffs_d_[segment_index(u)];
    if (c.size() == 1) return Vec<double>(c.front().size(), 0.0);
    std::vector<Vec<double>> d;
    for (std::size_t j = 1; j < c.size(); ++j) d.push_back(scaled(c[j], static_cast<double>(j)));
    return eval_poly(d, u);
  }
  if (const auto* c = std::get_if<CantorStaircase>(&v_)) {
    // psi is locally constant off the Cantor set, a null set
    Vec<double> out(static_cast<std::size_t>(c->dim), 0.0);
    if (c->u_coord) out[static_cast<std::size_t>(*c->u_coord)] = 1.0;
    return out;
  }
  const auto& c = std::get<CallableCurve>(v_);
  if (!c.derivative) return std::nullopt;
  return c.derivative(u);
}

}  // namespace nilequi

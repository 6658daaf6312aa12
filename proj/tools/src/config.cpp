#include "nilequi_cli/config.hpp"

#include <nilequi/errors.hpp>

#include <fmt/format.h>

#include <fstream>

namespace nilequi::cli {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return fmt::format("{}[{}]", path, i); }

long long integer_field(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<long long>();
}

double real_field(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational_field(v, path).get_d();
  throw ConfigError(path, "expected a number or rational string");
}

const json& array_field(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

Vec<Rational> rational_vector(const json& v, const std::string& path, std::optional<std::size_t> len = std::nullopt) {
  array_field(v, path);
  if (len && v.size() != *len) throw ConfigError(path, fmt::format("expected {} entries, got {}", *len, v.size()));
  Vec<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_rational_field(v[i], index(path, i)));
  return out;
}

// Runs a core constructor, reporting its validation failures at `path`.
template <class F>
auto at(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(path, e.what());
  }
}

NilAlgebra parse_algebra(const json& a, const std::string& path) {
  if (!a.is_object()) throw ConfigError(path, "expected an object");
  if (a.contains("preset")) {
    const auto& p = a["preset"];
    if (!p.is_string()) throw ConfigError(join(path, "preset"), "expected a string");
    const auto name = p.get<std::string>();
    if (name == "abelian") {
      const auto dim = integer_field(require(a, "dim", path), join(path, "dim"));
      return at(join(path, "dim"), [&] { return NilAlgebra::abelian(static_cast<int>(dim)); });
    }
    if (name == "heisenberg") {
      long long r = a.contains("r") ? integer_field(a["r"], join(path, "r")) : 1;
      return at(join(path, "r"), [&] { return NilAlgebra::heisenberg(static_cast<int>(r)); });
    }
    throw ConfigError(join(path, "preset"), "unknown preset '" + name + "' (abelian, heisenberg)");
  }
  const auto dim = integer_field(require(a, "dim", path), join(path, "dim"));
  if (dim < 1 || dim > 64) throw ConfigError(join(path, "dim"), "dimension must be in [1, 64]");
  std::vector<BracketSpec> specs;
  if (a.contains("brackets")) {
    const auto bpath = join(path, "brackets");
    const auto& bs = array_field(a["brackets"], bpath);
    for (std::size_t n = 0; n < bs.size(); ++n) {
      const auto p = index(bpath, n);
      const auto i = integer_field(require(bs[n], "i", p), join(p, "i"));
      const auto j = integer_field(require(bs[n], "j", p), join(p, "j"));
      if (i < 1 || i > dim) throw ConfigError(join(p, "i"), "index out of range (indices are 1-based)");
      if (j < 1 || j > dim) throw ConfigError(join(p, "j"), "index out of range (indices are 1-based)");
      specs.push_back(BracketSpec{static_cast<int>(i - 1), static_cast<int>(j - 1),
                                  rational_vector(require(bs[n], "coeffs", p), join(p, "coeffs"),
                                                  static_cast<std::size_t>(dim))});
    }
  }
  std::optional<int> kappa, m;
  if (a.contains("kappa")) kappa = static_cast<int>(integer_field(a["kappa"], join(path, "kappa")));
  if (a.contains("abelian_dim")) m = static_cast<int>(integer_field(a["abelian_dim"], join(path, "abelian_dim")));
  return at(path, [&] { return NilAlgebra::create(static_cast<int>(dim), specs, kappa, m); });
}

DilationFamily parse_dilation(const json& d, const std::string& path, int dim) {
  if (!d.is_object()) throw ConfigError(path, "expected an object");
  if (d.contains("scalar")) {
    if (!d["scalar"].is_boolean() || !d["scalar"].get<bool>()) throw ConfigError(join(path, "scalar"), "expected true");
    return DilationFamily::scalar(dim);
  }
  if (d.contains("powers")) {
    const auto p = join(path, "powers");
    const auto& arr = array_field(d["powers"], p);
    if (arr.size() != static_cast<std::size_t>(dim))
      throw ConfigError(p, fmt::format("expected {} entries", dim));
    std::vector<int> powers;
    for (std::size_t i = 0; i < arr.size(); ++i) powers.push_back(static_cast<int>(integer_field(arr[i], index(p, i))));
    return at(p, [&] { return DilationFamily::diagonal_powers(powers); });
  }
  const auto mpath = join(path, "matrices");
  const auto& ms = array_field(require(d, "matrices", path), mpath);
  if (ms.empty()) throw ConfigError(mpath, "need at least B_0");
  std::vector<Matrix<Rational>> coeffs;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto p = index(mpath, k);
    const auto& rows = array_field(ms[k], p);
    if (rows.size() != static_cast<std::size_t>(dim)) throw ConfigError(p, fmt::format("expected {} rows", dim));
    Matrix<Rational> m(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto row = rational_vector(rows[r], index(p, r), static_cast<std::size_t>(dim));
      for (std::size_t c = 0; c < row.size(); ++c) m(r, c) = row[c];
    }
    coeffs.push_back(std::move(m));
  }
  return at(mpath, [&] { return DilationFamily(std::move(coeffs)); });
}

int coord_field(const json& v, const std::string& path, int dim) {
  const auto c = integer_field(v, path);
  if (c < 1 || c > dim) throw ConfigError(path, fmt::format("coordinate must be in [1, {}]", dim));
  return static_cast<int>(c - 1);
}

Curve parse_curve(const json& c, const std::string& path, int dim) {
  if (!c.is_object()) throw ConfigError(path, "expected an object");
  if (c.contains("cantor")) {
    const auto p = join(path, "cantor");
    const auto& cc = c["cantor"];
    std::optional<int> u;
    if (cc.contains("u_coord")) u = coord_field(cc["u_coord"], join(p, "u_coord"), dim);
    const int psi = coord_field(require(cc, "psi_coord", p), join(p, "psi_coord"), dim);
    const int depth = cc.contains("depth") ? static_cast<int>(integer_field(cc["depth"], join(p, "depth"))) : 12;
    return at(p, [&] { return Curve::cantor(dim, u, psi, depth); });
  }
  auto parse_coeffs = [&](const json& arr, const std::string& p) {
    array_field(arr, p);
    if (arr.empty()) throw ConfigError(p, "need at least the constant coefficient");
    if (arr.size() > static_cast<std::size_t>(Curve::kMaxDegree) + 1)
      throw ConfigError(p, fmt::format("degree exceeds {}", Curve::kMaxDegree));
    std::vector<Vec<Rational>> out;
    for (std::size_t j = 0; j < arr.size(); ++j)
      out.push_back(rational_vector(arr[j], index(p, j), static_cast<std::size_t>(dim)));
    return out;
  };
  if (c.contains("polynomial")) {
    auto coeffs = parse_coeffs(c["polynomial"], join(path, "polynomial"));
    return at(path, [&] { return Curve::polynomial(dim, std::move(coeffs)); });
  }
  const auto spath = join(path, "segments");
  const auto& segs = array_field(require(c, "segments", path), spath);
  std::vector<PolySegment> out;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const auto p = index(spath, s);
    out.push_back(PolySegment{parse_rational_field(require(segs[s], "from", p), join(p, "from")),
                              parse_rational_field(require(segs[s], "to", p), join(p, "to")),
                              parse_coeffs(require(segs[s], "coeffs", p), join(p, "coeffs"))});
  }
  return at(spath, [&] { return Curve::polynomial(dim, std::move(out)); });
}

MeasureSpec parse_measure(const json& m, const std::string& path, int dim) {
  if (!m.is_object()) throw ConfigError(path, "expected an object");
  const auto& type = require(m, "type", path);
  if (!type.is_string()) throw ConfigError(join(path, "type"), "expected a string");
  const auto t = type.get<std::string>();
  if (t == "curve") return MeasureSpec::curve(parse_curve(require(m, "curve", path), join(path, "curve"), dim));
  if (t == "atomic") {
    const auto ppath = join(path, "points");
    const auto& pts = array_field(require(m, "points", path), ppath);
    std::vector<Vec<Rational>> points;
    for (std::size_t i = 0; i < pts.size(); ++i)
      points.push_back(rational_vector(pts[i], index(ppath, i), static_cast<std::size_t>(dim)));
    std::vector<Rational> weights;
    if (m.contains("weights")) {
      weights = rational_vector(m["weights"], join(path, "weights"), points.size());
    } else {
      for (std::size_t i = 0; i < points.size(); ++i) weights.emplace_back(1, static_cast<unsigned long>(points.size()));
      for (auto& w : weights) w.canonicalize();
    }
    return at(path, [&] { return MeasureSpec::atomic(std::move(points), std::move(weights)); });
  }
  if (t == "cantor") {
    const int coord = m.contains("coord") ? coord_field(m["coord"], join(path, "coord"), dim) : 0;
    const int depth = m.contains("depth") ? static_cast<int>(integer_field(m["depth"], join(path, "depth"))) : 12;
    return at(path, [&] { return MeasureSpec::cantor(dim, coord, depth); });
  }
  if (t == "product") {
    const auto fpath = join(path, "factors");
    const auto& fs = array_field(require(m, "factors", path), fpath);
    if (fs.size() != static_cast<std::size_t>(dim))
      throw ConfigError(fpath, fmt::format("expected one factor per coordinate ({})", dim));
    std::vector<MeasureSpec> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(parse_measure(fs[i], index(fpath, i), 1));
    return at(path, [&] { return MeasureSpec::product(std::move(factors)); });
  }
  throw ConfigError(join(path, "type"), "unknown measure type '" + t + "' (curve, atomic, cantor, product)");
}

std::vector<double> parse_grid(const json& g, const std::string& path) {
  if (g.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < g.size(); ++i) out.push_back(real_field(g[i], index(path, i)));
    return out;
  }
  if (g.is_object() && g.contains("geometric")) {
    const auto p = join(path, "geometric");
    const auto& gg = g["geometric"];
    const double base = real_field(require(gg, "base", p), join(p, "base"));
    const auto from = integer_field(require(gg, "from", p), join(p, "from"));
    const auto to = integer_field(require(gg, "to", p), join(p, "to"));
    return at(p, [&] { return geometric_grid(base, static_cast<int>(from), static_cast<int>(to)); });
  }
  if (g.is_object() && g.contains("range")) {
    const auto p = join(path, "range");
    const auto& r = g["range"];
    const double from = real_field(require(r, "from", p), join(p, "from"));
    const double to = real_field(require(r, "to", p), join(p, "to"));
    const double step = r.contains("step") ? real_field(r["step"], join(p, "step")) : 1.0;
    if (!(step > 0.0)) throw ConfigError(join(p, "step"), "step must be positive");
    if (to < from) throw ConfigError(p, "range is empty");
    std::vector<double> out;
    for (long long i = 0;; ++i) {
      const double t = from + static_cast<double>(i) * step;
      if (t > to + 1e-12 * std::max(1.0, std::abs(to))) break;
      out.push_back(t);
      if (out.size() > 10'000'000) throw ConfigError(p, "range has too many points");
    }
    return out;
  }
  throw ConfigError(path, "expected a list, {\"geometric\": ...} or {\"range\": ...}");
}

}  // namespace

Rational parse_rational_field(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  }
  if (v.is_number()) throw ConfigError(path, "non-integer numbers must be given as rational strings such as \"1/3\"");
  throw ConfigError(path, "expected an integer or a rational string");
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  ExperimentConfig cfg;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ConfigError("name", "expected a string");
    cfg.name = doc["name"].get<std::string>();
  }
  auto algebra = parse_algebra(require(doc, "algebra", ""), "algebra");
  const int dim = algebra.dim();
  if (doc.contains("lattice")) {
    const auto& l = doc["lattice"];
    if (!l.is_string() || l.get<std::string>() != "integer-points")
      throw ConfigError("lattice", "only \"integer-points\" is supported");
  }
  at("lattice", [&] { return LatticeSpec(algebra); });
  auto family = parse_dilation(require(doc, "dilation", ""), "dilation", dim);
  if (family.dim() != dim) throw ConfigError("dilation", "matrix size does not match the algebra");

  NilmanifoldPoint base{std::vector<double>(static_cast<std::size_t>(dim), 0.0)};
  if (doc.contains("base_point")) {
    auto b = rational_vector(doc["base_point"], "base_point", static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] < 0 || b[i] >= 1) throw ConfigError(index("base_point", i), "coordinate must lie in [0, 1)");
      base.coords[i] = b[i].get_d();
    }
  }
  cfg.system = std::make_shared<const Nilsystem>(algebra, family, base);

  if (doc.contains("measure") && doc.contains("curve"))
    throw ConfigError("measure", "give either \"measure\" or \"curve\", not both");
  if (doc.contains("measure"))
    cfg.measure = std::make_shared<const MeasureSpec>(parse_measure(doc["measure"], "measure", dim));
  else if (doc.contains("curve"))
    cfg.measure = std::make_shared<const MeasureSpec>(MeasureSpec::curve(parse_curve(doc["curve"], "curve", dim)));
  else
    throw ConfigError("measure", "missing required field (or give \"curve\")");

  cfg.grid = doc.contains("grid") ? parse_grid(doc["grid"], "grid") : std::vector<double>{1.0};
  at("grid", [&] { return cesaro_family(cfg.measure, cfg.system, cfg.grid); });

  const auto m = static_cast<std::size_t>(algebra.abelian_dim());
  if (doc.contains("characters")) {
    const auto& cs = array_field(doc["characters"], "characters");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto p = index("characters", i);
      const auto& arr = array_field(cs[i], p);
      if (arr.size() != m) throw ConfigError(p, fmt::format("expected {} entries (torus dimension)", m));
      Character chi;
      for (std::size_t j = 0; j < arr.size(); ++j) chi.k.emplace_back(static_cast<long>(integer_field(arr[j], index(p, j))));
      cfg.characters.push_back(std::move(chi));
    }
  } else {
    cfg.characters = primitive_characters(static_cast<int>(m), 1);
  }
  if (doc.contains("height")) {
    cfg.height = static_cast<long>(integer_field(doc["height"], "height"));
    if (cfg.height < 1) throw ConfigError("height", "must be positive");
  }
  if (doc.contains("parameter")) {
    const auto& p = doc["parameter"];
    if (p == "continuous")
      cfg.parameter = ParameterMode::Continuous;
    else if (p == "discrete")
      cfg.parameter = ParameterMode::Discrete;
    else
      throw ConfigError("parameter", "expected \"continuous\" or \"discrete\"");
  }
  if (doc.contains("panels")) {
    cfg.panels = integer_field(doc["panels"], "panels");
    if (*cfg.panels < 1) throw ConfigError("panels", "must be positive");
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("budget")) {
    cfg.budget = real_field(doc["budget"], "budget");
    if (!(cfg.budget > 0)) throw ConfigError("budget", "must be positive");
  }
  if (doc.contains("samples")) {
    const auto s = integer_field(doc["samples"], "samples");
    if (s < 0) throw ConfigError("samples", "must be non-negative");
    cfg.samples = static_cast<std::size_t>(s);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace nilequi::cli

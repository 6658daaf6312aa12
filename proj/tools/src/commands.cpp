#include "nilequi_cli/commands.hpp"

#include <nilequi/counterexamples.hpp>
#include <nilequi/errors.hpp>
#include <nilequi/unipotent.hpp>

#include <fmt/format.h>

#include <cmath>
#include <random>

namespace nilequi::cli {

namespace {

ordered_json rationals(const std::vector<Rational>& v) {
  auto out = ordered_json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

ordered_json integers(const std::vector<Integer>& v) {
  auto out = ordered_json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p())
      out.push_back(x.get_si());
    else
      out.push_back(x.get_str());
  }
  return out;
}

ordered_json witness_json(const Witness& w) {
  ordered_json j;
  j["character"] = integers(w.chi.k);
  j["z"] = rationals(w.z);
  return j;
}

std::string chi_label(const Character& chi) {
  std::string s;
  for (const auto& x : chi.k) s += (s.empty() ? "" : " ") + x.get_str();
  return "(" + s + ")";
}

long long fourier_cost(const MeasureSpec& spec, long long panels) {
  const auto& v = spec.variant();
  if (const auto* a = std::get_if<AtomicMeasure>(&v)) return static_cast<long long>(a->points.size());
  if (std::holds_alternative<Cantor1D>(v)) return 64;
  if (const auto* p = std::get_if<ProductMeasure>(&v)) {
    long long s = 0;
    for (const auto& f : p->factors) s += fourier_cost(f, panels);
    return s;
  }
  if (std::holds_alternative<CantorStaircase>(std::get<CurvePushforward>(v).curve.variant())) return 64;
  return panels;
}

void require(bool ok, const std::string& what, ordered_json& checks, bool& all) {
  checks.push_back({{"check", what}, {"pass", ok}});
  all = all && ok;
}

std::shared_ptr<const Nilsystem> torus_system(int d) {
  return std::make_shared<const Nilsystem>(NilAlgebra::abelian(d), DilationFamily::scalar(d));
}

// Weyl sums at t = 3^j, j = 0..m, compared with t = 1.
double geometric_invariance(const MeasureSpec& spec, int dim, const std::vector<Character>& chars, int m) {
  auto sp = std::make_shared<const MeasureSpec>(spec);
  auto sys = torus_system(dim);
  double worst = 0.0;
  for (const auto& chi : chars) {
    const auto w1 = weyl_sum(chi, dilate(sp, sys, 1.0));
    double t = 1.0;
    for (int j = 1; j <= m; ++j) {
      t *= 3.0;
      worst = std::max(worst, std::abs(weyl_sum(chi, dilate(sp, sys, t)) - w1));
    }
  }
  return worst;
}

double decay_run(const MeasureSpec& spec, int dim, const Character& chi, double T) {
  auto sp = std::make_shared<const MeasureSpec>(spec);
  auto sys = torus_system(dim);
  return weak_average_continuous([&](double t) { return weyl_sum(chi, dilate(sp, sys, t)); }, T, 0.5, 1.0).value;
}

}  // namespace

void apply(ExperimentConfig& cfg, const Overrides& o) {
  if (o.seed) cfg.seed = *o.seed;
  if (o.panels) {
    if (*o.panels < 1) throw ConfigError("--panels", "must be positive");
    cfg.panels = o.panels;
  }
  if (o.height) {
    if (*o.height < 1) throw ConfigError("--height", "must be positive");
    cfg.height = *o.height;
  }
}

ordered_json verdict_to_json(const Verdict& v) {
  ordered_json j;
  j["verdict"] = to_string(v.kind);
  j["criterion"] = to_string(v.criterion);
  j["parameter"] = to_string(v.parameter);
  j["sufficient_only"] = v.sufficient_only;
  j["degenerate"] = v.degenerate;
  j["witness"] = v.witness ? witness_json(*v.witness) : ordered_json(nullptr);
  j["strong_witness"] = v.strong_witness ? witness_json(*v.strong_witness) : ordered_json(nullptr);
  if (v.witness_rational) j["witness_rational"] = *v.witness_rational;
  j["height_bound"] = v.height_bound ? ordered_json(*v.height_bound) : ordered_json(nullptr);
  j["certificate"] = v.certificate;
  return j;
}

ordered_json cmd_check(const ExperimentConfig& cfg) {
  const auto& sys = *cfg.system;
  ClassifyOptions opts;
  opts.parameter = cfg.parameter;
  opts.height = cfg.height;
  const auto v = classify(*cfg.measure, sys.torus(), sys.algebra(), opts);
  ordered_json out;
  out["command"] = "check";
  out["config"] = cfg.name;
  const auto vj = verdict_to_json(v);
  for (const auto& [k, val] : vj.items()) out[k] = val;
  const auto deg = degree_data(sys.family(), sys.algebra());
  ordered_json dil;
  dil["d1"] = sys.torus().d1;
  dil["D_k"] = deg.Dk;
  dil["D"] = deg.D;
  dil["graded"] = check_graded_condition(sys.family(), sys.algebra());
  out["dilation"] = dil;
  out["witness_verified"] = verify_witness(*cfg.measure, sys.torus(), v);
  return out;
}

ConvergenceTable cmd_simulate(const ExperimentConfig& cfg) {
  const auto family_degree = cfg.system->family().degree();
  int curve_degree = 1;
  if (const auto* c = std::get_if<CurvePushforward>(&cfg.measure->variant())) curve_degree = c->curve.degree();
  const int m = cfg.system->algebra().abelian_dim();
  constexpr int kDiscrepancyHeight = 3;

  double work = 0.0;
  for (double t : cfg.grid) {
    const long long panels = cfg.panels.value_or(oscillation_guard(t, family_degree, curve_degree));
    work += static_cast<double>(cfg.characters.size()) * static_cast<double>(fourier_cost(*cfg.measure, panels));
    work += static_cast<double>(cfg.samples) * (1.0 + std::pow(2 * kDiscrepancyHeight + 1, m) / 2.0);
  }
  if (work > cfg.budget)
    throw BudgetError(fmt::format("estimated work {:.3e} evaluations exceeds the budget {:.3e}; reduce the grid, "
                                  "--panels or samples, or raise \"budget\"",
                                  work, cfg.budget));

  ConvergenceTable table;
  table.set_metadata("config", cfg.name);
  table.set_metadata("seed", std::to_string(cfg.seed));
  table.set_metadata("panels", cfg.panels ? std::to_string(*cfg.panels) : "guard");
  table.set_metadata("samples", std::to_string(cfg.samples));

  std::vector<double> sum_sq(cfg.characters.size(), 0.0);
  std::size_t count = 0;
  for (const auto& [t, mu] : cesaro_family(cfg.measure, cfg.system, cfg.grid)) {
    ++count;
    IntegrationOptions io;
    io.panels = cfg.panels;
    // Atomic and Cantor parts are summed in closed form; only curves use panels.
    std::string quad = "closed-form";
    if (const auto* c = std::get_if<CurvePushforward>(&cfg.measure->variant());
        c && !std::holds_alternative<CantorStaircase>(c->curve.variant()))
      quad = std::to_string(cfg.panels.value_or(oscillation_guard(mu)));
    for (std::size_t c = 0; c < cfg.characters.size(); ++c) {
      const auto& chi = cfg.characters[c];
      const auto w = weyl_sum(chi, mu, io);
      sum_sq[c] += std::norm(w);
      const auto meta = fmt::format("op=diagnostics.weyl_sum;chi={};panels={}", chi_label(chi), quad);
      table.add(t, "weyl_abs", std::abs(w), meta);
      table.add(t, "weyl_re", w.real(), meta);
      table.add(t, "weyl_im", w.imag(), meta);
      table.add(t, "cesaro_mean_sq", sum_sq[c] / static_cast<double>(count),
                fmt::format("op=diagnostics.weak_average_discrete;chi={};N={}", chi_label(chi), count));
    }
    if (cfg.samples > 0) {
      const auto pts = sample(mu, cfg.samples, cfg.seed);
      table.add(t, "character_discrepancy", character_discrepancy(pts, m, kDiscrepancyHeight),
                fmt::format("op=diagnostics.character_discrepancy;H={};samples={};seed={}", kDiscrepancyHeight,
                            cfg.samples, cfg.seed));
      if (m == 1 && cfg.system->algebra().dim() == 1) {
        std::vector<double> xs;
        for (const auto& p : pts) xs.push_back(p.coords[0]);
        table.add(t, "star_discrepancy", star_discrepancy_1d(std::move(xs)),
                  fmt::format("op=diagnostics.star_discrepancy_1d;samples={};seed={}", cfg.samples, cfg.seed));
      }
    }
  }
  return table;
}

std::string render_table(const ConvergenceTable& table, std::string_view format) {
  if (format == "csv") return table.to_csv();
  if (format != "json") throw ConfigError("--format", "expected csv or json");
  ordered_json j;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : table.metadata()) meta[k] = v;
  j["metadata"] = meta;
  auto rows = ordered_json::array();
  for (const auto& r : table.rows())
    rows.push_back({{"param", r.param}, {"stat", r.stat}, {"value", r.value}, {"meta", r.meta}});
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

Report cmd_counterexample(const std::string& name, const CounterexampleOptions& opts) {
  if (opts.m < 0) throw ConfigError("--m", "must be non-negative");
  if (opts.height < 1) throw ConfigError("--height", "must be positive");
  Report rep;
  auto checks = ordered_json::array();
  ordered_json& j = rep.json;
  j["counterexample"] = name;
  bool ok = true;
  constexpr double kTol = 1e-9;

  if (name == "cantor-measure") {
    const int depth = opts.depth.value_or(std::max(12, opts.m + 8));
    if (depth < opts.m + 8) throw ConfigError("--depth", fmt::format("must be at least m + 8 = {}", opts.m + 8));
    if (depth > 20) throw ConfigError("--depth", "must be at most 20");
    require(cantor_psi_exact(0) == 0, "psi(0) = 0", checks, ok);
    require(cantor_psi_exact(Rational(1, 2)) == Rational(1, 2), "psi(1/2) = 1/2", checks, ok);
    require(cantor_psi_exact(Rational(1, 3)) == Rational(1, 3), "psi(1/3) = 1/3", checks, ok);
    auto devs = ordered_json::array();
    for (int mm = 1; mm <= opts.m; ++mm) {
      const double d = verify_selfsimilar_measure(mm, opts.height, depth);
      devs.push_back({{"m", mm}, {"max_deviation", d}});
      require(d <= kTol, fmt::format("mu_(3^{}) = mu_1 on characters of height <= {} (depth {})", mm, opts.height, depth),
              checks, ok);
    }
    j["self_similar_measure"] = devs;
    const auto spec = cantor_measure(depth);
    const auto v = classify(spec, torus_system(1)->torus(), NilAlgebra::abelian(1));
    j["verdict"] = verdict_to_json(v);
    require(v.kind == VerdictKind::WeaklyEquidistributed, "classified WeaklyEquidistributed", checks, ok);
    const double avg = decay_run(spec, 1, make_character({1}), 3000.0);
    j["weak_average"] = {{"character", {1}}, {"t_range", {1, 3000}}, {"step", 0.5}, {"value", avg}};
    require(avg <= 0.1, "weak average over t in [1, 3000] <= 0.1", checks, ok);
  } else if (name == "cantor-curve") {
    const int depth = opts.depth.value_or(10);
    const auto curve = counterexample_curve();
    const auto spec = MeasureSpec::curve(curve);
    const auto sys = torus_system(2);
    const auto v = classify(spec, sys->torus(), sys->algebra());
    j["verdict"] = verdict_to_json(v);
    require(v.kind == VerdictKind::WeaklyEquidistributed, "classified WeaklyEquidistributed", checks, ok);
    require(!check_tangent_condition(curve, sys->torus(), make_character({0, 1})),
            "tangent condition fails for chi = (0 1)", checks, ok);
    auto slices = ordered_json::array();
    for (auto [p, q] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {1, -1}, {2, 3}, {1, 5}, {3, -7}}) {
      const double b = line_slice_cover_bound(p, q, 20);
      slices.push_back({{"p", p}, {"q", q}, {"N", 20}, {"bound", b}});
      require(b < 1e-3, fmt::format("line slice p = {}, q = {} has cover bound < 1e-3", p, q), checks, ok);
    }
    j["line_slices"] = slices;
    const auto dev = geometric_invariance(spec, 2, primitive_characters(2, 2), opts.m);
    j["weyl_invariance"] = {{"m_max", opts.m}, {"max_deviation", dev}};
    require(dev <= kTol, "Weyl sums at t = 3^m equal those at t = 1", checks, ok);
    if (opts.self_similarity) {
      const auto r = self_similarity_grid(depth);
      j["self_similarity"] = {{"depth", depth},
                              {"checked", r.checked},
                              {"non_integer", r.failures},
                              {"min_residue", r.min_residue.get_si()},
                              {"max_residue", r.max_residue.get_si()}};
      require(r.failures == 0, fmt::format("3 psi(b/3 + u) - psi(3u) is an integer on the depth-{} grid", depth),
              checks, ok);
    }
    const double avg = decay_run(spec, 2, make_character({0, 1}), 3000.0);
    j["weak_average"] = {{"character", {0, 1}}, {"t_range", {1, 3000}}, {"step", 0.5}, {"value", avg}};
    require(avg <= 0.1, "weak average over t in [1, 3000] <= 0.1", checks, ok);
  } else if (name.rfind("product-cantor:", 0) == 0) {
    int d = 0;
    const auto tail = name.substr(std::string("product-cantor:").size());
    try {
      std::size_t used = 0;
      d = std::stoi(tail, &used);
      if (used != tail.size()) d = 0;
    } catch (const std::exception&) {
      d = 0;
    }
    if (d < 1 || d > 6) throw ConfigError("name", "product-cantor:<d> needs 1 <= d <= 6");
    const auto spec = product_cantor(d);
    const auto sys = torus_system(d);
    const auto v = classify(spec, sys->torus(), sys->algebra());
    j["verdict"] = verdict_to_json(v);
    if (opts.check)
      require(v.kind == VerdictKind::WeaklyEquidistributed, "classified WeaklyEquidistributed", checks, ok);
    const auto dev = geometric_invariance(spec, d, primitive_characters(d, 1), opts.m);
    j["weyl_invariance"] = {{"m_max", opts.m}, {"max_deviation", dev}};
    require(dev <= kTol, "Weyl sums at t = 3^m equal those at t = 1", checks, ok);
    std::vector<long> first(static_cast<std::size_t>(d), 0);
    first[0] = 1;
    const double avg = decay_run(spec, d, make_character(first), 3000.0);
    j["weak_average"] = {{"character", first}, {"t_range", {1, 3000}}, {"step", 0.5}, {"value", avg}};
    require(avg <= 0.1, "weak average over t in [1, 3000] <= 0.1", checks, ok);
  } else {
    throw ConfigError("name", "unknown counterexample '" + name +
                                  "' (known: cantor-measure, cantor-curve, product-cantor:<d>)");
  }
  j["checks"] = checks;
  j["ok"] = ok;
  rep.ok = ok;
  return rep;
}

Report cmd_bch_selftest(std::uint64_t seed, int trials) {
  if (trials < 1) throw ConfigError("--trials", "must be positive");
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    const long num = static_cast<long>(rng() % 11) - 5;
    const unsigned long den = 1 + rng() % 4;
    Rational q(num, den);
    q.canonicalize();
    return q;
  };
  Report rep;
  auto rows = ordered_json::array();
  for (const auto& real : standard_realizations()) {
    const auto g = real.algebra();
    int mismatches = 0;
    double float_err = 0.0;
    for (int n = 0; n < trials; ++n) {
      Vec<Rational> x, y;
      for (int i = 0; i < g.dim(); ++i) {
        x.push_back(draw());
        y.push_back(draw());
      }
      const auto exact = bch(g, x, y);
      if (exact != real.product_log(x, y)) ++mismatches;
      const auto approx = bch(g, convert<double>(x), convert<double>(y));
      for (std::size_t i = 0; i < approx.size(); ++i)
        float_err = std::max(float_err, std::abs(approx[i] - exact[i].get_d()) / std::max(1.0, std::abs(exact[i].get_d())));
    }
    rows.push_back({{"realization", real.name()},
                    {"dim", g.dim()},
                    {"class", g.kappa()},
                    {"trials", trials},
                    {"exact_mismatches", mismatches},
                    {"max_float_error", float_err}});
    rep.ok = rep.ok && mismatches == 0 && float_err <= 1e-12;
  }
  rep.json["command"] = "bch-selftest";
  rep.json["seed"] = seed;
  rep.json["realizations"] = rows;
  rep.json["ok"] = rep.ok;
  return rep;
}

}  // namespace nilequi::cli

#include "axial/report.hpp"

#include "axial/blowup.hpp"
#include "axial/claims.hpp"
#include "axial/special_family.hpp"
#include "axial/surface_maps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace axial {

using nlohmann::json;

namespace {

bool alpha_family(const std::string& f) { return f == "alpha_a" || f == "alpha_eps" || f == "whitney"; }

double family_a(const RunConfig& c) { return c.family == "whitney" ? 0.0 : c.a; }
double family_eps(const RunConfig& c) { return c.family == "alpha_eps" ? c.eps : 0.0; }

json vec(const Vec4& x) { return json::array({x[0], x[1], x[2], x[3]}); }

json region_json(const Region& r) { return {r.u_min, r.u_max, r.v_min, r.v_max}; }

double rel(double x, double y) {
  const double s = std::max(std::abs(x), std::abs(y));
  return s == 0.0 ? 0.0 : std::abs(x - y) / s;
}

json index_json(const QuarterIndex& q) {
  return {{"value", q.str()}, {"quarters", q.quarters}, {"raw", q.raw}, {"residual", q.residual}};
}

}  // namespace

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> families{"alpha_a", "alpha_eps", "whitney", "normal_form", "custom"};
  if (std::find(families.begin(), families.end(), cfg.family) == families.end())
    throw std::invalid_argument("unknown family '" + cfg.family + "'");
  if (cfg.family == "custom" && cfg.map.empty()) throw std::invalid_argument("family custom needs --map");
  if (cfg.region && !cfg.region->valid()) throw std::invalid_argument("region is empty");
  if (cfg.grid < 16) throw std::invalid_argument("grid must be at least 16");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be positive");
  if (cfg.seeds < 0) throw std::invalid_argument("seeds must be nonnegative");
  for (double x : {cfg.a, cfg.eps, cfg.b, cfg.u, cfg.v})
    if (!std::isfinite(x)) throw std::invalid_argument("parameters must be finite");
}

AxialFieldPtr field_for(const RunConfig& cfg) {
  if (cfg.family == "custom") return std::make_shared<MapField>(parse_map(cfg.map));
  return make_field(cfg.family, {{"a", cfg.a}, {"eps", cfg.eps}, {"b", cfg.b}});
}

Region default_region(const RunConfig& cfg) {
  if (alpha_family(cfg.family)) {
    const double R = counting_window(family_a(cfg));
    return {-R, R, -R, R};
  }
  if (cfg.family == "normal_form") return {-1.0, 1.0, -1.0, 1.0};
  return {-0.5, 0.5, -0.5, 0.5};
}

Region region_for(const RunConfig& cfg) { return cfg.region ? *cfg.region : default_region(cfg); }

json to_json(const AxiumbilicRecord& r) {
  json j{{"u", r.u},
         {"v", r.v},
         {"type", to_string(r.type)},
         {"det", r.det},
         {"converged", r.converged},
         {"residual", r.residual},
         {"separatrix_angles", r.separatrix_angles}};
  if (!r.branch.empty()) j["branch"] = r.branch;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.index) j["index"] = index_json(*r.index);
  json inv = json::array();
  for (const auto& d : r.invariant) inv.push_back({{"angle", d.angle}, {"lambda", d.lambda}});
  j["invariant_lines"] = inv;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json analyze(const RunConfig& cfg) {
  validate(cfg);
  const AxialFieldPtr field = field_for(cfg);
  const Region region = region_for(cfg);
  SearchOptions so;
  so.grid = cfg.grid;
  so.threads = cfg.threads;
  AxiumbilicSearch s = find_axiumbilics(*field, region, so);

  std::vector<Vec2> special;
  for (const auto& p : s.points) special.emplace_back(p.u, p.v);
  for (const auto& p : s.critical) special.emplace_back(p.u, p.v);
  auto radius_at = [&](double u, double v) {
    double d = 1e300;
    for (const auto& q : special) {
      const double e = (q - Vec2(u, v)).norm();
      if (e > 1e-12) d = std::min(d, e);
    }
    return std::min(0.1, 0.3 * d);
  };
  auto with_index = [&](AxiumbilicRecord& r, json& j) {
    try {
      r.index = index(*field, r.u, r.v, radius_at(r.u, r.v));
      j = to_json(r);
    } catch (const std::exception& e) {
      j = to_json(r);
      j["index_error"] = e.what();
    }
  };
  json pts = json::array(), crit = json::array(), unconv = json::array();
  int quarters = 0;
  bool sum_ok = true;
  for (auto& r : s.points) {
    json j;
    with_index(r, j);
    if (r.index) quarters += r.index->quarters; else sum_ok = false;
    pts.push_back(j);
  }
  for (auto& r : s.critical) {
    json j;
    with_index(r, j);
    j.erase("type");
    j.erase("invariant_lines");
    j.erase("separatrix_angles");
    crit.push_back(j);
  }
  for (const auto& r : s.unconverged) unconv.push_back({{"u", r.u}, {"v", r.v}, {"residual", r.residual}});
  json degen = json::array();
  for (const auto& r : s.degenerate) degen.push_back({{"u", r.u}, {"v", r.v}, {"note", r.note}});
  json out{{"schema_version", kSchemaVersion},
           {"command", "analyze"},
           {"family", cfg.family},
           {"field", field->name()},
           {"params", {{"a", cfg.a}, {"eps", cfg.eps}, {"b", cfg.b}}},
           {"region", region_json(region)},
           {"grid", cfg.grid},
           {"axiumbilics", pts},
           {"critical_points", crit},
           {"unconverged", unconv},
           {"frame_degenerate", degen},
           {"axiumbilic_count", static_cast<int>(s.points.size())}};
  if (sum_ok) {
    QuarterIndex q;
    q.quarters = quarters;
    q.raw = quarters / 4.0;
    out["axiumbilic_index_sum"] = q.str();
  }
  if (cfg.family == "custom") out["map"] = cfg.map;
  return out;
}

json forms(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.family == "normal_form") throw std::invalid_argument("forms needs a surface map family");
  SurfaceMapPtr map = cfg.family == "custom" ? SurfaceMapPtr(parse_map(cfg.map))
                                             : make_surface_map(cfg.family, {{"a", cfg.a}, {"eps", cfg.eps}});
  const SurfaceJet j = evaluate_jet(*map, cfg.u, cfg.v);
  const FirstForm I = first_form(j);
  const NormalFrame fr = normal_frame(j);
  const ScaledSecondForm sff = second_form_scaled(j, fr);
  const AxialQuartic q = quartic_extended(I, sff, fr);
  json out{{"schema_version", kSchemaVersion},
           {"command", "forms"},
           {"family", cfg.family},
           {"map", map->name()},
           {"point", {cfg.u, cfg.v}},
           {"regular", is_regular(I)},
           {"first_form", {{"E", I.E}, {"F", I.F}, {"G", I.G}, {"D", I.D}}},
           {"frame", {{"W", vec(fr.W)}, {"N1", vec(fr.N1)}, {"N2", vec(fr.N2)}, {"whitney_ok", fr.whitney_ok}}},
           {"second_form_barred", {{"e", sff.eb}, {"f", sff.fb}, {"g", sff.gb}}},
           {"quartic", {{"coefficients", q.a}, {"relation_residual", q.relation_residual()}}}};
  if (sff.regular()) out["second_form"] = {{"e", sff.e}, {"f", sff.f}, {"g", sff.g}};
  try {
    const CrossingPair cp =
        solve_directions(q, is_regular(I) ? DeviationFn([&](double t) { return deviation(j, fr, I, t); }) : DeviationFn{});
    json d{{"theta", cp.theta}, {"grouped", cp.grouped}, {"near_axiumbilic", cp.near_axiumbilic}};
    if (cp.grouped) {
      d["principal"] = {cp.theta[cp.principal[0]], cp.theta[cp.principal[1]]};
      d["mean"] = {cp.theta[cp.mean[0]], cp.theta[cp.mean[1]]};
    }
    out["directions"] = d;
  } catch (const std::exception& e) {
    out["directions_error"] = e.what();
  }
  if (is_regular(I)) {
    try {
      const EllipseOfCurvature el = ellipse_of_curvature(j, fr, I);
      out["ellipse"] = {{"shape", to_string(el.shape)},
                        {"center", vec(el.H)},
                        {"semi_major", el.semi_major},
                        {"semi_minor", el.semi_minor},
                        {"major_tangent_angle", el.major_tangent_angle}};
    } catch (const std::exception& e) {
      out["ellipse_error"] = e.what();
    }
  }
  if (alpha_family(cfg.family)) {
    const double a = family_a(cfg), eps = family_eps(cfg);
    const auto ab = family_abar<double>(a, eps, cfg.u, cfg.v);
    out["family_abar"] = {ab[0], ab[1]};
    if (is_regular(I)) out["normalization"] = family_normalization({a, eps}, cfg.u, cfg.v);
  }
  return out;
}

std::string scan_table(const RunConfig& cfg) {
  if (cfg.a_values.empty() || cfg.eps_values.empty()) throw std::invalid_argument("scan needs a and eps values");
  return scan_csv(scan(cfg.a_values, cfg.eps_values, cfg.threads));
}

CrossValidation cross_validate_closed_forms(double a, int samples, unsigned long long seed) {
  CrossValidation cv;
  cv.a = a;
  cv.samples = samples;
  cv.normalization_max = -1e300;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 0.5);
  const AlphaMap map(a, 0.0, "alpha_a");
  const MapField generic(std::make_shared<AlphaMap>(a, 0.0, "alpha_a"));
  for (int k = 0; k < samples; ++k) {
    double u = U(rng), v = U(rng);
    while (u == 0.0) u = U(rng);
    while (v == 0.0) v = U(rng);
    const SurfaceJet j = map.jet(u, v);
    const FirstForm I = first_form(j);
    const NormalFrame fr = normal_frame(j);
    const ScaledSecondForm sff = second_form_scaled(j, fr);
    const auto f = family_forms<double>(a, 0.0, u, v);
    double m = std::max({rel(I.E, f.E), rel(I.F, f.F), rel(I.G, f.G), rel(fr.N1.squaredNorm(), f.n1sq)});
    for (int i = 0; i < 4; ++i) m = std::max({m, rel(fr.N1[i], f.N1[i]), rel(fr.N2[i], f.N2[i])});
    for (int i = 0; i < 2; ++i) m = std::max({m, rel(sff.eb[i], f.eb[i]), rel(sff.fb[i], f.fb[i]), rel(sff.gb[i], f.gb[i])});
    cv.forms = std::max(cv.forms, m);
    const double kappa = family_normalization({a, 0.0}, u, v);
    cv.normalization_max = std::max(cv.normalization_max, kappa);
    const Vec2 g = generic.beta(u, v);
    const auto ab = family_abar<double>(a, 0.0, u, v);
    cv.abar = std::max({cv.abar, rel(kappa * g[0], ab[0]), rel(kappa * g[1], ab[1])});
  }
  return cv;
}

json verify(const RunConfig& cfg) {
  std::vector<Rational> samples;
  if (cfg.samples.empty())
    samples = default_claim_samples();
  else
    for (const auto& s : cfg.samples) samples.push_back(parse_rational(s));
  const ClaimReport rep = verify_claims(samples, cfg.claims);
  json out{{"schema_version", kSchemaVersion}, {"command", "verify"}};
  out["claims"] = rep.to_json()["claims"];
  out["summary"] = rep.to_json()["summary"];
  if (cfg.claims.empty()) {
    json guards = json::array();
    for (double a : {0.0, 2.0, 7.6, 9.0}) {
      const BlowupField bf(a);
      const auto& g = bf.guard();
      json e{{"a", a}, {"p_identity", g.p_identity}, {"q_identity", g.q_identity}, {"max_residual", g.max_residual}};
      if (!g.warning.empty()) e["warning"] = g.warning;
      guards.push_back(e);
    }
    out["blowup_guards"] = guards;
    json cross = json::array();
    for (double a : {0.0, 2.0, 7.0, 9.0}) {
      const CrossValidation cv = cross_validate_closed_forms(a, 200);
      cross.push_back({{"a", a},
                       {"samples", cv.samples},
                       {"forms_max_rel", cv.forms},
                       {"abar_max_rel", cv.abar},
                       {"normalization_negative", cv.normalization_max < 0}});
    }
    out["closed_form_cross_validation"] = cross;
  }
  return out;
}

PortraitOutput portrait(const RunConfig& cfg) {
  validate(cfg);
  const AxialFieldPtr field = field_for(cfg);
  PortraitConfig pc;
  pc.region = region_for(cfg);
  pc.seeds = cfg.seeds;
  pc.grid = std::max(16, std::min(cfg.grid, 64));
  pc.threads = cfg.threads;
  const Portrait P = build_portrait(*field, pc);
  PortraitOutput out;
  out.svg = render_svg(P);
  out.csv = export_csv(P.streamlines);
  const PortraitSignature sig = axiumbilic_signature(P);
  json axi = json::array();
  for (const auto& r : P.axiumbilics) axi.push_back(to_json(r));
  json s{{"schema_version", kSchemaVersion},
         {"command", "portrait"},
         {"family", cfg.family},
         {"field", P.field_name},
         {"region", region_json(P.region)},
         {"streamlines", static_cast<int>(P.streamlines.size())},
         {"axiumbilics", axi},
         {"separatrix_counts", sig.separatrix_counts},
         {"notices", P.notices}};
  json crit = json::array();
  for (const auto& c : P.critical) crit.push_back({c.x(), c.y()});
  s["critical_points"] = crit;
  if ((cfg.family == "alpha_a" || cfg.family == "whitney") && !P.critical.empty()) {
    try {
      const PortraitSignature cs = critical_signature(family_a(cfg), cfg.threads);
      json bd = json::array();
      for (const auto& b : cs.blowdown)
        bd.push_back({{"theta", b.theta_star}, {"traced", b.theta_traced}, {"deviation", b.deviation}, {"ok", b.ok}});
      s["critical_signature"] = {{"key", cs.key()},
                                 {"index", cs.index.str()},
                                 {"arcs_to_critical", cs.arcs_to_critical},
                                 {"hyperbolic_sectors", cs.hyperbolic_sectors},
                                 {"parabolic_sectors", cs.parabolic_sectors},
                                 {"sequence", cs.sequence},
                                 {"blowdown", bd}};
    } catch (const std::exception& e) {
      s["critical_signature_error"] = e.what();
    }
  }
  out.summary = s;
  return out;
}

}  // namespace axial

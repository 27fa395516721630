// Acceptance run: one PASS/FAIL line per criterion, supplementary lines indented below.
#include "axial/axial_field.hpp"
#include "axial/blowup.hpp"
#include "axial/exact_poly.hpp"
#include "axial/geometry.hpp"
#include "axial/portrait.hpp"
#include "axial/report.hpp"
#include "axial/special_family.hpp"
#include "axial/surface_maps.hpp"
#include "axial/umbilic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace axial;
using std::numbers::pi;

namespace {

// tolerances
constexpr double kFormsTol = 1e-9;
constexpr double kJacobianTol = 1e-9;
constexpr double kSnapTol = 0.05;
constexpr double kLocatorTol = 1e-8;
constexpr double kResidualTol = 1e-10;
constexpr double kDetRel = 0.10;
constexpr double kLineTol = 1e-8;
constexpr double kBlowdownTol = 0.05;

std::vector<std::string> notes;
void note(const std::string& s) { notes.push_back(s); }

std::string fmt(const char* f, auto... x) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, x...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double block_rel(const std::vector<double>& x, const std::vector<double>& y) {
  double d = 0, s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::abs(x[i] - y[i]));
    s = std::max({s, std::abs(x[i]), std::abs(y[i])});
  }
  return s > 0 ? d / s : 0.0;
}

double line_dist(double a, double b) {
  const double d = std::abs(std::remainder(a - b, pi));
  return std::min(d, pi - d);
}

bool same_lines(std::vector<double> got, const std::vector<double>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (double w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](double x, double y) { return line_dist(x, w) < line_dist(y, w); });
    if (line_dist(*it, w) > tol) return false;
    got.erase(it);
  }
  return true;
}

// 1. closed forms vs the generic pipeline
bool criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_forms = 0, worst_abar = 0, kappa_max = -1e300;
  for (double a : {0.0, 2.0, 7.0, 9.0}) {
    std::mt19937_64 rng(1000 + static_cast<int>(a));
    std::uniform_real_distribution<double> U(0.0, 0.5);
    const auto map = make_surface_map("alpha_a", {{"a", a}});
    const MapField generic(map);
    for (int k = 0; k < 1000; ++k) {
      double u = U(rng), v = U(rng);
      if (u == 0.0 || v == 0.0) continue;
      const SurfaceJet j = evaluate_jet(*map, u, v);
      const FirstForm I = first_form(j);
      const NormalFrame fr = normal_frame(j);
      const ScaledSecondForm s = second_form_scaled(j, fr);
      const auto f = family_forms(a, 0.0, u, v);
      worst_forms = std::max(worst_forms, block_rel({I.E, I.F, I.G}, {f.E, f.F, f.G}));
      worst_forms = std::max(worst_forms, block_rel({fr.N1[0], fr.N1[1], fr.N1[2], fr.N1[3]}, {f.N1[0], f.N1[1], f.N1[2], f.N1[3]}));
      worst_forms = std::max(worst_forms, block_rel({fr.N2[0], fr.N2[1], fr.N2[2], fr.N2[3]}, {f.N2[0], f.N2[1], f.N2[2], f.N2[3]}));
      for (int i = 0; i < 2; ++i)
        worst_forms = std::max(worst_forms, block_rel({s.eb[i], s.fb[i], s.gb[i]}, {f.eb[i], f.fb[i], f.gb[i]}));
      const AxialQuartic q = generic.quartic(u, v);
      const double kappa = family_normalization({a, 0.0}, u, v);
      kappa_max = std::max(kappa_max, kappa);
      const auto ab = family_abar(a, 0.0, u, v);
      worst_abar = std::max(worst_abar, block_rel({ab[0], ab[1]}, {kappa * q.a[0], kappa * q.a[1]}));
    }
  }
  const double dt = seconds_since(t0);
  note(fmt("forms max rel %.2e, (a0bar, a1bar) max rel %.2e, normalization -1/(2 E^2 |N1|^2) <= %.3g, %.2f s", worst_forms,
           worst_abar, kappa_max, dt));
  return worst_forms < kFormsTol && worst_abar < kFormsTol && dt < 5.0;
}

RationalPoly A(std::initializer_list<long> c) { return RationalPoly(c, 'a'); }

// 2. resultant identities with the polynomials as printed
bool criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const RationalPoly z;
  const ParamPoly p({z, A({-56, 0, 1}), z, A({20, 0, -1}), z, A({24, 0, -1}), z, A({8}), z, A({4})});
  const ParamPoly ra({A({64, 0, -1}), z, A({-420, 0, 9}), z, A({-160, 0, 1}), z, A({-88, 0, -2}), z, A({-36}), z, A({-8})});
  const ParamPoly ta({A({-112, 0, 2}), z, A({1128, 0, -24}), z, A({-40, 0, 4}), z, A({-128, 0, 10}), z, A({24}), z, A({-8})});
  const RationalPoly s5 = A({-243, 0, 5}).pow(2);
  const RationalPoly want_ra = A({64, 0, -1}) * s5 * A({-36, 0, 1}).pow(12) * RationalPoly::constant(Rational(1073741824), 'a');
  const RationalPoly want_ta =
      A({-56, 0, 1}).pow(5) * s5 * A({1296, 0, -56, 0, 1}).pow(4) * RationalPoly::constant(Rational("549755813888"), 'a');
  bool ok = true;
  auto compare = [&](const char* name, const ParamPoly& q, const RationalPoly& want) {
    const RationalPoly got = resultant(p, q);
    std::string rel;
    bool hit = false;
    if (got == want) {
      rel = "equal";
      hit = true;
    } else if (got == -want) {
      rel = "equal up to sign -1";
      hit = true;
    } else if (!got.is_zero() && got.degree() == want.degree()) {
      const Rational c = want.leading() / got.leading();
      rel = got.scaled(c) == want ? "stated = " + c.get_str() + " * res(p, " + name + ")" : "not proportional";
    } else {
      rel = "degree " + std::to_string(got.degree()) + " vs " + std::to_string(want.degree());
    }
    const RationalPoly got2 = resultant(p.scaled(2), q);
    note(fmt("res(p, %s): %s; res(2p, %s) %s the stated value", name, rel.c_str(), name,
             got2 == want ? "equals" : (got2 == -want ? "equals up to sign" : "differs from")));
    ok = ok && hit;
  };
  compare("r_a", ra, want_ra);
  compare("t_a", ta, want_ta);
  const double dt = seconds_since(t0);
  note(fmt("2p = P(theta)(1+t^2)^5; %.2f s", dt));
  return ok && dt < 60.0;
}

// 3. singularity census on the exceptional circle
bool criterion3() {
  struct Case {
    double a;
    int total, saddles;
    std::vector<double> nodes;
  };
  bool ok = true;
  for (const Case& c : {Case{0.0, 8, 6, {pi / 2, 3 * pi / 2}}, Case{7.6, 12, 8, {0.0, pi / 2, pi, 3 * pi / 2}},
                        Case{9.0, 12, 10, {pi / 2, 3 * pi / 2}}}) {
    const ResolutionPortrait rp = resolution_portrait(c.a);
    std::vector<double> nodes;
    for (const auto& s : rp.singularities)
      if (s.type == SingularityType::Node) nodes.push_back(s.theta);
    bool nodes_ok = nodes.size() == c.nodes.size();
    for (std::size_t i = 0; nodes_ok && i < nodes.size(); ++i) nodes_ok = std::abs(nodes[i] - c.nodes[i]) < 1e-9;
    BlowupField f(c.a);
    auto det = [&](double th) {
      const auto J = f.jacobian(th);
      return J[0][0] * J[1][1] - J[0][1] * J[1][0];
    };
    const double j0 = det(0.0), j0_want = -2 * (c.a * c.a - 56) * (c.a * c.a - 64);
    const double jp = std::max(std::abs(det(pi / 2) - 64.0), std::abs(det(-pi / 2) - 64.0));
    const bool case_ok = static_cast<int>(rp.singularities.size()) == c.total && rp.saddles() == c.saddles && nodes_ok &&
                         jp < kJacobianTol && std::abs(j0 - j0_want) < kJacobianTol * std::abs(j0_want);
    note(fmt("a = %g: %zu points, %d saddles, sequence %s; J(0) = %.10g (want %.10g), |J(+-pi/2) - 64| = %.1e", c.a,
             rp.singularities.size(), rp.saddles(), rp.sequence().c_str(), j0, j0_want, jp));
    ok = ok && case_ok;
  }
  return ok;
}

// 4. index of the critical point
bool criterion4() {
  bool ok = true;
  for (auto [a, want] : {std::pair{0.0, 2}, std::pair{7.6, 2}, std::pair{10.0, 0}}) {
    const FamilyField f({a, 0.0});
    IndexOptions opt;
    opt.samples = 720;
    const QuarterIndex q = index(f, 0.0, 0.0, 0.1, opt);
    note(fmt("a = %g: index %s (raw %.6f, snap residual %.2e)", a, q.str().c_str(), q.raw, q.residual));
    ok = ok && q.quarters == want && q.residual < kSnapTol;
  }
  return ok;
}

// 5. bifurcation table
bool criterion5() {
  const std::vector<double> as{-9, -7.8, -7, 0, 7, 7.8, 9}, es{-0.05, 0.05};
  const auto rows = scan(as, es, 8);
  bool ok = true;
  for (const auto& r : rows) {
    const double a = std::abs(r.a);
    std::string want_types;
    int want_count = 0, want_q = 0;
    if (a < 7.5) {
      want_count = 2, want_types = "E3;E3", want_q = 2;
    } else if (a < 8) {
      want_count = 2, want_types = "E4;E4", want_q = 2;
    } else {
      const bool populated = r.a * r.eps > 0;
      want_count = populated ? 4 : 0;
      want_types = populated ? "E5;E3;E3;E5" : "";
    }
    std::multiset<std::string> got_set, want_set;
    const std::string got_types = r.boundary ? "boundary" : r.result.types();
    auto split = [](const std::string& s) {
      std::multiset<std::string> m;
      std::stringstream ss(s);
      for (std::string t; std::getline(ss, t, ';');)
        if (!t.empty()) m.insert(t);
      return m;
    };
    got_set = split(got_types);
    want_set = split(want_types);
    const bool row_ok = !r.boundary && r.error.empty() && r.result.count == want_count && got_set == want_set &&
                        r.result.index_sum.quarters == want_q;
    note(fmt("(%g, %g): count %d types %s sum %s | expected %d %s %s%s", r.a, r.eps, r.result.count,
             got_types.empty() ? "-" : got_types.c_str(), r.result.index_sum.str().c_str(), want_count,
             want_types.empty() ? "-" : want_types.c_str(), want_q == 2 ? "1/2" : "0", row_ok ? "" : "  <- mismatch"));
    ok = ok && row_ok;
  }
  // the same regimes at small |eps|, where the populated side and E4 band appear
  for (auto [a, e] : {std::pair{9.0, 1e-3}, std::pair{9.0, -1e-3}, std::pair{-9.0, -1e-3}, std::pair{-9.0, 1e-3},
                      std::pair{7.8, -5e-4}, std::pair{-7.8, 5e-4}, std::pair{7.8, 5e-4}}) {
    const CountAndType c = count_and_type({a, e});
    note(fmt("  supplementary (%g, %g): count %d types %s sum %s", a, e, c.count, c.types().empty() ? "-" : c.types().c_str(),
             c.index_sum.str().c_str()));
  }
  return ok;
}

// 6. locator precision
bool criterion6() {
  const double eps = 0.1, v0 = std::sqrt(eps * (1 - eps) / (4 - eps));
  const FamilyField f({0.0, eps});
  const AxiumbilicSearch s = find_axiumbilics(f, {-0.5, 0.5, -0.5, 0.5});
  bool ok = s.points.size() == 2;
  for (const auto& r : s.points) {
    const auto ab = family_abar(0.0, eps, r.u, r.v);
    const double res = std::hypot(ab[0], ab[1]);
    const double err = std::hypot(r.u, std::abs(r.v) - v0);
    note(fmt("(%.3e, %.12f): distance to (0, +-v0) %.2e, residual %.2e", r.u, r.v, err, res));
    ok = ok && err < kLocatorTol && res < kResidualTol;
  }
  note(fmt("v0 = %.12f, %zu points", v0, s.points.size()));
  return ok;
}

// 7. det D beta leading order
bool criterion7() {
  const double eps = 0.01, v0 = std::sqrt(eps * (1 - eps) / (4 - eps));
  const FamilyField f({0.0, eps});
  const AxiumbilicSearch s = find_axiumbilics(f, {-0.2, 0.2, -0.2, 0.2});
  const double want = 512.0 * 8.0 * std::pow(v0, 4);
  bool ok = s.points.size() == 2;
  for (const auto& r : s.points) {
    const double rel = std::abs(r.det - want) / want;
    note(fmt("v = %+.6f: det %.6g vs 512*8*v0^4 = %.6g (%.2f%%)", r.v, r.det, want, 100 * rel));
    ok = ok && rel < kDetRel;
  }
  return ok;
}

// Companion-matrix oracle on the slope m = dv/du.
std::vector<double> companion_lines(const std::array<double, 5>& c, bool& ambiguous) {
  Eigen::Matrix4d C = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 3; ++i) C(i + 1, i) = 1.0;
  for (int i = 0; i < 4; ++i) C(i, 3) = -c[i] / c[4];
  Eigen::EigenSolver<Eigen::Matrix4d> es(C);
  std::vector<double> out;
  ambiguous = false;
  for (int i = 0; i < 4; ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) <= 1e-8 * (1 + std::abs(z.real()))) out.push_back(std::atan(z.real()));
    else if (std::abs(z.imag()) < 1e-5 * (1 + std::abs(z.real()))) ambiguous = true;
  }
  return out;
}

// 8. quartic solver
bool criterion8() {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> N(0.0, 1.0);
  int checked = 0, skipped = 0, bad = 0;
  for (int k = 0; k < 10000; ++k) {
    std::array<double, 5> c;
    for (auto& x : c) x = N(rng);
    bool amb = false;
    const auto want = companion_lines(c, amb);
    if (amb) {
      ++skipped;
      continue;
    }
    ++checked;
    if (!same_lines(binary_form_directions({c.begin(), c.end()}), want, kLineTol)) ++bad;
  }
  note(fmt("%d quartics checked, %d mismatched, %d skipped as near-double roots", checked, bad, skipped));
  int vbad = 0, vn = 0;
  for (double a : {0.0, 3.0, 9.0}) {
    const MapField f(make_surface_map("alpha_a", {{"a", a}}));
    for (double u : {-0.4, -0.1, 0.05, 0.2, 0.45}) {
      ++vn;
      const auto got = f.crossing(u, 0.0).theta;
      // dv = 0, du = 0, du = +-u dv
      const std::vector<double> want{0.0, pi / 2, std::atan2(1.0, u), std::atan2(-1.0, u)};
      if (!same_lines(got, want, kLineTol)) ++vbad;
    }
  }
  note(fmt("v = 0 restriction: %d of %d points factor as {dv = 0, du = 0, du = +-u dv}", vn - vbad, vn));
  return bad == 0 && skipped < 100 && vbad == 0;
}

// 9. portrait signatures
bool criterion9() {
  bool ok = true;
  struct Case {
    double a, e;
    Region r;
  };
  for (const Case& c : {Case{0.0, 0.1, {-0.3, 0.3, -0.5, 0.5}}, Case{7.8, -5e-4, {-0.02, 0.02, -0.1, 0.1}},
                        Case{9.0, 1e-3, {-0.01, 0.01, -0.1, 0.1}}, Case{7.8, 0.1, {-0.3, 0.3, -0.5, 0.5}},
                        Case{9.0, 0.05, {-0.3, 0.3, -0.5, 0.5}}}) {
    const FamilyField f({c.a, c.e});
    PortraitConfig cfg;
    cfg.region = c.r;
    cfg.threads = 8;
    const Portrait p = build_portrait(f, cfg);
    const PortraitSignature s = axiumbilic_signature(p);
    std::string line;
    bool case_ok = !s.types.empty();
    for (std::size_t i = 0; i < s.types.size(); ++i) {
      const int want = s.types[i] == "E3" ? 3 : s.types[i] == "E4" ? 4 : s.types[i] == "E5" ? 5 : -1;
      case_ok = case_ok && s.separatrix_counts[i] == want;
      line += (i ? ", " : "") + s.types[i] + ":" + std::to_string(s.separatrix_counts[i]);
    }
    note(fmt("(%g, %g): %s", c.a, c.e, line.empty() ? "no axiumbilics" : line.c_str()));
    ok = ok && case_ok;
  }
  std::set<std::string> keys;
  double bd = 0;
  for (double a : {0.0, 7.6, 9.0}) {
    const PortraitSignature s = critical_signature(a, 8);
    keys.insert(s.key());
    bd = std::max(bd, s.blowdown_max());
    note(fmt("a = %g: %s; blow-down max deviation %.2e rad over %zu germs", a, s.key().c_str(), s.blowdown_max(),
             s.blowdown.size()));
  }
  return ok && keys.size() == 3 && bd < kBlowdownTol;
}

// 10. determinism
bool criterion10() {
  bool ok = true;
  auto repeat = [&](const std::string& name, const std::function<std::string(int)>& run) {
    std::string first;
    for (int th : {1, 8}) {
      const std::string x = run(th), y = run(th);
      const bool same = x == y && !x.empty();
      if (first.empty()) first = x;
      note(fmt("%s, threads %d: %s (%zu bytes)%s", name.c_str(), th, same ? "identical" : "DIFFERENT", x.size(),
               th == 8 ? (x == first ? ", equal to the 1-thread output" : ", differs from the 1-thread output") : ""));
      ok = ok && same;
    }
  };
  RunConfig base;
  base.family = "alpha_eps";
  base.a = 9.0;
  base.eps = 1e-3;
  base.region = Region{-0.01, 0.01, -0.1, 0.1};
  repeat("analyze", [&](int th) {
    RunConfig c = base;
    c.command = "analyze";
    c.threads = th;
    return dump(analyze(c));
  });
  repeat("scan", [&](int th) {
    RunConfig c = base;
    c.command = "scan";
    c.threads = th;
    c.a_values = {-9, -7.8, -7, 0, 7, 7.8, 8, 9};
    c.eps_values = {-0.05, 0.05};
    return scan_table(c);
  });
  repeat("portrait", [&](int th) {
    RunConfig c = base;
    c.command = "portrait";
    c.threads = th;
    c.seeds = 4;
    const PortraitOutput p = portrait(c);
    return p.svg + p.csv + dump(p.summary);
  });
  return ok;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<bool()>>> criteria{
      {"closed-form cross-validation", criterion1}, {"resultant identities", criterion2},
      {"resolution singularity census", criterion3}, {"critical point index", criterion4},
      {"bifurcation table", criterion5},            {"axiumbilic locator precision", criterion6},
      {"det D beta leading order", criterion7},     {"quartic solver oracle", criterion8},
      {"portrait signatures", criterion9},          {"determinism", criterion10}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    notes.clear();
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string err;
    try {
      pass = criteria[i].second();
    } catch (const std::exception& e) {
      err = e.what();
    }
    std::printf("criterion %zu: %s  %s (%.1f s)%s%s\n", i + 1, pass ? "PASS" : "FAIL", criteria[i].first, seconds_since(t0),
                err.empty() ? "" : "  error: ", err.c_str());
    for (const auto& n : notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    failed += pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

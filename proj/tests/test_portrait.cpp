#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axial/axial_field.hpp"
#include "axial/portrait.hpp"
#include "axial/special_family.hpp"

#include <cmath>
#include <numbers>
#include <set>

using namespace axial;
using std::numbers::pi;

namespace {

// Quartic with the fixed slopes dv/du in m.
LambdaField constant_field(std::array<double, 4> m) {
  return LambdaField(
      [m](double, double) {
        std::array<double, 5> c{1.0, 0, 0, 0, 0};  // running product, c[i] on dv^i
        std::array<double, 5> p{1.0, 0, 0, 0, 0};
        for (int k = 0; k < 4; ++k) {
          std::array<double, 5> q{};
          for (int i = 0; i <= k; ++i) {
            q[i + 1] += p[i];
            q[i] -= m[k] * p[i];
          }
          p = q;
        }
        c = p;
        return c;
      },
      "constant");
}

double dist_to_polyline(const Vec2& x, const std::vector<Vec2>& poly) {
  double best = 1e300;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const Vec2 a = poly[i], b = poly[i + 1];
    const double t = std::clamp((x - a).dot(b - a) / std::max(1e-300, (b - a).squaredNorm()), 0.0, 1.0);
    best = std::min(best, (a + t * (b - a) - x).norm());
  }
  return best;
}

double heading(const Vec2& a, const Vec2& b) { return std::atan2(b.y() - a.y(), b.x() - a.x()); }

}  // namespace

TEST_CASE("the line v = 0 is invariant at a = 0") {
  const FamilyField f({0.0, 0.0});
  IntegrateOptions opt;
  opt.region = {-0.5, 0.5, -0.5, 0.5};
  opt.step = 1e-3;
  opt.max_len = 0.25;
  opt.exclusions.push_back({Vec2(0, 0), 5e-3, true});
  for (double h : {0.0, pi}) {
    const Streamline s = integrate(f, FieldSelector::AnyRoot, Vec2(0.3, 0.0), h, opt);
    REQUIRE(s.points.size() > 100);
    for (const auto& p : s.points) CHECK(std::abs(p.y()) < 1e-12);
  }
}

TEST_CASE("constant fields give straight lines") {
  const LambdaField f = constant_field({-2.0, -0.3, 0.5, 1.7});
  IntegrateOptions opt;
  opt.region = {-1.0, 1.0, -1.0, 1.0};
  opt.step = 1e-3;
  opt.max_len = 0.5;
  for (double m : {-2.0, -0.3, 0.5, 1.7}) {
    const double th = std::atan(m);
    const Streamline s = integrate(f, FieldSelector::AnyRoot, Vec2(0.1, -0.2), th + 0.05, opt);
    REQUIRE(s.points.size() > 10);
    const Vec2 d = s.points.back() - s.points.front();
    CHECK(std::abs(s.length() - d.norm()) < 1e-10);
    CHECK(std::abs(std::remainder(heading(s.points.front(), s.points.back()) - th, pi)) < 1e-10);
    CHECK(s.length() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(s.reason == Termination::StepLimit);
  }
}

TEST_CASE("reversal retraces the same curve") {
  const FamilyField f({0.0, 0.1});
  IntegrateOptions opt;
  opt.region = {-0.5, 0.5, -0.5, 0.5};
  opt.step = 1e-3;
  opt.max_len = 0.2;
  const Streamline fwd = integrate(f, FieldSelector::Principal, Vec2(0.2, 0.3), 0.4, opt);
  REQUIRE(fwd.points.size() > 50);
  const std::size_t n = fwd.points.size();
  const Streamline back = integrate(f, FieldSelector::Principal, fwd.points.back(),
                                    heading(fwd.points[n - 1], fwd.points[n - 2]), opt);
  REQUIRE(back.points.size() > 50);
  for (const auto& p : back.points)
    if ((p - fwd.points.front()).norm() > 2e-3 && back.length() > 0) CHECK(dist_to_polyline(p, fwd.points) < 1e-7);
  CHECK((back.points.back() - fwd.points.front()).norm() < 2e-3);
}

TEST_CASE("principal and mean lines keep orthogonal partners and turn slowly") {
  const FamilyField f({2.0, 0.1});
  IntegrateOptions opt;
  opt.region = {-0.4, 0.4, -0.4, 0.4};
  opt.step = 8e-4;
  opt.max_len = 0.4;
  for (FieldSelector sel : {FieldSelector::Principal, FieldSelector::Mean}) {
    const Streamline s = integrate(f, sel, Vec2(0.15, 0.2), 1.0, opt);
    REQUIRE(s.points.size() > 50);
    for (std::size_t i = 0; i < s.points.size(); i += 7) {
      const CrossingPair cp = f.crossing(s.points[i].x(), s.points[i].y());
      const auto pair = sel == FieldSelector::Principal ? cp.principal : cp.mean;
      REQUIRE(pair[0] >= 0);
      const FirstForm I = f.metric(s.points[i].x(), s.points[i].y());
      CHECK(std::abs(metric_cos(I, cp.theta[pair[0]], cp.theta[pair[1]])) < 1e-6);
    }
    for (std::size_t i = 2; i < s.points.size(); ++i) {
      const double t1 = heading(s.points[i - 2], s.points[i - 1]), t2 = heading(s.points[i - 1], s.points[i]);
      CHECK(std::abs(std::remainder(t2 - t1, pi)) < 0.2);
    }
  }
}

TEST_CASE("portraits respect exclusions and are deterministic") {
  const FamilyField f({9.0, 1e-3});
  PortraitConfig cfg;
  cfg.region = {-0.01, 0.01, -0.1, 0.1};
  cfg.seeds = 4;
  cfg.threads = 1;
  const Portrait p1 = build_portrait(f, cfg);
  cfg.threads = 6;
  const Portrait p2 = build_portrait(f, cfg);
  CHECK(render_svg(p1) == render_svg(p2));
  CHECK(export_csv(p1.streamlines) == export_csv(p2.streamlines));
  REQUIRE(p1.axiumbilics.size() == 4);
  const double w = 0.2;
  for (const auto& s : p1.streamlines) {
    if (s.field == "separatrix") continue;
    for (const auto& q : s.points) {
      for (const auto& a : p1.axiumbilics) CHECK((q - Vec2(a.u, a.v)).norm() >= cfg.exclusion * w * (1 - 1e-9));
      CHECK(cfg.region.contains(q.x(), q.y(), 1e-3 * w + 1e-12));
    }
  }
  for (std::size_t i = 1; i < p1.streamlines.size(); ++i) CHECK(p1.streamlines[i - 1].id < p1.streamlines[i].id);
}

TEST_CASE("separatrix counts follow the type") {
  struct Case {
    double a, e;
    Region r;
  };
  for (const Case c : {Case{7.8, -5e-4, {-0.02, 0.02, -0.1, 0.1}}, Case{9.0, 1e-3, {-0.01, 0.01, -0.1, 0.1}}}) {
    const FamilyField f({c.a, c.e});
    PortraitConfig cfg;
    cfg.region = c.r;
    cfg.threads = 4;
    cfg.seeds = 3;
    const Portrait p = build_portrait(f, cfg);
    const PortraitSignature s = axiumbilic_signature(p);
    REQUIRE(!s.types.empty());
    for (std::size_t i = 0; i < s.types.size(); ++i) {
      const int want = s.types[i] == "E3" ? 3 : s.types[i] == "E4" ? 4 : 5;
      CHECK(s.separatrix_counts[i] == want);
    }
  }
}

TEST_CASE("signatures at the critical point") {
  const PortraitSignature s0 = critical_signature(0.0), s1 = critical_signature(7.6), s2 = critical_signature(9.0);
  CHECK(s0.index.str() == "1/2");
  CHECK(s1.index.str() == "1/2");
  CHECK(s2.index.str() == "0");
  CHECK(std::set<std::string>{s0.key(), s1.key(), s2.key()}.size() == 3);
  CHECK(s0.arcs_to_critical == 6);
  CHECK(s1.arcs_to_critical == 8);
  CHECK(s2.arcs_to_critical == 10);
  for (const auto* s : {&s0, &s1, &s2}) {
    CHECK(s->blowdown.size() == static_cast<std::size_t>(s->arcs_to_critical));
    CHECK(s->blowdown_max() < 0.05);
    for (const auto& b : s->blowdown) CHECK(b.ok);
  }
}

TEST_CASE("CSV round trip and malformed input") {
  const FamilyField f({0.0, 0.1});
  IntegrateOptions opt;
  opt.region = {-0.5, 0.5, -0.5, 0.5};
  opt.max_len = 0.05;
  std::vector<Streamline> lines;
  for (int k = 0; k < 3; ++k) {
    Streamline s = integrate(f, FieldSelector::Mean, Vec2(0.1 * k - 0.1, 0.2), 0.3 * k, opt);
    s.id = k;
    s.branch = k % 2;
    s.field = "mean";
    lines.push_back(s);
  }
  const std::string csv = export_csv(lines);
  CHECK(csv.rfind("curve_id,branch,field,idx,u,v\n", 0) == 0);
  const auto back = parse_csv(csv);
  REQUIRE(back.size() == lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    CHECK(back[i].id == lines[i].id);
    CHECK(back[i].branch == lines[i].branch);
    CHECK(back[i].field == lines[i].field);
    REQUIRE(back[i].points.size() == lines[i].points.size());
    for (std::size_t j = 0; j < lines[i].points.size(); ++j) CHECK((back[i].points[j] - lines[i].points[j]).norm() < 1e-6);
  }
  CHECK(export_csv(back) == csv);
  CHECK_THROWS_AS(parse_csv("id,u,v\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("curve_id,branch,field,idx,u,v\n0,0,mean,1,0.1,0.2\n"), std::invalid_argument);
}

TEST_CASE("empty portrait renders") {
  Portrait p;
  p.field_name = "empty";
  p.region = {-1, 1, -1, 1};
  const std::string svg = render_svg(p);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("class=\"axes\"") != std::string::npos);
  CHECK(svg.find("<polyline") == std::string::npos);
  CHECK(render_svg(p) == svg);
}

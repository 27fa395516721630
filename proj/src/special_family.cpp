#include "axial/special_family.hpp"

#include "axial/dual.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace axial {

double family_normalization(const FamilyParams& p, double u, double v) {
  const auto f = family_forms<double>(p.a, p.eps, u, v);
  return -1.0 / (2.0 * f.E * f.E * f.n1sq);
}

std::array<double, 2> family_axial_coeffs(const FamilyParams& p, double u, double v) {
  return family_abar<double>(p.a, p.eps, u, v);
}

FamilyField::FamilyField(FamilyParams p)
    : p_(p), map_(p.a, p.eps, p.eps == 0.0 ? (p.a == 0.0 ? "whitney" : "alpha_a") : "alpha_eps") {}

std::string FamilyField::name() const { return map_.name(); }

FirstForm FamilyField::metric(double u, double v) const {
  const auto f = family_forms<double>(p_.a, p_.eps, u, v);
  return {f.E, f.F, f.G, f.E * f.G - f.F * f.F};
}

AxialQuartic FamilyField::quartic(double u, double v) const {
  const auto ab = family_abar<double>(p_.a, p_.eps, u, v);
  AxialQuartic q = quartic_from_a01(ab[0], ab[1], metric(u, v), QuarticForm::Family);
  q.u = u;
  q.v = v;
  return q;
}

Vec2 FamilyField::beta(double u, double v) const {
  const auto ab = family_abar<double>(p_.a, p_.eps, u, v);
  return {ab[0], ab[1]};
}

Eigen::Matrix2d FamilyField::beta_jacobian(double u, double v) const {
  const Dual2 du(u, 1.0, 0.0), dv(v, 0.0, 1.0), a(p_.a), e(p_.eps);
  const auto ab = family_abar<Dual2>(a, e, du, dv);
  Eigen::Matrix2d J;
  J << ab[0].d[0], ab[0].d[1], ab[1].d[0], ab[1].d[1];
  return J;
}

std::array<Vec2, 5> FamilyField::coefficient_gradients(double u, double v) const {
  const Dual2 du(u, 1.0, 0.0), dv(v, 0.0, 1.0), a(p_.a), e(p_.eps);
  const auto ab = family_abar<Dual2>(a, e, du, dv);
  const auto f = family_forms<Dual2>(a, e, du, dv);
  const auto c = family_polynomial_coeffs<Dual2>(ab[0], ab[1], f.E, f.F, f.G);
  const Dual2 E3 = f.E * f.E * f.E;
  std::array<Vec2, 5> g;
  for (int i = 0; i < 5; ++i) {
    const Dual2 q = c[i] / E3;
    g[i] = Vec2(q.d[0], q.d[1]);
  }
  return g;
}

double FamilyField::deviation(double u, double v, double theta) const {
  const SurfaceJet j = map_.jet(u, v);
  return axial::deviation(j, normal_frame(j), first_form(j), theta);
}

std::optional<double> BifurcationCurves::eps1(double v) const {
  const double v2 = v * v;
  const double disc = 1.0 - (4 * a + 14) * v2 + (1 - 4 * a) * v2 * v2;
  if (disc < 0) return std::nullopt;
  return 0.5 * (1.0 - (a - 1) * v2 - std::sqrt(disc));
}

std::optional<double> BifurcationCurves::eps2(double v) const {
  const double v2 = v * v;
  const double disc = 1.0 + (4 * a - 14) * v2 + (1 + 4 * a) * v2 * v2;
  if (disc < 0) return std::nullopt;
  return 0.5 * (-1.0 - (1 + a) * v2 + std::sqrt(disc));
}

double BifurcationCurves::eps1_series(double v) const {
  const double v2 = v * v;
  return 0.5 * (8 + a) * v2 + (12 + 8 * a + a * a) * v2 * v2;
}

double BifurcationCurves::eps2_series(double v) const {
  const double v2 = v * v;
  return 0.5 * (a - 8) * v2 - (12 + a * a - 8 * a) * v2 * v2;
}

std::string BifurcationCurves::contact() const {
  const auto l = leading();
  return (l[0] > 0) != (l[1] > 0) ? "opposite" : "same";
}

double BifurcationCurves::factor1(double a, double e, double v) {
  const double v2 = v * v;
  return (a * a + 2 * a) * v2 * v2 + (-4 * e + 4 * a * e + 16 + 2 * a) * v2 + 4 * e * e - 4 * e;
}

double BifurcationCurves::factor2(double a, double e, double v) {
  const double v2 = v * v;
  return (a * a - 2 * a) * v2 * v2 + (4 * e + 4 * a * e + 16 - 2 * a) * v2 + 4 * e * e + 4 * e;
}

BifurcationCurves bifurcation_curves(double a) { return BifurcationCurves{a}; }

std::string CountAndType::types() const {
  std::string s;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i) s += ";";
    s += to_string(records[i].type);
  }
  return s;
}

void check_regime(const FamilyParams& p) {
  const double aa = std::abs(p.a);
  for (double b : {7.5, 8.0, std::sqrt(56.0)})
    if (std::abs(aa - b) < 1e-3) {
      std::ostringstream os;
      os << "boundary: count/type undefined at a = " << p.a;
      throw BoundaryError(os.str());
    }
  if (p.eps == 0.0) throw BoundaryError("boundary: eps = 0 is the undeformed critical point");
  if (std::abs(p.eps) > 0.25) throw BoundaryError("boundary: |eps| > 0.25 outside the deformation range");
}

double counting_window(double a) {
  const double aa = std::abs(a);
  if (aa > 8.0) {
    // alpha^a itself has axiumbilics at v^2 = (2|a| - 16)/(a^2 - 2|a|)
    const double vf = std::sqrt((2 * aa - 16) / (aa * aa - 2 * aa));
    return std::min(0.5, 0.5 * vf);
  }
  return 0.5;
}

namespace {

std::vector<double> positive_s_roots(double A, double B, double C) {
  std::vector<double> s;
  if (A == 0.0) {
    if (B != 0.0) s.push_back(-C / B);
  } else {
    const double d = B * B - 4 * A * C;
    if (d >= 0) {
      const double sq = std::sqrt(d);
      const double q = -0.5 * (B + (B >= 0 ? sq : -sq));
      s.push_back(q / A);
      if (q != 0.0) s.push_back(C / q);
    }
  }
  std::vector<double> out;
  for (double x : s)
    if (x > 0 && std::isfinite(x)) out.push_back(x);
  return out;
}

}  // namespace

CountAndType count_and_type(const FamilyParams& p, bool with_index) {
  check_regime(p);
  CountAndType res;
  res.params = p;
  res.window = counting_window(p.a);
  const double a = p.a, e = p.eps;
  struct Cand {
    double v;
    std::string branch;
  };
  std::vector<Cand> all;
  for (double s : positive_s_roots(a * a + 2 * a, -4 * e + 4 * a * e + 16 + 2 * a, 4 * e * e - 4 * e))
    for (double sg : {-1.0, 1.0}) all.push_back({sg * std::sqrt(s), "eps1"});
  for (double s : positive_s_roots(a * a - 2 * a, 4 * e + 4 * a * e + 16 - 2 * a, 4 * e * e + 4 * e))
    for (double sg : {-1.0, 1.0}) all.push_back({sg * std::sqrt(s), "eps2"});
  FamilyField field(p);
  for (const auto& c : all) {
    if (std::abs(c.v) >= res.window) continue;
    AxiumbilicRecord r = refine_axiumbilic(field, 0.0, c.v);
    r.branch = c.branch;
    classify(field, r);
    if (with_index) {
      double near = std::abs(r.v);  // distance to the critical point
      for (const auto& o : all)
        if (std::abs(o.v - c.v) > 1e-12) near = std::min(near, std::abs(o.v - r.v));
      try {
        r.index = index(field, r.u, r.v, 0.3 * near);
      } catch (const std::exception& ex) {
        r.note += (r.note.empty() ? "" : "; ") + std::string("index: ") + ex.what();
      }
    }
    res.records.push_back(r);
  }
  std::sort(res.records.begin(), res.records.end(),
            [](const AxiumbilicRecord& x, const AxiumbilicRecord& y) { return x.u != y.u ? x.u < y.u : x.v < y.v; });
  res.count = static_cast<int>(res.records.size());
  int q = 0;
  for (const auto& r : res.records) q += r.index ? r.index->quarters : 0;
  res.index_sum.quarters = q;
  res.index_sum.raw = q / 4.0;
  return res;
}

std::string to_string(LieCartanTopology t) {
  return t == LieCartanTopology::TwoCylinders ? "two_cylinders" : "four_disks";
}

namespace {

std::array<int, 4> sheet_windings(const AxialField& f, double radius, int samples) {
  auto angles = [&](double phi) {
    const auto q = f.quartic(radius * std::cos(phi), radius * std::sin(phi));
    auto th = binary_form_directions(std::vector<double>(q.a.begin(), q.a.end()));
    if (th.size() != 4) throw std::runtime_error("lie_cartan_topology: loop meets a singular fiber");
    return th;
  };
  const auto start = angles(0.0);
  std::array<int, 4> w{};
  for (int s = 0; s < 4; ++s) {
    double cur = start[s], total = 0.0;
    for (int k = 1; k <= samples; ++k) {
      double best = 1e9, bd = 0.0, bt = 0.0;
      for (double t : angles(2 * M_PI * k / samples)) {
        double d = std::fmod(t - cur, M_PI);
        if (d > M_PI / 2) d -= M_PI;
        if (d < -M_PI / 2) d += M_PI;
        if (std::abs(d) < best) {
          best = std::abs(d);
          bd = d;
          bt = t;
        }
      }
      total += bd;
      cur = bt;
    }
    w[s] = static_cast<int>(std::lround(total / M_PI));
  }
  return w;
}

}  // namespace

TopologyReport lie_cartan_topology(double a, double radius, int samples) {
  if (std::abs(std::abs(a) - 8.0) < 1e-3) throw BoundaryError("boundary: topology undefined at |a| = 8");
  FamilyField f({a, 0.0});
  for (int attempt = 0; attempt < 2; ++attempt) {
    TopologyReport rep;
    rep.radius = radius;
    rep.samples = samples;
    rep.sheet_winding = sheet_windings(f, radius, samples);
    int nonzero = 0;
    for (int w : rep.sheet_winding) nonzero += w != 0;
    if (nonzero == 4) {
      // winding sheets sweep the whole fiber over the critical point and join pairwise there
      rep.topology = LieCartanTopology::TwoCylinders;
      rep.components = 2;
      return rep;
    }
    if (nonzero == 0) {
      rep.topology = LieCartanTopology::FourDisks;
      rep.components = 4;
      return rep;
    }
    radius *= 0.5;
    samples *= 2;
  }
  throw std::runtime_error("lie_cartan_topology: ambiguous component count");
}

std::vector<ScanRow> scan(const std::vector<double>& a_values, const std::vector<double>& eps_values, int threads) {
  std::vector<double> as = a_values, es = eps_values;
  std::sort(as.begin(), as.end());
  std::sort(es.begin(), es.end());
  std::vector<ScanRow> rows;
  for (double a : as)
    for (double e : es) {
      ScanRow r;
      r.a = a;
      r.eps = e;
      rows.push_back(r);
    }
  auto work = [&](std::size_t k) {
    ScanRow& r = rows[k];
    try {
      r.result = count_and_type({r.a, r.eps});
    } catch (const BoundaryError& ex) {
      r.boundary = true;
      r.error = ex.what();
    } catch (const std::exception& ex) {
      r.error = ex.what();
    }
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    for (std::size_t k = 0; k < rows.size(); ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t k = t; k < rows.size(); k += threads) work(k);
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "a,eps,count,types,index_sum\n";
  for (const auto& r : rows) {
    std::ostringstream a, e;
    a.precision(10);
    e.precision(10);
    a << r.a;
    e << r.eps;
    os << a.str() << "," << e.str() << ",";
    if (r.boundary) os << "boundary,,\n";
    else if (!r.error.empty()) os << "error,,\n";
    else os << r.result.count << "," << r.result.types() << "," << r.result.index_sum.str() << "\n";
  }
  return os.str();
}

}  // namespace axial

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axial/geometry.hpp"
#include "axial/surface_maps.hpp"

#include <cmath>
#include <random>

using namespace axial;

namespace {

double rel_diff(const Vec4& a, const Vec4& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

// Extremum of f near t0 by golden-section search on [t0 - h, t0 + h]; sgn = +1 for a maximum.
template <class F>
double refine_extremum(F f, double t0, double h, double sgn) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = t0 - h, hi = t0 + h;
  for (int it = 0; it < 100; ++it) {
    const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    if (sgn * f(x1) > sgn * f(x2)) hi = x2;
    else lo = x1;
  }
  return f(0.5 * (lo + hi));
}

SurfaceJet jet_at(double a, double u, double v) {
  AlphaMap m(a, 0.0, "alpha_a");
  return m.jet(u, v);
}

}  // namespace

TEST_CASE("jets of alpha^a by hand") {
  const SurfaceJet j0 = jet_at(0.0, 0.0, 0.0);
  CHECK(j0.xu == Vec4(1, 0, 0, 0));
  CHECK(j0.xv == Vec4(0, 0, 0, 0));

  // a = 2 at (1,1): alpha_v = (0, u, 2v, a v^2 / 2)
  const SurfaceJet j = jet_at(2.0, 1.0, 1.0);
  CHECK(j.xv == Vec4(0, 1, 2, 1));
  CHECK(j.xu == Vec4(1, 1, 0, 0));
  CHECK(j.xuv == Vec4(0, 1, 0, 0));
  CHECK(j.xvv == Vec4(0, 0, 2, 2));
  CHECK(j.xuu == Vec4(0, 0, 0, 0));
}

TEST_CASE("jets are deterministic") {
  AlphaMap m(2.5, 0.1, "alpha_eps");
  const auto p = parse_map("u, u*v, v^2, u^3 - v^3/5");
  for (const SurfaceMap* s : {static_cast<const SurfaceMap*>(&m), static_cast<const SurfaceMap*>(p.get())}) {
    const SurfaceJet a = s->jet(0.123, -0.456), b = s->jet(0.123, -0.456);
    CHECK(a.xuv == b.xuv);
    const SurfaceJet c = s->fd_jet(0.123, -0.456), d = s->fd_jet(0.123, -0.456);
    CHECK(c.xvv == d.xvv);
  }
}

TEST_CASE("finite-difference jets match analytic jets") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  AlphaMap m(2.0, 0.05, "alpha_eps");
  const auto p = parse_map("u + v^2, u*v - u^3, v^2 + 2*u^2*v, u*v^2/3");
  double worst = 0.0;
  for (const SurfaceMap* s : {static_cast<const SurfaceMap*>(&m), static_cast<const SurfaceMap*>(p.get())}) {
    for (int i = 0; i < 100; ++i) {
      const double u = U(rng), v = U(rng);
      const SurfaceJet a = s->jet(u, v), f = s->fd_jet(u, v);
      for (auto d : {rel_diff(f.xu, a.xu), rel_diff(f.xv, a.xv), rel_diff(f.xuu, a.xuu), rel_diff(f.xuv, a.xuv),
                     rel_diff(f.xvv, a.xvv)})
        worst = std::max(worst, d);
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("first fundamental form") {
  const FirstForm I = first_form(jet_at(2.0, 1.0, 1.0));
  // E = 1 + v^2, F = uv, G = u^2 + 4v^2 + a^2 v^4 / 4
  CHECK(I.E == doctest::Approx(2.0));
  CHECK(I.F == doctest::Approx(1.0));
  CHECK(I.G == doctest::Approx(6.0));
  CHECK(I.D == doctest::Approx(11.0));

  const FirstForm I0 = first_form(jet_at(3.0, 0.0, 0.0));
  CHECK(I0.E == 1.0);
  CHECK(I0.F == 0.0);
  CHECK(I0.G == 0.0);
  CHECK(I0.D == 0.0);
  CHECK_FALSE(is_regular(I0));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double u = U(rng), v = U(rng);
    if (std::hypot(u, v) < 1e-3) continue;
    CHECK(first_form(jet_at(7.0, u, v)).D > 0.0);
  }
}

TEST_CASE("normal frame of alpha^a") {
  const SurfaceJet j = jet_at(2.0, 1.0, 0.0);
  const NormalFrame fr = normal_frame(j);
  CHECK((fr.N1 - Vec4(0, 0, -2, 0)).norm() < 1e-14);
  CHECK((fr.N2 - Vec4(0, 0, 0, 2)).norm() < 1e-14);

  // closed form N1 = (-a^2 v^4/2 - 4v^2, 4v + a^2 v^3/2, -2u, -auv)
  const double a = 1.5, u = 0.3, v = -0.2;
  const NormalFrame f2 = normal_frame(jet_at(a, u, v));
  const Vec4 n1(-a * a * std::pow(v, 4) / 2 - 4 * v * v, 4 * v + a * a * std::pow(v, 3) / 2, -2 * u, -a * u * v);
  CHECK((f2.N1 - n1).norm() < 1e-14);

  // Whitney condition at the critical point
  CHECK(normal_frame(jet_at(0.0, 0.0, 0.0)).whitney_ok);
  const NormalFrame f0 = normal_frame(jet_at(0.0, 0.0, 0.0));
  CHECK(f0.N1.norm() == 0.0);
  CHECK(f0.N2.norm() == 0.0);
}

TEST_CASE("frame orthogonality and |N2|^2 = D |N1|^2 on random maps") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    SurfaceJet j;
    for (Vec4* x : {&j.xu, &j.xv, &j.xuu, &j.xuv, &j.xvv})
      for (int i = 0; i < 4; ++i) (*x)[i] = U(rng);
    const NormalFrame fr = normal_frame(j);
    const FirstForm I = first_form(j);
    const double scale = fr.N1.norm() * (j.xu.norm() + j.xv.norm()) + 1e-300;
    CHECK(std::abs(fr.N1.dot(j.xu)) < 1e-10 * scale);
    CHECK(std::abs(fr.N1.dot(j.xv)) < 1e-10 * scale);
    CHECK(std::abs(fr.N2.dot(j.xu)) < 1e-10 * fr.N2.norm() * j.xu.norm());
    CHECK(std::abs(fr.N2.dot(j.xv)) < 1e-10 * fr.N2.norm() * j.xv.norm());
    CHECK(std::abs(fr.N1.dot(fr.N2)) < 1e-10 * fr.N1.norm() * fr.N2.norm());
    CHECK(fr.N2.squaredNorm() == doctest::Approx(I.D * fr.N1.squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("triple product is an alternating determinant") {
  const Vec4 e1(1, 0, 0, 0), e2(0, 1, 0, 0), e3(0, 0, 1, 0);
  const Vec4 t = triple_product(e1, e2, e3);
  CHECK(std::abs(t.head<3>().norm()) == 0.0);
  CHECK(std::abs(t[3]) == 1.0);
  CHECK(triple_product(e2, e1, e3) == -t);
  CHECK(triple_product(e1, e1, e3).norm() == 0.0);
}

TEST_CASE("scaled second form of alpha^a") {
  const SurfaceJet j = jet_at(2.0, 1.0, 1.0);
  const NormalFrame fr = normal_frame(j);
  const ScaledSecondForm s = second_form_scaled(j, fr);
  // e1 = 0, f1 = 4v + a^2 v^3 / 2, g1 = -u(4 + a^2 v^2), f2 = a u v^2
  CHECK(s.eb[0] == doctest::Approx(0.0));
  CHECK(s.fb[0] == doctest::Approx(6.0));
  CHECK(s.gb[0] == doctest::Approx(-8.0));
  CHECK(s.fb[1] == doctest::Approx(2.0));
  CHECK(s.regular());

  const SurfaceJet j0 = jet_at(2.0, 0.0, 0.0);
  const ScaledSecondForm s0 = second_form_scaled(j0, normal_frame(j0));
  for (int i = 0; i < 2; ++i) {
    CHECK(s0.eb[i] == 0.0);
    CHECK(s0.fb[i] == 0.0);
    CHECK(s0.gb[i] == 0.0);
  }
  CHECK_FALSE(s0.regular());
}

TEST_CASE("ellipse semi-axes agree with an angular sweep") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0.05, 0.5);
  for (int k = 0; k < 20; ++k) {
    const SurfaceJet j = jet_at(2.0, U(rng), U(rng));
    const FirstForm I = first_form(j);
    const NormalFrame fr = normal_frame(j);
    const ScaledSecondForm s = second_form_scaled(j, fr);
    const EllipseOfCurvature el = ellipse_of_curvature(j, fr, I);
    auto dist = [&](double t) { return (normal_curvature(I, s, t) - el.h).norm(); };
    const int n = 4000;
    double tlo = 0.0, thi = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = M_PI * i / n;
      if (dist(t) < dist(tlo)) tlo = t;
      if (dist(t) > dist(thi)) thi = t;
    }
    const double h = 2.0 * M_PI / n;
    CHECK(el.semi_major == doctest::Approx(refine_extremum(dist, thi, h, 1.0)).epsilon(1e-8));
    CHECK(el.semi_minor == doctest::Approx(refine_extremum(dist, tlo, h, -1.0)).epsilon(1e-8));
  }
}

TEST_CASE("ellipse of a surface inside a 3-space is degenerate") {
  // a graph over a plane has parallel second derivatives and no Whitney frame; this one does not
  const auto p = parse_map("u + v^2, v + u*v, u^2 + 3*v^2, 0");
  const SurfaceJet j = p->jet(0.2, -0.1);
  const FirstForm I = first_form(j);
  const NormalFrame fr = normal_frame(j);
  const EllipseOfCurvature el = ellipse_of_curvature(j, fr, I);
  CHECK(el.semi_minor < 1e-10 * (1 + el.semi_major));
  CHECK((el.shape == EllipseShape::Segment || el.shape == EllipseShape::Point));
  CHECK(std::abs(el.degeneracy_test) < 1e-12);
}

TEST_CASE("ellipse at an axiumbilic point is a circle") {
  // alpha_eps, a = 0, eps = 0.1: (0, v0) with v0^2 = eps(1-eps)/(4-eps)
  const double eps = 0.1, v0 = std::sqrt(eps * (1 - eps) / (4 - eps));
  AlphaMap m(0.0, eps, "alpha_eps");
  const SurfaceJet j = m.jet(0.0, v0);
  const FirstForm I = first_form(j);
  const NormalFrame fr = normal_frame(j);
  const EllipseOfCurvature el = ellipse_of_curvature(j, fr, I);
  CHECK(el.semi_major - el.semi_minor < 1e-7 * (el.semi_major + el.semi_minor));
  CHECK(el.shape == EllipseShape::Circle);
}

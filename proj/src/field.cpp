#include "axial/field.hpp"

#include "axial/special_family.hpp"
#include "axial/surface_maps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace axial {

double AxialField::fd_step(double u, double v) const { return 1e-6 * std::max({1.0, std::abs(u), std::abs(v)}); }

Eigen::Matrix2d AxialField::beta_jacobian(double u, double v) const {
  const double h = fd_step(u, v);
  const Vec2 du = (beta(u + h, v) - beta(u - h, v)) / (2 * h);
  const Vec2 dv = (beta(u, v + h) - beta(u, v - h)) / (2 * h);
  Eigen::Matrix2d J;
  J.col(0) = du;
  J.col(1) = dv;
  return J;
}

std::array<Vec2, 5> AxialField::coefficient_gradients(double u, double v) const {
  const double h = fd_step(u, v);
  const auto up = quartic(u + h, v).a, um = quartic(u - h, v).a;
  const auto vp = quartic(u, v + h).a, vm = quartic(u, v - h).a;
  std::array<Vec2, 5> g;
  for (int i = 0; i < 5; ++i) g[i] = Vec2((up[i] - um[i]) / (2 * h), (vp[i] - vm[i]) / (2 * h));
  return g;
}

FirstForm AxialField::metric(double, double) const { return {1.0, 0.0, 1.0, 1.0}; }

double AxialField::deviation(double, double, double) const {
  throw std::logic_error("field '" + name() + "' has no deviation function");
}

double AxialField::critical_measure(double u, double v) const {
  const FirstForm I = metric(u, v);
  const double s = I.E + I.G;
  return s > 0 ? I.D / (s * s) : 0.0;
}

double AxialField::beta_scale(double, double) const { return 1.0; }

CrossingPair AxialField::crossing(double u, double v) const {
  const AxialQuartic q = quartic(u, v);
  if (has_deviation() && !is_critical(u, v))
    return solve_directions(q, [&](double t) { return deviation(u, v, t); });
  return solve_directions(q);
}

AxialQuartic MapField::quartic(double u, double v) const {
  const SurfaceJet j = evaluate_jet(*map_, u, v);
  const FirstForm I = first_form(j);
  const NormalFrame fr = normal_frame(j);
  AxialQuartic q = quartic_extended(I, second_form_scaled(j, fr), fr);
  q.u = u;
  q.v = v;
  return q;
}

Vec2 MapField::beta(double u, double v) const {
  const AxialQuartic q = quartic(u, v);
  return {q.a[0], q.a[1]};
}

FirstForm MapField::metric(double u, double v) const { return first_form(evaluate_jet(*map_, u, v)); }

double MapField::deviation(double u, double v, double theta) const {
  const SurfaceJet j = evaluate_jet(*map_, u, v);
  return axial::deviation(j, normal_frame(j), first_form(j), theta);
}

double MapField::critical_measure(double u, double v) const { return AxialField::critical_measure(u, v); }

double MapField::frame_distance(double u, double v) const {
  auto n1 = [&](double x, double y) { return normal_frame(evaluate_jet(*map_, x, y)).N1; };
  const double h = 1e-6 * std::max({1.0, std::abs(u), std::abs(v)});
  const Vec4 du = (n1(u + h, v) - n1(u - h, v)) / (2 * h), dv = (n1(u, v + h) - n1(u, v - h)) / (2 * h);
  const double g = std::max(du.norm(), dv.norm());
  return g > 0 ? n1(u, v).norm() / g : std::numeric_limits<double>::infinity();
}

Eigen::Matrix2d NormalFormField::beta_jacobian(double, double) const {
  Eigen::Matrix2d J;
  J << 0.0, 1.0, a_, b_;
  return J;
}

std::array<Vec2, 5> NormalFormField::coefficient_gradients(double, double) const {
  const Vec2 gy(0.0, 1.0), gw(a_, b_);
  return {gy, gw, -6.0 * gy, -gw, gy};
}

AxialQuartic LambdaField::quartic(double u, double v) const {
  AxialQuartic q;
  q.a = f_(u, v);
  q.u = u;
  q.v = v;
  return q;
}

Vec2 LambdaField::beta(double u, double v) const {
  const auto a = f_(u, v);
  return {a[0], a[1]};
}

AxialFieldPtr make_field(const std::string& family, const std::map<std::string, double>& params) {
  auto get = [&](const char* k) {
    auto it = params.find(k);
    return it == params.end() ? 0.0 : it->second;
  };
  if (family == "alpha_a") return std::make_shared<FamilyField>(FamilyParams{get("a"), 0.0});
  if (family == "alpha_eps") return std::make_shared<FamilyField>(FamilyParams{get("a"), get("eps")});
  if (family == "whitney") return std::make_shared<FamilyField>(FamilyParams{0.0, 0.0});
  if (family == "normal_form") return std::make_shared<NormalFormField>(get("a"), get("b"));
  throw std::invalid_argument("unknown family '" + family + "'");
}

}  // namespace axial

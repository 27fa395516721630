#include "axial/geometry.hpp"

#include <cmath>
#include <string>

namespace axial {

std::string to_string(EllipseShape s) {
  switch (s) {
    case EllipseShape::Ellipse: return "ellipse";
    case EllipseShape::Circle: return "circle";
    case EllipseShape::Segment: return "segment";
    case EllipseShape::Point: return "point";
  }
  return "unknown";
}

SurfaceJet SurfaceMap::fd_jet(double u, double v) const {
  const double h = 1e-5 * std::max({1.0, std::abs(u), std::abs(v)});
  const double k = 10.0 * h;
  SurfaceJet j;
  j.u = u;
  j.v = v;
  j.x = value(u, v);
  j.xu = (value(u + h, v) - value(u - h, v)) / (2.0 * h);
  j.xv = (value(u, v + h) - value(u, v - h)) / (2.0 * h);
  const Vec4 c = j.x;
  j.xuu = (value(u + k, v) - 2.0 * c + value(u - k, v)) / (k * k);
  j.xvv = (value(u, v + k) - 2.0 * c + value(u, v - k)) / (k * k);
  j.xuv = (value(u + k, v + k) - value(u + k, v - k) - value(u - k, v + k) + value(u - k, v - k)) / (4.0 * k * k);
  return j;
}

Vec4 triple_product(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) {
    int col[3], n = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) col[n++] = j;
    Eigen::Matrix3d m;
    for (int k = 0; k < 3; ++k) {
      m(0, k) = a[col[k]];
      m(1, k) = b[col[k]];
      m(2, k) = c[col[k]];
    }
    r[i] = ((i % 2) ? -1.0 : 1.0) * m.determinant();
  }
  return r;
}

SurfaceJet evaluate_jet(const SurfaceMap& map, double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v)) throw std::invalid_argument("evaluate_jet: non-finite point");
  SurfaceJet j = map.jet(u, v);
  const std::pair<const char*, const Vec4*> parts[] = {{"alpha", &j.x},     {"alpha_u", &j.xu},   {"alpha_v", &j.xv},
                                                       {"alpha_uu", &j.xuu}, {"alpha_uv", &j.xuv}, {"alpha_vv", &j.xvv}};
  for (const auto& [label, vec] : parts)
    if (!vec->allFinite())
      throw EvaluationError(std::string("non-finite ") + label + " of map '" + map.name() + "' at (" + std::to_string(u) +
                            ", " + std::to_string(v) + ")");
  return j;
}

FirstForm first_form(const SurfaceJet& jet) {
  FirstForm I;
  I.E = jet.xu.dot(jet.xu);
  I.F = jet.xu.dot(jet.xv);
  I.G = jet.xv.dot(jet.xv);
  I.D = I.E * I.G - I.F * I.F;
  return I;
}

bool is_regular(const FirstForm& I) {
  const double s = std::max(1e-300, (I.E + I.G) * (I.E + I.G));
  return I.D > 1e-14 * s;
}

NormalFrame normal_frame(const SurfaceJet& jet) {
  NormalFrame fr;
  fr.W = triple_product(jet.xu, jet.xuv, jet.xvv);
  fr.N1 = triple_product(jet.xu, jet.xv, fr.W);
  fr.N2 = triple_product(jet.xu, jet.xv, fr.N1);
  const double thr = 1e-9 * (1.0 + jet.xu.norm()) * (1.0 + jet.xuv.norm()) * (1.0 + jet.xvv.norm());
  fr.whitney_ok = fr.W.norm() > thr;
  return fr;
}

ScaledSecondForm second_form_scaled(const SurfaceJet& jet, const NormalFrame& frame) {
  ScaledSecondForm s;
  const Vec4* N[2] = {&frame.N1, &frame.N2};
  const double scale0 = jet.xu.norm() * jet.xv.norm();
  const double ref[2] = {scale0 * frame.W.norm(), scale0 * frame.N1.norm()};
  for (int i = 0; i < 2; ++i) {
    s.eb[i] = jet.xuu.dot(*N[i]);
    s.fb[i] = jet.xuv.dot(*N[i]);
    s.gb[i] = jet.xvv.dot(*N[i]);
    s.norm[i] = N[i]->norm();
    if (s.norm[i] > 1e-12 * ref[i] && s.norm[i] > 1e-300) {
      s.has_normalized[i] = true;
      s.e[i] = s.eb[i] / s.norm[i];
      s.f[i] = s.fb[i] / s.norm[i];
      s.g[i] = s.gb[i] / s.norm[i];
    }
  }
  return s;
}

Vec2 normal_curvature(const FirstForm& I, const ScaledSecondForm& sff, double theta) {
  const double du = std::cos(theta), dv = std::sin(theta);
  const double Id = I.E * du * du + 2.0 * I.F * du * dv + I.G * dv * dv;
  Vec2 k;
  for (int i = 0; i < 2; ++i) k[i] = (sff.e[i] * du * du + 2.0 * sff.f[i] * du * dv + sff.g[i] * dv * dv) / Id;
  return k;
}

EllipseOfCurvature ellipse_of_curvature(const SurfaceJet& jet, const NormalFrame& frame, const FirstForm& I) {
  ScaledSecondForm sff = second_form_scaled(jet, frame);
  if (!is_regular(I) || !sff.regular()) throw std::domain_error("ellipse undefined at critical point");
  // I-orthonormal tangent basis in chart coordinates
  const double sE = std::sqrt(I.E), sD = std::sqrt(I.D);
  const double t1[2] = {1.0 / sE, 0.0};
  const double t2[2] = {-I.F / (sE * sD), sE / sD};
  auto II = [&](int i, const double* a, const double* b) {
    return sff.e[i] * a[0] * b[0] + sff.f[i] * (a[0] * b[1] + a[1] * b[0]) + sff.g[i] * a[1] * b[1];
  };
  Vec2 H, A, B;
  for (int i = 0; i < 2; ++i) {
    const double p = II(i, t1, t1), q = II(i, t2, t2);
    H[i] = 0.5 * (p + q);
    A[i] = 0.5 * (p - q);
    B[i] = II(i, t1, t2);
  }
  // k_n(phi) = H + A cos 2phi + B sin 2phi
  Eigen::Matrix2d M;
  M.col(0) = A;
  M.col(1) = B;
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  EllipseOfCurvature el;
  el.h = H;
  el.H = H[0] * frame.N1 / sff.norm[0] + H[1] * frame.N2 / sff.norm[1];
  el.semi_major = svd.singularValues()[0];
  el.semi_minor = svd.singularValues()[1];
  el.major_axis = svd.matrixU().col(0);
  el.minor_axis = svd.matrixU().col(1);
  const Vec2 w = svd.matrixV().col(0);
  const double phi = 0.5 * std::atan2(w[1], w[0]);
  const double du = std::cos(phi) * t1[0] + std::sin(phi) * t2[0];
  const double dv = std::cos(phi) * t1[1] + std::sin(phi) * t2[1];
  double ang = std::atan2(dv, du);
  if (ang < 0) ang += M_PI;
  if (ang >= M_PI) ang -= M_PI;
  el.major_tangent_angle = ang;
  el.degeneracy_test = (sff.e[0] - sff.g[0]) * sff.f[1] - (sff.e[1] - sff.g[1]) * sff.f[0];

  const double s1 = el.semi_major, s2 = el.semi_minor;
  const double scale = std::max({std::abs(H[0]), std::abs(H[1]), s1, 1e-300});
  if (s1 <= 1e-12 * scale) el.shape = EllipseShape::Point;
  else if (std::abs(s1 - s2) <= 1e-8 * (s1 + s2 + 1e-300)) el.shape = EllipseShape::Circle;
  else if (s2 <= 1e-10 * s1) el.shape = EllipseShape::Segment;
  else el.shape = EllipseShape::Ellipse;
  return el;
}

}  // namespace axial

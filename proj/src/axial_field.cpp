#include "axial/axial_field.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace axial {

std::string to_string(QuarticForm f) {
  switch (f) {
    case QuarticForm::Regular: return "regular";
    case QuarticForm::Extended: return "extended";
    case QuarticForm::Family: return "family";
    case QuarticForm::NormalForm: return "normal_form";
    case QuarticForm::Synthetic: return "synthetic";
  }
  return "unknown";
}

AuxiliaryInvariants auxiliary_invariants(const FirstForm& I, const ScaledSecondForm& sff, bool scaled) {
  AuxiliaryInvariants inv;
  inv.scaled = scaled;
  for (int i = 0; i < 2; ++i) {
    const double e = scaled ? sff.eb[i] : sff.e[i];
    const double f = scaled ? sff.fb[i] : sff.f[i];
    const double g = scaled ? sff.gb[i] : sff.g[i];
    inv.L[i] = I.F * g - I.G * f;
    inv.M[i] = I.E * g - I.G * e;
    inv.N[i] = I.E * f - I.F * e;
  }
  return inv;
}

double AxialQuartic::value(double du, double dv) const {
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += a[i] * std::pow(dv, i) * std::pow(du, 4 - i);
  return s;
}

double AxialQuartic::max_abs() const {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

double AxialQuartic::relation_residual() const {
  const double E = I.E, F = I.F, G = I.G;
  const double r2 = E * a[2] - (-6.0 * G * a[0] + 3.0 * F * a[1]);
  const double r3 = E * E * a[3] - ((4.0 * F * F - E * G) * a[1] - 8.0 * F * G * a[0]);
  const double r4 = E * E * E * a[4] - (G * (E * G - 4.0 * F * F) * a[0] + F * (2.0 * F * F - E * G) * a[1]);
  const double s = 1e-300 + std::max(1.0, std::max({E, std::abs(F), G})) * max_abs();
  const double s3 = 1e-300 + std::pow(std::max({1.0, E, std::abs(F), G}), 3) * max_abs();
  return std::max({std::abs(r2) / s, std::abs(r3) / s3, std::abs(r4) / s3});
}

AxialQuartic quartic_from_a01(double a0, double a1, const FirstForm& I, QuarticForm form) {
  const double E = I.E, F = I.F, G = I.G;
  if (!(E > 0.0)) throw std::domain_error("quartic relations need E > 0");
  AxialQuartic q;
  q.form = form;
  q.has_metric = true;
  q.I = I;
  q.a[0] = a0;
  q.a[1] = a1;
  q.a[2] = (-6.0 * G * a0 + 3.0 * F * a1) / E;
  q.a[3] = ((4.0 * F * F - E * G) * a1 - 8.0 * F * G * a0) / (E * E);
  q.a[4] = (G * (E * G - 4.0 * F * F) * a0 + F * (2.0 * F * F - E * G) * a1) / (E * E * E);
  return q;
}

AxialQuartic quartic_regular(const FirstForm& I, const ScaledSecondForm& sff) {
  if (!is_regular(I) || !sff.regular())
    throw std::domain_error("quartic_regular: critical point, use quartic_extended");
  const auto inv = auxiliary_invariants(I, sff, false);
  const auto& M = inv.M;
  const auto& N = inv.N;
  const double a0 = 4.0 * (M[0] * N[0] + M[1] * N[1]) * I.E - 8.0 * (N[0] * N[0] + N[1] * N[1]) * I.F;
  const double a1 = 4.0 * (M[0] * M[0] + M[1] * M[1]) * I.E - 16.0 * (N[0] * N[0] + N[1] * N[1]) * I.G;
  return quartic_from_a01(a0, a1, I, QuarticForm::Regular);
}

AxialQuartic quartic_expanded(const FirstForm& I, const ScaledSecondForm& sff) {
  if (!is_regular(I) || !sff.regular())
    throw std::domain_error("quartic_expanded: critical point, use quartic_extended");
  const double E = I.E, F = I.F, G = I.G;
  auto dot = [&](const std::array<double, 2>& x, const std::array<double, 2>& y) { return x[0] * y[0] + x[1] * y[1]; };
  const auto &e = sff.e, &f = sff.f, &g = sff.g;
  const double a1 = 4 * E * E * E * dot(g, g) + 4 * G * (E * G - 4 * F * F) * dot(e, e) + 32 * E * F * G * dot(e, f) -
                    16 * E * E * G * dot(f, f) - 8 * E * E * G * dot(e, g);
  const double a0 = 4 * F * (E * G - 2 * F * F) * dot(e, e) - 4 * E * (E * G - 4 * F * F) * dot(e, f) -
                    8 * E * E * F * dot(f, f) - 4 * E * E * F * dot(e, g) + 4 * E * E * E * dot(f, g);
  return quartic_from_a01(a0, a1, I, QuarticForm::Regular);
}

AxialQuartic quartic_extended(const FirstForm& I, const ScaledSecondForm& sff, const NormalFrame& frame) {
  (void)frame;
  const auto inv = auxiliary_invariants(I, sff, true);
  const auto& M = inv.M;
  const auto& N = inv.N;
  const double D = I.D;
  const double a0 = 4.0 * I.E * (D * N[0] * M[0] + M[1] * N[1]) - 8.0 * I.F * (D * N[0] * N[0] + N[1] * N[1]);
  const double a1 = 4.0 * I.E * (D * M[0] * M[0] + M[1] * M[1]) - 16.0 * I.G * (D * N[0] * N[0] + N[1] * N[1]);
  return quartic_from_a01(a0, a1, I, QuarticForm::Extended);
}

namespace {

double wrap_pi(double t) {
  t = std::fmod(t, M_PI);
  if (t < 0) t += M_PI;
  if (t >= M_PI) t -= M_PI;
  return t;
}

double form_value(const std::vector<double>& c, double t) {
  const int n = static_cast<int>(c.size()) - 1;
  const double cs = std::cos(t), sn = std::sin(t);
  double s = 0.0;
  for (int i = 0; i <= n; ++i) s += c[i] * std::pow(sn, i) * std::pow(cs, n - i);
  return s;
}

double form_derivative(const std::vector<double>& c, double t) {
  const int n = static_cast<int>(c.size()) - 1;
  const double cs = std::cos(t), sn = std::sin(t);
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    double d = 0.0;
    if (i > 0) d += i * std::pow(sn, i - 1) * std::pow(cs, n - i + 1);
    if (n - i > 0) d -= (n - i) * std::pow(sn, i + 1) * std::pow(cs, n - i - 1);
    s += c[i] * d;
  }
  return s;
}

std::vector<double> real_roots(const std::vector<double>& monomial_coeffs) {
  // coefficients lowest degree first; leading must be nonzero
  const int n = static_cast<int>(monomial_coeffs.size()) - 1;
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.push_back(-monomial_coeffs[0] / monomial_coeffs[1]);
    return out;
  }
  Eigen::VectorXd p(n + 1);
  for (int i = 0; i <= n; ++i) p[i] = monomial_coeffs[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(p);
  for (int i = 0; i < solver.roots().size(); ++i) {
    const auto z = solver.roots()[i];
    if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z.real()))) out.push_back(z.real());
  }
  return out;
}

}  // namespace

std::vector<double> binary_form_directions(const std::vector<double>& coeffs) {
  double scale = 0.0;
  for (double x : coeffs) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) throw std::domain_error("singular point: direction field undefined");
  std::vector<double> c;
  for (double x : coeffs) c.push_back(x / scale);
  const std::vector<double> full = c;
  std::vector<double> angles;
  // projective factors dv (theta = 0) and du (theta = pi/2); end coefficients this small only move
  // the root by about their size but wreck the companion matrix conditioning
  constexpr double kSnap = 1e-13;
  while (c.size() > 1 && std::abs(c.front()) <= kSnap) {
    angles.push_back(0.0);
    c.erase(c.begin());
  }
  while (c.size() > 1 && std::abs(c.back()) <= kSnap) {
    angles.push_back(M_PI / 2);
    c.pop_back();
  }
  const int n = static_cast<int>(c.size()) - 1;
  if (n >= 1) {
    if (std::abs(c[n]) >= std::abs(c[0])) {
      for (double m : real_roots(c)) angles.push_back(wrap_pi(std::atan(m)));
    } else {
      std::vector<double> r(c.rbegin(), c.rend());
      for (double w : real_roots(r)) angles.push_back(wrap_pi(std::atan2(1.0, w)));
    }
  }
  // Newton on the full trigonometric form, each step kept within a quarter of the gap to the other roots
  for (std::size_t k = 0; k < angles.size(); ++k) {
    double gap = M_PI / 2;
    for (std::size_t j = 0; j < angles.size(); ++j)
      if (j != k) {
        const double d = std::abs(angles[j] - angles[k]);
        gap = std::min(gap, std::min(d, M_PI - d));
      }
    double& t = angles[k];
    double ft = form_value(full, t);
    for (int it = 0; it < 12 && ft != 0.0; ++it) {
      const double d = form_derivative(full, t);
      if (d == 0.0) break;
      const double step = ft / d;
      if (std::abs(step) > 0.25 * gap) break;
      const double tn = t - step, fn = form_value(full, tn);
      if (std::abs(fn) >= std::abs(ft)) break;
      t = tn;
      ft = fn;
    }
    t = wrap_pi(t);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double metric_cos(const FirstForm& I, double t1, double t2) {
  const double c1 = std::cos(t1), s1 = std::sin(t1), c2 = std::cos(t2), s2 = std::sin(t2);
  const double b = I.E * c1 * c2 + I.F * (c1 * s2 + s1 * c2) + I.G * s1 * s2;
  const double n1 = I.E * c1 * c1 + 2 * I.F * c1 * s1 + I.G * s1 * s1;
  const double n2 = I.E * c2 * c2 + 2 * I.F * c2 * s2 + I.G * s2 * s2;
  return b / std::sqrt(n1 * n2);
}

double metric_angle(const FirstForm& I, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double sE = std::sqrt(I.E);
  return std::atan2(std::sqrt(I.D / I.E) * s, sE * c + I.F * s / sE);
}

CrossingPair solve_directions(const AxialQuartic& q, const DeviationFn& dev) {
  CrossingPair cp;
  cp.theta = binary_form_directions(std::vector<double>(q.a.begin(), q.a.end()));
  const FirstForm I = q.has_metric ? q.I : FirstForm{1.0, 0.0, 1.0, 1.0};
  if (cp.count() != 4) return cp;
  // three ways to split four lines into two pairs; keep the most orthogonal
  const int splits[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  double best = 1e300;
  int bi = 0;
  for (int s = 0; s < 3; ++s) {
    const auto* p = splits[s];
    const double d = std::max(std::abs(metric_cos(I, cp.theta[p[0]], cp.theta[p[1]])),
                              std::abs(metric_cos(I, cp.theta[p[2]], cp.theta[p[3]])));
    if (d < best) {
      best = d;
      bi = s;
    }
  }
  cp.grouped = true;
  cp.orthogonality_defect = best;
  std::array<int, 2> p1{splits[bi][0], splits[bi][1]}, p2{splits[bi][2], splits[bi][3]};
  cp.principal = p1;
  cp.mean = p2;
  if (dev) {
    cp.by_deviation = true;
    for (double t : cp.theta) cp.deviation.push_back(dev(t));
    const double d1 = 0.5 * (cp.deviation[p1[0]] + cp.deviation[p1[1]]);
    const double d2 = 0.5 * (cp.deviation[p2[0]] + cp.deviation[p2[1]]);
    if (d2 > d1) std::swap(cp.principal, cp.mean);
    if (std::abs(d1 - d2) <= 1e-9 * std::max({std::abs(d1), std::abs(d2), 1e-300})) cp.near_axiumbilic = true;
  }
  return cp;
}

double deviation(const SurfaceJet& jet, const NormalFrame& frame, const FirstForm& I, double theta) {
  const ScaledSecondForm sff = second_form_scaled(jet, frame);
  if (!is_regular(I) || !sff.regular()) throw std::domain_error("deviation undefined at critical point");
  const Vec2 k = normal_curvature(I, sff, theta);
  Vec2 H;
  for (int i = 0; i < 2; ++i) H[i] = (I.E * sff.g[i] - 2.0 * I.F * sff.f[i] + I.G * sff.e[i]) / (2.0 * I.D);
  return (k - H).squaredNorm();
}

AxialQuartic normal_form_quartic(double a, double b, double x, double y) {
  AxialQuartic q;
  q.form = QuarticForm::NormalForm;
  q.u = x;
  q.v = y;
  const double w = a * x + b * y;
  q.a = {y, w, -6.0 * y, -w, y};
  q.has_metric = true;
  q.I = {1.0, 0.0, 1.0, 1.0};
  return q;
}

std::function<AxialQuartic(double, double)> normal_form_field(double a, double b) {
  return [a, b](double x, double y) { return normal_form_quartic(a, b, x, y); };
}

}  // namespace axial

#include "axial/blowup.hpp"

#include "axial/axial_field.hpp"
#include "axial/claims.hpp"
#include "axial/special_family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace axial {

namespace {

constexpr double kPi = std::numbers::pi;

// MPoly in (a, u, v) with the arithmetic the closed-form templates expect.
struct Sym {
  MPoly p;
  Sym() : p(3) {}
  Sym(double c) : p(3, exact_rational(c)) {}  
  Sym(MPoly q) : p(std::move(q)) {}
  friend Sym operator+(const Sym& x, const Sym& y) { return x.p + y.p; }
  friend Sym operator-(const Sym& x, const Sym& y) { return x.p - y.p; }
  friend Sym operator*(const Sym& x, const Sym& y) { return x.p * y.p; }
  friend Sym operator+(const Sym& x, double c) { return x.p + Sym(c).p; }
  friend Sym operator+(double c, const Sym& x) { return x.p + Sym(c).p; }
  friend Sym operator-(const Sym& x, double c) { return x.p - Sym(c).p; }
  friend Sym operator-(double c, const Sym& x) { return Sym(c).p - x.p; }
  friend Sym operator*(const Sym& x, double c) { return x.p * exact_rational(c); }
  friend Sym operator*(double c, const Sym& x) { return x.p * exact_rational(c); }
  Sym operator-() const { return -p; }
};

enum BVar { kA = 0, kC = 1, kS = 2, kR = 3, kX = 4, kY = 5 };

MPoly bv(int i) { return MPoly::var(6, i); }

double wrap(double th) {
  th = std::fmod(th, 2 * kPi);
  if (th < 0) th += 2 * kPi;
  if (th >= 2 * kPi - 1e-15) th = 0.0;
  return th;
}

}  // namespace

std::array<MPoly, 5> alpha_a_quartic_exact() {
  const Sym a = MPoly::var(3, 0), u = MPoly::var(3, 1), v = MPoly::var(3, 2), zero(0.0);
  const auto ab = family_abar<Sym>(a, zero, u, v);
  const auto f = family_forms<Sym>(a, zero, u, v);
  const auto c = family_polynomial_coeffs<Sym>(ab[0], ab[1], f.E, f.F, f.G);
  return {c[0].p, c[1].p, c[2].p, c[3].p, c[4].p};
}

double DirectionalBlowup::value(int k, double u, double t) const {
  return coeff.at(k).eval(std::vector<double>{a, u, t, 0.0, 0.0});
}

std::vector<double> DirectionalBlowup::directions(double u, double t) const {
  // binary form in (du, dt): entry i multiplies dt^i du^(4-i)
  std::vector<double> c(5);
  for (int i = 0; i < 5; ++i) c[i] = value(4 - i, u, t);
  return binary_form_directions(c);
}

DirectionalBlowup pushforward_directional(double a) {
  const auto q = alpha_a_quartic_exact();
  // variables (a, u, t, du, dt)
  auto x = [](int i) { return MPoly::var(5, i); };
  const std::vector<MPoly> img{x(0), x(1), x(2) * x(1)};
  const MPoly du = x(3), dv = x(2) * x(3) + x(1) * x(4);
  MPoly total(5);
  for (int i = 0; i < 5; ++i) total += q[i].compose(img, 5) * dv.pow(i) * du.pow(4 - i);
  DirectionalBlowup d;
  d.a = a;
  for (int k = 0; k < 5; ++k) d.coeff[k] = total.coefficient(3, k).coefficient(4, 4 - k).divide_power(1, 3) * Rational(-1);
  return d;
}

BlowupField::BlowupField(double a) : a_(a), P_(6), Q_(6) {
  const auto q = alpha_a_quartic_exact();
  const MPoly c = bv(kC), s = bv(kS), r = bv(kR), X = bv(kX), Y = bv(kY);
  const std::vector<MPoly> img{bv(kA), r * r * s, r * c};
  const MPoly du = Rational(2) * r * s * X + r * r * c * Y;
  const MPoly dv = c * X - r * s * Y;
  MPoly dr4(6), dr3(6);
  for (int i = 0; i < 5; ++i) {
    const MPoly qi = q[i].compose(img, 6);
    const MPoly form = dv.pow(i) * du.pow(4 - i);
    dr4 += qi * form.coefficient(kX, 4);
    dr3 += qi * form.coefficient(kX, 3).coefficient(kY, 1);
  }
  P_ = dr4.divide_power(kR, 7) * Rational(1, 8);
  Q_ = dr3.divide_power(kR, 8) * Rational(1, 8);
  Pc_ = CompiledPoly(P_);
  Qc_ = CompiledPoly(Q_);
  Pc_c_ = CompiledPoly(P_.derivative(kC));
  Pc_s_ = CompiledPoly(P_.derivative(kS));
  Pc_r_ = CompiledPoly(P_.derivative(kR));
  Pc_rr_ = CompiledPoly(P_.derivative(kR).derivative(kR));

  // printed closed forms at r = 0
  const MPoly A = bv(kA), A2 = A * A;
  const MPoly Pp = Rational(2) * c * s *
                   ((20 - A2) * c.pow(4) * s * s + Rational(4) * s.pow(4) + (A2 - 56) * c.pow(8));
  const MPoly Qp = (Rational(7) * A2 - 384) * c.pow(10) + (260 - A2) * c.pow(8) + (32 - Rational(7) * A2) * c.pow(6) +
                   (Rational(2) * A2 + 24) * c.pow(4) - Rational(4) * c * c + 8;
  guard_.p_identity = P_.substitute(kR, 0).reduce_circle(kC, kS) == Pp.reduce_circle(kC, kS);
  guard_.q_identity = Q_.substitute(kR, 0).reduce_circle(kC, kS) == Qp.reduce_circle(kC, kS);
  guard_.samples = 256;
  const double r0 = 1e-6;
  for (int k = 0; k < guard_.samples; ++k) {
    const double th = 2 * kPi * k / guard_.samples;
    const double scale = 1.0 + a * a;
    guard_.max_residual = std::max({guard_.max_residual, std::abs(P(th, r0) - printed_P(a, th)) / (8 * scale),
                                    std::abs(Q(th, r0) - printed_Q(a, th)) / (64 * scale)});
  }
  if (!guard_.p_identity || !guard_.q_identity || guard_.max_residual > 1e-4)
    guard_.warning = "pullback differs from the printed leading coefficients; the pullback is used";
}

double BlowupField::eval(const CompiledPoly& p, double theta, double r) const {
  const double x[6] = {a_, std::cos(theta), std::sin(theta), r, 0.0, 0.0};
  return p(x);
}

double BlowupField::P(double theta, double r) const { return eval(Pc_, theta, r); }
double BlowupField::Q(double theta, double r) const { return eval(Qc_, theta, r); }
double BlowupField::P_r(double theta, double r) const { return eval(Pc_r_, theta, r); }
double BlowupField::P_rr(double theta, double r) const { return eval(Pc_rr_, theta, r); }
double BlowupField::P_theta(double theta, double r) const {
  return -std::sin(theta) * eval(Pc_c_, theta, r) + std::cos(theta) * eval(Pc_s_, theta, r);
}

std::array<std::array<double, 2>, 2> BlowupField::jacobian(double theta) const {
  return {{{P_theta(theta), P_r(theta)}, {0.0, -Q(theta)}}};
}

double BlowupField::printed_P(double a, double th) {
  const double c = std::cos(th), s = std::sin(th), a2 = a * a;
  return 2 * c * s * ((20 - a2) * std::pow(c, 4) * s * s + 4 * std::pow(s, 4) + (a2 - 56) * std::pow(c, 8));
}

double BlowupField::printed_Q(double a, double th) {
  const double c2 = std::cos(th) * std::cos(th), a2 = a * a;
  return (7 * a2 - 384) * std::pow(c2, 5) + (260 - a2) * std::pow(c2, 4) + (32 - 7 * a2) * std::pow(c2, 3) +
         (24 + 2 * a2) * c2 * c2 - 4 * c2 + 8;
}

std::string to_string(SingularityType t) { return t == SingularityType::Saddle ? "saddle" : "node"; }

ResolvedSingularity classify_singularity(const BlowupField& field, double theta) {
  const double scale = 1.0 + field.a() * field.a();
  if (std::abs(field.P(theta)) > 1e-8 * scale)
    throw std::invalid_argument("theta = " + std::to_string(theta) + " is not a zero of P");
  ResolvedSingularity s;
  s.theta = wrap(theta);
  const auto J = field.jacobian(theta);
  s.eigenvalues = {J[0][0], J[1][1]};
  s.jacobian = J[0][0] * J[1][1];
  s.trace = J[0][0] + J[1][1];
  if (std::abs(s.jacobian) < 1e-9) throw std::domain_error("non-hyperbolic singularity at theta = " + std::to_string(theta));
  s.type = s.jacobian < 0 ? SingularityType::Saddle : SingularityType::Node;
  const double gap = J[0][0] - J[1][1];
  if (std::abs(gap) > 1e-12) {
    double dth = -J[0][1], dr = gap;
    if (dr < 0) dth = -dth, dr = -dr;
    const double n = std::hypot(dth, dr);
    s.transverse = {dth / n, dr / n};
  }
  // dtheta/dr = P / (-r Q) with theta - theta0 = kappa r^2 gives kappa (-2Q - P') = P_rr / 2
  const double den = 2.0 * J[1][1] - J[0][0];
  if (std::abs(J[0][1]) < 1e-12 && std::abs(den) > 1e-12) s.kappa = 0.5 * field.P_rr(theta) / den;
  if (std::abs(std::cos(theta)) > 1e-9) {
    const double t = std::tan(theta);
    s.t = t;
    const double a = field.a();
    auto ev = [&](const ParamPoly& p) {
      double acc = 0.0;
      for (int i = p.degree(); i >= 0; --i) acc = acc * t + p.coeff(i).eval(a);
      return acc;
    };
    const double cf = ev(poly_ra()) * ev(poly_ta()) / std::pow(1 + t * t, 10);
    s.closed_form = cf;
    s.cross_check = std::abs(cf - s.jacobian) / std::max(std::abs(cf), 1e-300);
  }
  return s;
}

std::vector<ResolvedSingularity> find_singularities(const BlowupField& field) {
  const double a = std::abs(field.a());
  if (std::abs(a - std::sqrt(56.0)) < 1e-6 || std::abs(a - 8.0) < 1e-6)
    throw std::domain_error("non-hyperbolic: parameter at bifurcation");
  const RationalPoly p = poly_p().at(exact_rational(field.a()));
  std::vector<double> thetas{kPi / 2, 3 * kPi / 2};
  for (const auto& iv : isolate_roots(p, Rational(mpz_class(1), mpz_class("1099511627776")))) {
    double t = iv.exact() ? iv.lo.get_d() : iv.mid();
    if (!iv.exact()) {
      const RationalPoly dp = p.derivative();
      for (int k = 0; k < 4; ++k) {
        const double d = dp.eval(t);
        if (d == 0.0) break;
        const double nt = t - p.eval(t) / d;
        if (nt <= iv.lo.get_d() || nt > iv.hi.get_d()) break;
        t = nt;
      }
    }
    thetas.push_back(wrap(std::atan(t)));
    thetas.push_back(wrap(std::atan(t) + kPi));
  }
  std::sort(thetas.begin(), thetas.end());
  std::vector<ResolvedSingularity> out;
  for (double th : thetas) out.push_back(classify_singularity(field, th));
  return out;
}

int ResolutionPortrait::saddles() const {
  return static_cast<int>(std::count_if(singularities.begin(), singularities.end(),
                                        [](const auto& s) { return s.type == SingularityType::Saddle; }));
}

int ResolutionPortrait::nodes() const { return static_cast<int>(singularities.size()) - saddles(); }

int ResolutionPortrait::saddles_half() const {
  int n = 0;
  for (const auto& s : singularities)
    if (s.type == SingularityType::Saddle && std::cos(s.theta) > 1e-12) ++n;
  return n;
}

std::string ResolutionPortrait::sequence() const {
  std::string out;
  for (const auto& s : singularities) {
    if (!out.empty()) out += ' ';
    out += s.type == SingularityType::Saddle ? 'S' : 'N';
  }
  return out;
}

ResolutionPortrait resolution_portrait(double a) {
  const double m = std::abs(a);
  if (std::abs(m - std::sqrt(56.0)) < 1e-3 || std::abs(m - 8.0) < 1e-3)
    throw std::domain_error("non-hyperbolic: parameter at bifurcation");
  ResolutionPortrait rp;
  rp.a = a;
  rp.regime = m * m < 56 ? "small" : (m < 8 ? "middle" : "large");
  rp.singularities = find_singularities(BlowupField(a));
  return rp;
}

}  // namespace axial

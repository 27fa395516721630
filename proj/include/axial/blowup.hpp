#pragma once

#include "axial/exact_poly.hpp"
#include "axial/mpoly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace axial {

// Exact axial quartic of alpha^a as MPoly coefficients in (a, u, v): c[i] multiplies dv^i du^(4-i).
std::array<MPoly, 5> alpha_a_quartic_exact();

// Pullback through psi(u, t) = (u, t u), divided by -u^3.
// coeff[k] multiplies du^k dt^(4-k); variables (a, u, t).
struct DirectionalBlowup {
  std::array<MPoly, 5> coeff;
  double a = 0.0;
  double value(int k, double u, double t) const;
  // real directions (angle of (du, dt) in [0, pi)) at (u, t)
  std::vector<double> directions(double u, double t) const;
};

DirectionalBlowup pushforward_directional(double a);

struct ConsistencyGuard {
  bool p_identity = false;  // P(theta, 0) equals the printed closed form exactly
  bool q_identity = false;  // Q(theta, 0) likewise
  double max_residual = 0.0;
  int samples = 0;
  std::string warning;
};

// X = P d/dtheta - r Q d/dr from the weighted blow-up u = r^2 sin(theta), v = r cos(theta).
// P(theta, r) is the dr^4 coefficient over 8 r^7, Q(theta, r) the dr^3 dtheta coefficient over 8 r^8.
class BlowupField {
 public:
  explicit BlowupField(double a);
  double a() const { return a_; }
  double P(double theta, double r = 0.0) const;
  double Q(double theta, double r = 0.0) const;
  double P_theta(double theta, double r = 0.0) const;
  double P_r(double theta, double r = 0.0) const;
  double P_rr(double theta, double r = 0.0) const;
  std::array<double, 2> X(double theta, double r) const { return {P(theta, r), -r * Q(theta, r)}; }
  // DX at (theta, 0)
  std::array<std::array<double, 2>, 2> jacobian(double theta) const;
  const ConsistencyGuard& guard() const { return guard_; }
  // Coefficient polynomials in (a, c, s, r), divided by 8 r^7 and 8 r^8 respectively.
  const MPoly& P_poly() const { return P_; }
  const MPoly& Q_poly() const { return Q_; }

  static double printed_P(double a, double theta);
  static double printed_Q(double a, double theta);

 private:
  double eval(const CompiledPoly& p, double theta, double r) const;
  double a_;
  MPoly P_, Q_;
  CompiledPoly Pc_, Qc_, Pc_c_, Pc_s_, Pc_r_, Pc_rr_;
  ConsistencyGuard guard_;
};

enum class SingularityType { Saddle, Node };
std::string to_string(SingularityType t);

struct ResolvedSingularity {
  double theta = 0.0;             // in [0, 2 pi)
  std::optional<double> t;        // tan(theta); empty at +-pi/2
  double jacobian = 0.0;          // det DX
  double trace = 0.0;
  std::array<double, 2> eigenvalues{};
  SingularityType type = SingularityType::Saddle;
  std::optional<double> closed_form;  // r_a t_a / (1+t^2)^10
  double cross_check = 0.0;           // relative difference to the closed form
  // direction (dtheta, dr) of the separatrix leaving the exceptional circle (saddles)
  std::array<double, 2> transverse{0.0, 1.0};
  // that separatrix as theta = theta0 + kappa r^2 + O(r^3), valid when P_r(theta0, 0) = 0
  double kappa = 0.0;
};

// Throws std::domain_error("non-hyperbolic: parameter at bifurcation") within 1e-6 of |a| in {sqrt 56, 8}.
std::vector<ResolvedSingularity> find_singularities(const BlowupField& field);
ResolvedSingularity classify_singularity(const BlowupField& field, double theta);

struct ResolutionPortrait {
  double a = 0.0;
  std::string regime;  // "small" (|a| < sqrt 56), "middle", "large" (|a| > 8)
  std::vector<ResolvedSingularity> singularities;  // ordered by theta
  int saddles() const;
  int nodes() const;
  // saddles in (-pi/2, pi/2)
  int saddles_half() const;
  std::string sequence() const;  // e.g. "N S S S N S S S" starting at theta = 0
};

ResolutionPortrait resolution_portrait(double a);

}  // namespace axial

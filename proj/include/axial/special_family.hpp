#pragma once

#include "axial/field.hpp"
#include "axial/surface_maps.hpp"
#include "axial/umbilic.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace axial {

struct FamilyParams {
  double a = 0.0;    // cubic coefficient
  double eps = 0.0;  // deformation
};

struct BoundaryError : std::domain_error {
  using std::domain_error::domain_error;
};

// Closed forms for alpha_eps(u,v) = (u, uv, v^2, eps v + a v^3/6); T is double, Dual2 or MPoly-like.
template <class T>
struct FamilyForms {
  T E, F, G;
  std::array<T, 2> eb, fb, gb;
  std::array<T, 4> N1, N2;
  T n1sq;
};

template <class T>
FamilyForms<T> family_forms(const T& a, const T& eps, const T& u, const T& v) {
  FamilyForms<T> f;
  const T w = eps + a * v * v * 0.5;  // fourth component of alpha_v
  const T k = 2.0 * a * w + 8.0;      // a^2 v^2 + 2 a eps + 8
  const T one_v2 = 1.0 + v * v;
  f.E = one_v2;
  f.F = u * v;
  f.G = u * u + 4.0 * v * v + w * w;
  f.N1 = {-(v * v * k) * 0.5, v * k * 0.5, -2.0 * u, -(a * u * v)};
  f.N2 = {u * v * (2.0 * eps - a * v * v), u * (a * v * v - 2.0 * eps),
          -(one_v2 * v * w * (a * w + 4.0)) - a * u * u * v, one_v2 * v * v * k + 2.0 * u * u};
  f.eb = {T(0.0), T(0.0)};
  f.fb = {v * k * 0.5, u * (a * v * v - 2.0 * eps)};
  f.gb = {-(u * (a * a * v * v + 4.0)), v * one_v2 * (a * v * v - 2.0 * eps) * k * 0.5};
  f.n1sq = one_v2 * v * v * k * k * 0.25 + u * u * (a * a * v * v + 4.0);
  return f;
}

// Family-normalized (a0bar, a1bar); eps = 0 gives the alpha^a coefficients.
template <class T>
std::array<T, 2> family_abar(const T& a, const T& eps, const T& u, const T& v) {
  const T v2 = v * v, v4 = v2 * v2, e2 = eps * eps, a2 = a * a;
  const T a0 = u * v * (8.0 + 24.0 * v2 + a2 * v2 + 2.0 * a2 * v4 + 2.0 * a * eps * (1.0 + 3.0 * v2) + 4.0 * e2);
  const T a1 = ((24.0 - 2.0 * a2) * v2 - 8.0) * u * u +
               0.5 * v4 * ((a2 - 2.0 * a) * v2 + 16.0 - 2.0 * a) * ((a2 + 2.0 * a) * v2 + 16.0 + 2.0 * a) +
               8.0 * e2 * e2 + 16.0 * a * e2 * eps * v2 + (8.0 * u * u - 8.0 * v4 + 12.0 * a2 * v4 - 8.0 + 48.0 * v2) * e2 +
               4.0 * a * v2 * (2.0 + a2 * v4 + 2.0 * u * u + 20.0 * v2 + 2.0 * v4) * eps;
  return {a0, a1};
}

// Polynomial (E^3-scaled) coefficients c[i] of dv^i du^(4-i).
template <class T>
std::array<T, 5> family_polynomial_coeffs(const T& a0, const T& a1, const T& E, const T& F, const T& G) {
  return {E * E * E * a0, E * E * E * a1, E * E * (-6.0 * G * a0 + 3.0 * F * a1),
          E * ((4.0 * F * F - E * G) * a1 - 8.0 * F * G * a0), G * (E * G - 4.0 * F * F) * a0 + F * (2.0 * F * F - E * G) * a1};
}

// Factor relating the generic extended coefficients to the family ones: abar_family = kappa * abar_generic.
double family_normalization(const FamilyParams& p, double u, double v);

// Closed-form field for alpha_eps; analytic Jacobians.
class FamilyField final : public AxialField {
 public:
  explicit FamilyField(FamilyParams p);
  std::string name() const override;
  AxialQuartic quartic(double u, double v) const override;
  Vec2 beta(double u, double v) const override;
  Eigen::Matrix2d beta_jacobian(double u, double v) const override;
  std::array<Vec2, 5> coefficient_gradients(double u, double v) const override;
  FirstForm metric(double u, double v) const override;
  bool has_deviation() const override { return true; }
  double deviation(double u, double v, double theta) const override;
  const FamilyParams& params() const { return p_; }
  const AlphaMap& map() const { return map_; }

 private:
  FamilyParams p_;
  AlphaMap map_;
};

// Normalized (a0bar, a1bar).
std::array<double, 2> family_axial_coeffs(const FamilyParams& p, double u, double v);

struct BifurcationCurves {
  double a = 0.0;
  // branch through the origin of each quartic factor; nullopt outside the real domain
  std::optional<double> eps1(double v) const;
  std::optional<double> eps2(double v) const;
  double eps1_series(double v) const;  // (8+a)/2 v^2 + (12+8a+a^2) v^4
  double eps2_series(double v) const;  // (a-8)/2 v^2 - (12+a^2-8a) v^4
  std::array<double, 2> leading() const { return {0.5 * (8 + a), 0.5 * (a - 8)}; }
  int tangency_order() const { return 2; }
  // "opposite" when the leading coefficients differ in sign (a^2 < 64), else "same"
  std::string contact() const;
  // quartic factors on u = 0
  static double factor1(double a, double eps, double v);
  static double factor2(double a, double eps, double v);
};

BifurcationCurves bifurcation_curves(double a);

struct CountAndType {
  FamilyParams params;
  int count = 0;
  double window = 0.0;  // |v| bound used for counting
  std::vector<AxiumbilicRecord> records;
  QuarterIndex index_sum;
  std::string types() const;  // semicolon list
};

// Throws BoundaryError inside the guard bands or for eps = 0, |eps| > 0.25.
CountAndType count_and_type(const FamilyParams& p, bool with_index = true);
double counting_window(double a);
void check_regime(const FamilyParams& p);

enum class LieCartanTopology { TwoCylinders, FourDisks };
std::string to_string(LieCartanTopology t);

struct TopologyReport {
  LieCartanTopology topology = LieCartanTopology::TwoCylinders;
  int components = 0;
  std::array<int, 4> sheet_winding{};  // net half-turns of each sheet
  double radius = 0.0;
  int samples = 0;
};

TopologyReport lie_cartan_topology(double a, double radius = 0.05, int samples = 720);

struct ScanRow {
  double a = 0.0, eps = 0.0;
  bool boundary = false;
  std::string error;
  CountAndType result;
};

std::vector<ScanRow> scan(const std::vector<double>& a_values, const std::vector<double>& eps_values, int threads = 1);
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace axial

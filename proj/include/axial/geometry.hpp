#pragma once

#include <Eigen/Dense>

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace axial {

using Vec4 = Eigen::Vector4d;
using Vec2 = Eigen::Vector2d;

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SurfaceJet {
  double u = 0.0, v = 0.0;
  Vec4 x = Vec4::Zero(), xu = Vec4::Zero(), xv = Vec4::Zero();
  Vec4 xuu = Vec4::Zero(), xuv = Vec4::Zero(), xvv = Vec4::Zero();
};

class SurfaceMap {
 public:
  virtual ~SurfaceMap() = default;
  virtual Vec4 value(double u, double v) const = 0;
  // Analytic maps override; the default is the finite-difference jet.
  virtual SurfaceJet jet(double u, double v) const { return fd_jet(u, v); }
  virtual bool analytic() const { return false; }
  virtual std::string name() const = 0;
  virtual std::map<std::string, double> params() const { return {}; }

  // Central differences: step h = 1e-5 max(1,|u|,|v|) for first partials, 10h for second partials.
  SurfaceJet fd_jet(double u, double v) const;
};

using SurfaceMapPtr = std::shared_ptr<const SurfaceMap>;

struct FirstForm {
  double E = 0.0, F = 0.0, G = 0.0, D = 0.0;
};

struct NormalFrame {
  Vec4 W = Vec4::Zero(), N1 = Vec4::Zero(), N2 = Vec4::Zero();
  bool whitney_ok = false;
};

struct ScaledSecondForm {
  // barred coefficients <alpha_uu, N_i>, <alpha_uv, N_i>, <alpha_vv, N_i>
  std::array<double, 2> eb{}, fb{}, gb{};
  std::array<double, 2> norm{};  // |N_i|
  // normalized coefficients, valid where has_normalized[i]
  std::array<double, 2> e{}, f{}, g{};
  std::array<bool, 2> has_normalized{false, false};
  bool regular() const { return has_normalized[0] && has_normalized[1]; }
};

enum class EllipseShape { Ellipse, Circle, Segment, Point };
std::string to_string(EllipseShape s);

struct EllipseOfCurvature {
  Vec4 H = Vec4::Zero();  // center in R^4
  Vec2 h = Vec2::Zero();  // center in the orthonormal normal frame
  double semi_major = 0.0, semi_minor = 0.0;
  Vec2 major_axis = Vec2::Zero(), minor_axis = Vec2::Zero();  // unit, normal-frame coordinates
  double major_tangent_angle = 0.0;  // chart angle of the tangent direction reaching the major vertex
  double degeneracy_test = 0.0;      // (e1-g1) f2 - (e2-g2) f1
  EllipseShape shape = EllipseShape::Ellipse;
};

// 4D triple product: formal determinant with rows (e_1..e_4), a, b, c.
Vec4 triple_product(const Vec4& a, const Vec4& b, const Vec4& c);

SurfaceJet evaluate_jet(const SurfaceMap& map, double u, double v);
FirstForm first_form(const SurfaceJet& jet);
NormalFrame normal_frame(const SurfaceJet& jet);
ScaledSecondForm second_form_scaled(const SurfaceJet& jet, const NormalFrame& frame);
EllipseOfCurvature ellipse_of_curvature(const SurfaceJet& jet, const NormalFrame& frame, const FirstForm& forms);

// Normal curvature vector k_n = II(d)/I(d) for chart direction angle theta, in the normalized frame.
Vec2 normal_curvature(const FirstForm& I, const ScaledSecondForm& sff, double theta);

// Regular-point threshold on D relative to the metric scale.
bool is_regular(const FirstForm& I);

}  // namespace axial

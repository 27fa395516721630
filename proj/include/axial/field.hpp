#pragma once

#include "axial/axial_field.hpp"
#include "axial/geometry.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <string>

namespace axial {

// A planar field of axial quartics with its singular-point data beta = (a0, a1).
class AxialField {
 public:
  virtual ~AxialField() = default;
  virtual std::string name() const = 0;
  virtual AxialQuartic quartic(double u, double v) const = 0;
  virtual Vec2 beta(double u, double v) const = 0;
  virtual Eigen::Matrix2d beta_jacobian(double u, double v) const;
  // gradients of the five quartic coefficients (used to linearize at a singular point)
  virtual std::array<Vec2, 5> coefficient_gradients(double u, double v) const;
  virtual FirstForm metric(double u, double v) const;
  virtual bool has_deviation() const { return false; }
  virtual double deviation(double u, double v, double theta) const;
  // D / (E + G)^2; zero on the critical set
  virtual double critical_measure(double u, double v) const;
  // scale for residual tolerances of beta near (u, v)
  virtual double beta_scale(double u, double v) const;
  // Newton estimate |N1| / |DN1| of the distance to a point where the normal frame collapses; infinite
  // for fields without a frame
  virtual double frame_distance(double, double) const { return std::numeric_limits<double>::infinity(); }

  bool is_critical(double u, double v) const { return critical_measure(u, v) < 1e-12; }
  CrossingPair crossing(double u, double v) const;
  double fd_step(double u, double v) const;
};

using AxialFieldPtr = std::shared_ptr<const AxialField>;

// Generic pipeline: map -> jet -> forms -> frame -> extended quartic.
class MapField final : public AxialField {
 public:
  explicit MapField(SurfaceMapPtr map) : map_(std::move(map)) {}
  std::string name() const override { return map_->name(); }
  AxialQuartic quartic(double u, double v) const override;
  Vec2 beta(double u, double v) const override;
  FirstForm metric(double u, double v) const override;
  bool has_deviation() const override { return true; }
  double deviation(double u, double v, double theta) const override;
  double critical_measure(double u, double v) const override;
  double frame_distance(double u, double v) const override;
  const SurfaceMap& map() const { return *map_; }

 private:
  SurfaceMapPtr map_;
};

class NormalFormField final : public AxialField {
 public:
  NormalFormField(double a, double b) : a_(a), b_(b) {}
  std::string name() const override { return "normal_form"; }
  AxialQuartic quartic(double u, double v) const override { return normal_form_quartic(a_, b_, u, v); }
  Vec2 beta(double u, double v) const override { return {v, a_ * u + b_ * v}; }
  Eigen::Matrix2d beta_jacobian(double, double) const override;
  std::array<Vec2, 5> coefficient_gradients(double u, double v) const override;
  double beta_scale(double, double) const override { return 1.0; }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_, b_;
};

// Quartic supplied by a callable (tests, synthetic fields).
class LambdaField final : public AxialField {
 public:
  using Fn = std::function<std::array<double, 5>(double, double)>;
  LambdaField(Fn f, std::string name) : f_(std::move(f)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  AxialQuartic quartic(double u, double v) const override;
  Vec2 beta(double u, double v) const override;

 private:
  Fn f_;
  std::string name_;
};

// Registry: surface families plus "normal_form" {a, b}; "custom" needs params["map"] via make_custom_field.
AxialFieldPtr make_field(const std::string& family, const std::map<std::string, double>& params);

}  // namespace axial

#pragma once

#include "axial/geometry.hpp"
#include "axial/mpoly.hpp"

#include <functional>
#include <vector>

namespace axial {

// alpha_eps(u,v) = (u, uv, v^2, eps v + a v^3/6); eps = 0 gives alpha^a, a = eps = 0 the Whitney umbrella.
class AlphaMap final : public SurfaceMap {
 public:
  AlphaMap(double a, double eps, std::string name);
  Vec4 value(double u, double v) const override;
  SurfaceJet jet(double u, double v) const override;
  bool analytic() const override { return true; }
  std::string name() const override { return name_; }
  std::map<std::string, double> params() const override;
  double a() const { return a_; }
  double eps() const { return eps_; }

 private:
  double a_, eps_;
  std::string name_;
};

// Polynomial map given by four polynomials in (u, v); derivatives are exact.
class PolynomialMap final : public SurfaceMap {
 public:
  PolynomialMap(std::array<MPoly, 4> comps, std::string name);
  Vec4 value(double u, double v) const override;
  SurfaceJet jet(double u, double v) const override;
  bool analytic() const override { return true; }
  std::string name() const override { return name_; }
  const std::array<MPoly, 4>& components() const { return comps_; }

 private:
  std::array<MPoly, 4> comps_;
  std::array<std::array<CompiledPoly, 6>, 4> compiled_;
  std::string name_;
};

// Arbitrary callable; jets by finite differences.
class FunctionMap final : public SurfaceMap {
 public:
  FunctionMap(std::function<Vec4(double, double)> f, std::string name);
  Vec4 value(double u, double v) const override { return f_(u, v); }
  std::string name() const override { return name_; }

 private:
  std::function<Vec4(double, double)> f_;
  std::string name_;
};

// Parse a polynomial expression in u, v with rational constants; symbols in `constants` are substituted.
MPoly parse_polynomial(const std::string& expr, const std::map<std::string, Rational>& constants = {});
// "expr1, expr2, expr3, expr4" or "expr1; expr2; ..."
std::shared_ptr<PolynomialMap> parse_map(const std::string& spec, const std::map<std::string, Rational>& constants = {});

// Registry: "alpha_a" {a}, "alpha_eps" {a, eps}, "whitney" {}.
SurfaceMapPtr make_surface_map(const std::string& family, const std::map<std::string, double>& params);

}  // namespace axial

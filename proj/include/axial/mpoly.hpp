#pragma once

#include "axial/exact_poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace axial {

// Sparse multivariate polynomial over Q with a fixed number of variables.
class MPoly {
 public:
  using Exps = std::vector<int>;

  explicit MPoly(int nvars = 0) : n_(nvars) {}
  MPoly(int nvars, const Rational& c);
  static MPoly var(int nvars, int i);

  int nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exps, Rational>& terms() const { return terms_; }
  void add_term(const Exps& e, const Rational& c);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& s);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const MPoly& b) { return a *= b; }
  friend MPoly operator*(MPoly a, const Rational& s) { return a *= s; }
  friend MPoly operator*(const Rational& s, MPoly a) { return a *= s; }
  friend MPoly operator+(MPoly a, long c) { return a += MPoly(a.n_, c); }
  friend MPoly operator+(long c, MPoly a) { return a += MPoly(a.n_, c); }
  friend MPoly operator-(MPoly a, long c) { return a -= MPoly(a.n_, c); }
  friend MPoly operator-(long c, const MPoly& a) { return MPoly(a.n_, c) - a; }
  friend MPoly operator*(MPoly a, long c) { return a *= Rational(c); }
  friend MPoly operator*(long c, MPoly a) { return a *= Rational(c); }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  MPoly pow(unsigned k) const;
  MPoly derivative(int var) const;
  int degree(int var) const;
  int min_degree(int var) const;
  int total_degree() const;

  // Coefficient of var^k, as a polynomial with that variable's exponent set to zero.
  MPoly coefficient(int var, int k) const;
  // Replace variable i by images[i]; all images share out_nvars variables.
  MPoly compose(const std::vector<MPoly>& images, int out_nvars) const;
  // Fix variable i to a rational value (variable kept, exponent removed).
  MPoly substitute(int var, const Rational& value) const;
  // Normal form modulo s^2 + c^2 - 1 (s-degree at most 1).
  MPoly reduce_circle(int c, int s) const;
  // Divide by var^k; throws if some term has lower degree.
  MPoly divide_power(int var, int k) const;

  Rational eval(const std::vector<Rational>& x) const;
  double eval(const std::vector<double>& x) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int n_;
  std::map<Exps, Rational> terms_;
};

// Flattened double-precision evaluator for an MPoly; for hot loops.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const MPoly& p);
  double operator()(const double* x) const;
  int nvars() const { return n_; }

 private:
  int n_ = 0;
  std::vector<int> maxdeg_;
  std::vector<double> coef_;
  std::vector<int> exps_;
};

}  // namespace axial

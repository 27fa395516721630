#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace axial {

using Rational = mpq_class;

// Univariate polynomial with exact rational coefficients, lowest degree first.
// The zero polynomial has an empty coefficient list and degree -1.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs, char var = 't');
  RationalPoly(std::initializer_list<long> coeffs, char var = 't');

  static RationalPoly constant(const Rational& c, char var = 't');
  static RationalPoly monomial(const Rational& c, int deg, char var = 't');
  static RationalPoly x(char var = 't') { return monomial(1, 1, var); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  char var() const { return var_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  RationalPoly derivative() const;
  RationalPoly monic() const;
  RationalPoly scaled(const Rational& s) const;
  // p(x) -> p(x^k)
  RationalPoly compose_power(int k) const;

  RationalPoly operator-() const;
  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const RationalPoly& o);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }

  RationalPoly pow(unsigned n) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
  char var_ = 't';
};

// Euclidean division; throws std::domain_error on division by zero.
void divmod(const RationalPoly& a, const RationalPoly& b, RationalPoly& q, RationalPoly& r);
// Exact quotient; throws std::domain_error when b does not divide a.
RationalPoly exact_div(const RationalPoly& a, const RationalPoly& b);

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);
RationalPoly squarefree_part(const RationalPoly& p);

std::vector<RationalPoly> sturm_sequence(const RationalPoly& p);

// Number of distinct real roots in the open interval (lo, hi); nullopt bounds mean infinity.
// Counts on the squarefree part, so multiplicities are ignored.
int sturm_count(const RationalPoly& p, const std::optional<Rational>& lo = std::nullopt,
                const std::optional<Rational>& hi = std::nullopt);

// Isolating interval: exactly one root in (lo, hi], or the exact root lo == hi.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
  double mid() const;
};

std::vector<RootInterval> isolate_roots(const RationalPoly& p, const Rational& width);
// Bound B with every real root in (-B, B).
Rational root_bound(const RationalPoly& p);

// Sign of q at the unique root of p inside iv (p squarefree there).
int sign_at_root(const RationalPoly& p, RootInterval iv, const RationalPoly& q);

Rational resultant(const RationalPoly& p, const RationalPoly& q);

// Polynomial in t with coefficients in Q[a]; coefficient i multiplies t^i.
class ParamPoly {
 public:
  ParamPoly() = default;
  explicit ParamPoly(std::vector<RationalPoly> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<RationalPoly>& coeffs() const { return c_; }
  RationalPoly coeff(int i) const;

  RationalPoly at(const Rational& a) const;
  ParamPoly operator*(const ParamPoly& o) const;
  ParamPoly operator+(const ParamPoly& o) const;
  ParamPoly scaled(const Rational& s) const;
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<RationalPoly> c_;
};

// Sylvester resultant in t; rows of p first, then q. Fraction-free Bareiss over Q[a].
RationalPoly resultant(const ParamPoly& p, const ParamPoly& q);

// Convert a double to the rational it represents exactly.
Rational exact_rational(double x);
// Parse "p/q", integers or decimals exactly.
Rational parse_rational(const std::string& s);
std::string rational_string(const Rational& r);

}  // namespace axial

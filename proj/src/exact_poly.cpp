#include "axial/exact_poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace axial {

RationalPoly::RationalPoly(std::vector<Rational> coeffs, char var) : c_(std::move(coeffs)), var_(var) {
  trim();
}

RationalPoly::RationalPoly(std::initializer_list<long> coeffs, char var) : var_(var) {
  for (long c : coeffs) c_.emplace_back(c);
  trim();
}

RationalPoly RationalPoly::constant(const Rational& c, char var) { return RationalPoly({c}, var); }

RationalPoly RationalPoly::monomial(const Rational& c, int deg, char var) {
  std::vector<Rational> v(deg + 1);
  v[deg] = c;
  return RationalPoly(std::move(v), var);
}

void RationalPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational RationalPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

const Rational& RationalPoly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Rational RationalPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return RationalPoly(std::move(d), var_);
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading());
}

RationalPoly RationalPoly::scaled(const Rational& s) const {
  std::vector<Rational> v = c_;
  for (auto& x : v) x *= s;
  return RationalPoly(std::move(v), var_);
}

RationalPoly RationalPoly::compose_power(int k) const {
  if (is_zero()) return *this;
  std::vector<Rational> v(static_cast<std::size_t>(degree() * k + 1));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
  return RationalPoly(std::move(v), var_);
}

RationalPoly RationalPoly::operator-() const { return scaled(-1); }

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

RationalPoly RationalPoly::pow(unsigned n) const {
  RationalPoly r = constant(1, var_), b = *this;
  while (n) {
    if (n & 1u) r *= b;
    b *= b;
    n >>= 1u;
  }
  return r;
}

std::string RationalPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    Rational m = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (m != 1 || i == 0) {
      os << rational_string(m);
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var_;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

void divmod(const RationalPoly& a, const RationalPoly& b, RationalPoly& q, RationalPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  std::vector<Rational> quo(dq >= 0 ? dq + 1 : 0);
  const Rational& lb = b.leading();
  for (int k = dq; k >= 0; --k) {
    Rational f = rem[k + db] / lb;
    quo[k] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] -= f * b.coeffs()[j];
  }
  q = RationalPoly(std::move(quo), a.var());
  r = RationalPoly(std::move(rem), a.var());
}

RationalPoly exact_div(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = a, y = b;
  while (!y.is_zero()) {
    RationalPoly q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

RationalPoly squarefree_part(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree part of zero polynomial");
  if (p.degree() == 0) return p.monic();
  return exact_div(p, gcd(p, p.derivative())).monic();
}

std::vector<RationalPoly> sturm_sequence(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("Sturm sequence of zero polynomial");
  std::vector<RationalPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    RationalPoly q, r;
    divmod(seq[seq.size() - 2], seq.back(), q, r);
    seq.push_back(-r);
  }
  seq.pop_back();
  return seq;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int n = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++n;
    prev = s;
  }
  return n;
}

int variations_at(const std::vector<RationalPoly>& seq, const Rational& x) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& q : seq) s.push_back(sgn(q.eval(x)));
  return sign_changes(s);
}

int variations_inf(const std::vector<RationalPoly>& seq, bool positive) {
  std::vector<int> s;
  for (const auto& q : seq) {
    int sl = sgn(q.leading());
    if (!positive && (q.degree() % 2 == 1)) sl = -sl;
    s.push_back(sl);
  }
  return sign_changes(s);
}

// roots in (lo, hi] of the squarefree p via its Sturm sequence
int count_half_open(const std::vector<RationalPoly>& seq, const std::optional<Rational>& lo,
                    const std::optional<Rational>& hi) {
  int vlo = lo ? variations_at(seq, *lo) : variations_inf(seq, false);
  int vhi = hi ? variations_at(seq, *hi) : variations_inf(seq, true);
  return vlo - vhi;
}

}  // namespace

int sturm_count(const RationalPoly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (p.is_zero()) throw std::domain_error("Sturm count of zero polynomial");
  RationalPoly s = squarefree_part(p);
  if (s.degree() == 0) return 0;
  if (lo && hi && *lo >= *hi) return 0;
  auto seq = sturm_sequence(s);
  int n = count_half_open(seq, lo, hi);
  if (hi && sgn(s.eval(*hi)) == 0) --n;
  return n;
}

double RootInterval::mid() const {
  Rational m = (lo + hi) / 2;
  return m.get_d();
}

Rational root_bound(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("root bound of zero polynomial");
  Rational mx = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeffs()[i] / p.leading());
    if (r > mx) mx = r;
  }
  // round up to a power of two so bisection points stay dyadic
  Rational b = 1;
  while (b < mx + 1) b *= 2;
  return b;
}

namespace {

void refine_single(const RationalPoly& s, RootInterval& iv, const Rational& width) {
  if (iv.exact()) return;
  int shi = sgn(s.eval(iv.hi));
  if (shi == 0) {
    iv.lo = iv.hi;
    return;
  }
  while (iv.hi - iv.lo > width) {
    Rational m = (iv.lo + iv.hi) / 2;
    int sm = sgn(s.eval(m));
    if (sm == 0) {
      iv.lo = iv.hi = m;
      return;
    }
    if (sm == shi) iv.hi = m;
    else iv.lo = m;
  }
}

}  // namespace

std::vector<RootInterval> isolate_roots(const RationalPoly& p, const Rational& width) {
  if (p.is_zero()) throw std::domain_error("root isolation of zero polynomial");
  if (sgn(width) <= 0) throw std::invalid_argument("isolation width must be positive");
  RationalPoly s = squarefree_part(p);
  std::vector<RootInterval> out;
  if (s.degree() == 0) return out;
  auto seq = sturm_sequence(s);
  Rational b = root_bound(s);
  std::function<void(const Rational&, const Rational&, int)> rec = [&](const Rational& lo, const Rational& hi, int n) {
    if (n == 0) return;
    if (n == 1) {
      RootInterval iv{lo, hi};
      refine_single(s, iv, width);
      out.push_back(iv);
      return;
    }
    Rational m = (lo + hi) / 2;
    int nl = count_half_open(seq, lo, m);
    rec(lo, m, nl);
    rec(m, hi, n - nl);
  };
  Rational lo = -b;
  rec(lo, b, count_half_open(seq, lo, b));
  return out;
}

int sign_at_root(const RationalPoly& p, RootInterval iv, const RationalPoly& q) {
  if (iv.exact()) return sgn(q.eval(iv.lo));
  RationalPoly s = squarefree_part(p);
  if (sgn(s.eval(iv.hi)) == 0) return sgn(q.eval(iv.hi));
  // shrink until q has no root in the closed interval, then q's sign is constant on it
  for (int it = 0; it < 4000; ++it) {
    bool q_clear = sgn(q.eval(iv.lo)) != 0 && sgn(q.eval(iv.hi)) != 0 && sturm_count(q, iv.lo, iv.hi) == 0;
    if (q_clear) return sgn(q.eval(iv.hi));
    Rational m = (iv.lo + iv.hi) / 2;
    int sm = sgn(s.eval(m));
    if (sm == 0) return sgn(q.eval(m));
    if (sm == sgn(s.eval(iv.hi))) iv.hi = m;
    else iv.lo = m;
  }
  throw std::runtime_error("sign_at_root: q appears to vanish at the root of p");
}

namespace {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Fraction-free determinant; div(a, b) must be exact.
template <class T, class IsZero, class Div>
T bareiss_det(Matrix<T> m, T one, IsZero is_zero, Div div) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  T prev = one;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m[k][k])) {
      std::size_t piv = k + 1;
      while (piv < n && is_zero(m[piv][k])) ++piv;
      if (piv == n) return T{};
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
    }
    prev = m[k][k];
  }
  T d = m[n - 1][n - 1];
  return sign < 0 ? T{} - d : d;
}

template <class T>
Matrix<T> sylvester(const std::vector<T>& p, const std::vector<T>& q, T zero) {
  // p, q lowest degree first
  const int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
  Matrix<T> s(m + n, std::vector<T>(m + n, zero));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = p[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = q[n - j];
  return s;
}

}  // namespace

Rational resultant(const RationalPoly& p, const RationalPoly& q) {
  if (p.degree() < 1 || q.degree() < 1) throw std::domain_error("resultant needs degrees >= 1");
  auto s = sylvester<Rational>(p.coeffs(), q.coeffs(), Rational(0));
  return bareiss_det<Rational>(
      std::move(s), Rational(1), [](const Rational& x) { return sgn(x) == 0; },
      [](const Rational& a, const Rational& b) { return Rational(a / b); });
}

ParamPoly::ParamPoly(std::vector<RationalPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

void ParamPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RationalPoly ParamPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return RationalPoly({}, 'a');
  return c_[i];
}

RationalPoly ParamPoly::at(const Rational& a) const {
  std::vector<Rational> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.eval(a));
  return RationalPoly(std::move(v), 't');
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
  if (c_.empty() || o.c_.empty()) return ParamPoly();
  std::vector<RationalPoly> r(c_.size() + o.c_.size() - 1, RationalPoly({}, 'a'));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return ParamPoly(std::move(r));
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
  std::vector<RationalPoly> r = c_;
  if (o.c_.size() > r.size()) r.resize(o.c_.size(), RationalPoly({}, 'a'));
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return ParamPoly(std::move(r));
}

ParamPoly ParamPoly::scaled(const Rational& s) const {
  std::vector<RationalPoly> r;
  for (const auto& c : c_) r.push_back(c.scaled(s));
  return ParamPoly(std::move(r));
}

RationalPoly resultant(const ParamPoly& p, const ParamPoly& q) {
  if (p.degree() < 1 || q.degree() < 1) throw std::domain_error("resultant needs degrees >= 1");
  const RationalPoly zero({}, 'a');
  auto s = sylvester<RationalPoly>(p.coeffs(), q.coeffs(), zero);
  return bareiss_det<RationalPoly>(
      std::move(s), RationalPoly::constant(1, 'a'), [](const RationalPoly& x) { return x.is_zero(); },
      [](const RationalPoly& a, const RationalPoly& b) { return exact_div(a, b); });
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
  Rational r(x);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& s) {
  std::string t = s;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  if (t.empty()) throw std::invalid_argument("empty rational");
  std::size_t slash = t.find('/');
  if (slash != std::string::npos) {
    const Rational den = parse_rational(t.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(parse_rational(t.substr(0, slash)) / den);
  }
  bool neg = false;
  std::size_t i = 0;
  if (t[0] == '+' || t[0] == '-') {
    neg = t[0] == '-';
    i = 1;
  }
  std::string digits;
  int frac = 0;
  bool dot = false;
  for (; i < t.size(); ++i) {
    char ch = t[i];
    if (ch == '.' && !dot) {
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      if (dot) ++frac;
    } else if (ch == 'e' || ch == 'E') {
      break;
    } else {
      throw std::invalid_argument("malformed rational '" + s + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed rational '" + s + "'");
  long ex = 0;
  if (i < t.size()) ex = std::stol(t.substr(i + 1));
  mpz_class num(digits);
  mpz_class ten = 10;
  long e = ex - frac;
  Rational r;
  if (e >= 0) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(e));
    r = Rational(num * p);
  } else {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-e));
    r = Rational(num, p);
  }
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

}  // namespace axial

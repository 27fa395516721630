#include "axial/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace axial {

MPoly::MPoly(int nvars, const Rational& c) : n_(nvars) {
  if (sgn(c) != 0) terms_.emplace(Exps(nvars, 0), c);
}

MPoly MPoly::var(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::out_of_range("MPoly::var index");
  MPoly p(nvars);
  Exps e(nvars, 0);
  e[i] = 1;
  p.terms_.emplace(e, 1);
  return p;
}

void MPoly::add_term(const Exps& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("MPoly exponent arity");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.n_ != n_) throw std::invalid_argument("MPoly arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.n_ != n_) throw std::invalid_argument("MPoly arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  if (o.n_ != n_) throw std::invalid_argument("MPoly arity mismatch");
  MPoly r(n_);
  Exps e(n_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  terms_ = std::move(r.terms_);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly r(n_, 1), b = *this;
  while (k) {
    if (k & 1u) r *= b;
    k >>= 1u;
    if (k) b *= b;
  }
  return r;
}

MPoly MPoly::derivative(int var) const {
  MPoly r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exps d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

int MPoly::degree(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int MPoly::min_degree(int var) const {
  if (terms_.empty()) return -1;
  int d = 1 << 30;
  for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
  return d;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

MPoly MPoly::coefficient(int var, int k) const {
  MPoly r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exps d = e;
    d[var] = 0;
    r.add_term(d, c);
  }
  return r;
}

MPoly MPoly::compose(const std::vector<MPoly>& images, int out_nvars) const {
  if (static_cast<int>(images.size()) != n_) throw std::invalid_argument("compose: image count");
  std::vector<std::vector<MPoly>> powers(n_);
  for (int i = 0; i < n_; ++i) {
    int d = std::max(degree(i), 0);
    powers[i].reserve(d + 1);
    powers[i].emplace_back(out_nvars, 1);
    for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * images[i]);
  }
  MPoly r(out_nvars);
  for (const auto& [e, c] : terms_) {
    MPoly t(out_nvars, c);
    for (int i = 0; i < n_; ++i)
      if (e[i] > 0) t *= powers[i][e[i]];
    r += t;
  }
  return r;
}

MPoly MPoly::substitute(int var, const Rational& value) const {
  MPoly r(n_);
  for (const auto& [e, c] : terms_) {
    Exps d = e;
    d[var] = 0;
    Rational p = 1;
    for (int k = 0; k < e[var]; ++k) p *= value;
    r.add_term(d, c * p);
  }
  return r;
}

MPoly MPoly::reduce_circle(int cv, int sv) const {
  // s^(2m+j) = (1 - c^2)^m s^j
  MPoly r(n_);
  MPoly one_minus_c2 = MPoly(n_, 1) - MPoly::var(n_, cv).pow(2);
  for (const auto& [e, c] : terms_) {
    int m = e[sv] / 2;
    Exps d = e;
    d[sv] = e[sv] % 2;
    MPoly mono(n_);
    mono.add_term(d, c);
    r += mono * one_minus_c2.pow(static_cast<unsigned>(m));
  }
  return r;
}

MPoly MPoly::divide_power(int var, int k) const {
  MPoly r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[var] < k) throw std::domain_error("divide_power: term of lower degree");
    Exps d = e;
    d[var] -= k;
    r.add_term(d, c);
  }
  return r;
}

Rational MPoly::eval(const std::vector<Rational>& x) const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

double MPoly::eval(const std::vector<double>& x) const { return CompiledPoly(*this)(x.data()); }

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rational m = abs(c);
    bool any = false;
    for (int i = 0; i < n_; ++i) any = any || e[i] > 0;
    if (m != 1 || !any) os << m.get_str();
    bool need_star = m != 1;
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << names.at(i);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

CompiledPoly::CompiledPoly(const MPoly& p) : n_(p.nvars()), maxdeg_(p.nvars(), 0) {
  for (const auto& [e, c] : p.terms()) {
    coef_.push_back(c.get_d());
    for (int i = 0; i < n_; ++i) {
      exps_.push_back(e[i]);
      maxdeg_[i] = std::max(maxdeg_[i], e[i]);
    }
  }
}

double CompiledPoly::operator()(const double* x) const {
  // power tables on the stack for the small variable counts used here
  constexpr int kMaxPow = 64;
  double pw[8][kMaxPow];
  if (n_ > 8) throw std::length_error("CompiledPoly supports at most 8 variables");
  for (int i = 0; i < n_; ++i) {
    if (maxdeg_[i] >= kMaxPow) throw std::length_error("CompiledPoly degree too large");
    pw[i][0] = 1.0;
    for (int k = 1; k <= maxdeg_[i]; ++k) pw[i][k] = pw[i][k - 1] * x[i];
  }
  double acc = 0.0;
  const int* e = exps_.data();
  for (double c : coef_) {
    double t = c;
    for (int i = 0; i < n_; ++i) t *= pw[i][e[i]];
    acc += t;
    e += n_;
  }
  return acc;
}

}  // namespace axial

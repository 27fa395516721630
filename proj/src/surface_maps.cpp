#include "axial/surface_maps.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace axial {

AlphaMap::AlphaMap(double a, double eps, std::string name) : a_(a), eps_(eps), name_(std::move(name)) {}

Vec4 AlphaMap::value(double u, double v) const { return {u, u * v, v * v, eps_ * v + a_ * v * v * v / 6.0}; }

SurfaceJet AlphaMap::jet(double u, double v) const {
  SurfaceJet j;
  j.u = u;
  j.v = v;
  j.x = value(u, v);
  j.xu = Vec4(1.0, v, 0.0, 0.0);
  j.xv = Vec4(0.0, u, 2.0 * v, eps_ + 0.5 * a_ * v * v);
  j.xuu = Vec4::Zero();
  j.xuv = Vec4(0.0, 1.0, 0.0, 0.0);
  j.xvv = Vec4(0.0, 0.0, 2.0, a_ * v);
  return j;
}

std::map<std::string, double> AlphaMap::params() const {
  if (name_ == "whitney") return {};
  if (name_ == "alpha_a") return {{"a", a_}};
  return {{"a", a_}, {"eps", eps_}};
}

PolynomialMap::PolynomialMap(std::array<MPoly, 4> comps, std::string name) : comps_(std::move(comps)), name_(std::move(name)) {
  for (int i = 0; i < 4; ++i) {
    if (comps_[i].nvars() != 2) throw std::invalid_argument("PolynomialMap components must be polynomials in (u, v)");
    const MPoly& p = comps_[i];
    MPoly pu = p.derivative(0), pv = p.derivative(1);
    compiled_[i] = {CompiledPoly(p),  CompiledPoly(pu), CompiledPoly(pv), CompiledPoly(pu.derivative(0)),
                    CompiledPoly(pu.derivative(1)), CompiledPoly(pv.derivative(1))};
  }
}

Vec4 PolynomialMap::value(double u, double v) const {
  const double x[2] = {u, v};
  Vec4 r;
  for (int i = 0; i < 4; ++i) r[i] = compiled_[i][0](x);
  return r;
}

SurfaceJet PolynomialMap::jet(double u, double v) const {
  const double x[2] = {u, v};
  SurfaceJet j;
  j.u = u;
  j.v = v;
  Vec4* out[6] = {&j.x, &j.xu, &j.xv, &j.xuu, &j.xuv, &j.xvv};
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < 4; ++i) (*out[k])[i] = compiled_[i][k](x);
  return j;
}

FunctionMap::FunctionMap(std::function<Vec4(double, double)> f, std::string name) : f_(std::move(f)), name_(std::move(name)) {}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::map<std::string, Rational>& consts) : s_(s), consts_(consts) {}

  MPoly parse() {
    MPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "polynomial parse error at offset " << pos_ << ": " << msg << " in '" << s_ << "'";
    throw std::invalid_argument(os.str());
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  MPoly expr() {
    MPoly r = term();
    for (;;) {
      if (eat('+')) r += term();
      else if (eat('-')) r -= term();
      else return r;
    }
  }
  MPoly term() {
    MPoly r = unary();
    for (;;) {
      if (eat('*')) {
        r *= unary();
      } else if (eat('/')) {
        MPoly d = unary();
        if (d.total_degree() > 0) fail("division by a non-constant");
        if (d.is_zero()) fail("division by zero");
        r *= Rational(1) / d.terms().begin()->second;
      } else {
        return r;
      }
    }
  }
  MPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    MPoly b = primary();
    if (eat('^')) {
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("exponent must be a non-negative integer");
      int k = std::stoi(s_.substr(st, pos_ - st));
      if (k > 32) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(k));
    }
    return b;
  }
  MPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly r = expr();
      if (!eat(')')) fail("missing ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t st = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      return MPoly(2, parse_rational(s_.substr(st, pos_ - st)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(st, pos_ - st);
      if (id == "u") return MPoly::var(2, 0);
      if (id == "v") return MPoly::var(2, 1);
      auto it = consts_.find(id);
      if (it == consts_.end()) fail("unknown symbol '" + id + "'");
      return MPoly(2, it->second);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  const std::map<std::string, Rational>& consts_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_polynomial(const std::string& expr, const std::map<std::string, Rational>& constants) {
  return Parser(expr, constants).parse();
}

std::shared_ptr<PolynomialMap> parse_map(const std::string& spec, const std::map<std::string, Rational>& constants) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : spec) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' || c == ';') && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw std::invalid_argument("map needs exactly four components, got " + std::to_string(parts.size()));
  std::array<MPoly, 4> comps;
  for (int i = 0; i < 4; ++i) comps[i] = parse_polynomial(parts[i], constants);
  return std::make_shared<PolynomialMap>(std::move(comps), "custom");
}

SurfaceMapPtr make_surface_map(const std::string& family, const std::map<std::string, double>& params) {
  auto get = [&](const char* k) {
    auto it = params.find(k);
    return it == params.end() ? 0.0 : it->second;
  };
  if (family == "alpha_a") return std::make_shared<AlphaMap>(get("a"), 0.0, "alpha_a");
  if (family == "alpha_eps") return std::make_shared<AlphaMap>(get("a"), get("eps"), "alpha_eps");
  if (family == "whitney") return std::make_shared<AlphaMap>(0.0, 0.0, "whitney");
  throw std::invalid_argument("unknown surface family '" + family + "'");
}

}  // namespace axial

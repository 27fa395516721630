#pragma once

#include <array>

namespace axial {

// Forward-mode value with gradient in (u, v).
struct Dual2 {
  double val = 0.0;
  std::array<double, 2> d{0.0, 0.0};

  Dual2() = default;
  Dual2(double x) : val(x) {}  // NOLINT: constants promote implicitly
  Dual2(double x, double du, double dv) : val(x), d{du, dv} {}

  friend Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.val + b.val, a.d[0] + b.d[0], a.d[1] + b.d[1]}; }
  friend Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.val - b.val, a.d[0] - b.d[0], a.d[1] - b.d[1]}; }
  friend Dual2 operator-(const Dual2& a) { return {-a.val, -a.d[0], -a.d[1]}; }
  friend Dual2 operator*(const Dual2& a, const Dual2& b) {
    return {a.val * b.val, a.d[0] * b.val + a.val * b.d[0], a.d[1] * b.val + a.val * b.d[1]};
  }
  Dual2& operator+=(const Dual2& o) { return *this = *this + o; }
  Dual2& operator-=(const Dual2& o) { return *this = *this - o; }
  Dual2& operator*=(const Dual2& o) { return *this = *this * o; }
};

inline Dual2 operator/(const Dual2& a, const Dual2& b) {
  const double q = a.val / b.val;
  return {q, (a.d[0] - q * b.d[0]) / b.val, (a.d[1] - q * b.d[1]) / b.val};
}

}  // namespace axial

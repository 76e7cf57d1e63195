#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace symfem {

/// Second-order forward-mode jet in two variables: value, gradient, Hessian.
struct Jet2 {
  double v = 0.0;
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  Eigen::Matrix2d h = Eigen::Matrix2d::Zero();

  static Jet2 constant(double c) { return {c, Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero()}; }
  static Jet2 variable(double value, int i) {
    Jet2 j{value, Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero()};
    j.g[i] = 1.0;
    return j;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.g + b.g, a.h + b.h}; }
  friend Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.g - b.g, a.h - b.h}; }
  friend Jet2 operator-(const Jet2& a) { return {-a.v, -a.g, -a.h}; }
  friend Jet2 operator*(double s, const Jet2& a) { return {s * a.v, s * a.g, s * a.h}; }
  friend Jet2 operator+(double s, const Jet2& a) { return {s + a.v, a.g, a.h}; }
  friend Jet2 operator-(double s, const Jet2& a) { return {s - a.v, -a.g, -a.h}; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v, a.g * b.v + a.v * b.g,
            a.h * b.v + a.g * b.g.transpose() + b.g * a.g.transpose() + a.v * b.h};
  }
};

// Chain rule for a scalar function with derivatives d0, d1, d2 at a.v.
inline Jet2 compose(const Jet2& a, double d0, double d1, double d2) {
  return {d0, d1 * a.g, d1 * a.h + d2 * a.g * a.g.transpose()};
}

inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return compose(a, e, e, e);
}

inline Jet2 sin(const Jet2& a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }

inline Jet2 cos(const Jet2& a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

} // namespace symfem

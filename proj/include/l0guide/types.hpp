#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace l0guide {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

using Vector2d = Vector2<double>;

template <typename Scalar>
constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

/// Wraps an angle into (-pi, pi].
template <typename Scalar>
Scalar wrap_angle(Scalar angle) {
  using std::fmod;
  if (angle > -kPi<Scalar> && angle <= kPi<Scalar>) return angle;
  Scalar wrapped = fmod(angle + kPi<Scalar>, Scalar(2) * kPi<Scalar>);
  if (wrapped <= Scalar(0)) wrapped += Scalar(2) * kPi<Scalar>;
  return wrapped - kPi<Scalar>;
}

/// Planar cross product (z component).
template <typename DerivedA, typename DerivedB>
auto cross2(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Rotates a planar vector by +90 degrees.
template <typename Derived>
Vector2<typename Derived::Scalar> rotate_left(const Eigen::MatrixBase<Derived>& v) {
  return Vector2<typename Derived::Scalar>(-v.y(), v.x());
}

template <typename Scalar>
Vector2<Scalar> unit_from_angle(Scalar angle) {
  using std::cos;
  using std::sin;
  return Vector2<Scalar>(cos(angle), sin(angle));
}

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * kPi<Scalar> / Scalar(180);
}

template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) {
  return rad * Scalar(180) / kPi<Scalar>;
}

}  // namespace l0guide

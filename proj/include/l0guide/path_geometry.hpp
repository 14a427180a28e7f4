#pragma once

// Desired paths and their closest-point / Frenet-frame queries.
//
// Conventions: n is the tangent rotated +90 deg, d = (P - O) . n, and kappa > 0
// when the path turns toward n (CCW circles and ellipses, normal inward).

#include "l0guide/errors.hpp"
#include "l0guide/types.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <variant>

namespace l0guide {

enum class Traversal { CCW, CW };

template <typename Scalar>
struct StraightLine {
  Vector2<Scalar> anchor;
  Vector2<Scalar> direction;  ///< unit tangent

  static StraightLine make(const Vector2<Scalar>& anchor, const Vector2<Scalar>& direction) {
    using std::isfinite;
    const Scalar norm = direction.norm();
    if (!isfinite(norm) || norm < Scalar(1e-12) || !anchor.allFinite())
      throw GuidanceError(ErrorKind::InvalidArgument, "line direction must be a finite nonzero vector");
    return StraightLine{anchor, direction / norm};
  }
};

template <typename Scalar>
struct Circle {
  Vector2<Scalar> center;
  Scalar radius;
  Traversal traversal;

  static Circle make(const Vector2<Scalar>& center, Scalar radius, Traversal traversal) {
    if (!(radius > Scalar(0)) || !center.allFinite())
      throw GuidanceError(ErrorKind::InvalidArgument, "circle radius must be positive");
    return Circle{center, radius, traversal};
  }
};

/// Axis-aligned ellipse, semi-major axis along x.
template <typename Scalar>
struct Ellipse {
  Vector2<Scalar> center;
  Scalar semi_major;
  Scalar semi_minor;
  Traversal traversal;

  static Ellipse make(const Vector2<Scalar>& center, Scalar semi_major, Scalar semi_minor,
                      Traversal traversal) {
    if (!(semi_minor > Scalar(0)) || !(semi_major >= semi_minor) || !center.allFinite())
      throw GuidanceError(ErrorKind::InvalidArgument,
                          "ellipse requires semi_major >= semi_minor > 0");
    return Ellipse{center, semi_major, semi_minor, traversal};
  }

  Vector2<Scalar> point(Scalar t) const {
    using std::cos;
    using std::sin;
    return center + Vector2<Scalar>(semi_major * cos(t), semi_minor * sin(t));
  }
};

template <typename Scalar>
using PathModel = std::variant<StraightLine<Scalar>, Circle<Scalar>, Ellipse<Scalar>>;

template <typename Scalar>
struct PathProjection {
  Vector2<Scalar> closest_point;
  Scalar parameter;  ///< arc length (line) or parametric angle (circle, ellipse)
  Scalar tangent_angle;
  Scalar curvature;
  Scalar cross_track;
  Vector2<Scalar> tangent;
  Vector2<Scalar> normal;
};

namespace detail {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <typename Scalar>
Scalar traversal_sign(Traversal traversal) {
  return traversal == Traversal::CCW ? Scalar(1) : Scalar(-1);
}

template <typename Scalar>
PathProjection<Scalar> finish_projection(const Vector2<Scalar>& position, const Vector2<Scalar>& closest,
                                         Scalar parameter, const Vector2<Scalar>& tangent,
                                         Scalar curvature) {
  using std::atan2;
  const Vector2<Scalar> normal = rotate_left(tangent);
  return PathProjection<Scalar>{closest,
                                parameter,
                                atan2(tangent.y(), tangent.x()),
                                curvature,
                                (position - closest).dot(normal),
                                tangent,
                                normal};
}

template <typename Scalar>
Scalar ellipse_curvature(Scalar a, Scalar b, Scalar t) {
  using std::cos;
  using std::pow;
  using std::sin;
  const Scalar st = sin(t), ct = cos(t);
  return a * b / pow(a * a * st * st + b * b * ct * ct, Scalar(1.5));
}

template <typename Scalar>
PathProjection<Scalar> project(const StraightLine<Scalar>& line, const Vector2<Scalar>& position) {
  const Scalar along = (position - line.anchor).dot(line.direction);
  return finish_projection<Scalar>(position, line.anchor + along * line.direction, along,
                                   line.direction, Scalar(0));
}

template <typename Scalar>
PathProjection<Scalar> project(const Circle<Scalar>& circle, const Vector2<Scalar>& position) {
  using std::atan2;
  const Vector2<Scalar> radial = position - circle.center;
  const Scalar r = radial.norm();
  if (r < Scalar(1e-9))
    throw GuidanceError(ErrorKind::AmbiguousProjection, "position coincides with the circle center");
  const Vector2<Scalar> unit_radial = radial / r;
  const Scalar sign = traversal_sign<Scalar>(circle.traversal);
  return finish_projection<Scalar>(position, circle.center + circle.radius * unit_radial,
                                   atan2(unit_radial.y(), unit_radial.x()),
                                   sign * rotate_left(unit_radial), sign / circle.radius);
}

// Closest point on an axis-aligned ellipse. In the first quadrant the foot
// point is (a^2 y0 / (s + a^2), b^2 y1 / (s + b^2)) for the unique root s of
//   (a y0 / (s + a^2))^2 + (b y1 / (s + b^2))^2 = 1,
// found by bisection in scaled form; signs are restored afterwards.
template <typename Scalar>
Scalar ellipse_root(Scalar r0, Scalar z0, Scalar z1, Scalar g) {
  using std::hypot;
  const Scalar n0 = r0 * z0;
  Scalar s0 = z1 - Scalar(1);
  Scalar s1 = g < Scalar(0) ? Scalar(0) : hypot(n0, z1) - Scalar(1);
  Scalar s = s0;
  for (int it = 0; it < 1100; ++it) {
    s = (s0 + s1) / Scalar(2);
    if (s == s0 || s == s1) break;
    const Scalar ratio0 = n0 / (s + r0), ratio1 = z1 / (s + Scalar(1));
    const Scalar value = ratio0 * ratio0 + ratio1 * ratio1 - Scalar(1);
    if (value > Scalar(0)) s0 = s;
    else if (value < Scalar(0)) s1 = s;
    else break;
  }
  return s;
}

template <typename Scalar>
PathProjection<Scalar> project(const Ellipse<Scalar>& ellipse, const Vector2<Scalar>& position) {
  using std::abs;
  using std::atan2;
  using std::cos;
  using std::sin;
  using std::sqrt;

  const Scalar a = ellipse.semi_major, b = ellipse.semi_minor;
  const Vector2<Scalar> q = position - ellipse.center;
  const Scalar y0 = abs(q.x()), y1 = abs(q.y());

  Scalar x0, x1;
  if (y1 > Scalar(0)) {
    if (y0 > Scalar(0)) {
      const Scalar z0 = y0 / a, z1 = y1 / b;
      const Scalar g = z0 * z0 + z1 * z1 - Scalar(1);
      if (g != Scalar(0)) {
        const Scalar r0 = (a / b) * (a / b);
        const Scalar sbar = ellipse_root(r0, z0, z1, g);
        x0 = r0 * y0 / (sbar + r0);
        x1 = y1 / (sbar + Scalar(1));
      } else {
        x0 = y0;
        x1 = y1;
      }
    } else {
      x0 = Scalar(0);
      x1 = b;
    }
  } else {
    const Scalar numer = a * y0, denom = a * a - b * b;
    if (numer < denom) {
      const Scalar ratio = numer / denom;
      x0 = a * ratio;
      x1 = b * sqrt(Scalar(1) - ratio * ratio);
    } else {
      x0 = a;
      x1 = Scalar(0);
    }
  }

  // Off-axis points mirror across the major axis; the two feet only compete
  // on the segment |x| < (a^2 - b^2) / a of that axis.
  const Vector2<Scalar> foot(q.x() < Scalar(0) ? -x0 : x0, q.y() < Scalar(0) ? -x1 : x1);
  const Vector2<Scalar> mirror(foot.x(), -foot.y());
  if ((foot - mirror).norm() > Scalar(1e-6) && abs((mirror - q).norm() - (foot - q).norm()) < Scalar(1e-9))
    throw GuidanceError(ErrorKind::AmbiguousProjection, "two closest points on the ellipse tie within 1e-9 m");
  if (a == b && q.norm() < Scalar(1e-9))
    throw GuidanceError(ErrorKind::AmbiguousProjection, "position is at the centre of a circular ellipse");

  const Scalar t = atan2(foot.y() / b, foot.x() / a);
  const Scalar sign = traversal_sign<Scalar>(ellipse.traversal);
  const Vector2<Scalar> de(-a * sin(t), b * cos(t));
  return finish_projection<Scalar>(position, ellipse.center + foot, t, Vector2<Scalar>(sign * de.normalized()),
                                   sign * ellipse_curvature(a, b, t));
}

}  // namespace detail

/// Closest point on `path` to `position`, with the Frenet frame there.
template <typename Scalar>
PathProjection<Scalar> project_onto_path(const PathModel<Scalar>& path, const Vector2<Scalar>& position) {
  if (!position.allFinite())
    throw GuidanceError(ErrorKind::InvalidArgument, "position must be finite");
  return std::visit([&](const auto& p) { return detail::project(p, position); }, path);
}

/// Signed curvature at a path parameter.
template <typename Scalar>
Scalar curvature_at(const PathModel<Scalar>& path, Scalar parameter) {
  return std::visit(
      detail::Overloaded{
          [](const StraightLine<Scalar>&) { return Scalar(0); },
          [](const Circle<Scalar>& c) { return detail::traversal_sign<Scalar>(c.traversal) / c.radius; },
          [&](const Ellipse<Scalar>& e) {
            return detail::traversal_sign<Scalar>(e.traversal) *
                   detail::ellipse_curvature(e.semi_major, e.semi_minor, parameter);
          }},
      path);
}

/// T' = O + s * tangent: the virtual target pushed along the tangent line.
template <typename Scalar>
Vector2<Scalar> tangent_point_at_offset(const PathProjection<Scalar>& projection, Scalar s) {
  if (!(s >= Scalar(0)))
    throw GuidanceError(ErrorKind::InvalidArgument, "tangent offset must be non-negative");
  return projection.closest_point + s * projection.tangent;
}

inline const char* to_string(Traversal t) { return t == Traversal::CCW ? "ccw" : "cw"; }

}  // namespace l0guide

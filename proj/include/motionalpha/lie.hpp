#ifndef MOTIONALPHA_LIE_HPP
#define MOTIONALPHA_LIE_HPP

// Group operations, exponential/logarithm maps and metrics for SO(3), SE(2),
// SE(3) and the pose change group PCG(3) = SO(3) x R^3.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "motionalpha/error.hpp"
#include "motionalpha/tolerances.hpp"

namespace motionalpha {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Element of so(3) in exponential coordinates: direction is the rotation
/// axis, norm is the rotation angle (the ball of radius pi).
using AxisAngle = Vec3;

inline constexpr double kPi = std::numbers::pi;

/// tr(A^T B) as the elementwise product sum; no matrix product is formed.
[[nodiscard]] inline double trace_inner(const Mat3& a, const Mat3& b) {
  return a.cwiseProduct(b).sum();
}

/// Proper rotation matrix. Construction through from_matrix() validates the
/// invariants; unchecked() is for matrices the caller already trusts.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  [[nodiscard]] static Rotation from_matrix(const Mat3& m,
                                            double tolerance = tol::kOrthonormal) {
    const Mat3 gram = m.transpose() * m - Mat3::Identity();
    if (gram.cwiseAbs().maxCoeff() > tolerance ||
        std::abs(m.determinant() - 1.0) > tolerance) {
      std::ostringstream os;
      os << "matrix is not a proper rotation (orthonormality residual "
         << gram.cwiseAbs().maxCoeff() << ", det " << m.determinant() << ")";
      detail::fail(ErrorKind::Validation, os.str());
    }
    return Rotation(m);
  }

  [[nodiscard]] static Rotation unchecked(const Mat3& m) { return Rotation(m); }

  [[nodiscard]] static Rotation identity() { return Rotation(); }

  [[nodiscard]] const Mat3& matrix() const noexcept { return m_; }
  [[nodiscard]] double operator()(int r, int c) const { return m_(r, c); }

  [[nodiscard]] Rotation inverse() const { return Rotation(m_.transpose()); }

  [[nodiscard]] friend Rotation operator*(const Rotation& a, const Rotation& b) {
    return Rotation(a.m_ * b.m_);
  }
  [[nodiscard]] friend Vec3 operator*(const Rotation& a, const Vec3& v) {
    return a.m_ * v;
  }

 private:
  explicit Rotation(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

/// Skew-symmetric matrix X with X v = x cross v.
[[nodiscard]] inline Mat3 hat(const Vec3& x) {
  Mat3 s;
  // clang-format off
  s <<  0.0,  -x.z(),  x.y(),
        x.z(),  0.0,  -x.x(),
       -x.y(),  x.x(),  0.0;
  // clang-format on
  return s;
}

[[nodiscard]] inline Vec3 vee(const Mat3& x) {
  if ((x + x.transpose()).cwiseAbs().maxCoeff() > tol::kSkew) {
    detail::fail(ErrorKind::Validation, "vee: matrix is not skew-symmetric");
  }
  return {x(2, 1), x(0, 2), x(1, 0)};
}

/// (R - R^T)^vee / 2 = sin(theta) * axis. Valid for any rotation.
[[nodiscard]] inline Vec3 skew_vector(const Mat3& r) {
  return 0.5 * Vec3(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
}

/// Rodrigues formula; Taylor series for sin(t)/t and (1-cos t)/t^2 near zero.
[[nodiscard]] inline Rotation exp_so3(const AxisAngle& x) {
  const double theta2 = x.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a;
  double b;
  if (theta < tol::kTaylor) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Mat3 xh = hat(x);
  return Rotation::unchecked(Mat3::Identity() + a * xh + b * xh * xh);
}

/// Rotation angle in [0, pi], computed with atan2 so it stays accurate at both ends.
[[nodiscard]] inline double rotation_angle(const Mat3& r) {
  const double c = 0.5 * (r.trace() - 1.0);
  const double s = skew_vector(r).norm();
  return std::atan2(s, c);
}

/// Matrix logarithm. Throws BoundaryAngle when the angle is within
/// tol::kBoundaryAngle of pi, where the sign of the axis is undefined.
[[nodiscard]] inline AxisAngle log_so3(const Rotation& rot,
                                       double boundary = tol::kBoundaryAngle) {
  const Mat3& r = rot.matrix();
  const Vec3 s = skew_vector(r);
  const double sin_t = s.norm();
  const double cos_t = 0.5 * (r.trace() - 1.0);
  const double theta = std::atan2(sin_t, cos_t);
  if (theta > kPi - boundary) {
    std::ostringstream os;
    os << "log_so3: rotation angle " << theta << " is at the pi boundary";
    detail::fail(ErrorKind::BoundaryAngle, os.str());
  }
  if (theta < tol::kTaylor) {
    // theta / sin(theta) ~ 1 + theta^2 / 6
    return (1.0 + theta * theta / 6.0) * s;
  }
  if (cos_t > -0.9) {
    return (theta / sin_t) * s;
  }
  // Close to pi the skew part is tiny; recover the axis from the symmetric
  // part (1 - cos t) a a^T and take its sign from the skew part.
  const Mat3 b = 0.5 * (r + r.transpose()) - cos_t * Mat3::Identity();
  int k = 0;
  b.diagonal().maxCoeff(&k);
  Vec3 axis = b.col(k) / std::sqrt(b(k, k) * (1.0 - cos_t));
  axis.normalize();
  if (axis.dot(s) < 0.0) axis = -axis;
  return theta * axis;
}

/// Bi-invariant distance on SO(3): arccos((tr(R1^T R2) - 1) / 2), clamped.
[[nodiscard]] inline double rho_so3(const Rotation& r1, const Rotation& r2) {
  const double c = 0.5 * (trace_inner(r1.matrix(), r2.matrix()) - 1.0);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Distance from a trace value tr(R1^T R2).
[[nodiscard]] inline double rho_from_trace(double trace) {
  return std::acos(std::clamp(0.5 * (trace - 1.0), -1.0, 1.0));
}

enum class Nearer { First, Second, Tie };

/// Which of a, b is closer to r, by comparing traces (arccos is decreasing).
[[nodiscard]] inline Nearer compare_rho(const Rotation& r, const Rotation& a,
                                        const Rotation& b) {
  const double ta = trace_inner(r.matrix(), a.matrix());
  const double tb = trace_inner(r.matrix(), b.matrix());
  if (std::abs(ta - tb) <= tol::kTrace) return Nearer::Tie;
  return ta > tb ? Nearer::First : Nearer::Second;
}

/// Haar-uniform rotation: normalized 4D standard normal as a unit quaternion.
template <typename Rng>
[[nodiscard]] Rotation random_rotation(Rng& rng) {
  std::normal_distribution<double> n01;
  Eigen::Quaterniond q;
  double norm2 = 0.0;
  do {
    q = Eigen::Quaterniond(n01(rng), n01(rng), n01(rng), n01(rng));
    norm2 = q.squaredNorm();
  } while (norm2 < 1e-20);
  q.normalize();
  return Rotation::unchecked(q.toRotationMatrix());
}

/// Re-orthonormalize with one Gram-Schmidt pass over the columns.
[[nodiscard]] inline Mat3 orthonormalize(const Mat3& m) {
  Vec3 c0 = m.col(0).normalized();
  Vec3 c1 = (m.col(1) - c0.dot(m.col(1)) * c0).normalized();
  Vec3 c2 = c0.cross(c1);
  Mat3 out;
  out << c0, c1, c2;
  return out;
}

// ---------------------------------------------------------------------------
// SE(3) and PCG(3)
// ---------------------------------------------------------------------------

/// Rigid motion (R, t). The same value type represents PCG(3) elements; only
/// the composition rule differs.
struct SpatialMotion {
  Rotation rotation;
  Vec3 translation = Vec3::Zero();

  [[nodiscard]] static SpatialMotion identity() { return {}; }
};

/// (R1 R2, R1 t2 + t1)
[[nodiscard]] inline SpatialMotion compose_se3(const SpatialMotion& g1,
                                               const SpatialMotion& g2) {
  return {g1.rotation * g2.rotation, g1.rotation * g2.translation + g1.translation};
}

/// (R^T, -R^T t)
[[nodiscard]] inline SpatialMotion inverse_se3(const SpatialMotion& g) {
  const Rotation rt = g.rotation.inverse();
  return {rt, -(rt * g.translation)};
}

/// Direct product: (R1 R2, t1 + t2).
[[nodiscard]] inline SpatialMotion compose_pcg(const SpatialMotion& g1,
                                               const SpatialMotion& g2) {
  return {g1.rotation * g2.rotation, g1.translation + g2.translation};
}

[[nodiscard]] inline SpatialMotion inverse_pcg(const SpatialMotion& g) {
  return {g.rotation.inverse(), -g.translation};
}

// ---------------------------------------------------------------------------
// SE(2)
// ---------------------------------------------------------------------------

/// Wrap an angle into (-pi, pi].
[[nodiscard]] inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

[[nodiscard]] inline Mat2 rot2(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

/// Planar motion; theta is kept in (-pi, pi].
struct PlanarMotion {
  double theta = 0.0;
  Vec2 t = Vec2::Zero();

  PlanarMotion() = default;
  PlanarMotion(double angle, const Vec2& translation)
      : theta(wrap_angle(angle)), t(translation) {}

  [[nodiscard]] static PlanarMotion identity() { return {}; }
};

[[nodiscard]] inline PlanarMotion compose_se2(const PlanarMotion& p1,
                                              const PlanarMotion& p2) {
  return {p1.theta + p2.theta, rot2(p1.theta) * p2.t + p1.t};
}

[[nodiscard]] inline PlanarMotion inverse_se2(const PlanarMotion& p) {
  return {-p.theta, -(rot2(-p.theta) * p.t)};
}

/// Euclidean distance on R^2 x S^1 with the angle difference wrapped;
/// w weighs the angle against translation. Left- but not right-invariant.
[[nodiscard]] inline double rho_se2(const PlanarMotion& p1, const PlanarMotion& p2,
                                    double w = 1.0) {
  if (!(w > 0.0)) detail::fail(ErrorKind::Validation, "rho_se2: weight must be > 0");
  const double dtheta = wrap_angle(p1.theta - p2.theta);
  return std::sqrt((p1.t - p2.t).squaredNorm() + w * w * dtheta * dtheta);
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_LIE_HPP

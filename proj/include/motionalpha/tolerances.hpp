#ifndef MOTIONALPHA_TOLERANCES_HPP
#define MOTIONALPHA_TOLERANCES_HPP

// Every numerical threshold used by the library, in one place.

namespace motionalpha::tol {

/// Rotation invariants: |R^T R - I| and |det R - 1|, elementwise.
inline constexpr double kOrthonormal = 1e-12;
/// vee() accepts X only if |X + X^T| stays below this, elementwise.
inline constexpr double kSkew = 1e-12;
/// log_so3 refuses angles within this distance of pi.
inline constexpr double kBoundaryAngle = 1e-9;
/// Below this angle exp/log switch to Taylor expansions.
inline constexpr double kTaylor = 1e-6;
/// Two traces closer than this count as a tie in distance comparisons.
inline constexpr double kTrace = 1e-12;
/// Half-space tests for wedge membership.
inline constexpr double kPlane = 1e-9;
/// Slack on the wedge half-space tests when locating a point.
inline constexpr double kWedgeLocate = 1e-12;
/// Frobenius distance below which two group elements are merged.
inline constexpr double kGroupDedup = 1e-9;
/// Frobenius distance below which two elements are "the same" when
/// intersecting groups or checking distinctness.
inline constexpr double kDistinct = 1e-6;

}  // namespace motionalpha::tol

#endif  // MOTIONALPHA_TOLERANCES_HPP

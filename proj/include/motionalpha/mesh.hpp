#ifndef MOTIONALPHA_MESH_HPP
#define MOTIONALPHA_MESH_HPP

// Triangle meshes of sampled fundamental-domain boundaries, written as OBJ.
// Rotation domains are drawn in exponential coordinates; they are star-shaped
// around the identity, so the boundary is found by bisection along rays.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "motionalpha/crystal.hpp"
#include "motionalpha/domain.hpp"
#include "motionalpha/error.hpp"
#include "motionalpha/lie.hpp"

namespace motionalpha {

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::size_t, 3>> faces;

  std::size_t add(const Vec3& v) {
    vertices.push_back(v);
    return vertices.size() - 1;
  }
};

inline void write_obj(std::ostream& out, const Mesh& mesh, const std::string& name = "domain") {
  out.precision(12);
  out << "o " << name << '\n';
  for (const auto& v : mesh.vertices) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  if (!out) detail::fail(ErrorKind::Io, "write error");
}

using AlgebraPredicate = std::function<bool(const AxisAngle&)>;

/// Largest r in [0, pi] with inside(r u), by bisection to `tolerance`.
[[nodiscard]] inline double radial_boundary(const AlgebraPredicate& inside, const Vec3& u,
                                            double tolerance = 1e-7) {
  const Vec3 dir = u.normalized();
  if (inside(kPi * dir)) return kPi;
  double lo = 0.0;
  double hi = kPi;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid * dir) ? lo : hi) = mid;
  }
  return lo;
}

/// Boundary of a star-shaped region sampled on a latitude/longitude grid.
[[nodiscard]] inline Mesh star_mesh(const AlgebraPredicate& inside, int resolution = 24) {
  if (resolution < 3) detail::fail(ErrorKind::Validation, "mesh resolution must be >= 3");
  const int nlat = resolution;
  const int nlon = 2 * resolution;
  Mesh mesh;
  auto point = [&](const Vec3& u) -> Vec3 { return radial_boundary(inside, u) * u.normalized(); };
  const std::size_t north = mesh.add(point(Vec3::UnitZ()));
  std::vector<std::vector<std::size_t>> rings;
  for (int a = 1; a < nlat; ++a) {
    const double polar = kPi * a / nlat;
    std::vector<std::size_t> ring;
    for (int b = 0; b < nlon; ++b) {
      const double az = 2.0 * kPi * b / nlon;
      ring.push_back(mesh.add(point(
          Vec3(std::sin(polar) * std::cos(az), std::sin(polar) * std::sin(az), std::cos(polar)))));
    }
    rings.push_back(std::move(ring));
  }
  const std::size_t south = mesh.add(point(-Vec3::UnitZ()));
  for (int b = 0; b < nlon; ++b) {
    const int c = (b + 1) % nlon;
    mesh.faces.push_back({north, rings.front()[b], rings.front()[c]});
    mesh.faces.push_back({south, rings.back()[c], rings.back()[b]});
  }
  for (std::size_t a = 0; a + 1 < rings.size(); ++a) {
    for (int b = 0; b < nlon; ++b) {
      const int c = (b + 1) % nlon;
      mesh.faces.push_back({rings[a][b], rings[a + 1][b], rings[a + 1][c]});
      mesh.faces.push_back({rings[a][b], rings[a + 1][c], rings[a][c]});
    }
  }
  return mesh;
}

/// Coset cell of H around the identity.
[[nodiscard]] inline Mesh coset_cell_mesh(const CosetDomain& d, int resolution = 24) {
  return star_mesh(
      [&](const AxisAngle& x) { return d.membership(exp_so3(x)) != Membership::Outside; },
      resolution);
}

/// Double-coset cell of (H, K) around the identity.
[[nodiscard]] inline Mesh double_coset_cell_mesh(const DoubleCosetDomain& d, int resolution = 24) {
  return star_mesh(
      [&](const AxisAngle& x) { return d.membership(exp_so3(x)) != Membership::Outside; },
      resolution);
}

/// The base wedge: its outer face (part of the cell boundary) sampled on a
/// subdivided triangle of rays, closed by three flat faces through the origin.
[[nodiscard]] inline Mesh wedge_mesh(const WedgeDomain& w, int resolution = 16) {
  if (resolution < 1) detail::fail(ErrorKind::Validation, "mesh resolution must be >= 1");
  const auto rays = w.base_rays();
  const AlgebraPredicate inside = [&](const AxisAngle& x) {
    return w.cell().membership(exp_so3(x)) != Membership::Outside;
  };
  Mesh mesh;
  const std::size_t origin = mesh.add(Vec3::Zero());
  const int n = resolution;
  // index[a][b] for barycentric (a, b, n - a - b) over (face, vertex_a, vertex_b)
  std::vector<std::vector<std::size_t>> index(n + 1);
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; a + b <= n; ++b) {
      const Vec3 u = (a * rays[0] + b * rays[1] + (n - a - b) * rays[2]).normalized();
      index[a].push_back(mesh.add(radial_boundary(inside, u) * u));
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; a + b < n; ++b) {
      mesh.faces.push_back({index[a][b], index[a + 1][b], index[a][b + 1]});
      if (a + b + 1 < n) {
        mesh.faces.push_back({index[a + 1][b], index[a + 1][b + 1], index[a][b + 1]});
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    mesh.faces.push_back({origin, index[0][k + 1], index[0][k]});          // a = 0 edge
    mesh.faces.push_back({origin, index[k][0], index[k + 1][0]});          // b = 0 edge
    mesh.faces.push_back({origin, index[k + 1][n - k - 1], index[k][n - k]});  // a + b = n edge
  }
  // Wind every triangle counter-clockwise seen from outside.
  const Vec3 axis = (rays[0] + rays[1] + rays[2]).normalized();
  const Vec3 interior = 0.5 * radial_boundary(inside, axis) * axis;
  for (auto& f : mesh.faces) {
    const Vec3& p = mesh.vertices[f[0]];
    const Vec3& q = mesh.vertices[f[1]];
    const Vec3& r = mesh.vertices[f[2]];
    const Vec3 centroid = (p + q + r) / 3.0;
    if ((q - p).cross(r - p).dot(centroid - interior) < 0.0) std::swap(f[1], f[2]);
  }
  return mesh;
}

/// SE(2) cell as a prism over the translational polygon; z is the angle.
[[nodiscard]] inline Mesh se2_cell_mesh(const Se2Domain& d) {
  Mesh mesh;
  const std::size_t n = d.polygon.size();
  for (const auto& p : d.polygon) mesh.add(Vec3(p.x(), p.y(), d.theta_min));
  for (const auto& p : d.polygon) mesh.add(Vec3(p.x(), p.y(), d.theta_max));
  for (std::size_t k = 1; k + 1 < n; ++k) {
    mesh.faces.push_back({0, k + 1, k});
    mesh.faces.push_back({n, n + k, n + k + 1});
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t c = (k + 1) % n;
    mesh.faces.push_back({k, c, n + c});
    mesh.faces.push_back({k, n + c, n + k});
  }
  return mesh;
}

}  // namespace motionalpha

#endif  // MOTIONALPHA_MESH_HPP

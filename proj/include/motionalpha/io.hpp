#ifndef MOTIONALPHA_IO_HPP
#define MOTIONALPHA_IO_HPP

// JSON serialization of groups, cover sets, wedge planes and SE(2) domains,
// and JSON-lines readers/writers for trajectories, sentences and batch decode.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "motionalpha/crystal.hpp"
#include "motionalpha/decoder.hpp"
#include "motionalpha/domain.hpp"
#include "motionalpha/error.hpp"
#include "motionalpha/finite_group.hpp"
#include "motionalpha/trajectory.hpp"

namespace motionalpha::io {

using Json = nlohmann::json;

/// Value rounded to `digits` significant decimal digits.
[[nodiscard]] inline double round_significant(double v, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

[[nodiscard]] inline Json to_json(const Vec3& v, int digits = 17) {
  return Json::array({round_significant(v.x(), digits), round_significant(v.y(), digits),
                      round_significant(v.z(), digits)});
}

[[nodiscard]] inline Json to_json(const Vec2& v) { return Json::array({v.x(), v.y()}); }

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    motionalpha::detail::fail(ErrorKind::Validation, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) {
    motionalpha::detail::fail(ErrorKind::Validation, std::string(what) + " must be a number");
  }
  return j.get<double>();
}

template <int N>
Eigen::Matrix<double, N, 1> vector(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != N) {
    motionalpha::detail::fail(ErrorKind::Validation,
                              std::string(what) + " must be an array of " + std::to_string(N));
  }
  Eigen::Matrix<double, N, 1> v;
  for (int k = 0; k < N; ++k) v[k] = number(j[static_cast<std::size_t>(k)], what);
  return v;
}

}  // namespace detail

[[nodiscard]] inline Vec3 vec3_from_json(const Json& j, const char* what = "vector") {
  return detail::vector<3>(j, what);
}

/// Row-major 9 numbers.
[[nodiscard]] inline Json matrix_to_json(const Mat3& m) {
  Json a = Json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a.push_back(m(r, c));
  }
  return a;
}

[[nodiscard]] inline Mat3 matrix_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 9) {
    motionalpha::detail::fail(ErrorKind::Validation, "matrix must be an array of 9 numbers");
  }
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m(r, c) = detail::number(j[static_cast<std::size_t>(3 * r + c)], "matrix entry");
  }
  return m;
}

// --- groups -----------------------------------------------------------------

[[nodiscard]] inline Json to_json(const FiniteRotationGroup& g) {
  Json elements = Json::array();
  for (const auto& e : g.elements()) elements.push_back(matrix_to_json(e.matrix()));
  return {{"name", g.name()}, {"order", g.size()}, {"elements", elements}};
}

/// Re-validates the group axioms on load.
[[nodiscard]] inline FiniteRotationGroup group_from_json(const Json& j) {
  const Json& elements = detail::field(j, "elements");
  if (!elements.is_array()) motionalpha::detail::fail(ErrorKind::Validation, "elements must be an array");
  std::vector<Rotation> rs;
  for (const auto& e : elements) rs.push_back(Rotation::from_matrix(matrix_from_json(e), 1e-9));
  return FiniteRotationGroup(detail::field(j, "name").get<std::string>(), std::move(rs));
}

// --- cover sets ---------------------------------------------------------------

[[nodiscard]] inline Json to_json(const CoverSet& c, const std::string& h_name,
                                  const std::string& k_name) {
  Json pairs = Json::array();
  for (auto [i, j] : c.pairs) pairs.push_back(Json::array({i, j}));
  return {{"H", h_name},
          {"K", k_name},
          {"g", to_json(c.conjugation, 15)},
          {"size", c.size()},
          {"probe_samples", c.probe_samples},
          {"probe_extent", c.probe_extent},
          {"pairs", pairs}};
}

[[nodiscard]] inline CoverSet cover_from_json(const Json& j) {
  CoverSet c;
  c.conjugation = vec3_from_json(detail::field(j, "g"), "g");
  c.probe_samples = detail::field(j, "probe_samples").get<std::size_t>();
  c.probe_extent = detail::number(detail::field(j, "probe_extent"), "probe_extent");
  for (const auto& p : detail::field(j, "pairs")) {
    if (!p.is_array() || p.size() != 2) {
      motionalpha::detail::fail(ErrorKind::Validation, "cover pair must be [i, j]");
    }
    c.pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
  }
  return c;
}

// --- wedge ------------------------------------------------------------------

[[nodiscard]] inline Json to_json(const WedgeDomain& w) {
  const auto rays = w.base_rays();
  Json planes = Json::array();
  for (std::size_t j = 0; j < w.group().size(); ++j) {
    Json p = Json::array();
    for (const auto& n : w.planes(j)) p.push_back(to_json(n, 15));
    planes.push_back(p);
  }
  Json base = Json::array();
  for (const auto& n : w.base_planes()) base.push_back(to_json(n, 15));
  return {{"group", w.group().name()},
          {"face_center", to_json(rays[0], 15)},
          {"vertex_a", to_json(rays[1], 15)},
          {"vertex_b", to_json(rays[2], 15)},
          {"base_planes", base},
          {"planes", planes}};
}

// --- SE(2) domains ------------------------------------------------------------

[[nodiscard]] inline Json to_json(const Se2Domain& d) {
  Json poly = Json::array();
  for (const auto& p : d.polygon) poly.push_back(to_json(p));
  return {{"group", d.group},
          {"theta_min", d.theta_min},
          {"theta_max", d.theta_max},
          {"theta_extent", d.theta_extent()},
          {"polygon", poly}};
}

// --- JSON lines ---------------------------------------------------------------

/// Parses one JSON value per non-blank line. Malformed lines are validation
/// errors carrying the line number.
[[nodiscard]] inline std::vector<Json> read_json_lines(std::istream& in) {
  std::vector<Json> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      motionalpha::detail::fail(ErrorKind::Validation,
                                "line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (in.bad()) motionalpha::detail::fail(ErrorKind::Io, "read error");
  return out;
}

[[nodiscard]] inline std::vector<Json> read_json_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) motionalpha::detail::fail(ErrorKind::Io, "cannot open '" + path + "'");
  return read_json_lines(in);
}

[[nodiscard]] inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) motionalpha::detail::fail(ErrorKind::Io, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    motionalpha::detail::fail(ErrorKind::Validation, path + ": " + e.what());
  }
}

inline void write_json_lines(std::ostream& out, const std::vector<Json>& lines) {
  for (const auto& j : lines) out << j.dump() << '\n';
  if (!out) motionalpha::detail::fail(ErrorKind::Io, "write error");
}

/// {"tau", "theta", "t": [x, y]}
[[nodiscard]] inline PlanarSample planar_sample_from_json(const Json& j) {
  return {detail::number(detail::field(j, "tau"), "tau"),
          PlanarMotion(detail::number(detail::field(j, "theta"), "theta"),
                       detail::vector<2>(detail::field(j, "t"), "t"))};
}

[[nodiscard]] inline Json to_json(const PlanarSample& s) {
  return {{"tau", s.tau}, {"theta", s.pose.theta}, {"t", to_json(s.pose.t)}};
}

/// Rotation from "axis_angle" or a row-major "matrix".
[[nodiscard]] inline Rotation rotation_from_json(const Json& j) {
  if (j.is_object() && j.contains("matrix")) {
    return Rotation::from_matrix(matrix_from_json(j.at("matrix")), 1e-9);
  }
  const Vec3 x = vec3_from_json(detail::field(j, "axis_angle"), "axis_angle");
  if (!x.allFinite()) motionalpha::detail::fail(ErrorKind::Validation, "axis_angle is not finite");
  return exp_so3(x);
}

/// {"tau", "axis_angle": [x, y, z], "t": [x, y, z]}
[[nodiscard]] inline SpatialSample spatial_sample_from_json(const Json& j) {
  return {detail::number(detail::field(j, "tau"), "tau"),
          SpatialMotion{rotation_from_json(j), vec3_from_json(detail::field(j, "t"), "t")}};
}

[[nodiscard]] inline Json to_json(const SpatialSample& s) {
  return {{"tau", s.tau},
          {"axis_angle", to_json(log_so3(s.pose.rotation, 0.0))},
          {"t", to_json(s.pose.translation)}};
}

/// True when a trajectory line carries an SE(3) pose.
[[nodiscard]] inline bool is_spatial(const Json& j) {
  return j.is_object() && (j.contains("axis_angle") || j.contains("matrix"));
}

/// {"tau", "gamma": "g(...)", "delta": "d(j)"}
[[nodiscard]] inline Json to_json(const Symbol& s) {
  return {{"tau", s.tau}, {"gamma", s.gamma_letter()}, {"delta", s.delta_letter()}};
}

[[nodiscard]] inline Symbol symbol_from_json(const Json& j) {
  const Json& g = detail::field(j, "gamma");
  const Json& d = detail::field(j, "delta");
  if (!g.is_string() || !d.is_string()) {
    motionalpha::detail::fail(ErrorKind::Validation, "letters must be strings");
  }
  return {detail::number(detail::field(j, "tau"), "tau"), parse_gamma_letter(g.get<std::string>()),
          parse_delta_letter(d.get<std::string>())};
}

[[nodiscard]] inline Json to_json(const RotDecode& d) {
  Json j{{"i", d.word.i},
         {"j", d.word.j},
         {"residual_axis_angle", to_json(log_so3(d.word.residual, 0.0))},
         {"distance_evaluations", d.stats.distance_evaluations},
         {"sign_tests", d.stats.sign_tests}};
  if (d.tie) {
    j["tie"] = Json::array({Json::array({d.tie->first.first, d.tie->first.second}),
                            Json::array({d.tie->second.first, d.tie->second.second})});
  }
  return j;
}

}  // namespace motionalpha::io

#endif  // MOTIONALPHA_IO_HPP

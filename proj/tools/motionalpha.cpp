// motionalpha: command-line front end.
//
//   motionalpha groups  [--H name] [--g x,y,z] [--format json]
//   motionalpha cover   --H icosa --K icosa-conj --g x,y,z [--probes N] [--seed S] [--output f]
//   motionalpha encode  --alphabet p4xC5 (--builtin paper-se2 --k -2..2 | --input f) [--output f]
//   motionalpha decode  --method brute|cover|wedge --input f [--output f] [--threads N]
//   motionalpha decode  --alphabet p4xC5 --input sentence.jsonl [--output f]
//   motionalpha export  --what coset|double-coset|wedge|se2 [--format obj|json] --output f
//   motionalpha bench   [--n 1000] [--seed 1] [--methods brute,cover,wedge] [--threads N]
//
// Exit codes: 0 success, 2 validation, 3 cover gap or decoder disagreement, 4 I/O.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "motionalpha/alphabet.hpp"
#include "motionalpha/bench.hpp"
#include "motionalpha/io.hpp"
#include "motionalpha/mesh.hpp"
#include "motionalpha/parallel.hpp"
#include "motionalpha/trajectory.hpp"

using namespace motionalpha;
using io::Json;

namespace {

[[noreturn]] void invalid(const std::string& what) { detail::fail(ErrorKind::Validation, what); }

Vec3 conjugation_vector(const std::vector<double>& g) {
  if (g.empty()) return default_conjugation();
  if (g.size() != 3) invalid("--g needs three components");
  return {g[0], g[1], g[2]};
}

/// tetra, octa, icosa, icosa-conj (icosa conjugated by exp(g)), or C<n>.
FiniteRotationGroup resolve_group(const std::string& name, const Vec3& g) {
  if (name == "tetra" || name == "tetrahedral") return generate_platonic(PlatonicKind::Tetrahedral);
  if (name == "octa" || name == "octahedral") return generate_platonic(PlatonicKind::Octahedral);
  if (name == "icosa" || name == "icosahedral") return generate_platonic(PlatonicKind::Icosahedral);
  if (name == "icosa-conj") {
    return conjugate_group(generate_platonic(PlatonicKind::Icosahedral), exp_so3(g));
  }
  if (name.size() > 1 && name[0] == 'C') {
    int n = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
    if (ec == std::errc{} && ptr == name.data() + name.size()) return generate_cyclic(n);
  }
  invalid("unknown group '" + name + "' (tetra, octa, icosa, icosa-conj, C<n>)");
}

/// "p4xC5" -> ("p4", 5); "P432xI" -> ("P432", 0).
std::pair<std::string, int> split_alphabet(const std::string& id) {
  if (id == "P432xI") return {"P432", 0};
  const auto x = id.find("xC");
  if (x == std::string::npos) invalid("unknown alphabet '" + id + "' (e.g. p4xC5, P432xI)");
  int q = 0;
  const char* begin = id.data() + x + 2;
  const char* end = id.data() + id.size();
  const auto [ptr, ec] = std::from_chars(begin, end, q);
  if (ec != std::errc{} || ptr != end) invalid("unknown alphabet '" + id + "'");
  if (q < 1) invalid("alphabet '" + id + "': C<q> needs q >= 1");
  return {id.substr(0, x), q};
}

/// "-2..2" -> (-2, 2)
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) invalid("--k expects a range like -2..2");
  auto number = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) invalid("--k: bad range '" + text + "'");
    return v;
  };
  const std::string_view all(text);
  const int lo = number(all.substr(0, dots));
  const int hi = number(all.substr(dots + 2));
  if (lo > hi) invalid("--k: empty range '" + text + "'");
  return {lo, hi};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) detail::fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) detail::fail(ErrorKind::Io, "write error");
  }

 private:
  std::ofstream file_;
};

/// Reads JSON lines; per-line conversion errors are reported with the line number.
template <typename T, typename F>
std::vector<T> convert_lines(const std::vector<Json>& lines, F&& convert) {
  std::vector<T> out;
  out.reserve(lines.size());
  for (std::size_t k = 0; k < lines.size(); ++k) {
    try {
      out.push_back(convert(lines[k]));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(k + 1) + ": " + e.what());
    } catch (const Json::exception& e) {
      invalid("line " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  return out;
}

// --- options shared by several verbs -------------------------------------------

struct Options {
  std::string h = "icosa";
  std::string k = "icosa-conj";
  std::vector<double> g;
  std::string alphabet;
  std::string builtin;
  std::string k_range = "-2..2";
  std::string input;
  std::string output;
  std::string format;
  std::string method = "cover";
  std::string what = "coset";
  std::string wallpaper_name = "p4";
  std::vector<std::string> methods{"brute", "cover", "wedge"};
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t probes = 100000;
  int resolution = 24;
  double scale = 1.0;
  double weight = 1.0;
};

std::shared_ptr<const CoverDecoder> make_cover_decoder(const Options& o) {
  const Vec3 g = conjugation_vector(o.g);
  auto domain = std::make_shared<const DoubleCosetDomain>(resolve_group(o.h, g),
                                                          resolve_group(o.k, g));
  std::mt19937_64 rng(o.seed);
  return std::make_shared<const CoverDecoder>(domain, build_cover(*domain, o.probes, rng, g));
}

// --- verbs ----------------------------------------------------------------

void cmd_groups(const Options& o) {
  Output out(o.output);
  const Vec3 g = conjugation_vector(o.g);
  std::vector<std::string> names{"tetra", "octa", "icosa", "icosa-conj"};
  if (!o.h.empty()) names = {o.h};
  for (const auto& name : names) {
    const auto group = resolve_group(name, g);
    if (o.format == "json") {
      Json j = io::to_json(group);
      j["name"] = name;
      out.stream() << j.dump() << '\n';
    } else {
      std::map<long, int> census;
      for (const auto& e : group.elements()) {
        ++census[std::lround(rotation_angle(e.matrix()) * 180.0 / kPi)];
      }
      out.stream() << name << ": order " << group.size() << ", angles";
      for (auto [deg, count] : census) out.stream() << ' ' << deg << "deg x" << count;
      out.stream() << '\n';
    }
  }
  out.finish();
}

void cmd_cover(const Options& o) {
  const Vec3 g = conjugation_vector(o.g);
  const auto h = resolve_group(o.h, g);
  const auto k = resolve_group(o.k, g);
  const DoubleCosetDomain d(h, k);
  std::mt19937_64 rng(o.seed);
  const CoverSet cover = build_cover(d, o.probes, rng, g);
  std::cout << cover.size() << '\n';
  if (!o.output.empty()) {
    Output out(o.output);
    out.stream() << io::to_json(cover, o.h, o.k).dump() << '\n';
    out.finish();
  }
}

void cmd_encode(const Options& o) {
  if (o.alphabet.empty()) invalid("encode: --alphabet is required");
  if (o.builtin.empty() == o.input.empty()) invalid("encode: give exactly one of --builtin, --input");
  const auto [gamma_name, q] = split_alphabet(o.alphabet);
  Sentence sentence;
  if (q > 0) {
    Se2Alphabet a = make_se2_alphabet(gamma_name, q, o.scale, o.weight);
    std::vector<PlanarSample> samples;
    if (!o.builtin.empty()) {
      const auto [lo, hi] = parse_range(o.k_range);
      const auto times = fifth_turn_times(lo, hi);
      samples = sample_parametric(o.builtin, times);
    } else {
      samples = convert_lines<PlanarSample>(io::read_json_lines(o.input), [](const Json& j) {
        if (io::is_spatial(j)) invalid("SE(3) sample given to an SE(2) alphabet");
        return io::planar_sample_from_json(j);
      });
    }
    sentence = encode(std::span<const PlanarSample>(samples), a);
  } else {
    if (!o.builtin.empty()) invalid("encode: built-in trajectories are planar");
    const Se3Alphabet a = make_se3_alphabet(o.scale, conjugation_vector(o.g), o.probes, o.seed);
    const auto samples =
        convert_lines<SpatialSample>(io::read_json_lines(o.input), [](const Json& j) {
          if (!io::is_spatial(j)) invalid("SE(2) sample given to an SE(3) alphabet");
          return io::spatial_sample_from_json(j);
        });
    sentence = encode(std::span<const SpatialSample>(samples), a);
  }
  if (o.output.empty() && o.format != "json") {
    std::cout << to_string(sentence) << '\n';
    return;
  }
  Output out(o.output);
  for (const auto& y : sentence.symbols) out.stream() << io::to_json(y).dump() << '\n';
  out.finish();
}

void decode_sentence_file(const Options& o) {
  const auto [gamma_name, q] = split_alphabet(o.alphabet);
  Sentence s{o.alphabet, convert_lines<Symbol>(io::read_json_lines(o.input), io::symbol_from_json)};
  Output out(o.output);
  if (q > 0) {
    for (const auto& c : decode_sentence(s, make_se2_alphabet(gamma_name, q, o.scale, o.weight))) {
      out.stream() << io::to_json(c).dump() << '\n';
    }
  } else {
    const Se3Alphabet a = make_se3_alphabet(o.scale, conjugation_vector(o.g), o.probes, o.seed);
    for (const auto& c : decode_sentence(s, a)) out.stream() << io::to_json(c).dump() << '\n';
  }
  out.finish();
}

void cmd_decode(const Options& o) {
  if (o.input.empty()) invalid("decode: --input is required");
  if (!o.alphabet.empty()) return decode_sentence_file(o);

  const auto rotations = convert_lines<Rotation>(io::read_json_lines(o.input), io::rotation_from_json);
  std::function<RotDecode(const Rotation&)> decode;
  std::shared_ptr<const void> keep;
  const Vec3 g = conjugation_vector(o.g);
  if (o.method == "wedge") {
    auto w = std::make_shared<const WedgeDecoder>(
        std::make_shared<const WedgeDomain>(resolve_group(o.h, g)));
    decode = [w](const Rotation& r) { return w->decode(r); };
  } else if (o.method == "cover") {
    auto c = make_cover_decoder(o);
    decode = [c](const Rotation& r) { return c->decode(r); };
  } else if (o.method == "brute") {
    auto d = std::make_shared<const DoubleCosetDomain>(resolve_group(o.h, g), resolve_group(o.k, g));
    decode = [d](const Rotation& r) { return decode_bruteforce(*d, r); };
  } else {
    invalid("unknown method '" + o.method + "' (brute, cover, wedge)");
  }
  std::vector<RotDecode> results(rotations.size());
  parallel_for(rotations.size(), o.threads, [&](std::size_t k) {
    try {
      results[k] = decode(rotations[k]);
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(k + 1) + ": " + e.what());
    }
  });
  Output out(o.output);
  for (const auto& r : results) out.stream() << io::to_json(r).dump() << '\n';
  out.finish();
}

Json mesh_to_json(const Mesh& m) {
  Json vertices = Json::array();
  for (const auto& v : m.vertices) vertices.push_back(io::to_json(v));
  Json faces = Json::array();
  for (const auto& f : m.faces) faces.push_back({f[0], f[1], f[2]});
  return {{"vertices", vertices}, {"faces", faces}};
}

void cmd_export(const Options& o) {
  if (o.output.empty()) invalid("export: --output is required");
  const std::string format = o.format.empty() ? "obj" : o.format;
  if (format != "obj" && format != "json") invalid("--format must be obj or json");
  const Vec3 g = conjugation_vector(o.g);
  Output out(o.output);
  if (o.what == "se2") {
    const Se2Domain d = voronoi_domain_se2(wallpaper(o.wallpaper_name, o.scale));
    if (format == "json") out.stream() << io::to_json(d).dump() << '\n';
    else write_obj(out.stream(), se2_cell_mesh(d), o.wallpaper_name);
  } else if (o.what == "wedge") {
    const WedgeDomain w(resolve_group(o.h, g));
    if (format == "json") out.stream() << io::to_json(w).dump() << '\n';
    else write_obj(out.stream(), wedge_mesh(w, o.resolution), "wedge");
  } else if (o.what == "coset") {
    const CosetDomain d(resolve_group(o.h, g));
    const Mesh m = coset_cell_mesh(d, o.resolution);
    if (format == "json") {
      out.stream() << Json{{"kind", "coset"}, {"H", io::to_json(d.group())}, {"mesh", mesh_to_json(m)}}.dump()
                   << '\n';
    } else {
      write_obj(out.stream(), m, o.h);
    }
  } else if (o.what == "double-coset") {
    const DoubleCosetDomain d(resolve_group(o.h, g), resolve_group(o.k, g));
    const Mesh m = double_coset_cell_mesh(d, o.resolution);
    if (format == "json") {
      out.stream() << Json{{"kind", "double-coset"},
                           {"H", io::to_json(d.h())},
                           {"K", io::to_json(d.k())},
                           {"mesh", mesh_to_json(m)}}
                          .dump()
                   << '\n';
    } else {
      write_obj(out.stream(), m, o.h + "_" + o.k);
    }
  } else {
    invalid("unknown --what '" + o.what + "' (coset, double-coset, wedge, se2)");
  }
  out.finish();
}

void cmd_bench(const Options& o) {
  BenchConfig cfg;
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.methods = {o.methods.begin(), o.methods.end()};
  const Vec3 g = conjugation_vector(o.g);
  const BenchReport report = run_bench(make_rotation_decoders(g, o.probes, o.seed), cfg);
  Output out(o.output);
  out.stream() << report.to_json().dump(2) << '\n';
  out.finish();
  for (const auto& m : report.methods) {
    std::fprintf(stderr, "%-6s total %.4f s  per call %.3g +- %.2g s  evals %.1f  speedup %.2fx (evals %.2fx)\n",
                 m.label.c_str(), m.total_seconds, m.mean_call_seconds, m.std_call_seconds,
                 m.mean_distance_evaluations, m.wall_speedup, m.eval_speedup);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motion alphabets: fundamental domains, decoders and trajectory sentences"};
  app.require_subcommand(1);
  Options o;

  auto add_groups = [&](CLI::App* c) {
    c->add_option("--H", o.h, "first group (tetra, octa, icosa, icosa-conj, C<n>)");
    c->add_option("--K", o.k, "second group");
    c->add_option("--g", o.g, "conjugation axis-angle x,y,z")->delimiter(',')->expected(3);
  };
  auto add_io = [&](CLI::App* c) {
    c->add_option("--input", o.input, "JSON lines input");
    c->add_option("--output", o.output, "output file (default stdout)");
  };

  auto* groups = app.add_subcommand("groups", "list the finite rotation groups");
  groups->add_option("--H", o.h, "one group only");
  groups->add_option("--g", o.g, "conjugation for icosa-conj")->delimiter(',')->expected(3);
  groups->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  groups->add_option("--output", o.output, "output file");

  auto* cover = app.add_subcommand("cover", "build the cover set for H and K");
  add_groups(cover);
  cover->add_option("--probes", o.probes, "probe samples")->check(CLI::PositiveNumber);
  cover->add_option("--seed", o.seed, "probe seed");
  cover->add_option("--output", o.output, "write the cover as JSON");

  auto* enc = app.add_subcommand("encode", "encode a trajectory as a sentence");
  enc->add_option("--alphabet", o.alphabet, "p<r>xC<q> or P432xI")->required();
  enc->add_option("--builtin", o.builtin, "built-in trajectory (paper-se2, identity)");
  enc->add_option("--k", o.k_range, "sample indices lo..hi for tau = pi (1 + 2k/5)");
  enc->add_option("--g", o.g, "conjugation for P432xI")->delimiter(',')->expected(3);
  enc->add_option("--scale", o.scale, "lattice spacing");
  enc->add_option("--weight", o.weight, "angular weight in the SE(2) metric");
  enc->add_option("--probes", o.probes, "cover probe samples for P432xI");
  enc->add_option("--seed", o.seed, "cover seed for P432xI");
  enc->add_option("--format", o.format, "json for JSON lines on stdout")->check(CLI::IsMember({"text", "json"}));
  add_io(enc);

  auto* dec = app.add_subcommand("decode", "decode rotations to words, or a sentence to poses");
  dec->add_option("--method", o.method, "brute, cover or wedge");
  dec->add_option("--alphabet", o.alphabet, "decode a sentence file over this alphabet");
  add_groups(dec);
  dec->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  dec->add_option("--probes", o.probes, "cover probe samples");
  dec->add_option("--seed", o.seed, "cover seed");
  dec->add_option("--scale", o.scale, "lattice spacing");
  dec->add_option("--weight", o.weight, "angular weight in the SE(2) metric");
  add_io(dec);

  auto* exp = app.add_subcommand("export", "write fundamental-domain meshes or descriptions");
  exp->add_option("--what", o.what, "coset, double-coset, wedge or se2");
  add_groups(exp);
  exp->add_option("--wallpaper", o.wallpaper_name, "p1, p2, p3, p4 or p6");
  exp->add_option("--scale", o.scale, "lattice spacing");
  exp->add_option("--resolution", o.resolution, "mesh resolution");
  exp->add_option("--format", o.format, "obj or json")->check(CLI::IsMember({"obj", "json"}));
  exp->add_option("--output", o.output, "output file")->required();

  auto* bench = app.add_subcommand("bench", "check and time the rotation decoders");
  bench->add_option("--n", o.n, "rotations")->check(CLI::PositiveNumber);
  bench->add_option("--seed", o.seed, "seed for rotations and cover probes");
  bench->add_option("--methods", o.methods, "brute,cover,wedge")->delimiter(',');
  bench->add_option("--threads", o.threads, "threads for the correctness check")->check(CLI::PositiveNumber);
  bench->add_option("--probes", o.probes, "cover probe samples");
  bench->add_option("--g", o.g, "conjugation x,y,z")->delimiter(',')->expected(3);
  bench->add_option("--output", o.output, "report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*groups) {
      if (groups->count("--H") == 0) o.h.clear();
      cmd_groups(o);
    } else if (*cover) {
      cmd_cover(o);
    } else if (*enc) {
      cmd_encode(o);
    } else if (*dec) {
      cmd_decode(o);
    } else if (*exp) {
      cmd_export(o);
    } else if (*bench) {
      cmd_bench(o);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

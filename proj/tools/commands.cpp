#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "optrec/projection.hpp"
#include "verify_suite.hpp"

namespace optrec::cli {

using nlohmann::json;

namespace {

constexpr double kMaxGridPoints = 1e7;

json vec_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

json points_json(const std::vector<Vec>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(vec_json(p));
  return out;
}

json face_json(const FaceIndexSet& face) { return face.indices(); }

double parse_number(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw CliError(kParseError, "cannot parse " + what + " '" + token + "'");
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
  if (used != token.size() || !std::isfinite(v)) {
    throw CliError(kParseError, "cannot parse " + what + " '" + token + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kParseError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Vec json_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw CliError(kParseError, what + " must be an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) throw CliError(kParseError, what + " must be an array of numbers");
    v[static_cast<Eigen::Index>(k)] = j[k].get<double>();
  }
  return v;
}

json admissibility_json(const FacetScanResult& scan, int level) {
  json out{{"level", level}, {"points_checked", scan.points_checked},
              {"violating_points", scan.violating_points}, {"violation_found", scan.violation_found}};
  if (scan.violation_found && scan.report) {
    json violations = json::array();
    for (const auto& v : scan.report->violations) {
      violations.push_back({{"index", v.index}, {"q_point", vec_json(v.q_point)}});
    }
    out["violation"] = {{"facet", scan.facet},
                        {"point", vec_json(scan.point)},
                        {"region", face_json(scan.report->region)},
                        {"violations", violations}};
  }
  return out;
}

}  // namespace

double eps_from_environment() {
  const char* raw = std::getenv("SIMPLEX_RECOVER_EPS");
  if (raw == nullptr || *raw == '\0') return kDefaultEpsBary;
  const double eps = parse_number(raw, "SIMPLEX_RECOVER_EPS");
  if (!(eps > 0.0 && eps < 1.0)) throw CliError(kParseError, "SIMPLEX_RECOVER_EPS must lie in (0, 1)");
  return eps;
}

Simplex parse_simplex(const std::string& text, double eps_bary) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError(kParseError, std::string("simplex JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw CliError(kParseError, "simplex JSON needs a \"vertices\" array");
  }
  std::vector<Vec> vertices;
  for (const auto& row : doc["vertices"]) {
    vertices.push_back(json_vector(row, "each vertex"));
    if (vertices.back().size() != vertices.front().size()) {
      throw CliError(kParseError, "vertices have different lengths");
    }
  }
  try {
    return Simplex(std::move(vertices), SimplexOptions{eps_bary, kDefaultDegeneracyRatio});
  } catch (const Error& e) {
    throw CliError(e.kind() == ErrorKind::NonFinite ? kParseError : kDegenerate, e.what());
  }
}

Simplex load_simplex(const std::string& path, double eps_bary) { return parse_simplex(read_file(path), eps_bary); }

InformationVector parse_information(const std::string& text, int expected_dim) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError(kParseError, std::string("data JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("values") || !doc.contains("gradients") || !doc["gradients"].is_array()) {
    throw CliError(kParseError, "data JSON needs \"values\" and \"gradients\" arrays");
  }
  const Vec values = json_vector(doc["values"], "values");
  std::vector<Vec> gradients;
  for (const auto& g : doc["gradients"]) gradients.push_back(json_vector(g, "each gradient"));
  const auto n = static_cast<std::size_t>(expected_dim) + 1;
  if (static_cast<std::size_t>(values.size()) != n || gradients.size() != n) {
    throw CliError(kShapeError, "data must hold " + std::to_string(n) + " values and gradients");
  }
  try {
    return make_information(std::vector<double>(values.data(), values.data() + values.size()), std::move(gradients));
  } catch (const Error& e) {
    throw CliError(e.kind() == ErrorKind::ShapeMismatch ? kShapeError : kParseError, e.what());
  }
}

Vec parse_point(const std::string& text, int expected_dim) {
  const auto parts = split(text, ',');
  Vec x(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t k = 0; k < parts.size(); ++k) x[static_cast<Eigen::Index>(k)] = parse_number(parts[k], "coordinate");
  if (x.size() != expected_dim) {
    throw CliError(kShapeError, "point has " + std::to_string(x.size()) + " coordinates, expected " +
                                    std::to_string(expected_dim));
  }
  return x;
}

GridSpec parse_grid(const std::string& text, GridSpec::Mode mode) {
  const auto parts = split(text, ',');
  if (parts.empty() || parts.size() > 2) throw CliError(kShapeError, "grid spec must be N[,margin]");
  GridSpec spec;
  spec.mode = mode;
  std::size_t used = 0;
  try {
    spec.resolution = std::stoi(parts[0], &used);
  } catch (const std::exception&) {
    throw CliError(kShapeError, "grid resolution must be an integer");
  }
  if (used != parts[0].size() || spec.resolution < 2) throw CliError(kShapeError, "grid resolution must be >= 2");
  if (parts.size() == 2) {
    try {
      spec.margin = parse_number(parts[1], "grid margin");
    } catch (const CliError& e) {
      throw CliError(kShapeError, e.what());
    }
    if (spec.margin < 0.0) throw CliError(kShapeError, "grid margin must be >= 0");
  }
  return spec;
}

std::vector<Vec> grid_points(const Simplex& s, const GridSpec& spec) {
  const int d = s.dim();
  if (spec.mode == GridSpec::Mode::SimplexBarycentric) {
    double count = 1.0;
    for (int k = 1; k <= d; ++k) count = count * (spec.resolution + k) / k;
    if (count > kMaxGridPoints) throw CliError(kShapeError, "grid too large");
    return barycentric_lattice(s.vertices(), spec.resolution);
  }
  if (std::pow(static_cast<double>(spec.resolution), d) > kMaxGridPoints) {
    throw CliError(kShapeError, "grid too large");
  }
  Vec lo = s.vertex(0);
  Vec hi = s.vertex(0);
  for (const auto& v : s.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec pad = spec.margin * (hi - lo);
  lo -= pad;
  hi += pad;
  const int n = spec.resolution;
  auto coord = [&](int axis, int k) { return ((n - 1 - k) * lo[axis] + k * hi[axis]) / (n - 1); };

  std::vector<Vec> out;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    Vec x(d);
    for (int a = 0; a < d; ++a) x[a] = coord(a, idx[static_cast<std::size_t>(a)]);
    out.push_back(std::move(x));
    int a = d - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == n) idx[static_cast<std::size_t>(a--)] = 0;
    if (a < 0) break;
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json cmd_analyze(const Simplex& s) {
  const auto centering = well_centered_report(s);
  json faces = json::array();
  for (const auto& fc : centering.per_face) {
    const auto geo = face_geometry(s, fc.face);
    faces.push_back({{"indices", face_json(fc.face)},
                     {"label", fc.face.label()},
                     {"circumcenter", vec_json(geo.center)},
                     {"circumradius", geo.radius},
                     {"contains_circumcenter", fc.contains_circumcenter},
                     {"min_barycentric", fc.min_barycentric}});
  }
  json margins = json::array();
  for (const auto& face : all_faces(s.vertex_count())) {
    if (face.size() < 2) continue;
    for (int j : face.indices()) {
      margins.push_back({{"face", face_json(face)}, {"j", j}, {"margin", lemma_tj_margin(s, face, j)}});
    }
  }
  const int level = facet_scan_level(s.dim());
  const auto scan = scan_facets_for_admissibility(s, level);
  const double c_margin = barycentric(s, s.circumcenter(), Frame::T).min_weight();

  return {{"command", "analyze"},
          {"dimension", s.dim()},
          {"eps_bary", s.eps_bary()},
          {"vertices", points_json(s.vertices())},
          {"circumcenter", vec_json(s.circumcenter())},
          {"circumradius", s.circumradius()},
          {"shrunk_vertices", points_json(s.shrunk_vertices())},
          {"conditioning", s.conditioning()},
          {"faces", faces},
          {"well_centered", centering.overall},
          {"contains_circumcenter", c_margin >= -s.eps_bary()},
          {"circumcenter_min_barycentric", c_margin},
          {"nd_hypotheses", check_nd_hypotheses(s)},
          {"lemma_margins", margins},
          {"admissible_self", !scan.violation_found},
          {"admissibility_scan", admissibility_json(scan, level)}};
}

json cmd_project(const Simplex& s, const Vec& x) {
  const auto proj = project_to_shrunk(s, x);
  return {{"command", "project"},
          {"point", vec_json(x)},
          {"phi", vec_json(proj.phi)},
          {"region", face_json(proj.active_set)},
          {"region_label", proj.active_set.label()},
          {"weights", vec_json(proj.weights.weights)},
          {"certificate_max", proj.certificate_max},
          {"distance", proj.distance}};
}

namespace {

void write_header(std::ostream& out, int d, const char* tail) {
  for (int k = 0; k < d; ++k) out << 'x' << k << ',';
  out << tail << '\n';
}

void write_coords(std::ostream& out, const Vec& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) out << format_double(x[k]) << ',';
}

}  // namespace

void cmd_recover(const Simplex& s, const InformationVector& info, const std::vector<Vec>& points, std::ostream& out) {
  write_header(out, s.dim(), "p_f,E,region");
  for (const auto& x : points) {
    const auto proj = project_to_shrunk(s, x);
    write_coords(out, x);
    out << format_double(evaluate_spline(s, info, x, proj)) << ',' << format_double(error_value(s, x, proj)) << ','
        << proj.active_set.label() << '\n';
  }
}

void cmd_errormap(const Simplex& s, const std::vector<Vec>& points, std::ostream& out) {
  write_header(out, s.dim(), "E,grad_norm,region");
  for (const auto& x : points) {
    const auto e = error_function(s, x);
    write_coords(out, x);
    out << format_double(e.value) << ',' << format_double(e.gradient.norm()) << ',' << e.region.label() << '\n';
  }
}

json cmd_verify(const Simplex& s, std::uint64_t seed, int samples, DomainMode mode) {
  const auto report = run_verification(s, seed, samples, mode);
  json props = json::array();
  for (const auto& p : report.properties) {
    json entry{{"name", p.name},
               {"samples", p.samples},
               {"worst", p.worst},
               {"tolerance", p.tolerance},
               {"pass", p.pass},
               {"skipped", p.skipped}};
    if (!p.note.empty()) entry["note"] = p.note;
    props.push_back(std::move(entry));
  }
  json out{{"command", "verify"},
           {"seed", seed},
           {"samples", samples},
           {"mode", mode == DomainMode::SimplexItself ? "self" : "space"},
           {"eps_bary", s.eps_bary()},
           {"pass", report.pass},
           {"properties", props}};
  if (report.admissibility) out["admissibility"] = admissibility_json(*report.admissibility, facet_scan_level(s.dim()));
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pointwise optimal spline recovery on a simplex from vertex values and gradients"};
  app.require_subcommand(1);

  std::string simplex_file;
  std::string data_file;
  std::vector<std::string> point_args;
  std::string grid_arg;
  std::string mode_arg = "space";
  std::uint64_t seed = 0;
  int samples = 1000;
  std::string out_file;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--simplex", simplex_file, "simplex JSON file {\"vertices\": [[...], ...]}")->required();
    sub->add_option("--out", out_file, "write output to FILE instead of stdout");
    sub->add_option("--mode", mode_arg, "self: work inside T; space: whole space (default)")
        ->check(CLI::IsMember({"self", "space"}));
  };
  auto* analyze = app.add_subcommand("analyze", "geometry, well-centeredness and admissibility report (JSON)");
  common(analyze);
  auto* project = app.add_subcommand("project", "nearest point of the shrunk simplex (JSON)");
  common(project);
  project->add_option("--point", point_args, "point x,y,...")->required();
  auto* recover = app.add_subcommand("recover", "evaluate the recovery spline (CSV)");
  common(recover);
  recover->add_option("--data", data_file, "data JSON {\"values\": [...], \"gradients\": [[...], ...]}")->required();
  recover->add_option("--point", point_args, "point x,y,... (repeatable)");
  recover->add_option("--grid", grid_arg, "N[,margin]");
  auto* errormap = app.add_subcommand("errormap", "error function on a grid (CSV)");
  common(errormap);
  errormap->add_option("--grid", grid_arg, "N[,margin]")->required();
  auto* verify = app.add_subcommand("verify", "run the property suite (JSON); exit 1 on failure");
  common(verify);
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--samples", samples, "samples per property")->check(CLI::Range(1, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    std::ostringstream msg;
    const int code = app.exit(e, help, msg);
    out << help.str();
    err << msg.str();
    return code == 0 ? kOk : kParseError;
  }

  try {
    const double eps = eps_from_environment();
    const Simplex s = load_simplex(simplex_file, eps);
    const auto grid_mode = mode_arg == "self" ? GridSpec::Mode::SimplexBarycentric : GridSpec::Mode::BoundingBox;

    std::ofstream file;
    if (!out_file.empty()) {
      file.open(out_file);
      if (!file) throw CliError(kParseError, "cannot write " + out_file);
    }
    std::ostream& sink = out_file.empty() ? out : file;
    auto emit = [&](const json& j) { sink << j.dump(2) << '\n'; };

    if (analyze->parsed()) {
      emit(cmd_analyze(s));
    } else if (project->parsed()) {
      if (point_args.size() != 1) throw CliError(kParseError, "project takes exactly one --point");
      emit(cmd_project(s, parse_point(point_args.front(), s.dim())));
    } else if (recover->parsed() || errormap->parsed()) {
      std::vector<Vec> points;
      for (const auto& p : point_args) points.push_back(parse_point(p, s.dim()));
      if (!grid_arg.empty()) {
        auto grid = grid_points(s, parse_grid(grid_arg, grid_mode));
        points.insert(points.end(), grid.begin(), grid.end());
      }
      if (recover->parsed()) {
        if (points.empty()) throw CliError(kParseError, "recover needs --point or --grid");
        cmd_recover(s, parse_information(read_file(data_file), s.dim()), points, sink);
      } else {
        cmd_errormap(s, points, sink);
      }
    } else if (verify->parsed()) {
      const auto mode = mode_arg == "self" ? DomainMode::SimplexItself : DomainMode::WholeSpace;
      const auto report = cmd_verify(s, seed, samples, mode);
      emit(report);
      if (!report["pass"].get<bool>()) return kVerifyFailed;
    }
    return kOk;
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::DegenerateSimplex:
        return kDegenerate;
      case ErrorKind::ShapeMismatch:
      case ErrorKind::DimensionMismatch:
        return kShapeError;
      default:
        return kParseError;
    }
  }
}

}  // namespace optrec::cli

// Command-line front end.  Every subcommand reads JSON documents and emits a
// single JSON document on standard output (or --out).  Exit codes:
//   0 success, 2 domain/membership error, 3 parse/config error,
//   4 numeric contradiction.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "univmet/json_io.hpp"
#include "univmet/lempert.hpp"

namespace {

using namespace univmet;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitConfig = 3;
constexpr int kExitContradiction = 4;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw parse_error("bad JSON in '" + path + "': " + e.what());
  }
  return j;
}

C2 parse_c2(const std::string& s) {
  double v[4];
  std::stringstream ss(s);
  for (int k = 0; k < 4; ++k) {
    char comma;
    if (!(ss >> v[k])) throw parse_error("expected RE,IM,RE,IM, got '" + s + "'");
    if (k < 3 && !(ss >> comma)) throw parse_error("expected RE,IM,RE,IM, got '" + s + "'");
  }
  return {cplx(v[0], v[1]), cplx(v[2], v[3])};
}

cplx parse_cplx(const std::string& s) {
  double re, im;
  char comma;
  std::stringstream ss(s);
  if (!(ss >> re >> comma >> im)) throw parse_error("expected RE,IM, got '" + s + "'");
  return {re, im};
}

void emit(const json& doc, const std::string& out_path, bool pretty) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw parse_error("cannot write '" + out_path + "'");
    os = &file;
  }
  if (pretty) *os << doc.dump(2) << "\n";
  else *os << doc.dump() << "\n";
}

struct CommonOpts {
  std::string spec_path, spec2_path, map_path, grid_path, out_path;
  std::string point_str, vector_str, a_str, b_str;
  int degree = 4;
  long budget = 20000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  bool pretty = false;
};

void add_io_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_flag("--pretty", o.pretty, "indent the output document");
  cmd->add_option("--out", o.out_path, "write the output document to PATH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariant distances, indicatrix geometry and rigidity checks "
               "on 2-D domains with finite universal sets"};
  app.require_subcommand(1);
  CommonOpts o;

  auto* dist = app.add_subcommand("dist", "Caratheodory distance between two points");
  dist->add_option("--spec", o.spec_path, "domain spec document")->required();
  dist->add_option("--point", o.point_str, "first point RE,IM,RE,IM")->required();
  dist->add_option("--vector", o.vector_str, "second point RE,IM,RE,IM")->required();
  add_io_flags(dist, o);

  auto* metric = app.add_subcommand("metric", "Caratheodory metric at a point and vector");
  metric->add_option("--spec", o.spec_path)->required();
  metric->add_option("--point", o.point_str, "base point RE,IM,RE,IM")->required();
  metric->add_option("--vector", o.vector_str, "tangent vector RE,IM,RE,IM")->required();
  add_io_flags(metric, o);

  auto* indicatrix = app.add_subcommand("indicatrix", "indicatrix functionals and line configuration");
  indicatrix->add_option("--spec", o.spec_path)->required();
  indicatrix->add_option("--point", o.point_str)->required();
  add_io_flags(indicatrix, o);

  auto* faces = app.add_subcommand("faces", "boundary face through a point of the indicatrix");
  faces->add_option("--spec", o.spec_path)->required();
  faces->add_option("--point", o.point_str, "base point of the indicatrix")->required();
  faces->add_option("--vector", o.vector_str, "tangent vector projected to the boundary")->required();
  add_io_flags(faces, o);

  auto* classify_cmd = app.add_subcommand("classify", "classify an R-linear map document");
  classify_cmd->add_option("--map", o.map_path, "map document {\"A\":..,\"B\":..}")->required();
  classify_cmd->add_option("--spec", o.spec_path, "source domain for the full verdict pipeline");
  classify_cmd->add_option("--spec2", o.spec2_path, "target domain (defaults to --spec)");
  classify_cmd->add_option("--point", o.point_str, "indicatrix base point (defaults to origin)");
  classify_cmd->add_option("--tol", o.tol, "classification tolerance");
  add_io_flags(classify_cmd, o);

  auto* isometry = app.add_subcommand("isometry-check", "per-point classification and global verdict of an expression map");
  isometry->add_option("--map", o.map_path, "expression map document")->required();
  isometry->add_option("--spec", o.spec_path, "source domain")->required();
  isometry->add_option("--spec2", o.spec2_path, "target domain (defaults to --spec)");
  isometry->add_option("--grid", o.grid_path, "grid document")->required();
  isometry->add_option("--tol", o.tol, "Wirtinger classification tolerance");
  add_io_flags(isometry, o);

  auto* gap = app.add_subcommand("lempert-gap", "upper-bound the Lempert function and report the gap to the Caratheodory distance");
  gap->add_option("--spec", o.spec_path)->required();
  gap->add_option("--point", o.point_str)->required();
  gap->add_option("--vector", o.vector_str, "second point RE,IM,RE,IM")->required();
  gap->add_option("--degree", o.degree, "maximal disc degree");
  gap->add_option("--budget", o.budget, "penalty evaluation budget");
  gap->add_option("--seed", o.seed, "multi-start seed");
  add_io_flags(gap, o);

  auto* circle = app.add_subcommand("circle-image", "image of the unit circle under A(z) = a z + b conj(z)");
  circle->add_option("--a", o.a_str, "coefficient a as RE,IM")->required();
  circle->add_option("--b", o.b_str, "coefficient b as RE,IM")->required();
  add_io_flags(circle, o);

  CLI11_PARSE(app, argc, argv);

  try {
    json doc;
    if (dist->parsed()) {
      DomainSpec spec = domain_spec_from_json(load_json(o.spec_path));
      C2 z = parse_c2(o.point_str), w = parse_c2(o.vector_str);
      doc["distance"] = caratheodory_distance(spec, z, w);
    } else if (metric->parsed()) {
      DomainSpec spec = domain_spec_from_json(load_json(o.spec_path));
      C2 p = parse_c2(o.point_str), X = parse_c2(o.vector_str);
      doc["metric"] = caratheodory_metric(spec, p, X);
    } else if (indicatrix->parsed()) {
      DomainSpec spec = domain_spec_from_json(load_json(o.spec_path));
      doc = indicatrix_to_json(build_indicatrix(spec, parse_c2(o.point_str)));
    } else if (faces->parsed()) {
      DomainSpec spec = domain_spec_from_json(load_json(o.spec_path));
      IndicatrixModel ind = build_indicatrix(spec, parse_c2(o.point_str));
      C2 q = boundary_point(ind, parse_c2(o.vector_str));
      Face face = face_at(ind, q);
      doc["base"] = c2_to_json(face.base);
      doc["active_index"] = face.active_index;
      doc["kernel_direction"] = c2_to_json(face.kernel_direction);
    } else if (classify_cmd->parsed()) {
      RLinearMap2 t = rlinear_map_from_json(load_json(o.map_path));
      ClassifyResult c = classify(t, o.tol);
      doc["label"] = to_string(c.label);
      doc["a_norm"] = c.a_norm;
      doc["b_norm"] = c.b_norm;
      doc["commutator_ratio"] = c.commutator_ratio;
      if (!o.spec_path.empty()) {
        DomainSpec src = domain_spec_from_json(load_json(o.spec_path));
        DomainSpec dst = o.spec2_path.empty() ? src : domain_spec_from_json(load_json(o.spec2_path));
        C2 p = o.point_str.empty() ? C2{0.0, 0.0} : parse_c2(o.point_str);
        LinearityVerdict v =
            linearity_verdict(t, build_indicatrix(src, p), build_indicatrix(dst, t.apply(p)));
        doc["norm_preserved"] = v.norm_check.ok;
        doc["worst_norm_deviation"] = v.norm_check.worst_relative_deviation;
        doc["lines_mapped"] = v.line_check.ok;
        if (v.line_check.ok) doc["permutation"] = v.line_check.permutation;
        else doc["line_failure"] = v.line_check.reason;
        doc["hypotheses_hold"] = v.hypotheses_hold;
        doc["contradiction"] = v.contradiction;
        if (v.contradiction) {
          emit(doc, o.out_path, o.pretty);
          std::cerr << "contradiction: hypotheses hold but the map is Neither\n";
          return kExitContradiction;
        }
      }
    } else if (isometry->parsed()) {
      DomainSpec src = domain_spec_from_json(load_json(o.spec_path));
      DomainSpec dst = o.spec2_path.empty() ? src : domain_spec_from_json(load_json(o.spec2_path));
      SampledMap map = expression_map_from_json(load_json(o.map_path), src, dst);
      Grid grid = grid_from_json(load_json(o.grid_path));
      MapClassification mc = classify_map(map, grid, 1e-5, o.tol > 0 ? o.tol : 1e-4, 8);
      doc["verdict"] = to_string(mc.verdict);
      doc["worst_isometry_residual"] = mc.worst_isometry_residual;
      json pts = json::array();
      for (const auto& pc : mc.points) {
        json e;
        e["point"] = c2_to_json(pc.p);
        e["label"] = to_string(pc.label);
        e["wirtinger_z_norm"] = pc.wirtinger_z_norm;
        e["wirtinger_zbar_norm"] = pc.wirtinger_zbar_norm;
        e["isometry_residual"] = pc.isometry_residual;
        if (pc.degenerate) e["degenerate"] = true;
        pts.push_back(e);
      }
      doc["points"] = pts;
      json changes = json::array();
      for (auto [a, b] : mc.label_change_edges) changes.push_back(json::array({a, b}));
      doc["label_change_edges"] = changes;
    } else if (gap->parsed()) {
      DomainSpec spec = domain_spec_from_json(load_json(o.spec_path));
      C2 z = parse_c2(o.point_str), w = parse_c2(o.vector_str);
      GapReport rep = lempert_gap(spec, z, w, o.degree, static_cast<int>(o.budget), o.seed);
      doc["c"] = rep.caratheodory;
      doc["degree"] = o.degree;
      doc["budget_used"] = rep.upper.budget_used;
      if (rep.upper.found) {
        doc["l_upper"] = rep.upper.value;
        doc["gap"] = rep.gap;
        doc["t"] = rep.upper.t;
        doc["worst_boundary_slack"] = rep.upper.worst_slack;
        json coeffs = json::array();
        for (const auto& cj : rep.upper.witness.coefficients) coeffs.push_back(c2_to_json(cj));
        doc["witness"] = coeffs;
        if (rep.gap < -1e-9) {
          emit(doc, o.out_path, o.pretty);
          std::cerr << "contradiction: upper bound fell below the Caratheodory distance\n";
          return kExitContradiction;
        }
      } else {
        doc["l_upper"] = "inf";
        doc["diagnostics"] = rep.upper.diagnostics;
      }
    } else if (circle->parsed()) {
      RLinearMap1 m{parse_cplx(o.a_str), parse_cplx(o.b_str)};
      CircleImage ci = circle_image_radii(m);
      doc["min"] = ci.min_radius;
      doc["max"] = ci.max_radius;
      doc["is_circle"] = ci.is_circle();
    }
    emit(doc, o.out_path, o.pretty);
    return kExitOk;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.which() == error::kind::parse ? kExitConfig : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

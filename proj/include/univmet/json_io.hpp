// JSON document formats: domain specs, R-linear maps, expression maps,
// grids, and the export records emitted by the CLI.  Complex numbers are
// always two-element [re, im] arrays.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "univmet/complex2.hpp"
#include "univmet/domain.hpp"
#include "univmet/indicatrix.hpp"
#include "univmet/rigidity.hpp"
#include "univmet/rlinear.hpp"

namespace univmet {

using json = nlohmann::json;

inline cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw parse_error("complex number must be a [re, im] array, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json cplx_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

inline json c2_to_json(const C2& v) {
  return json::array({cplx_to_json(v[0]), cplx_to_json(v[1])});
}

inline C2 c2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw parse_error("point must be a [[re,im],[re,im]] array, got " + j.dump());
  return {cplx_from_json(j[0]), cplx_from_json(j[1])};
}

// {"kind":"bidisc"} | {"kind":"dab","a":[re,im],"b":[re,im]}
// | {"kind":"custom","constants":{name:[re,im]},"members":[...],"membership":[...]}
inline DomainSpec domain_spec_from_json(const json& j) {
  if (!j.contains("kind")) throw parse_error("domain spec needs a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "bidisc") return make_bidisc();
  if (kind == "dab")
    return make_dab(cplx_from_json(j.at("a")), cplx_from_json(j.at("b")));
  if (kind == "custom") {
    ConstantTable tab;
    if (j.contains("constants"))
      for (auto& [name, val] : j.at("constants").items()) tab[name] = cplx_from_json(val);
    std::vector<std::string> members, membership;
    for (const auto& s : j.at("members")) members.push_back(s.get<std::string>());
    for (const auto& s : j.at("membership")) membership.push_back(s.get<std::string>());
    return make_custom(tab, members, membership);
  }
  throw parse_error("unknown domain kind '" + kind + "'");
}

inline json domain_spec_to_json(const DomainSpec& spec) {
  json j;
  switch (spec.kind) {
    case DomainKind::Bidisc: j["kind"] = "bidisc"; break;
    case DomainKind::Dab:
      j["kind"] = "dab";
      j["a"] = cplx_to_json(spec.a);
      j["b"] = cplx_to_json(spec.b);
      break;
    case DomainKind::Custom: {
      j["kind"] = "custom";
      json consts = json::object();
      for (const auto& [name, val] : spec.constants) consts[name] = cplx_to_json(val);
      j["constants"] = consts;
      json members = json::array();
      for (const auto& m : spec.universal_set.members) members.push_back(m.source);
      j["members"] = members;
      break;
    }
  }
  return j;
}

inline Mat2 mat2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw parse_error("matrix must be 2x2");
  Mat2 m{};
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) throw parse_error("matrix must be 2x2");
    for (int c = 0; c < 2; ++c) m[r][c] = cplx_from_json(j[r][c]);
  }
  return m;
}

inline json mat2_to_json(const Mat2& m) {
  json j = json::array();
  for (int r = 0; r < 2; ++r)
    j.push_back(json::array({cplx_to_json(m[r][0]), cplx_to_json(m[r][1])}));
  return j;
}

// {"A":[[..]],"B":[[..]]}
inline RLinearMap2 rlinear_map_from_json(const json& j) {
  RLinearMap2 t;
  if (j.contains("A")) t.A = mat2_from_json(j.at("A"));
  if (j.contains("B")) t.B = mat2_from_json(j.at("B"));
  if (!j.contains("A") && !j.contains("B"))
    throw parse_error("map document needs \"A\" and/or \"B\" blocks");
  return t;
}

// {"components":["expr","expr"],"constants":{...}}
inline SampledMap expression_map_from_json(const json& j, DomainSpec source, DomainSpec target) {
  if (!j.contains("components") || j.at("components").size() != 2)
    throw parse_error("expression map needs a 2-element \"components\" array");
  ConstantTable tab;
  if (j.contains("constants"))
    for (auto& [name, val] : j.at("constants").items()) tab[name] = cplx_from_json(val);
  return expression_map(j.at("components")[0].get<std::string>(),
                        j.at("components")[1].get<std::string>(), tab,
                        std::move(source), std::move(target));
}

// {"points":[[[re,im],[re,im]],...], "edges":[[i,j],...]} or
// {"points":..., "spacing": h} with axis adjacency inferred.
inline Grid grid_from_json(const json& j) {
  Grid g;
  for (const auto& p : j.at("points")) g.points.push_back(c2_from_json(p));
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges"))
      g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  } else if (j.contains("spacing")) {
    g.edges = infer_axis_adjacency(g.points, j.at("spacing").get<double>());
  } else {
    throw parse_error("grid document needs \"edges\" or \"spacing\"");
  }
  return g;
}

inline json indicatrix_to_json(const IndicatrixModel& ind) {
  json j;
  j["base_point"] = c2_to_json(ind.base_point);
  json fs = json::array();
  for (const auto& f : ind.functionals) {
    json e;
    e["l"] = c2_to_json(f.l);
    e["source_index"] = f.source_index;
    fs.push_back(e);
  }
  j["functionals"] = fs;
  json lines = json::array();
  for (const auto& v : line_configuration(ind)) lines.push_back(c2_to_json(v));
  j["lines"] = lines;
  j["line_count"] = lines.size();
  return j;
}

}  // namespace univmet

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "alexgeo/errors.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/spaces.hpp"
#include "json_locate.hpp"

namespace alexgeo {

using nlohmann::json;

namespace {

double to_double(const std::string& s, const std::string& whole) {
  double v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) throw ParseError("bad number in angle '" + whole + "'");
  return v;
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  if (s.empty()) throw ParseError("empty angle");
  double sign = 1;
  if (s[0] == '-' || s[0] == '+') {
    sign = s[0] == '-' ? -1 : 1;
    s.erase(0, 1);
  }
  const auto p = s.find("pi");
  if (p == std::string::npos) return sign * to_double(s, text);
  std::string coef = s.substr(0, p);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  const double c = coef.empty() ? 1.0 : to_double(coef, text);
  std::string rest = s.substr(p + 2);
  double d = 1;
  if (!rest.empty()) {
    if (rest[0] != '/') throw ParseError("bad angle literal '" + text + "'");
    d = to_double(rest.substr(1), text);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  }
  return sign * c * kPi / d;
}

namespace {

double angle_value(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_angle(j.get<std::string>());
  throw ParseError("expected a number or angle literal", where);
}

double field(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const char* k : keys) {
    if (j.contains(k)) return angle_value(j.at(k), where + "." + k);
  }
  throw ParseError(std::string("missing field '") + *keys.begin() + "'", where);
}

SpacePtr space_from_json(const json& j, const std::string& where);

MeshInput mesh_input(const json& j, const std::string& where) {
  MeshInput in;
  if (!j.contains("triangles")) throw ParseError("missing field 'triangles'", where);
  const json& t = j.at("triangles");
  if (!t.is_array()) throw ParseError("triangles must be an array", where + ".triangles");
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::string loc = where + ".triangles[" + std::to_string(i) + "]";
    if (!t[i].is_array() || t[i].size() != 3) throw ParseError("expected [i, j, k]", loc);
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      if (!t[i][k].is_number_integer()) throw ParseError("vertex index must be an integer", loc);
      tri[k] = t[i][k].get<int>();
    }
    in.triangles.push_back(tri);
  }
  if (j.contains("coords")) {
    const json& c = j.at("coords");
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::string loc = where + ".coords[" + std::to_string(i) + "]";
      if (!c[i].is_array() || c[i].size() != 3) throw ParseError("expected [x, y, z]", loc);
      in.coords.push_back({c[i][0].get<double>(), c[i][1].get<double>(), c[i][2].get<double>()});
    }
  } else if (j.contains("edge_lengths")) {
    const json& e = j.at("edge_lengths");
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string loc = where + ".edge_lengths[" + std::to_string(i) + "]";
      if (!e[i].is_array() || e[i].size() != 3) throw ParseError("expected [i, j, length]", loc);
      in.edge_lengths.emplace_back(e[i][0].get<int>(), e[i][1].get<int>(), e[i][2].get<double>());
    }
  } else {
    throw ParseError("mesh needs 'coords' or 'edge_lengths'", where);
  }
  return in;
}

SpacePtr space_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError("space description must be an object", where);
  if (!j.contains("type") || !j.at("type").is_string()) throw ParseError("missing string field 'type'", where);
  const std::string type = j.at("type").get<std::string>();
  if (type == "cone") {
    const double r = j.value("sample_radius", 2.0);
    return std::make_shared<Cone>(field(j, {"total_angle", "theta"}, where), r);
  }
  if (type == "plane") return make_plane();
  if (type == "spindle") return make_spindle(field(j, {"circle_length", "theta"}, where));
  if (type == "sphere") return make_spindle(2 * kPi);
  if (type == "cap") return make_cap(field(j, {"radius", "r0"}, where));
  if (type == "polygon") {
    if (!j.contains("vertices") || !j.at("vertices").is_array()) throw ParseError("missing array 'vertices'", where);
    std::vector<std::array<double, 2>> v;
    const json& a = j.at("vertices");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string loc = where + ".vertices[" + std::to_string(i) + "]";
      if (!a[i].is_array() || a[i].size() != 2) throw ParseError("expected [x, y]", loc);
      v.push_back({a[i][0].get<double>(), a[i][1].get<double>()});
    }
    return make_polygon(std::move(v));
  }
  if (type == "tetrahedron") return make_regular_tetrahedron(j.value("edge", 1.0));
  if (type == "mesh") {
    MeshOptions opts;
    if (j.contains("options")) {
      opts.max_depth = j.at("options").value("max_depth", opts.max_depth);
      opts.subdivisions = j.at("options").value("subdivisions", opts.subdivisions);
    }
    const MeshInput in = mesh_input(j, where);
    try {
      return make_mesh(in, opts);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), e.location().empty() ? where : where + "." + e.location());
    }
  }
  if (type == "double") {
    if (!j.contains("base")) throw ParseError("missing field 'base'", where);
    return build_doubling(space_from_json(j.at("base"), where + ".base")).space;
  }
  throw ParseError("unknown space type '" + type + "'", where + ".type");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
}

}  // namespace

SpacePtr load_space(const std::string& text) {
  const json j = parse_json(text);
  try {
    return space_from_json(j, "$");
  } catch (const json::exception& e) {
    throw ParseError(e.what(), "$");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpacePtr load_space_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return load_space(text);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), detail::locate(path, text, e.location()));
  }
}

Point parse_point(const Space& S, const std::string& text) {
  std::string t = text;
  // Compact mesh form F<face>:b0,b1[,b2].
  if (!t.empty() && (t[0] == 'F' || t[0] == 'f') && t.find(':') != std::string::npos) {
    const auto colon = t.find(':');
    MeshPoint m;
    try {
      m.face = std::stoi(t.substr(1, colon - 1));
    } catch (const std::exception&) {
      throw ParseError("bad face index in '" + text + "'");
    }
    std::vector<double> b;
    std::stringstream ss(t.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) b.push_back(to_double(item, text));
    if (b.size() == 2) b.push_back(1 - b[0] - b[1]);
    if (b.size() != 3) throw ParseError("expected two or three barycentric values in '" + text + "'");
    m.bary = {b[0], b[1], b[2]};
    return S.canonical(m);
  }
  if (!t.empty() && t[0] != '[' && t[0] != '{') {
    // Compact form "a,b"; entries may be angle literals.
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
      throw ParseError("expected 'a,b' in '" + text + "'", "point");
    const double a = parse_angle(t.substr(0, comma));
    const double b = parse_angle(t.substr(comma + 1));
    if (S.kind() == SpaceKind::polygon) return S.canonical(PlanarPoint{a, b});
    if (S.kind() == SpaceKind::mesh) throw ParseError("mesh points use F<face>:b0,b1", "point");
    return S.canonical(PolarPoint{a, b});
  }
  const json j = parse_json(t);
  try {
    if (S.kind() == SpaceKind::mesh) {
      if (!j.is_object()) throw ParseError("mesh point must be {\"face\":f,\"bary\":[...]}");
      MeshPoint m;
      m.face = j.at("face").get<int>();
      const json& b = j.at("bary");
      if (b.size() != 3) throw ParseError("bary needs three entries");
      m.bary = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
      return S.canonical(m);
    }
    if (!j.is_array() || j.size() != 2) throw ParseError("point must be a pair [a, b]");
    if (S.kind() == SpaceKind::polygon) {
      return S.canonical(PlanarPoint{j[0].get<double>(), j[1].get<double>()});
    }
    return S.canonical(PolarPoint{angle_value(j[0], "r"), angle_value(j[1], "phi")});
  } catch (const json::exception& e) {
    throw ParseError(e.what(), "point");
  }
}

}  // namespace alexgeo

#include <json.hpp>

#include "alexgeo/errors.hpp"
#include "alexgeo/expr.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/spaces.hpp"
#include "json_locate.hpp"

namespace alexgeo {

using nlohmann::json;

namespace {

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", where);
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_angle(v.get<std::string>());
  throw ParseError(std::string("field '") + key + "' must be a number", where);
}

Point point_field(const Space& S, const json& j, const std::string& where) {
  if (!j.contains("q")) throw ParseError("missing point 'q'", where);
  const json& q = j.at("q");
  try {
    return parse_point(S, q.is_string() ? q.get<std::string>() : q.dump());
  } catch (const ParseError& e) {
    throw ParseError(e.message(), where + ".q");
  }
}

ExprPtr parse(const Space& S, const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("op")) throw ParseError("expression needs an 'op'", where);
  const std::string op = j.at("op").get<std::string>();
  auto terms = [&](const char* key) {
    std::vector<ExprPtr> out;
    if (!j.contains(key) || !j.at(key).is_array()) throw ParseError(std::string("missing array '") + key + "'", where);
    const json& a = j.at(key);
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.push_back(parse(S, a[i], where + "." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
  };
  ExprPtr e;
  if (op == "dist") {
    e = dist(point_field(S, j, where));
  } else if (op == "dist_sq") {
    e = dist_sq(point_field(S, j, where));
  } else if (op == "rho_dist") {
    e = rho_dist(j.contains("kappa") ? number(j, "kappa", where) : S.kappa(), point_field(S, j, where));
  } else if (op == "phi_rc") {
    ExprPtr inner = j.contains("inner") ? parse(S, j.at("inner"), where + ".inner")
                                        : dist(point_field(S, j, where));
    e = phi_rc(number(j, "r", where), number(j, "c", where), inner);
  } else if (op == "sum") {
    e = sum(terms("terms"));
  } else if (op == "affine") {
    auto t = terms("terms");
    std::vector<double> w = j.at("weights").get<std::vector<double>>();
    e = affine(std::move(w), std::move(t), j.value("constant", 0.0));
  } else if (op == "min") {
    e = min_of(terms("terms"));
  } else if (op == "theta") {
    if (!j.contains("body")) throw ParseError("missing 'body'", where);
    e = theta(parse(S, j.at("body"), where + ".body"));
  } else if (op == "chart_affine") {
    e = chart_affine(number(j, "a", where), number(j, "b", where), j.value("c", 0.0));
  } else if (op == "dist_boundary") {
    e = dist_boundary(S);
  } else {
    throw ParseError("unknown op '" + op + "'", where + ".op");
  }
  if (j.contains("certificate")) {
    const json& c = j.at("certificate");
    Certificate cert;
    cert.lambda = number(c, "lambda", where + ".certificate");
    std::mt19937_64 rng(0);
    cert.center = c.contains("center") ? parse_point(S, c.at("center").dump()) : S.random_point(rng);
    cert.radius = c.contains("radius") ? number(c, "radius", where + ".certificate") : std::numeric_limits<double>::infinity();
    e = with_certificate(e, cert);
  }
  return e;
}

json point_json(const Point& p) { return json::parse(point_to_string(p)); }

json dump(const ExprPtr& f) {
  json j;
  auto kids = [&] {
    json a = json::array();
    for (const auto& c : f->children) a.push_back(dump(c));
    return a;
  };
  switch (f->kind) {
    case NodeKind::dist: j = {{"op", "dist"}, {"q", point_json(f->q)}}; break;
    case NodeKind::dist_sq: j = {{"op", "dist_sq"}, {"q", point_json(f->q)}}; break;
    case NodeKind::rho_dist: j = {{"op", "rho_dist"}, {"kappa", f->kappa}, {"q", point_json(f->q)}}; break;
    case NodeKind::phi_rc: j = {{"op", "phi_rc"}, {"r", f->r}, {"c", f->c}, {"inner", dump(f->children[0])}}; break;
    case NodeKind::affine: j = {{"op", "affine"}, {"weights", f->weights}, {"constant", f->constant}, {"terms", kids()}}; break;
    case NodeKind::min: j = {{"op", "min"}, {"terms", kids()}}; break;
    case NodeKind::theta: j = {{"op", "theta"}, {"body", dump(f->children[0])}}; break;
    case NodeKind::chart_affine: j = {{"op", "chart_affine"}, {"a", f->a}, {"b", f->b}, {"c", f->constant}}; break;
  }
  return j;
}

}  // namespace

ExprPtr load_expr(const Space& S, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  try {
    ExprPtr f = parse(S, j, "$");
    validate(f, S);
    return f;
  } catch (const json::exception& e) {
    throw ParseError(e.what(), "$");
  }
}

std::string to_json(const ExprPtr& f) { return dump(f).dump(); }

ExprPtr load_expr_file(const Space& S, const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return load_expr(S, text);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), detail::locate(path, text, e.location()));
  }
}

}  // namespace alexgeo

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "alexgeo/curve.hpp"
#include "alexgeo/errors.hpp"
#include "alexgeo/expr.hpp"
#include "alexgeo/extremal.hpp"
#include "alexgeo/flow.hpp"
#include "alexgeo/format.hpp"
#include "alexgeo/functions.hpp"
#include "alexgeo/model_plane.hpp"
#include "alexgeo/quasigeodesic.hpp"
#include "alexgeo/radial.hpp"
#include "alexgeo/spaces.hpp"
#include "alexgeo/tangent.hpp"
#include "alexgeo/tight.hpp"
#include "suite.hpp"

namespace alexgeo::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "alexgeo/1";

struct Common {
  std::string space_file;
  std::vector<std::string> function_files;
  std::string out;
  std::string output;
  std::string report;
  std::uint64_t seed = 1;
  double tol = -1;
  double step = -1;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// Artifact sink: --output FILE or stdout.
void write_to(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    if (!text.empty() && text.back() != '\n') fallback << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write file", path);
  f << text;
}

ordered_json header(const std::string& command) {
  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

ordered_json point_json(const Space& S, const Point& p) {
  ordered_json j;
  j["point"] = ordered_json::parse(point_to_string(p));
  const auto c = S.chart(p);
  j["chart"] = {c[0], c[1]};
  return j;
}

ordered_json curve_json(const CurveRecord& c) {
  ordered_json j;
  j["provenance"] = to_string(c.provenance);
  j["length"] = c.length();
  j["t_begin"] = c.t_begin();
  j["t_end"] = c.t_end();
  ordered_json ev = ordered_json::array();
  for (const auto& e : c.events) ev.push_back({{"t", e.t}, {"kind", to_string(e.kind)}, {"note", e.note}});
  j["events"] = ev;
  ordered_json s = ordered_json::array();
  for (const auto& x : c.samples) {
    ordered_json row = point_json(*c.space, x.p);
    row["t"] = x.t;
    row["speed"] = x.has_right ? x.right.norm : (x.has_left ? x.left.norm : 0.0);
    s.push_back(row);
  }
  j["samples"] = s;
  return j;
}

ordered_json concavity_json(const ConcavityReport& r) {
  ordered_json j;
  j["pass"] = r.pass;
  j["lambda"] = r.lambda;
  j["kappa"] = r.kappa;
  j["worst_defect"] = r.worst;
  j["geodesics"] = r.geodesics;
  j["stencil"] = r.stencil;
  j["worst_t"] = r.worst_t;
  return j;
}

ordered_json qg_json(const QGCheckReport& r) {
  ordered_json j;
  j["pass"] = r.pass();
  j["probes"] = r.probes;
  j["min_turn"] = r.min_turn;
  j["worst_barrier"] = r.worst_barrier;
  j["worst_angle_increase"] = r.worst_angle_increase;
  j["worst_initial_excess"] = r.worst_initial_excess;
  j["speed_defect"] = r.speed_defect;
  j["convex"] = r.convex;
  j["barrier"] = r.barrier;
  j["monotone"] = r.monotone;
  j["initial"] = r.initial;
  j["unit_speed"] = r.unit_speed;
  return j;
}

ordered_json extremal_json(const ExtremalReport& r) {
  ordered_json j;
  j["pass"] = r.pass();
  j["trivial"] = r.trivial;
  j["criterion"] = r.criterion;
  j["criterion_checks"] = r.criterion_checks;
  j["worst_gradient"] = r.worst_gradient;
  j["invariance"] = r.invariance;
  j["flows"] = r.flows;
  j["worst_drift"] = r.worst_drift;
  j["drift_rate"] = r.drift_rate;
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

class Runner {
 public:
  Runner(Io io) : io_(io) {}

  SpacePtr space() {
    if (!space_) {
      if (c.space_file.empty()) throw ParseError("--space is required");
      space_ = load_space_file(c.space_file);
    }
    return space_;
  }

  std::vector<ExprPtr> functions(std::size_t min_count, std::size_t max_count) {
    if (c.function_files.size() < min_count || c.function_files.size() > max_count) {
      throw ParseError("expected " + std::to_string(min_count) +
                       (max_count > min_count ? " to " + std::to_string(max_count) : std::string()) +
                       " --function files, got " + std::to_string(c.function_files.size()));
    }
    std::vector<ExprPtr> fs;
    for (const auto& f : c.function_files) fs.push_back(load_expr_file(*space(), f));
    return fs;
  }

  Point point(const std::string& flag, const std::string& text) {
    if (text.empty()) throw ParseError("missing point", flag);
    try {
      return parse_point(*space(), text);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), flag);
    }
  }

  double angle(const std::string& flag, const std::string& text) {
    try {
      return parse_angle(text);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), flag);
    }
  }

  std::vector<Point> path(const std::string& text) {
    std::vector<Point> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
      if (!item.empty()) pts.push_back(point("--path", item));
    if (pts.size() < 2) throw ParseError("a path needs at least two points", "--path");
    return pts;
  }

  std::string format(std::initializer_list<const char*> allowed, const char* fallback) {
    const std::string f = c.out.empty() ? fallback : c.out;
    for (const char* a : allowed)
      if (f == a) return f;
    throw ParseError("format '" + f + "' not available for this command", "--out");
  }

  // Curves: json (with an optional report block), csv or svg.
  void emit_curve(const std::string& command, const CurveRecord& curve,
                  const std::optional<ordered_json>& report) {
    const std::string f = format({"json", "csv", "svg"}, "json");
    if (f == "json") {
      ordered_json j = header(command);
      j["curve"] = curve_json(curve);
      if (report) j["report"] = *report;
      write_to(c.output, dump(j), io_.out);
      return;
    }
    write_to(c.output, f == "csv" ? curve.to_csv() : curve.to_svg(), io_.out);
    if (report) emit_side_report(command, *report);
  }

  // Report that accompanies a csv/svg artifact: --report FILE, else stdout
  // when the artifact went to a file, else stderr.
  void emit_side_report(const std::string& command, const ordered_json& report) {
    ordered_json j = header(command);
    j["report"] = report;
    if (!c.report.empty()) {
      write_to(c.report, dump(j), io_.out);
    } else {
      (c.output.empty() ? io_.err : io_.out) << dump(j);
    }
  }

  void emit_json(const ordered_json& j) {
    format({"json"}, "json");
    write_to(c.output, dump(j), io_.out);
  }

  Common c;
  Io io_;

 private:
  SpacePtr space_;
};

void add_space(CLI::App* sub, Common& c) {
  sub->add_option("--space", c.space_file, "space description (JSON)")->required();
}

void add_out(CLI::App* sub, Common& c, const std::string& formats) {
  sub->add_option("--out", c.out, "output format: " + formats);
  sub->add_option("--output", c.output, "write the artifact to FILE instead of stdout");
}

Subset parse_subset(Runner& R, const std::string& text) {
  if (text == "boundary") return boundary_subset();
  if (text.rfind("point:", 0) == 0) return point_subset(R.point("--subset", text.substr(6)));
  if (text.rfind("path:", 0) == 0) return edge_path_subset(R.path(text.substr(5)));
  throw ParseError("expected boundary, point:P or path:P1;P2;...", "--subset");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical companion for two-dimensional Alexandrov spaces", "alexgeo"};
  app.require_subcommand(1);
  Runner R({out, err});
  Common& c = R.c;
  int status = 0;
  std::function<void()> action;

  // distance
  std::string p_text, q_text;
  auto* s_distance = app.add_subcommand("distance", "certified distance between two points");
  add_space(s_distance, c);
  s_distance->add_option("--p", p_text, "point")->required();
  s_distance->add_option("--q", q_text, "second point")->required();
  add_out(s_distance, c, "json (default: plain value)");
  s_distance->callback([&] {
    action = [&] {
      auto S = R.space();
      const Point p = R.point("--p", p_text), q = R.point("--q", q_text);
      const DistanceResult d = S->certified_distance(p, q);
      if (c.out.empty()) {
        std::ostringstream os;
        os << std::setprecision(6) << d.value << '\n';
        write_to(c.output, os.str(), out);
        return;
      }
      ordered_json j = header("distance");
      j["distance"] = d.value;
      j["error"] = d.error;
      j["upper"] = d.upper;
      R.emit_json(j);
    };
  });

  // geodesic
  int samples = 64;
  auto* s_geodesic = app.add_subcommand("geodesic", "minimizing geodesic between two points");
  add_space(s_geodesic, c);
  s_geodesic->add_option("--p", p_text, "point")->required();
  s_geodesic->add_option("--q", q_text, "second point")->required();
  s_geodesic->add_option("--samples", samples, "number of pieces")->check(CLI::PositiveNumber);
  add_out(s_geodesic, c, "json, csv, svg");
  s_geodesic->callback([&] {
    action = [&] {
      auto S = R.space();
      R.emit_curve("geodesic", geodesic(S, R.point("--p", p_text), R.point("--q", q_text), samples),
                   std::nullopt);
    };
  });

  // gradient
  auto* s_gradient = app.add_subcommand("gradient", "gradient of a function at a point");
  add_space(s_gradient, c);
  s_gradient->add_option("--function", c.function_files, "function (JSON)")->required();
  s_gradient->add_option("--p", p_text, "point")->required();
  add_out(s_gradient, c, "json");
  s_gradient->callback([&] {
    action = [&] {
      auto S = R.space();
      const ExprPtr f = R.functions(1, 1)[0];
      const Point p = R.point("--p", p_text);
      const DirectionalFn d = differential(f, *S, p);
      GradientOptions go;
      if (c.tol > 0) go.verify_tol = c.tol;
      const TangentVec g = gradient(d, go);
      // The polar of the gradient is the candidate supporting vector.
      const TangentVec s = g.is_origin() ? g : polar_vector(g);
      const SupportReport sr = supporting_check(d, s, go.grid, go.verify_tol);
      ordered_json j = header("gradient");
      j["value"] = eval(f, *S, p);
      j["gradient"] = {{"norm", g.norm}, {"angle", g.angle}, {"origin", g.is_origin()}};
      j["sigma_length"] = d.sigma.length;
      j["supporting"] = {{"norm", s.norm}, {"angle", s.angle}, {"pass", sr.supporting},
                         {"worst_margin", sr.worst_margin}, {"worst_angle", sr.worst_angle}};
      R.emit_json(j);
    };
  });

  // flow
  double time = 1;
  auto* s_flow = app.add_subcommand("flow", "gradient curve of a function");
  add_space(s_flow, c);
  s_flow->add_option("--function", c.function_files, "function (JSON)")->required();
  s_flow->add_option("--p", p_text, "point")->required();
  s_flow->add_option("--time", time, "flow time")->check(CLI::NonNegativeNumber);
  s_flow->add_option("--step", c.step, "integrator step h");
  add_out(s_flow, c, "json, csv, svg");
  s_flow->callback([&] {
    action = [&] {
      auto S = R.space();
      const ExprPtr f = R.functions(1, 1)[0];
      FlowOptions fo;
      if (c.step > 0) fo.h = c.step;
      R.emit_curve("flow", gradient_curve(f, S, R.point("--p", p_text), time, fo), std::nullopt);
    };
  });

  // gexp
  std::string dir_text;
  double norm = 1;
  int kappa = 0;
  auto* s_gexp = app.add_subcommand("gexp", "radial curve and gexp of a tangent vector");
  add_space(s_gexp, c);
  s_gexp->add_option("--p", p_text, "point")->required();
  s_gexp->add_option("--dir", dir_text, "direction angle in Sigma_p")->required();
  s_gexp->add_option("--norm", norm, "length of the tangent vector")->check(CLI::NonNegativeNumber);
  s_gexp->add_option("--kappa", kappa, "model curvature")->check(CLI::IsMember({-1, 0, 1}));
  s_gexp->add_option("--step", c.step, "integrator step h");
  add_out(s_gexp, c, "json, csv, svg");
  s_gexp->callback([&] {
    action = [&] {
      auto S = R.space();
      const Point p = R.point("--p", p_text);
      RadialOptions ro;
      if (c.step > 0) ro.h = c.step;
      const double xi = R.angle("--dir", dir_text);
      const CurveRecord alpha = radial_curve(S, p, xi, kappa, norm, ro);
      if (c.out.empty() || c.out == "json") {
        ordered_json j = header("gexp");
        j["kappa"] = kappa;
        j["norm"] = norm;
        j["direction"] = xi;
        const Point end = alpha.samples.empty() ? p : alpha.samples.back().p;
        j["end"] = point_json(*S, end);
        j["distance_from_p"] = S->distance(p, end);
        j["curve"] = curve_json(alpha);
        R.emit_json(j);
        return;
      }
      R.emit_curve("gexp", alpha, std::nullopt);
    };
  });

  // trace-qg
  std::string from_text;
  double length = 1;
  bool check = false;
  int probes = 20;
  auto* s_trace = app.add_subcommand("trace-qg", "trace an equal-split quasigeodesic");
  add_space(s_trace, c);
  s_trace->add_option("--from", from_text, "start point")->required();
  s_trace->add_option("--dir", dir_text, "direction angle in Sigma_p")->required();
  s_trace->add_option("--length", length, "curve length")->check(CLI::PositiveNumber);
  s_trace->add_option("--step", c.step, "sample step");
  s_trace->add_flag("--check", check, "run the quasigeodesic checker");
  s_trace->add_option("--probes", probes, "random probe points")->check(CLI::PositiveNumber);
  s_trace->add_option("--tol", c.tol, "checker tolerance");
  s_trace->add_option("--seed", c.seed, "random seed");
  s_trace->add_option("--report", c.report, "checker JSON file when --out is csv or svg");
  add_out(s_trace, c, "json, csv, svg");
  s_trace->callback([&] {
    action = [&] {
      auto S = R.space();
      TraceOptions to;
      if (c.step > 0) to.sample_step = c.step;
      const CurveRecord curve =
          trace_quasigeodesic(S, R.point("--from", from_text), R.angle("--dir", dir_text), length, to);
      std::optional<ordered_json> rep;
      if (check) {
        QGCheckOptions qo;
        qo.n_probes = probes;
        qo.seed = c.seed;
        if (c.tol > 0) qo.tol = c.tol;
        const QGCheckReport r = check_quasigeodesic(S, curve, qo);
        rep = qg_json(r);
        (*rep)["vertex_hits"] = curve.count(EventKind::vertex);
        (*rep)["entropy"] = entropy(curve).total;
        if (!r.pass()) status = 1;
      }
      R.emit_curve("trace-qg", curve, rep);
    };
  });

  // check-qg
  std::string path_text;
  auto* s_checkqg = app.add_subcommand("check-qg", "quasigeodesic checker on a geodesic path");
  add_space(s_checkqg, c);
  s_checkqg->add_option("--path", path_text, "points P1;P2;... joined by minimizing geodesics")->required();
  s_checkqg->add_option("--step", c.step, "sample step");
  s_checkqg->add_option("--probes", probes, "random probe points")->check(CLI::PositiveNumber);
  s_checkqg->add_option("--tol", c.tol, "tolerance");
  s_checkqg->add_option("--seed", c.seed, "random seed");
  add_out(s_checkqg, c, "json");
  s_checkqg->callback([&] {
    action = [&] {
      auto S = R.space();
      const CurveRecord curve = path_curve(S, R.path(path_text), c.step > 0 ? c.step : 0.01);
      QGCheckOptions qo;
      qo.n_probes = probes;
      qo.seed = c.seed;
      if (c.tol > 0) qo.tol = c.tol;
      const QGCheckReport r = check_quasigeodesic(S, curve, qo);
      ordered_json j = header("check-qg");
      j["length"] = curve.length();
      j["report"] = qg_json(r);
      R.emit_json(j);
      if (!r.pass()) status = 1;
    };
  });

  // develop
  std::string base_text;
  double dev_kappa = 0;
  auto* s_develop = app.add_subcommand("develop", "kappa-development of a curve around a base point");
  add_space(s_develop, c);
  s_develop->add_option("--base", base_text, "base point of the development")->required();
  s_develop->add_option("--path", path_text, "points P1;P2;... joined by minimizing geodesics");
  s_develop->add_option("--from", from_text, "start of a traced quasigeodesic");
  s_develop->add_option("--dir", dir_text, "direction of the traced quasigeodesic");
  s_develop->add_option("--length", length, "curve length")->check(CLI::PositiveNumber);
  s_develop->add_option("--kappa", dev_kappa, "model curvature (-1, 0, 1)");
  s_develop->add_option("--step", c.step, "sample step");
  s_develop->add_option("--tol", c.tol, "convexity tolerance");
  add_out(s_develop, c, "json, csv, svg");
  s_develop->callback([&] {
    action = [&] {
      auto S = R.space();
      const double step = c.step > 0 ? c.step : 0.01;
      CurveRecord curve;
      if (!path_text.empty()) {
        curve = path_curve(S, R.path(path_text), step);
      } else if (!from_text.empty() && !dir_text.empty()) {
        TraceOptions to;
        to.sample_step = step;
        curve = trace_quasigeodesic(S, R.point("--from", from_text), R.angle("--dir", dir_text), length, to);
      } else {
        throw ParseError("give --path or --from with --dir", "develop");
      }
      const Point base = R.point("--base", base_text);
      std::vector<std::pair<double, double>> t_r;
      for (const auto& s : curve.samples) t_r.emplace_back(s.t, S->distance(base, s.p));
      DevelopOptions dopt;
      if (c.tol > 0) dopt.tolerance = c.tol;
      const DevelopmentRecord d = develop_curve(dev_kappa, t_r, dopt);
      const std::string f = R.format({"json", "csv", "svg"}, "json");
      if (f == "csv") return write_to(c.output, d.to_csv(), out);
      if (f == "svg") return write_to(c.output, d.to_svg(), out);
      ordered_json j = header("develop");
      j["kappa"] = d.kappa;
      j["convex"] = d.convex;
      j["min_turn"] = d.min_turn;
      j["speed_defect"] = development_speed_defect(d);
      j["splits"] = d.splits;
      ordered_json rows = ordered_json::array();
      for (const auto& s : d.samples) rows.push_back({{"t", s.t}, {"r", s.r}, {"phi", s.phi}});
      j["samples"] = rows;
      R.emit_json(j);
    };
  });

  // check-concavity
  std::string center_text;
  double radius = std::numeric_limits<double>::infinity();
  double lambda = 0;
  std::optional<double> barrier_kappa;
  int geodesics = 100;
  auto* s_conc = app.add_subcommand("check-concavity", "second-difference concavity test along random geodesics");
  add_space(s_conc, c);
  s_conc->add_option("--function", c.function_files, "function (JSON)")->required();
  s_conc->add_option("--lambda", lambda, "concavity constant");
  s_conc->add_option("--kappa", barrier_kappa, "test f'' <= lambda - kappa f instead");
  s_conc->add_option("--center", center_text, "region center")->required();
  s_conc->add_option("--radius", radius, "region radius")->check(CLI::PositiveNumber);
  s_conc->add_option("--geodesics", geodesics, "number of random geodesics")->check(CLI::PositiveNumber);
  s_conc->add_option("--tol", c.tol, "tolerance");
  s_conc->add_option("--seed", c.seed, "random seed");
  add_out(s_conc, c, "json");
  s_conc->callback([&] {
    action = [&] {
      auto S = R.space();
      const ExprPtr f = R.functions(1, 1)[0];
      const Region region{R.point("--center", center_text), radius};
      ConcavityOptions co;
      co.n_geodesics = geodesics;
      co.seed = c.seed;
      if (c.tol > 0) co.tol = c.tol;
      const ConcavityReport r =
          barrier_kappa ? check_barrier(as_field(f, *S), *S, lambda, *barrier_kappa,
                                        random_chords(*S, region, geodesics, c.seed), co)
                        : check_concavity(f, *S, lambda, region, co);
      ordered_json j = header("check-concavity");
      j["report"] = concavity_json(r);
      R.emit_json(j);
      if (!r.pass) status = 1;
    };
  });

  // inf-conv
  double eps = 0.5, lipschitz = 1;
  auto* s_inf = app.add_subcommand("inf-conv", "inf-convolution f_eps(y) = min_x f(x) + |xy|^2/eps");
  add_space(s_inf, c);
  s_inf->add_option("--function", c.function_files, "function (JSON)")->required();
  s_inf->add_option("--p", p_text, "point")->required();
  s_inf->add_option("--eps", eps, "smoothing parameter")->check(CLI::PositiveNumber);
  s_inf->add_option("--lipschitz", lipschitz, "Lipschitz bound used for the search radius")
      ->check(CLI::PositiveNumber);
  s_inf->add_option("--tol", c.tol, "minimizer tolerance");
  add_out(s_inf, c, "json");
  s_inf->callback([&] {
    action = [&] {
      auto S = R.space();
      const ExprPtr f = R.functions(1, 1)[0];
      InfConvOptions io;
      io.lipschitz = lipschitz;
      if (c.tol > 0) io.tol = c.tol;
      const InfConvolution fe(as_field(f, *S), S, eps, io);
      const InfConvValue v = fe.evaluate(R.point("--p", p_text));
      ordered_json j = header("inf-conv");
      j["eps"] = eps;
      j["value"] = v.value;
      j["minimizer"] = point_json(*S, v.minimizer);
      j["rho"] = v.rho;
      j["in_domain"] = v.in_domain;
      R.emit_json(j);
    };
  });

  // detect-extremal / verify-extremal
  ExtremalOptions eo;
  auto add_extremal = [&](CLI::App* sub) {
    sub->add_option("--funcs", eo.n_funcs, "distance functions per flow test")->check(CLI::PositiveNumber);
    sub->add_option("--steps", eo.n_steps, "flow steps per start point")->check(CLI::PositiveNumber);
    sub->add_option("--step", c.step, "flow step h");
    sub->add_option("--tol", c.tol, "tolerance");
    sub->add_option("--seed", c.seed, "random seed");
  };
  auto finish_extremal = [&] {
    if (c.step > 0) eo.h = c.step;
    if (c.tol > 0) eo.tol = c.tol;
    eo.seed = c.seed;
  };
  auto* s_detect = app.add_subcommand("detect-extremal", "list extremal subsets with evidence");
  add_space(s_detect, c);
  add_extremal(s_detect);
  add_out(s_detect, c, "json");
  s_detect->callback([&] {
    action = [&] {
      auto S = R.space();
      finish_extremal();
      ordered_json list = ordered_json::array();
      for (const auto& cand : detect_extremal(S, eo)) {
        ordered_json e;
        e["label"] = cand.subset.label;
        e["reason"] = cand.reason;
        e["evidence"] = extremal_json(cand.evidence);
        if (!cand.evidence.pass()) status = 1;
        list.push_back(e);
      }
      ordered_json j = header("detect-extremal");
      j["candidates"] = list;
      R.emit_json(j);
    };
  });

  std::string subset_text;
  auto* s_verify = app.add_subcommand("verify-extremal", "verify that a subset is extremal");
  add_space(s_verify, c);
  s_verify->add_option("--subset", subset_text, "boundary, point:P or path:P1;P2;...")->required();
  add_extremal(s_verify);
  add_out(s_verify, c, "json");
  s_verify->callback([&] {
    action = [&] {
      auto S = R.space();
      finish_extremal();
      const Subset E = parse_subset(R, subset_text);
      const ExtremalReport r = verify_extremal(S, E, eo);
      ordered_json j = header("verify-extremal");
      j["subset"] = E.label;
      j["report"] = extremal_json(r);
      R.emit_json(j);
      if (!r.pass()) status = 1;
    };
  });

  // tight-check
  int n_samples = 500;
  auto* s_tight = app.add_subcommand("tight-check", "sup of d f_i(grad f_j) over a region");
  add_space(s_tight, c);
  s_tight->add_option("--function", c.function_files, "function (JSON), repeat per coordinate")->required();
  s_tight->add_option("--center", center_text, "region center")->required();
  s_tight->add_option("--radius", radius, "region radius")->check(CLI::PositiveNumber);
  s_tight->add_option("--samples", n_samples, "sample points in the region")->check(CLI::PositiveNumber);
  s_tight->add_option("--tol", c.tol, "regularity threshold");
  s_tight->add_option("--seed", c.seed, "random seed");
  add_out(s_tight, c, "json");
  s_tight->callback([&] {
    action = [&] {
      auto S = R.space();
      const auto fs = R.functions(2, 16);
      TightOptions to;
      to.n_samples = n_samples;
      to.seed = c.seed;
      if (c.tol > 0) to.regular_tol = c.tol;
      const TightReport r = tight_check(S, fs, Region{R.point("--center", center_text), radius}, to);
      ordered_json j = header("tight-check");
      j["tight"] = r.tight();
      j["sup"] = r.sup;
      j["worst_pair"] = {r.worst_i, r.worst_j};
      if (r.worst_i >= 0) j["worst_x"] = point_json(*S, r.worst_x);
      j["samples"] = r.samples;
      j["regular"] = r.regular;
      j["critical"] = r.critical;
      R.emit_json(j);
    };
  });

  // tight-image
  ImageOptions img;
  auto* s_image = app.add_subcommand("tight-image", "image study of a tight map on a polygon chart disc");
  add_space(s_image, c);
  s_image->add_option("--function", c.function_files, "strictly concave coordinate (JSON), 1 to 3")->required();
  s_image->add_option("--center", center_text, "region center")->required();
  s_image->add_option("--radius", radius, "region radius")->required()->check(CLI::PositiveNumber);
  s_image->add_option("--grid", img.grid, "chart grid points per side")->check(CLI::Range(2, 1000));
  s_image->add_option("--support-tests", img.support_tests, "support-hyperplane tests")->check(CLI::PositiveNumber);
  s_image->add_option("--critical-samples", img.critical_samples, "critical points for the G o F check")->check(CLI::PositiveNumber);
  s_image->add_option("--tol", c.tol, "G o F deviation tolerance");
  s_image->add_option("--seed", c.seed, "random seed");
  s_image->add_option("--report", c.report, "report JSON file when --out is csv");
  add_out(s_image, c, "json, csv (sample cloud)");
  s_image->callback([&] {
    action = [&] {
      auto S = R.space();
      const auto fs = R.functions(1, 3);
      img.seed = c.seed;
      const double g_tol = c.tol > 0 ? c.tol : 1e-4;
      const ImageReport r = tight_image_study(S, fs, Region{R.point("--center", center_text), radius}, img);
      ordered_json rep;
      rep["pass"] = r.pass(g_tol);
      rep["l"] = r.l;
      rep["concavity_margin"] = r.concavity_margin;
      rep["tight_sup"] = r.tight.sup;
      rep["regular"] = r.tight.regular;
      rep["critical"] = r.tight.critical;
      rep["support_tests"] = r.support_tests;
      rep["support_failures"] = r.support_failures;
      rep["worst_support"] = r.worst_support;
      rep["chord_worst"] = r.chord_worst;
      rep["critical_samples"] = r.critical_samples;
      rep["worst_g_deviation"] = r.worst_g_deviation;
      rep["lipschitz_ratio"] = {r.min_ratio, r.max_ratio};
      ordered_json pr = ordered_json::array();
      for (const auto& x : r.projection_ratios) pr.push_back({x[0], x[1]});
      rep["projection_ratios"] = pr;
      if (!r.pass(g_tol)) status = 1;
      const std::string f = R.format({"json", "csv"}, "json");
      if (f == "csv") {
        write_to(c.output, r.to_csv(), out);
        R.emit_side_report("tight-image", rep);
        return;
      }
      ordered_json j = header("tight-image");
      j["report"] = rep;
      R.emit_json(j);
    };
  });

  // suite
  bool quick = false, strict = false;
  std::vector<int> only;
  auto* s_suite = app.add_subcommand("suite", "run the acceptance criteria and print a ledger");
  s_suite->add_flag("--quick", quick, "reduced sample counts, same tolerances");
  s_suite->add_option("--only", only, "criterion ids")->check(CLI::Range(1, suite::criterion_count()));
  s_suite->add_flag("--strict", strict, "exit 1 when any criterion fails");
  s_suite->add_option("--seed", c.seed, "random seed");
  add_out(s_suite, c, "json (default: ledger lines)");
  s_suite->callback([&] {
    action = [&] {
      suite::Options so;
      so.quick = quick;
      so.seed = c.seed;
      if (only.empty())
        for (int i = 1; i <= suite::criterion_count(); ++i) only.push_back(i);
      std::vector<suite::Result> results;
      for (int id : only) {
        results.push_back(suite::run_criterion(id, so));
        if (c.out.empty()) out << suite::format_line(results.back()) << '\n' << std::flush;
      }
      int failed = 0;
      for (const auto& r : results) failed += !r.pass;
      if (c.out.empty()) {
        out << results.size() - failed << "/" << results.size() << " criteria passed\n";
      } else {
        ordered_json j = header("suite");
        j["quick"] = quick;
        j["seed"] = c.seed;
        ordered_json list = ordered_json::array();
        for (const auto& r : results) {
          ordered_json e;
          e["id"] = r.id;
          e["name"] = r.name;
          e["pass"] = r.pass;
          e["summary"] = r.summary;
          ordered_json m;
          for (const auto& [k, v] : r.metrics) m[k] = v;
          e["metrics"] = m;
          list.push_back(e);
        }
        j["criteria"] = list;
        j["passed"] = static_cast<int>(results.size()) - failed;
        R.emit_json(j);
      }
      if (strict && failed > 0) status = 1;
    };
  });

  std::vector<const char*> argv{"alexgeo"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (action) action();
  } catch (const ParseError& e) {
    err << "alexgeo: error: " << e.what() << '\n';
    return 2;
  } catch (const CurvatureBoundError& e) {
    err << "alexgeo: error: " << (c.space_file.empty() ? "" : c.space_file + ": ") << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "alexgeo: error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantBreach& e) {
    err << "alexgeo: invariant breach: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "alexgeo: error: " << e.what() << '\n';
    return 1;
  }
  return status;
}

}  // namespace alexgeo::cli

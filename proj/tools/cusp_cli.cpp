// cusp: command-line front end for the cusped-space library.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cusp/certificate.hpp"
#include "cusp/cusped.hpp"
#include "cusp/error.hpp"
#include "cusp/excision.hpp"
#include "cusp/export.hpp"
#include "cusp/homotopy.hpp"
#include "cusp/metric.hpp"
#include "cusp/selfcheck.hpp"

using namespace cusp;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(std::string const& path) {
  try {
    return Json::parse(read_file(path));
  } catch (Json::parse_error const& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_text(std::string const& out, std::string const& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << text)) throw Error("cannot write " + out);
}

struct Space {
  std::string presentation;
  std::string complex;
  int         radius = 3;
  int         depth = 3;
  long        max_vertices = 2'000'000;
  long        max_edges = 20'000'000;
  long        max_faces = 40'000'000;

  void add_to(CLI::App* cmd) {
    auto* p = cmd->add_option("--presentation", presentation, "presentation file");
    auto* c = cmd->add_option("--complex", complex, "cusped complex document from build-cusped");
    p->excludes(c);
    cmd->add_option("--radius", radius, "ball radius in Y")->check(CLI::NonNegativeNumber);
    cmd->add_option("--depth", depth, "horoball depth cap")->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-vertices", max_vertices)->check(CLI::PositiveNumber);
    cmd->add_option("--max-edges", max_edges)->check(CLI::PositiveNumber);
    cmd->add_option("--max-faces", max_faces)->check(CLI::PositiveNumber);
  }

  CuspedComplex load() const {
    if (!complex.empty()) return cusped_from_json(read_json(complex));
    if (presentation.empty()) throw UsageError("need --presentation FILE or --complex FILE");
    BuildLimits limits{max_vertices, max_edges, max_faces};
    return build_cusped_space(parse_presentation(read_file(presentation)), radius, depth, limits);
  }
};

std::vector<std::string> split(std::string const& text, char sep) {
  std::vector<std::string> out;
  std::string              cur;
  for (char ch : text + sep) {
    if (ch == sep) {
      auto b = cur.find_first_not_of(" \t");
      auto e = cur.find_last_not_of(" \t");
      out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

std::vector<int> vertex_list(CuspedComplex const& c, std::string const& text) {
  std::vector<int> out;
  for (auto const& s : split(text, ',')) {
    if (s.empty()) throw Error("empty vertex in list '" + text + "'");
    out.push_back(parse_vertex_spec(c, s));
  }
  return out;
}

Json names(CuspedComplex const& c, std::vector<int> const& vs) {
  Json out = Json::array();
  for (int v : vs) out.push_back(c.describe(v));
  return out;
}

Json named_path(CuspedComplex const& c, EdgePath const& p) {
  Json j     = path_json(p);
  j["names"] = names(c, p.vertices);
  return j;
}

int farthest(Metric const& m, int center, std::vector<int> const& region) {
  auto const& row   = m.row(center);
  int         worst = 0;
  for (int v : region) {
    int d = row[static_cast<std::size_t>(v)];
    if (d < 0) return -1;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated cusped spaces: builds, metrics, homotopy certificates, excision"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::string   out;
  app.add_option("--seed", seed, "seed for sampling, recorded in every document");
  app.add_option("--out", out, "output file (default: stdout)");

  Space space;
  auto  with_space = [&](char const* name, char const* help) {
    auto* cmd = app.add_subcommand(name, help);
    space.add_to(cmd);
    cmd->add_option("--seed", seed);
    cmd->add_option("--out", out);
    return cmd;
  };

  auto* build = with_space("build-cusped", "build the truncated cusped space and export it");

  std::string from, to;
  auto*       geodesic = with_space("geodesic", "certified geodesic between two vertices");
  geodesic->add_option("--from", from, "vertex: word or word#peripheral:depth")->required();
  geodesic->add_option("--to", to)->required();

  std::string center;
  int         ball_k = 1;
  auto*       ball = with_space("ball", "ball of radius K about a vertex");
  ball->add_option("--center", center)->required();
  ball->add_option("--k", ball_k, "ball radius")->check(CLI::NonNegativeNumber);

  long  samples = 1000;
  auto* delta = with_space("delta-scan", "thin-triangle estimate over seeded triples");
  delta->add_option("--samples", samples)->check(CLI::PositiveNumber);

  std::optional<int> m_level;
  long               delta_samples = 1000;
  auto*              convexity = with_space("convexity-check", "m-horoball convexity on seeded pairs");
  convexity->add_option("--samples", samples)->check(CLI::PositiveNumber);
  convexity->add_option("--m", m_level, "horoball depth (default: max(delta estimate, 1))");
  convexity->add_option("--delta-samples", delta_samples)->check(CLI::PositiveNumber);

  std::string        loop_text, forbid;
  std::optional<long> bound;
  long               budget = 10'000;
  auto*              contract = with_space("contract", "contract a closed loop with a certificate");
  contract->add_option("--loop", loop_text, "closed vertex list v0,v1,...,v0")->required();
  auto* center_opt = contract->add_option("--center", center, "vertex for the radius check");
  auto* bound_opt  = contract->add_option("--bound", bound, "radius the region must stay within");
  center_opt->needs(bound_opt);
  bound_opt->needs(center_opt);
  contract->add_option("--forbid-ball", forbid, "W,K: region must avoid B(W, K)");
  contract->add_option("--max-moves", budget, "search budget for Y contractions")->check(CLI::PositiveNumber);

  std::string        r_text, s_text, gamma_text, beta_text;
  std::optional<int> delta_hat;
  auto*              fill = with_space("fill-rectangle", "fill a fellow-traveling rectangle");
  fill->add_option("--r", r_text, "first geodesic segment v0,...,vn")->required();
  fill->add_option("--s", s_text, "second geodesic segment, same length")->required();
  fill->add_option("--gamma", gamma_text, "arc from r's start to s's start (default: a geodesic)");
  fill->add_option("--beta", beta_text, "arc from r's end to s's end (default: a geodesic)");
  fill->add_option("--delta", delta_hat, "matching constant (default: largest matched distance)");
  fill->add_option("--center", center, "vertex whose distance to the region is reported");
  fill->add_option("--max-moves", budget)->check(CLI::PositiveNumber);

  std::string complex_path, strip_path;
  auto*       excise_cmd = app.add_subcommand("excise", "disk pairs of a strip map");
  excise_cmd->add_option("--complex", complex_path, "cusped complex document")->required();
  excise_cmd->add_option("--stripmap", strip_path, "strip map document")->required();
  excise_cmd->add_option("--seed", seed);
  excise_cmd->add_option("--out", out);

  std::string format = "json";
  auto*       export_cmd = with_space("export", "export the complex");
  export_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "graph"}));

  bool  quick = false;
  auto* selfcheck = app.add_subcommand("selfcheck", "run the acceptance suites");
  selfcheck->add_flag("--quick", quick, "smaller corpora");
  selfcheck->add_option("--seed", seed);
  selfcheck->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForVersion const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (build->parsed()) {
      auto c = space.load();
      write_text(out, dump(document("cusped", seed, cusped_json(c))));
    } else if (geodesic->parsed()) {
      auto   c = space.load();
      auto   m = cusped_metric(c);
      int    u = parse_vertex_spec(c, from), v = parse_vertex_spec(c, to);
      auto   d = m.distance(u, v);
      if (d.value < 0) throw Error("no path inside the truncation");
      Json body{{"from", c.describe(u)}, {"to", c.describe(v)}, {"length", d.value},
                {"exact", d.exact}, {"all_geodesics_inside", m.all_geodesics_inside(u, v, d.value)},
                {"path", named_path(c, m.geodesic(u, v))}};
      write_text(out, dump(document("geodesic", seed, body)));
    } else if (ball->parsed()) {
      auto c = space.load();
      auto m = cusped_metric(c);
      int  v = parse_vertex_spec(c, center);
      auto b = m.ball(v, ball_k);
      Json body{{"center", c.describe(v)}, {"k", ball_k}, {"vertices", b.vertices},
                {"names", names(c, b.vertices)}, {"edges", b.edges}, {"faces", b.faces},
                {"touches_frontier", b.touches_frontier}};
      write_text(out, dump(document("ball", seed, body)));
    } else if (delta->parsed()) {
      auto        c = space.load();
      auto        m = cusped_metric(c);
      DeltaConfig cfg;
      cfg.seed    = seed;
      cfg.samples = samples;
      Json body   = delta_json(c, delta_estimate(m, cfg));
      body["radius"]    = c.radius;
      body["depth_cap"] = c.depth_cap;
      write_text(out, dump(document("delta", seed, body)));
    } else if (convexity->parsed()) {
      auto c = space.load();
      auto m = cusped_metric(c);
      int  level;
      if (m_level) {
        level = *m_level;
      } else {
        DeltaConfig cfg;
        cfg.seed    = seed;
        cfg.samples = delta_samples;
        level       = std::max(delta_estimate(m, cfg).delta, 1);
      }
      auto rep = convexity_check(m, level, samples, seed);
      write_text(out, dump(document("convexity", seed, convexity_json(c, rep))));
    } else if (contract->parsed()) {
      auto c    = space.load();
      auto m    = cusped_metric(c);
      auto loop = path_through(c.X, vertex_list(c, loop_text));
      auto res  = contract_loop(c, m, loop, budget);
      std::optional<std::vector<int>> forbidden;
      Json                            body{{"route", res.route},
                                           {"K", res.K},
                                           {"bound", res.bound},
                                           {"measured_y", res.measured_y},
                                           {"satisfied", res.satisfied},
                                           {"loop", named_path(c, loop)},
                                           {"certificate", certificate_json(res.certificate)}};
      body["recipe"] = {{"horoball", res.recipe.horoball}, {"pushdown", res.recipe.pushdown},
                        {"N", res.recipe.N}, {"N1", res.recipe.N1}};
      std::vector<std::string> failed;
      if (bound) {
        int  w     = parse_vertex_spec(c, center);
        int  reach = farthest(m, w, res.certificate.region);
        bool ok    = reach >= 0 && reach <= *bound;
        body["center"] = {{"vertex", c.describe(w)}, {"bound", *bound}, {"achieved", reach}, {"satisfied", ok}};
        if (!ok) failed.push_back("region leaves B(" + center + ", " + std::to_string(*bound) + ")");
      }
      if (!forbid.empty()) {
        auto parts = split(forbid, ',');
        if (parts.size() != 2) throw UsageError("--forbid-ball needs W,K");
        int w = parse_vertex_spec(c, parts[0]);
        int k = 0;
        try {
          k = std::stoi(parts[1]);
        } catch (std::exception const&) {
          throw UsageError("--forbid-ball radius must be an integer");
        }
        forbidden = m.ball(w, k).vertices;
        body["forbidden_ball"] = {{"center", c.describe(w)}, {"k", k}};
      }
      auto report = verify_certificate(c.X, res.certificate, forbidden ? &*forbidden : nullptr);
      body["verified"] = report.valid;
      body["problems"] = report.problems;
      write_text(out, dump(document("contraction", seed, body)));
      if (!report.valid) failed.push_back(report.problems.empty() ? "certificate rejected" : report.problems.front());
      if (!failed.empty()) throw Error(failed.front());
    } else if (fill->parsed()) {
      auto c = space.load();
      auto m = cusped_metric(c);
      auto r = path_through(c.X, vertex_list(c, r_text));
      auto s = path_through(c.X, vertex_list(c, s_text));
      if (r.length() != s.length()) throw Error("--r and --s need the same length");
      auto arc = [&](std::string const& text, int a, int b) {
        return text.empty() ? m.geodesic(a, b) : path_through(c.X, vertex_list(c, text));
      };
      auto gamma = arc(gamma_text, r.vertices.front(), s.vertices.front());
      auto beta  = arc(beta_text, r.vertices.back(), s.vertices.back());
      int  dh    = 0;
      if (delta_hat) {
        dh = *delta_hat;
      } else {
        for (std::size_t j = 0; j < r.vertices.size(); ++j) {
          dh = std::max(dh, m.row(r.vertices[j])[static_cast<std::size_t>(s.vertices[j])]);
        }
      }
      int  w   = center.empty() ? -1 : parse_vertex_spec(c, center);
      auto res = fill_rectangle(c, m, r, s, gamma, beta, dh, w, budget);
      auto report = verify_certificate(c.X, res.certificate);
      Json body{{"delta", dh},
                {"quad_lengths", res.quad_lengths},
                {"max_quad", res.max_quad},
                {"quad_bound", 2 * dh + 2},
                {"gamma", named_path(c, gamma)},
                {"beta", named_path(c, beta)},
                {"verified", report.valid},
                {"certificate", certificate_json(res.certificate)}};
      if (w >= 0) body["center"] = {{"vertex", c.describe(w)}, {"min_distance", res.min_center_distance}};
      write_text(out, dump(document("rectangle", seed, body)));
      if (!report.valid) throw Error("certificate rejected: " + report.problems.front());
    } else if (excise_cmd->parsed()) {
      auto c     = cusped_from_json(read_json(complex_path));
      auto sdoc  = read_json(strip_path);
      if (sdoc.contains("schema")) expect_document(sdoc, "stripmap");
      auto map   = strip_map_from_json(sdoc);
      auto pairs = excise(c, map);
      auto rep   = validate_excision(c, map, pairs);
      Json js    = Json::array();
      for (auto const& p : pairs) js.push_back(disk_pair_json(map.strip, p));
      Json body{{"pairs", js}, {"valid", rep.valid}, {"violations", rep.violations},
                {"width", map.strip.width()}, {"height", map.strip.height()}};
      write_text(out, dump(document("excision", seed, body)));
      if (!rep.valid) throw Error("excision failed validation: " + rep.violations.front());
    } else if (export_cmd->parsed()) {
      auto c = space.load();
      if (format == "graph") {
        write_text(out, graph_dot(c.X, [&](int v) { return c.describe(v); }));
      } else {
        Json body = complex_json(c.X);
        body["names"] = names(c, [&] {
          std::vector<int> all(static_cast<std::size_t>(c.X.vertex_count()));
          for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
          return all;
        }());
        write_text(out, dump(document("complex", seed, body)));
      }
    } else if (selfcheck->parsed()) {
      SelfcheckOptions opt;
      opt.quick = quick;
      opt.seed  = seed;
      auto results = run_selfcheck(opt);
      std::ostringstream text;
      Json               list = Json::array();
      int                failed = 0;
      for (auto const& r : results) {
        text << (r.passed ? "[PASS] " : "[FAIL] ") << r.number << " " << r.name << ": " << r.detail << "\n";
        list.push_back({{"number", r.number}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        failed += !r.passed;
      }
      if (out.empty()) {
        std::cout << text.str();
      } else {
        write_text(out, dump(document("selfcheck", seed, {{"criteria", list}, {"quick", quick}})));
      }
      if (failed) throw Error(std::to_string(failed) + " self-check criteria failed");
    }
  } catch (UsageError const& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

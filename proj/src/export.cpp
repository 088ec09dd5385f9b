#include "cusp/export.hpp"

#include <map>
#include <sstream>

#include "cusp/error.hpp"

namespace cusp {

Json document(std::string const& kind, std::uint64_t seed, Json body) {
  Json doc = body.is_object() ? std::move(body) : Json{{"result", std::move(body)}};
  doc["schema"]         = "cusp." + kind;
  doc["schema_version"] = kSchemaVersion;
  doc["seed"]           = seed;
  return doc;
}

void expect_document(Json const& doc, std::string const& kind) {
  if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != "cusp." + kind) {
    throw Error("expected a cusp." + kind + " document");
  }
  if (doc.value("schema_version", 0) != kSchemaVersion) {
    throw Error("unsupported schema version for cusp." + kind);
  }
}

Json complex_json(Complex2 const& c) {
  Json vs = Json::array(), es = Json::array(), fs = Json::array();
  for (int v = 0; v < c.vertex_count(); ++v) {
    auto const& x = c.vertex(v);
    Json        j{{"id", v}, {"kind", to_string(x.kind)}, {"frontier", x.frontier}};
    j["word"] = x.word;
    if (x.kind == VertexKind::horo) {
      j["coset"] = x.coset;
      j["base"]  = x.base;
      j["depth"] = x.depth;
    }
    vs.push_back(std::move(j));
  }
  for (int e = 0; e < c.edge_count(); ++e) {
    auto const& x = c.edge(e);
    es.push_back({{"id", e}, {"u", x.u}, {"v", x.v}, {"kind", to_string(x.kind)}, {"label", x.label}});
  }
  for (int f = 0; f < c.face_count(); ++f) {
    auto const& x = c.face(f);
    fs.push_back({{"id", f}, {"kind", to_string(x.kind)}, {"label", x.label}, {"edges", x.edges},
                  {"vertices", x.vertices}});
  }
  return {{"vertices", vs}, {"edges", es}, {"faces", fs}};
}

Json cusped_summary(CuspedComplex const& c) {
  std::map<std::string, long> vk, ek, fk;
  for (auto const& v : c.X.vertices()) ++vk[to_string(v.kind)];
  for (auto const& e : c.X.edges()) ++ek[to_string(e.kind)];
  for (auto const& f : c.X.faces()) ++fk[to_string(f.kind)];
  Json per = Json::array();
  for (std::size_t i = 0; i < c.presentation.peripherals.size(); ++i) {
    long n = 0;
    for (auto const& k : c.cosets) n += k.peripheral == static_cast<int>(i);
    per.push_back({{"peripheral", c.presentation.peripherals[i].name}, {"cosets", n}});
  }
  long frontier = 0;
  for (auto const& v : c.X.vertices()) frontier += v.frontier;
  return {{"vertices", c.X.vertex_count()}, {"edges", c.X.edge_count()}, {"faces", c.X.face_count()},
          {"y_vertices", c.Y.vertex_count()}, {"frontier_vertices", frontier},
          {"vertices_by_kind", vk}, {"edges_by_kind", ek}, {"faces_by_kind", fk},
          {"cosets_by_peripheral", per}};
}

Json cusped_json(CuspedComplex const& c) {
  Json names = Json::array();
  for (int v = 0; v < c.X.vertex_count(); ++v) names.push_back(c.describe(v));
  Json cosets = Json::array();
  for (auto const& k : c.cosets) {
    cosets.push_back({{"peripheral", k.peripheral}, {"representative", k.representative},
                      {"members", k.members}});
  }
  return {{"build", {{"presentation", c.presentation.source}, {"radius", c.radius},
                     {"depth_cap", c.depth_cap}, {"basepoint", c.basepoint}}},
          {"summary", cusped_summary(c)},
          {"names", names},
          {"cosets", cosets},
          {"complex", complex_json(c.X)}};
}

CuspedComplex cusped_from_json(Json const& doc) {
  expect_document(doc, "cusped");
  auto const& b = doc.at("build");
  auto c = build_cusped_space(parse_presentation(b.at("presentation").get<std::string>()),
                              b.at("radius").get<int>(), b.at("depth_cap").get<int>());
  auto const& s = doc.at("summary");
  if (s.at("vertices").get<int>() != c.X.vertex_count() || s.at("edges").get<int>() != c.X.edge_count()
      || s.at("faces").get<int>() != c.X.face_count()) {
    throw Error("rebuilt complex does not match the exported counts");
  }
  return c;
}

std::string graph_dot(Complex2 const& c, std::function<std::string(int)> const& name) {
  std::ostringstream out;
  out << "graph complex {\n";
  for (int v = 0; v < c.vertex_count(); ++v) {
    std::string label = name ? name(v) : std::to_string(v);
    out << "  " << v << " [label=" << Json(label).dump() << ", depth=" << c.vertex(v).depth;
    if (c.vertex(v).frontier) out << ", frontier=true";
    out << "];\n";
  }
  for (int e = 0; e < c.edge_count(); ++e) {
    auto const& x = c.edge(e);
    out << "  " << x.u << " -- " << x.v << " [kind=" << to_string(x.kind) << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json path_json(EdgePath const& p) { return {{"vertices", p.vertices}, {"edges", p.edges}}; }

EdgePath path_from_json(Json const& j) {
  EdgePath p;
  p.vertices = j.at("vertices").get<std::vector<int>>();
  p.edges    = j.at("edges").get<std::vector<int>>();
  return p;
}

Json certificate_json(HomotopyCertificate const& cert) {
  Json moves = Json::array();
  for (auto const& m : cert.moves) {
    Json j{{"kind", to_string(m.kind)}, {"position", m.position}};
    if (m.kind == MoveKind::face_cross) {
      j["face"]        = m.face;
      j["replaced"]    = m.replaced;
      j["replacement"] = m.replacement;
    } else {
      j["edge"] = m.edge;
    }
    moves.push_back(std::move(j));
  }
  return {{"start", path_json(cert.start)}, {"end", path_json(cert.end)}, {"moves", moves},
          {"region", cert.region}};
}

HomotopyCertificate certificate_from_json(Json const& j) {
  HomotopyCertificate cert;
  cert.start  = path_from_json(j.at("start"));
  cert.end    = path_from_json(j.at("end"));
  cert.region = j.at("region").get<std::vector<int>>();
  for (auto const& m : j.at("moves")) {
    auto kind = m.at("kind").get<std::string>();
    int  pos  = m.at("position").get<int>();
    if (kind == to_string(MoveKind::face_cross)) {
      cert.moves.push_back(face_cross(m.at("face").get<int>(), pos,
                                      m.at("replaced").get<std::vector<int>>(),
                                      m.at("replacement").get<std::vector<int>>()));
    } else if (kind == to_string(MoveKind::backtrack_insert)) {
      cert.moves.push_back(backtrack_insert(pos, m.at("edge").get<int>()));
    } else if (kind == to_string(MoveKind::backtrack_delete)) {
      cert.moves.push_back(backtrack_delete(pos, m.at("edge").get<int>()));
    } else {
      throw Error("unknown move kind " + kind);
    }
  }
  return cert;
}

Json strip_map_json(StripMap const& m) {
  Strip const& s    = m.strip;
  Json         rows = Json::array();
  for (int j = 0; j <= s.height(); ++j) {
    Json row = Json::array();
    for (int i = 0; i <= s.width(); ++i) row.push_back(m.image[static_cast<std::size_t>(s.vertex(i, j))]);
    rows.push_back(std::move(row));
  }
  return {{"width", s.width()}, {"height", s.height()}, {"map", rows}};
}

StripMap strip_map_from_json(Json const& j) {
  int         w    = j.at("width").get<int>();
  int         h    = j.value("height", 1);
  auto const& rows = j.at("map");
  if (!rows.is_array() || static_cast<int>(rows.size()) != h + 1) {
    throw Error("strip map needs height + 1 rows");
  }
  StripMap m{Strip(w, h), {}};
  m.image.resize(static_cast<std::size_t>(m.strip.vertex_count()));
  for (int r = 0; r <= h; ++r) {
    auto const& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != w + 1) {
      throw Error("strip map row " + std::to_string(r) + " needs width + 1 entries");
    }
    for (int i = 0; i <= w; ++i) {
      m.image[static_cast<std::size_t>(m.strip.vertex(i, r))] = row[static_cast<std::size_t>(i)].get<int>();
    }
  }
  return m;
}

Json disk_pair_json(Strip const& s, DiskPair const& d) {
  Json boundary = Json::array();
  for (int v : d.boundary) {
    auto [i, j] = s.coords(v);
    boundary.push_back({i, j});
  }
  return {{"coset", d.coset}, {"triangles", d.triangles}, {"boundary", boundary},
          {"truncated", d.truncated}, {"class", d.cls}};
}

Json delta_json(CuspedComplex const& c, DeltaReport const& r) {
  Json j{{"delta", r.delta}, {"triples_sampled", r.triples_sampled},
         {"triples_certified", r.triples_certified}, {"comparisons_skipped", r.comparisons_skipped}};
  if (r.witness) {
    auto const& w = *r.witness;
    Json corners  = Json::array();
    for (int x : w.corners) corners.push_back(c.describe(x));
    j["witness"] = {{"corners", corners}, {"corner", w.corner}, {"t", w.t},
                    {"left", c.describe(w.left)}, {"right", c.describe(w.right)}, {"value", w.value}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json convexity_json(CuspedComplex const& c, ConvexityReport const& r) {
  Json vs = Json::array();
  for (auto const& v : r.violations) {
    vs.push_back({{"from", c.describe(v.from)}, {"to", c.describe(v.to)}, {"witness", c.describe(v.witness)}});
  }
  return {{"m", r.m}, {"vacuous", r.vacuous}, {"pairs_sampled", r.pairs_sampled},
          {"pairs_certified", r.pairs_certified}, {"pairs_uncertified", r.pairs_uncertified},
          {"violations", vs}};
}

std::string dump(Json const& j) { return j.dump(2) + "\n"; }

}  // namespace cusp

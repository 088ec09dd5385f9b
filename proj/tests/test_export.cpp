#include <sstream>
#include <set>

#include "cusp/error.hpp"
#include "cusp/export.hpp"
#include "cusp/strip_corpus.hpp"
#include "doctest.h"

using namespace cusp;

namespace {

CuspedComplex small_space() {
  return build_cusped_space(parse_presentation("gens a,b; rels ; periph P: a [free]"), 2, 2);
}

}  // namespace

TEST_CASE("documents carry schema, version and seed") {
  auto doc = document("thing", 42, Json{{"x", 1}});
  CHECK(doc["schema"] == "cusp.thing");
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["seed"] == 42);
  CHECK(doc["x"] == 1);
  CHECK_NOTHROW(expect_document(doc, "thing"));
  CHECK_THROWS_AS(expect_document(doc, "other"), Error);
  doc["schema_version"] = kSchemaVersion + 1;
  CHECK_THROWS_AS(expect_document(doc, "thing"), Error);

  auto wrapped = document("list", 1, Json::array({1, 2}));
  CHECK(wrapped["result"].size() == 2);
}

TEST_CASE("complex export lists every cell once, in id order") {
  auto c = small_space();
  auto j = complex_json(c.X);
  REQUIRE(j["vertices"].size() == static_cast<std::size_t>(c.X.vertex_count()));
  REQUIRE(j["edges"].size() == static_cast<std::size_t>(c.X.edge_count()));
  REQUIRE(j["faces"].size() == static_cast<std::size_t>(c.X.face_count()));
  for (int v = 0; v < c.X.vertex_count(); ++v) CHECK(j["vertices"][static_cast<std::size_t>(v)]["id"] == v);
  long horo = 0;
  for (auto const& v : j["vertices"]) horo += v["kind"] == "horo";
  CHECK(horo == c.X.vertex_count() - c.Y.vertex_count());
  // sorted keys make the text deterministic
  CHECK(dump(j) == dump(complex_json(small_space().X)));
}

TEST_CASE("cusped documents rebuild the same complex") {
  auto c   = small_space();
  auto doc = document("cusped", 7, cusped_json(c));
  auto back = cusped_from_json(Json::parse(dump(doc)));
  CHECK(back.X.vertex_count() == c.X.vertex_count());
  CHECK(back.X.edge_count() == c.X.edge_count());
  CHECK(back.X.face_count() == c.X.face_count());
  CHECK(dump(cusped_json(back)) == dump(cusped_json(c)));

  auto bad = doc;
  bad["summary"]["vertices"] = c.X.vertex_count() + 1;
  CHECK_THROWS_AS(cusped_from_json(bad), Error);
  CHECK_THROWS_AS(cusped_from_json(Json{{"schema", "cusp.other"}}), Error);
}

TEST_CASE("summary counts by kind add up") {
  auto c = small_space();
  auto s = cusped_summary(c);
  long vs = 0, es = 0, fs = 0;
  for (auto const& [k, n] : s["vertices_by_kind"].items()) vs += n.get<long>();
  for (auto const& [k, n] : s["edges_by_kind"].items()) es += n.get<long>();
  for (auto const& [k, n] : s["faces_by_kind"].items()) fs += n.get<long>();
  CHECK(vs == c.X.vertex_count());
  CHECK(es == c.X.edge_count());
  CHECK(fs == c.X.face_count());
  CHECK(s["cosets_by_peripheral"][0]["cosets"] == static_cast<long>(c.cosets.size()));
}

TEST_CASE("graph export has one line per vertex and edge") {
  auto c   = small_space();
  auto dot = graph_dot(c.X, [&](int v) { return c.describe(v); });
  long vertex_lines = 0, edge_lines = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) {
    if (line.find(" -- ") != std::string::npos) {
      ++edge_lines;
    } else if (line.find("[label=") != std::string::npos) {
      ++vertex_lines;
    }
  }
  CHECK(vertex_lines == c.X.vertex_count());
  CHECK(edge_lines == c.X.edge_count());
  CHECK(dot.rfind("graph complex {", 0) == 0);
}

TEST_CASE("paths and certificates round-trip") {
  auto c    = small_space();
  auto m    = cusped_metric(c);
  auto loop = path_through(c.X, {parse_vertex_spec(c, "e"), parse_vertex_spec(c, "a"),
                                  parse_vertex_spec(c, "a#0:1"), parse_vertex_spec(c, "e#0:1"),
                                  parse_vertex_spec(c, "e")});
  auto p = path_from_json(Json::parse(path_json(loop).dump()));
  CHECK(p.vertices == loop.vertices);
  CHECK(p.edges == loop.edges);

  auto res  = contract_loop(c, m, loop);
  auto back = certificate_from_json(Json::parse(certificate_json(res.certificate).dump()));
  CHECK(back.moves.size() == res.certificate.moves.size());
  CHECK(back.region == res.certificate.region);
  CHECK(verify_certificate(c.X, back).valid);
  CHECK_THROWS_AS(certificate_from_json(Json{{"start", path_json(loop)},
                                             {"end", path_json(loop)},
                                             {"region", Json::array()},
                                             {"moves", Json::array({{{"kind", "teleport"}, {"position", 0}}})}}),
                  Error);
}

TEST_CASE("strip maps round-trip and reject ragged rows") {
  auto c = build_cusped_space(parse_presentation("gens a,b; rels ; periph P: a [free]"), 3, 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto m    = random_strip_map(c, seed);
    auto back = strip_map_from_json(Json::parse(strip_map_json(m).dump()));
    CHECK(back.strip.width() == m.strip.width());
    CHECK(back.strip.height() == m.strip.height());
    CHECK(back.image == m.image);
  }
  CHECK_THROWS_AS(strip_map_from_json(Json{{"width", 2}, {"map", {{0, 0, 0}}}}), Error);
  CHECK_THROWS_AS(strip_map_from_json(Json{{"width", 2}, {"map", {{0, 0, 0}, {0, 0}}}}), Error);
  auto one = strip_map_from_json(Json{{"width", 1}, {"map", {{0, 1}, {0, 1}}}});
  CHECK(one.strip.height() == 1);
}

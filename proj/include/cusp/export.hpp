#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "json.hpp"

#include "cusp/certificate.hpp"
#include "cusp/cusped.hpp"
#include "cusp/excision.hpp"
#include "cusp/homotopy.hpp"
#include "cusp/metric.hpp"

namespace cusp {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// {"schema": "cusp.<kind>", "schema_version": 1, "seed": seed} merged with body.
Json document(std::string const& kind, std::uint64_t seed, Json body);
// Checks the schema tag and version; throws Error otherwise.
void expect_document(Json const& doc, std::string const& kind);

Json complex_json(Complex2 const& c);
Json cusped_summary(CuspedComplex const& c);
// Build parameters, summary, vertex names, cosets and the complex itself.
Json cusped_json(CuspedComplex const& c);
// Rebuilds the complex from the embedded parameters and checks the counts.
CuspedComplex cusped_from_json(Json const& doc);

// 1-skeleton in Graphviz DOT.
std::string graph_dot(Complex2 const& c, std::function<std::string(int)> const& name = {});

Json     path_json(EdgePath const& p);
EdgePath path_from_json(Json const& j);

Json                certificate_json(HomotopyCertificate const& cert);
HomotopyCertificate certificate_from_json(Json const& j);

Json     strip_map_json(StripMap const& m);
StripMap strip_map_from_json(Json const& j);

Json disk_pair_json(Strip const& s, DiskPair const& d);

Json delta_json(CuspedComplex const& c, DeltaReport const& r);
Json convexity_json(CuspedComplex const& c, ConvexityReport const& r);

// Dump with two-space indentation and a trailing newline.
std::string dump(Json const& j);

}  // namespace cusp

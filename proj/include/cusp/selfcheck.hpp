#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cusp/horoball.hpp"

namespace cusp {

struct CheckResult {
  int         number = 0;
  std::string name;
  bool        passed = false;
  std::string detail;
};

struct SelfcheckOptions {
  bool          quick = false;  // smaller corpora, for interactive runs
  std::uint64_t seed  = 1;
};

CheckResult check_horoball_normal_form(SelfcheckOptions const& opt);
CheckResult check_horoball_contraction(SelfcheckOptions const& opt);
CheckResult check_halving_and_pushdown(SelfcheckOptions const& opt);
CheckResult check_thin_triangles(SelfcheckOptions const& opt);
CheckResult check_horoball_convexity(SelfcheckOptions const& opt);
CheckResult check_excision(SelfcheckOptions const& opt);
CheckResult check_disk_pair_oracles(SelfcheckOptions const& opt);
CheckResult check_coloring(SelfcheckOptions const& opt);
CheckResult check_rectangles(SelfcheckOptions const& opt);

std::vector<CheckResult> run_selfcheck(SelfcheckOptions const& opt);

// Connected graphs on n vertices, one per isomorphism class.
std::vector<BaseGraph> connected_graphs(int n);
// Random connected graph: a random spanning tree plus each other edge with
// probability p.
BaseGraph random_connected_graph(int n, double p, std::uint64_t seed);

}  // namespace cusp

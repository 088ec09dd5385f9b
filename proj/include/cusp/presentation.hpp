#pragma once

#include <string>
#include <vector>

#include "cusp/normal_form.hpp"
#include "cusp/word.hpp"

namespace cusp {

struct PeripheralSpec {
  std::string      name;
  std::vector<int> generators;  // indices into GroupPresentation::generators
  std::vector<int> relators;    // indices into GroupPresentation::relators
  Family           family = Family::free;
};

// A finite presentation together with its peripheral subpresentations and
// the normal-form provider used to identify group elements.
struct GroupPresentation {
  std::vector<std::string>    generators;
  std::vector<Word>           relators;
  std::vector<PeripheralSpec> peripherals;
  ProviderPtr                 provider;
  std::string                 source;  // text the presentation was parsed from

  int  generator_index(std::string const& name) const;
  Word parse_word(std::string const& text) const;
  std::string format(Word const& w) const;
};

// Line-oriented format; ';' also separates lines.
//
//   gens a,b,c
//   rels [a,b], c^3
//   periph P: a,b [free-abelian]
//   family product          (optional, otherwise inferred)
//   factor free-abelian: a,b
//   factor table: c
//   act c: 1 2 0            (table families: right action on 0..n-1)
//
// Words are juxtaposed generator names; a ' suffix inverts, ^n raises to a
// power, [u,v] is u v u' v', and parentheses group.
GroupPresentation parse_presentation(std::string const& text);

// Structural check of the invariants a GroupPresentation must satisfy.
// Returns human-readable violations; empty iff valid.
std::vector<std::string> validate_presentation(GroupPresentation const& p);

}  // namespace cusp

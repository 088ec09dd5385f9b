#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cusp/word.hpp"

namespace cusp {

enum class Family { free, free_abelian, surface, direct_product, table };

std::string to_string(Family f);
Family      family_from_string(std::string const& tag);

// Exact word-problem service for one of the supported group families.
// Generators are global indices into the owning presentation; a provider
// only accepts letters over its own alphabet.
//
// Every shipped family has a geodesic normal form: |normal_form(w)| is the
// word length of the element with respect to the provider's alphabet.
class NormalFormProvider {
 public:
  virtual ~NormalFormProvider() = default;

  virtual Family family() const noexcept = 0;

  std::vector<int> const& alphabet() const noexcept { return _alphabet; }

  virtual Word normal_form(Word const& w) const = 0;

  virtual bool equal(Word const& u, Word const& v) const;

  // A hashable invariant of the element: equal elements have equal keys.
  // For families whose normal form is cheap this is the normal form itself.
  virtual Word bucket_key(Word const& w) const;

  // True iff the bucket key alone decides equality.
  virtual bool key_is_exact() const noexcept { return true; }

  // Membership of the element w in the subgroup generated by `gens`.
  // Default: every letter of normal_form(w) lies in gens, which is correct
  // for families whose normal form is closed under passing to generator
  // subsets (free, free-abelian, products of these).
  virtual bool in_subgroup(Word const& w, std::span<int const> gens) const;

  // Word length of w in the subgroup's own generators. Throws if w is not
  // in the subgroup.
  virtual int subgroup_length(Word const& w, std::span<int const> gens) const;

  void check_alphabet(Word const& w) const;

 protected:
  explicit NormalFormProvider(std::vector<int> alphabet);

  bool owns(int generator) const noexcept;

 private:
  std::vector<int> _alphabet;
};

using ProviderPtr = std::shared_ptr<NormalFormProvider const>;

ProviderPtr make_free(std::vector<int> alphabet);

// Sorted exponent form a^i b^j ... in alphabet order.
ProviderPtr make_free_abelian(std::vector<int> alphabet);

// Closed orientable surface of genus g >= 2 with alphabet a1,b1,...,ag,bg
// and relator [a1,b1]...[ag,bg]. Equality by Dehn's algorithm; the normal
// form is the shortlex-least geodesic representative.
ProviderPtr make_surface(std::vector<int> alphabet);

// Letters of distinct factors commute. The normal form concatenates the
// factor normal forms in factor order.
ProviderPtr make_direct_product(std::vector<ProviderPtr> factors);

// Finite group given by the right action of each generator on the element
// set {0, ..., n-1}; element 0 is the identity and element x is identified
// with the image of 0 under any word representing it.
ProviderPtr make_table(std::vector<int> alphabet,
                       std::vector<std::vector<int>> actions);

// Dehn's algorithm for a single cyclically reduced relator whose symmetrized
// closure satisfies C'(1/6). Returns the Dehn-reduced word; the input is
// trivial iff the result is empty.
Word dehn_reduce(Word const& w, Word const& relator);

}  // namespace cusp

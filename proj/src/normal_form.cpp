#include "cusp/normal_form.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>

#include "cusp/error.hpp"

namespace cusp {

std::string to_string(Family f) {
  switch (f) {
    case Family::free:
      return "free";
    case Family::free_abelian:
      return "free-abelian";
    case Family::surface:
      return "surface";
    case Family::direct_product:
      return "product";
    case Family::table:
      return "table";
  }
  return "?";
}

Family family_from_string(std::string const& tag) {
  if (tag == "free") {
    return Family::free;
  } else if (tag == "free-abelian") {
    return Family::free_abelian;
  } else if (tag == "surface") {
    return Family::surface;
  } else if (tag == "product") {
    return Family::direct_product;
  } else if (tag == "table") {
    return Family::table;
  }
  throw Error("unsupported family tag '" + tag + "'");
}

////////////////////////////////////////////////////////////////////////
// NormalFormProvider
////////////////////////////////////////////////////////////////////////

NormalFormProvider::NormalFormProvider(std::vector<int> alphabet)
    : _alphabet(std::move(alphabet)) {
  std::sort(_alphabet.begin(), _alphabet.end());
  if (std::adjacent_find(_alphabet.begin(), _alphabet.end())
      != _alphabet.end()) {
    throw Error("duplicate generator in provider alphabet");
  }
}

bool NormalFormProvider::owns(int generator) const noexcept {
  return std::binary_search(_alphabet.begin(), _alphabet.end(), generator);
}

void NormalFormProvider::check_alphabet(Word const& w) const {
  for (Letter l : w) {
    if (l == 0 || !owns(generator_of(l))) {
      throw Error("letter outside provider alphabet (generator "
                  + std::to_string(generator_of(l)) + ")");
    }
  }
}

bool NormalFormProvider::equal(Word const& u, Word const& v) const {
  return normal_form(u) == normal_form(v);
}

Word NormalFormProvider::bucket_key(Word const& w) const {
  return normal_form(w);
}

bool NormalFormProvider::in_subgroup(Word const&           w,
                                     std::span<int const> gens) const {
  for (Letter l : normal_form(w)) {
    if (std::find(gens.begin(), gens.end(), generator_of(l)) == gens.end()) {
      return false;
    }
  }
  return true;
}

int NormalFormProvider::subgroup_length(Word const&           w,
                                        std::span<int const> gens) const {
  if (!in_subgroup(w, gens)) {
    throw Error("element is not in the subgroup");
  }
  return static_cast<int>(normal_form(w).size());
}

namespace {

  ////////////////////////////////////////////////////////////////////////
  // Free groups
  ////////////////////////////////////////////////////////////////////////

  class FreeProvider final : public NormalFormProvider {
   public:
    explicit FreeProvider(std::vector<int> alphabet)
        : NormalFormProvider(std::move(alphabet)) {}

    Family family() const noexcept override { return Family::free; }

    Word normal_form(Word const& w) const override {
      check_alphabet(w);
      return free_reduce(w);
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Free abelian groups
  ////////////////////////////////////////////////////////////////////////

  class FreeAbelianProvider final : public NormalFormProvider {
   public:
    explicit FreeAbelianProvider(std::vector<int> alphabet)
        : NormalFormProvider(std::move(alphabet)) {}

    Family family() const noexcept override { return Family::free_abelian; }

    Word normal_form(Word const& w) const override {
      check_alphabet(w);
      std::map<int, int> exps;
      for (Letter l : w) {
        exps[generator_of(l)] += is_inverse(l) ? -1 : 1;
      }
      Word out;
      for (auto [g, e] : exps) {
        for (int i = 0; i < std::abs(e); ++i) {
          out.push_back(letter(g, e < 0));
        }
      }
      return out;
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Surface groups
  ////////////////////////////////////////////////////////////////////////

  std::vector<int> abelianization(Word const&             w,
                                  std::vector<int> const& alphabet) {
    std::vector<int> out(alphabet.size(), 0);
    for (Letter l : w) {
      auto it = std::lower_bound(alphabet.begin(), alphabet.end(),
                                 generator_of(l));
      out[static_cast<std::size_t>(it - alphabet.begin())]
          += is_inverse(l) ? -1 : 1;
    }
    return out;
  }

  class SurfaceProvider final : public NormalFormProvider {
   public:
    explicit SurfaceProvider(std::vector<int> const& a)
        : NormalFormProvider(a) {
      if (a.size() < 4 || a.size() % 2 != 0) {
        throw Error("surface family needs 2g >= 4 generators");
      }
      for (std::size_t i = 0; i < a.size(); i += 2) {
        _relator.push_back(letter(a[i]));
        _relator.push_back(letter(a[i + 1]));
        _relator.push_back(letter(a[i], true));
        _relator.push_back(letter(a[i + 1], true));
      }
    }

    Family family() const noexcept override { return Family::surface; }

    Word const& relator() const noexcept { return _relator; }

    bool equal(Word const& u, Word const& v) const override {
      check_alphabet(u);
      check_alphabet(v);
      return dehn_reduce(concat(u, inverse(v)), _relator).empty();
    }

    Word bucket_key(Word const& w) const override {
      check_alphabet(w);
      auto ab = abelianization(w, alphabet());
      return Word(ab.begin(), ab.end());
    }

    bool key_is_exact() const noexcept override { return false; }

    bool in_subgroup(Word const& w, std::span<int const> gens) const override {
      if (gens.size() == 0) {
        return dehn_reduce(w, _relator).empty();
      }
      for (int g : alphabet()) {
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) {
          throw Error(
              "membership in proper subgroups of surface groups is not "
              "supported");
        }
      }
      check_alphabet(w);
      return true;
    }

    // Shortlex-least geodesic, found by enumerating freely reduced words in
    // shortlex order. The abelianization bounds the search from below and
    // prunes prefixes; the Dehn-reduced form bounds it from above.
    Word normal_form(Word const& w) const override {
      check_alphabet(w);
      Word reduced = dehn_reduce(w, _relator);
      auto target  = abelianization(w, alphabet());
      int  lower   = 0;
      for (int x : target) {
        lower += std::abs(x);
      }
      Word                  inv_w = inverse(w);
      std::vector<Letter>   letters;
      for (int g : alphabet()) {
        letters.push_back(letter(g));
        letters.push_back(letter(g, true));
      }
      for (int len = lower; len <= static_cast<int>(reduced.size());
           len += 2) {
        Word candidate;
        auto ab = std::vector<int>(target.size(), 0);
        if (search(candidate, ab, target, len, letters, inv_w)) {
          return candidate;
        }
      }
      return reduced;
    }

   private:
    bool search(Word&                      prefix,
                std::vector<int>&          ab,
                std::vector<int> const&    target,
                int                        len,
                std::vector<Letter> const& letters,
                Word const&                inv_w) const {
      int remaining = len - static_cast<int>(prefix.size());
      int gap       = 0;
      for (std::size_t i = 0; i < ab.size(); ++i) {
        gap += std::abs(target[i] - ab[i]);
      }
      if (gap > remaining || (remaining - gap) % 2 != 0) {
        return false;
      }
      if (remaining == 0) {
        return dehn_reduce(concat(prefix, inv_w), _relator).empty();
      }
      auto const& alpha = alphabet();
      for (Letter l : letters) {
        if (!prefix.empty() && prefix.back() == -l) {
          continue;
        }
        auto idx = static_cast<std::size_t>(
            std::lower_bound(alpha.begin(), alpha.end(), generator_of(l))
            - alpha.begin());
        int step = is_inverse(l) ? -1 : 1;
        prefix.push_back(l);
        ab[idx] += step;
        bool found = search(prefix, ab, target, len, letters, inv_w);
        if (found) {
          return true;
        }
        ab[idx] -= step;
        prefix.pop_back();
      }
      return false;
    }

    Word _relator;
  };

  ////////////////////////////////////////////////////////////////////////
  // Direct products
  ////////////////////////////////////////////////////////////////////////

  std::vector<int> merged_alphabet(std::vector<ProviderPtr> const& factors) {
    std::vector<int> out;
    for (auto const& f : factors) {
      out.insert(out.end(), f->alphabet().begin(), f->alphabet().end());
    }
    return out;
  }

  class ProductProvider final : public NormalFormProvider {
   public:
    explicit ProductProvider(std::vector<ProviderPtr> factors)
        : NormalFormProvider(merged_alphabet(factors)),
          _factors(std::move(factors)) {
      if (_factors.empty()) {
        throw Error("direct product needs at least one factor");
      }
    }

    Family family() const noexcept override { return Family::direct_product; }

    Word normal_form(Word const& w) const override {
      check_alphabet(w);
      Word out;
      for (auto const& f : _factors) {
        auto nf = f->normal_form(project(w, *f));
        out.insert(out.end(), nf.begin(), nf.end());
      }
      return out;
    }

    bool equal(Word const& u, Word const& v) const override {
      check_alphabet(u);
      check_alphabet(v);
      return std::all_of(_factors.begin(), _factors.end(), [&](auto const& f) {
        return f->equal(project(u, *f), project(v, *f));
      });
    }

    Word bucket_key(Word const& w) const override {
      check_alphabet(w);
      Word out;
      for (auto const& f : _factors) {
        auto k = f->bucket_key(project(w, *f));
        out.insert(out.end(), k.begin(), k.end());
        out.push_back(0);
      }
      return out;
    }

    bool key_is_exact() const noexcept override {
      return std::all_of(_factors.begin(), _factors.end(),
                         [](auto const& f) { return f->key_is_exact(); });
    }

    bool in_subgroup(Word const& w, std::span<int const> gens) const override {
      check_alphabet(w);
      return std::all_of(_factors.begin(), _factors.end(), [&](auto const& f) {
        auto sub = restrict(gens, *f);
        return f->in_subgroup(project(w, *f), sub);
      });
    }

    int subgroup_length(Word const& w, std::span<int const> gens) const override {
      int total = 0;
      for (auto const& f : _factors) {
        auto sub = restrict(gens, *f);
        total += f->subgroup_length(project(w, *f), sub);
      }
      return total;
    }

   private:
    static Word project(Word const& w, NormalFormProvider const& f) {
      Word out;
      auto const& a = f.alphabet();
      for (Letter l : w) {
        if (std::binary_search(a.begin(), a.end(), generator_of(l))) {
          out.push_back(l);
        }
      }
      return out;
    }

    static std::vector<int> restrict(std::span<int const>      gens,
                                     NormalFormProvider const& f) {
      std::vector<int> out;
      auto const&      a = f.alphabet();
      for (int g : gens) {
        if (std::binary_search(a.begin(), a.end(), g)) {
          out.push_back(g);
        }
      }
      return out;
    }

    std::vector<ProviderPtr> _factors;
  };

  ////////////////////////////////////////////////////////////////////////
  // Finite groups from generator actions
  ////////////////////////////////////////////////////////////////////////

  class TableProvider final : public NormalFormProvider {
   public:
    TableProvider(std::vector<int> alphabet,
                  std::vector<std::vector<int>> actions)
        : NormalFormProvider(alphabet) {
      // actions are given in the caller's alphabet order; store them sorted
      std::vector<std::size_t> order(alphabet.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](auto x, auto y) { return alphabet[x] < alphabet[y]; });
      if (actions.size() != alphabet.size()) {
        throw Error("table family needs one action per generator");
      }
      _size = actions.empty() ? 1 : actions[0].size();
      for (auto i : order) {
        auto const& act = actions[i];
        if (act.size() != _size) {
          throw Error("table actions have inconsistent sizes");
        }
        std::vector<int> inv(_size, -1);
        for (std::size_t x = 0; x < _size; ++x) {
          if (act[x] < 0 || static_cast<std::size_t>(act[x]) >= _size
              || inv[static_cast<std::size_t>(act[x])] != -1) {
            throw Error("table action is not a permutation");
          }
          inv[static_cast<std::size_t>(act[x])] = static_cast<int>(x);
        }
        _forward.push_back(act);
        _backward.push_back(std::move(inv));
      }
      _words = shortlex_words(this->alphabet());
      for (auto const& word : _words) {
        if (!word.has_value()) {
          throw Error("table generators do not act transitively");
        }
      }
    }

    Family family() const noexcept override { return Family::table; }

    int element(Word const& w) const {
      check_alphabet(w);
      int x = 0;
      for (Letter l : w) {
        x = step(x, l);
      }
      return x;
    }

    Word normal_form(Word const& w) const override {
      return *_words[static_cast<std::size_t>(element(w))];
    }

    bool in_subgroup(Word const& w, std::span<int const> gens) const override {
      return subgroup_words(gens)[static_cast<std::size_t>(element(w))]
          .has_value();
    }

    int subgroup_length(Word const& w, std::span<int const> gens) const override {
      auto words = subgroup_words(gens);
      auto const& word = words[static_cast<std::size_t>(element(w))];
      if (!word) {
        throw Error("element is not in the subgroup");
      }
      return static_cast<int>(word->size());
    }

   private:
    int step(int x, Letter l) const {
      auto const& a   = alphabet();
      auto        idx = static_cast<std::size_t>(
          std::lower_bound(a.begin(), a.end(), generator_of(l)) - a.begin());
      auto const& table = is_inverse(l) ? _backward[idx] : _forward[idx];
      return table[static_cast<std::size_t>(x)];
    }

    // The action is a right action of a regular permutation
    // representation, so BFS from the identity with letters in shortlex
    // order yields shortlex-least words.
    std::vector<std::optional<Word>> shortlex_words(
        std::span<int const> gens) const {
      std::vector<int> sorted(gens.begin(), gens.end());
      std::sort(sorted.begin(), sorted.end());
      std::vector<std::optional<Word>> words(_size);
      words[0] = Word{};
      std::deque<int> queue{0};
      while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int g : sorted) {
          for (bool inv : {false, true}) {
            Letter l = letter(g, inv);
            int    y = step(x, l);
            if (!words[static_cast<std::size_t>(y)]) {
              Word w = *words[static_cast<std::size_t>(x)];
              w.push_back(l);
              words[static_cast<std::size_t>(y)] = std::move(w);
              queue.push_back(y);
            }
          }
        }
      }
      return words;
    }

    std::vector<std::optional<Word>> subgroup_words(
        std::span<int const> gens) const {
      std::vector<int> own;
      for (int g : gens) {
        if (owns(g)) {
          own.push_back(g);
        }
      }
      return shortlex_words(own);
    }

    std::size_t                      _size = 0;
    std::vector<std::vector<int>>    _forward;
    std::vector<std::vector<int>>    _backward;
    std::vector<std::optional<Word>> _words;
  };

}  // namespace

Word dehn_reduce(Word const& w, Word const& relator) {
  std::size_t const n = relator.size();
  std::vector<Word> rotations;
  for (Word const& r : {relator, inverse(relator)}) {
    for (std::size_t i = 0; i < n; ++i) {
      Word rot(r.begin() + static_cast<std::ptrdiff_t>(i), r.end());
      rot.insert(rot.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i));
      rotations.push_back(std::move(rot));
    }
  }
  Word current = free_reduce(w);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < current.size() && !changed; ++i) {
      for (auto const& rot : rotations) {
        std::size_t m = 0;
        while (m < n && i + m < current.size() && current[i + m] == rot[m]) {
          ++m;
        }
        if (2 * m > n) {
          Word tail(rot.begin() + static_cast<std::ptrdiff_t>(m), rot.end());
          Word next(current.begin(), current.begin() + static_cast<std::ptrdiff_t>(i));
          auto repl = inverse(tail);
          next.insert(next.end(), repl.begin(), repl.end());
          next.insert(next.end(),
                      current.begin() + static_cast<std::ptrdiff_t>(i + m),
                      current.end());
          current = free_reduce(next);
          changed = true;
          break;
        }
      }
    }
  }
  return current;
}

ProviderPtr make_free(std::vector<int> alphabet) {
  return std::make_shared<FreeProvider>(std::move(alphabet));
}

ProviderPtr make_free_abelian(std::vector<int> alphabet) {
  return std::make_shared<FreeAbelianProvider>(std::move(alphabet));
}

ProviderPtr make_surface(std::vector<int> alphabet) {
  return std::make_shared<SurfaceProvider>(std::move(alphabet));
}

ProviderPtr make_direct_product(std::vector<ProviderPtr> factors) {
  return std::make_shared<ProductProvider>(std::move(factors));
}

ProviderPtr make_table(std::vector<int>              alphabet,
                       std::vector<std::vector<int>> actions) {
  return std::make_shared<TableProvider>(std::move(alphabet),
                                         std::move(actions));
}

}  // namespace cusp

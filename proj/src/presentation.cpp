#include "cusp/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "cusp/error.hpp"

namespace cusp {

namespace {

  struct Segment {
    std::string text;
    int         line;
    int         column;  // 1-based column of text[0]
  };

  std::vector<Segment> split_segments(std::string const& source) {
    std::vector<Segment> out;
    int                  line = 1;
    std::size_t          pos  = 0;
    while (pos <= source.size()) {
      auto end = source.find('\n', pos);
      if (end == std::string::npos) {
        end = source.size();
      }
      std::string raw = source.substr(pos, end - pos);
      if (auto hash = raw.find('#'); hash != std::string::npos) {
        raw.resize(hash);
      }
      std::size_t start = 0;
      for (std::size_t i = 0; i <= raw.size(); ++i) {
        if (i == raw.size() || raw[i] == ';') {
          std::string piece = raw.substr(start, i - start);
          std::size_t lead  = 0;
          while (lead < piece.size()
                 && std::isspace(static_cast<unsigned char>(piece[lead]))) {
            ++lead;
          }
          std::size_t trail = piece.size();
          while (trail > lead
                 && std::isspace(static_cast<unsigned char>(piece[trail - 1]))) {
            --trail;
          }
          if (trail > lead) {
            out.push_back({piece.substr(lead, trail - lead), line,
                           static_cast<int>(start + lead) + 1});
          }
          start = i + 1;
        }
      }
      ++line;
      pos = end + 1;
    }
    return out;
  }

  bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Recursive-descent parser for words over a fixed set of generator names.
  class WordParser {
   public:
    WordParser(std::vector<std::string> const& names,
               std::string const&              text,
               int                             line,
               int                             column)
        : _names(names), _text(text), _line(line), _column(column) {}

    // Comma separated list of words at bracket depth zero.
    std::vector<Word> parse_list() {
      std::vector<Word> out;
      skip_space();
      if (_pos == _text.size()) {
        return out;
      }
      while (true) {
        out.push_back(parse_word());
        skip_space();
        if (_pos == _text.size()) {
          break;
        }
        expect(',');
      }
      return out;
    }

    Word parse_single() {
      skip_space();
      Word w = parse_word();
      skip_space();
      if (_pos != _text.size()) {
        fail("unexpected character '" + std::string(1, _text[_pos]) + "'");
      }
      return w;
    }

   private:
    Word parse_word() {
      Word w;
      while (true) {
        skip_space();
        if (_pos == _text.size() || _text[_pos] == ',' || _text[_pos] == ']'
            || _text[_pos] == ')') {
          break;
        }
        auto f = parse_factor();
        w.insert(w.end(), f.begin(), f.end());
      }
      return w;
    }

    Word parse_factor() {
      Word base;
      char c = _text[_pos];
      if (c == '[') {
        ++_pos;
        Word u = parse_word();
        expect(',');
        Word v = parse_word();
        expect(']');
        base = concat(concat(u, v), concat(inverse(u), inverse(v)));
      } else if (c == '(') {
        ++_pos;
        base = parse_word();
        expect(')');
      } else if (c == '1' && (_pos + 1 == _text.size() || !is_name_char(_text[_pos + 1]))) {
        ++_pos;  // the identity
      } else if (is_name_char(c)) {
        base = {parse_generator()};
      } else {
        fail("unexpected character '" + std::string(1, c) + "'");
      }
      while (_pos < _text.size()) {
        if (_text[_pos] == '\'') {
          ++_pos;
          base = inverse(base);
        } else if (_text[_pos] == '^') {
          ++_pos;
          bool neg = false;
          if (_pos < _text.size() && _text[_pos] == '-') {
            neg = true;
            ++_pos;
          }
          std::size_t start = _pos;
          while (_pos < _text.size()
                 && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
            ++_pos;
          }
          if (start == _pos) {
            fail("expected exponent");
          }
          int  n = std::stoi(_text.substr(start, _pos - start));
          Word b = neg ? inverse(base) : base;
          base.clear();
          for (int i = 0; i < n; ++i) {
            base.insert(base.end(), b.begin(), b.end());
          }
        } else {
          break;
        }
      }
      return base;
    }

    Letter parse_generator() {
      // longest declared name matching at the current position
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < _names.size(); ++i) {
        auto const& n = _names[i];
        if (_text.compare(_pos, n.size(), n) == 0
            && (!best || n.size() > _names[*best].size())) {
          best = i;
        }
      }
      if (!best) {
        std::size_t end = _pos;
        while (end < _text.size() && is_name_char(_text[end])) {
          ++end;
        }
        fail("unknown generator '" + _text.substr(_pos, end - _pos) + "'");
      }
      _pos += _names[*best].size();
      return letter(static_cast<int>(*best));
    }

    void skip_space() {
      while (_pos < _text.size()
             && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
        ++_pos;
      }
    }

    void expect(char c) {
      skip_space();
      if (_pos >= _text.size() || _text[_pos] != c) {
        fail(std::string("expected '") + c + "'");
      }
      ++_pos;
    }

    [[noreturn]] void fail(std::string const& msg) const {
      throw ParseError(msg, _line, _column + static_cast<int>(_pos));
    }

    std::vector<std::string> const& _names;
    std::string const&              _text;
    int                             _line;
    int                             _column;
    std::size_t                     _pos = 0;
  };

  std::vector<std::string> split_names(std::string const& text,
                                       Segment const&     seg,
                                       std::size_t        offset) {
    std::vector<std::string> out;
    std::size_t              start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ',') {
        std::string name = text.substr(start, i - start);
        auto        b    = name.find_first_not_of(" \t");
        auto        e    = name.find_last_not_of(" \t");
        if (b == std::string::npos) {
          if (text.find_first_not_of(" \t") == std::string::npos) {
            return out;
          }
          throw ParseError("empty name", seg.line,
                           seg.column + static_cast<int>(offset + start));
        }
        name = name.substr(b, e - b + 1);
        for (char c : name) {
          if (!is_name_char(c)) {
            throw ParseError("invalid name '" + name + "'", seg.line,
                             seg.column + static_cast<int>(offset + start + b));
          }
        }
        out.push_back(name);
        start = i + 1;
      }
    }
    return out;
  }

  bool is_commutator_of_pair(Word const& r, int& x, int& y) {
    if (r.size() != 4) {
      return false;
    }
    // any cyclic rotation or inverse of a b a' b'
    for (Word const& cand : {r, inverse(r)}) {
      for (std::size_t k = 0; k < 4; ++k) {
        Word rot(4);
        for (std::size_t i = 0; i < 4; ++i) {
          rot[i] = cand[(i + k) % 4];
        }
        if (rot[0] > 0 && rot[1] > 0 && rot[2] == -rot[0] && rot[3] == -rot[1]
            && rot[0] != rot[1]) {
          x = generator_of(rot[0]);
          y = generator_of(rot[1]);
          if (x > y) {
            std::swap(x, y);
          }
          return true;
        }
      }
    }
    return false;
  }

  bool presents_free_abelian(std::vector<Word> const& rels,
                             std::vector<int> const&  gens) {
    std::set<std::pair<int, int>> pairs;
    for (auto const& r : rels) {
      int x, y;
      if (!is_commutator_of_pair(r, x, y)) {
        return false;
      }
      pairs.emplace(x, y);
    }
    std::size_t n = gens.size();
    if (pairs.size() != n * (n - 1) / 2 || rels.size() != pairs.size()) {
      return false;
    }
    for (auto [x, y] : pairs) {
      if (std::find(gens.begin(), gens.end(), x) == gens.end()
          || std::find(gens.begin(), gens.end(), y) == gens.end()) {
        return false;
      }
    }
    return true;
  }

  Word standard_surface_relator(std::vector<int> const& gens) {
    Word r;
    for (std::size_t i = 0; i + 1 < gens.size(); i += 2) {
      r.push_back(letter(gens[i]));
      r.push_back(letter(gens[i + 1]));
      r.push_back(letter(gens[i], true));
      r.push_back(letter(gens[i + 1], true));
    }
    return r;
  }

  bool presents_surface(std::vector<Word> const& rels,
                        std::vector<int> const&  gens) {
    return gens.size() >= 4 && gens.size() % 2 == 0 && rels.size() == 1
           && rels[0] == standard_surface_relator(gens);
  }

  ProviderPtr make_family(Family                                     f,
                          std::vector<int> const&                    gens,
                          std::map<int, std::vector<int>> const&     actions,
                          Segment const&                             seg) {
    switch (f) {
      case Family::free:
        return make_free(gens);
      case Family::free_abelian:
        return make_free_abelian(gens);
      case Family::surface:
        return make_surface(gens);
      case Family::table: {
        std::vector<std::vector<int>> acts;
        for (int g : gens) {
          auto it = actions.find(g);
          if (it == actions.end()) {
            throw ParseError("missing 'act' line for a table generator",
                             seg.line, seg.column);
          }
          acts.push_back(it->second);
        }
        return make_table(gens, acts);
      }
      case Family::direct_product:
        break;
    }
    throw ParseError("nested product families are not supported", seg.line,
                     seg.column);
  }

}  // namespace

int GroupPresentation::generator_index(std::string const& name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  if (it == generators.end()) {
    throw Error("unknown generator '" + name + "'");
  }
  return static_cast<int>(it - generators.begin());
}

Word GroupPresentation::parse_word(std::string const& text) const {
  return WordParser(generators, text, 1, 1).parse_single();
}

std::string GroupPresentation::format(Word const& w) const {
  return to_string(w, generators);
}

GroupPresentation parse_presentation(std::string const& text) {
  GroupPresentation p;
  p.source = text;

  struct PendingPeripheral {
    PeripheralSpec spec;
    Segment        seg;
  };
  struct PendingFactor {
    Family           family;
    std::vector<int> gens;
    Segment          seg;
  };

  bool                            have_gens = false;
  bool                            have_rels = false;
  std::optional<Family>           declared;
  Segment                         family_seg{"", 0, 0};
  std::vector<PendingPeripheral>  peripherals;
  std::vector<PendingFactor>      factors;
  std::map<int, std::vector<int>> actions;

  auto keyword = [](Segment const& seg, std::string& rest) {
    auto sp = seg.text.find_first_of(" \t");
    std::string kw = seg.text.substr(0, sp);
    rest = sp == std::string::npos ? "" : seg.text.substr(sp + 1);
    return kw;
  };

  for (auto const& seg : split_segments(text)) {
    std::string rest;
    std::string kw     = keyword(seg, rest);
    std::size_t offset = seg.text.size() - rest.size();
    if (kw == "gens") {
      if (have_gens) {
        throw ParseError("duplicate 'gens' line", seg.line, seg.column);
      }
      p.generators = split_names(rest, seg, offset);
      std::set<std::string> seen;
      for (auto const& g : p.generators) {
        if (!seen.insert(g).second) {
          throw ParseError("duplicate generator '" + g + "'", seg.line,
                           seg.column);
        }
      }
      have_gens = true;
    } else if (!have_gens) {
      throw ParseError("'gens' must come first", seg.line, seg.column);
    } else if (kw == "rels") {
      if (have_rels) {
        throw ParseError("duplicate 'rels' line", seg.line, seg.column);
      }
      WordParser wp(p.generators, rest, seg.line,
                    seg.column + static_cast<int>(offset));
      for (auto& r : wp.parse_list()) {
        p.relators.push_back(free_reduce(r));
      }
      have_rels = true;
    } else if (kw == "periph" || kw == "factor") {
      auto colon = rest.find(':');
      if (colon == std::string::npos) {
        throw ParseError("expected ':'", seg.line, seg.column);
      }
      std::string head = rest.substr(0, colon);
      std::string body = rest.substr(colon + 1);
      auto        trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      std::string family_tag;
      if (kw == "periph") {
        auto lb = body.find('[');
        auto rb = body.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
          throw ParseError("expected '[family]'", seg.line, seg.column);
        }
        family_tag = trim(body.substr(lb + 1, rb - lb - 1));
        body       = body.substr(0, lb);
      } else {
        family_tag = trim(head);
      }
      Family fam;
      try {
        fam = family_from_string(family_tag);
      } catch (Error const& e) {
        throw ParseError(e.what(), seg.line, seg.column);
      }
      std::vector<int> gens;
      for (auto const& name : split_names(body, seg, offset + colon + 1)) {
        auto it = std::find(p.generators.begin(), p.generators.end(), name);
        if (it == p.generators.end()) {
          throw ParseError("unknown generator '" + name + "'", seg.line,
                           seg.column);
        }
        gens.push_back(static_cast<int>(it - p.generators.begin()));
      }
      if (kw == "periph") {
        PeripheralSpec spec;
        spec.name       = trim(head);
        spec.generators = gens;
        spec.family     = fam;
        peripherals.push_back({spec, seg});
      } else {
        factors.push_back({fam, gens, seg});
      }
    } else if (kw == "family") {
      try {
        declared = family_from_string(rest.substr(
            0, rest.find_last_not_of(" \t") + 1));
      } catch (Error const& e) {
        throw ParseError(e.what(), seg.line, seg.column);
      }
      family_seg = seg;
    } else if (kw == "act") {
      auto colon = rest.find(':');
      if (colon == std::string::npos) {
        throw ParseError("expected ':'", seg.line, seg.column);
      }
      std::string name = rest.substr(0, colon);
      name.erase(std::remove_if(name.begin(), name.end(), ::isspace),
                 name.end());
      auto it = std::find(p.generators.begin(), p.generators.end(), name);
      if (it == p.generators.end()) {
        throw ParseError("unknown generator '" + name + "'", seg.line,
                         seg.column);
      }
      std::vector<int> images;
      std::string      nums = rest.substr(colon + 1);
      std::size_t      i    = 0;
      while (i < nums.size()) {
        if (std::isdigit(static_cast<unsigned char>(nums[i]))) {
          std::size_t j = i;
          while (j < nums.size()
                 && std::isdigit(static_cast<unsigned char>(nums[j]))) {
            ++j;
          }
          images.push_back(std::stoi(nums.substr(i, j - i)));
          i = j;
        } else if (std::isspace(static_cast<unsigned char>(nums[i]))
                   || nums[i] == ',') {
          ++i;
        } else {
          throw ParseError("expected integer", seg.line,
                           seg.column + static_cast<int>(offset + colon + 1 + i));
        }
      }
      actions[static_cast<int>(it - p.generators.begin())] = images;
    } else {
      throw ParseError("unknown directive '" + kw + "'", seg.line, seg.column);
    }
  }
  if (!have_gens) {
    throw ParseError("missing 'gens' line", 1, 1);
  }

  std::vector<int> all(p.generators.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i] = static_cast<int>(i);
  }

  try {
    if (!declared) {
      if (p.relators.empty()) {
        p.provider = make_free(all);
      } else if (presents_free_abelian(p.relators, all)) {
        p.provider = make_free_abelian(all);
      } else if (presents_surface(p.relators, all)) {
        p.provider = make_surface(all);
      } else {
        throw ParseError(
            "cannot infer a supported family from the relators; add a "
            "'family' line",
            1, 1);
      }
    } else if (*declared == Family::direct_product) {
      std::vector<ProviderPtr> parts;
      std::set<int>            covered;
      for (auto const& f : factors) {
        for (int g : f.gens) {
          if (!covered.insert(g).second) {
            throw ParseError("generator in two factors", f.seg.line,
                             f.seg.column);
          }
        }
        parts.push_back(make_family(f.family, f.gens, actions, f.seg));
      }
      if (covered.size() != all.size()) {
        throw ParseError("product factors must cover every generator",
                         family_seg.line, family_seg.column);
      }
      p.provider = make_direct_product(std::move(parts));
    } else {
      p.provider = make_family(*declared, all, actions, family_seg);
    }
  } catch (ParseError const&) {
    throw;
  } catch (Error const& e) {
    throw ParseError(e.what(), family_seg.line, family_seg.column);
  }

  for (auto const& r : p.relators) {
    if (!p.provider->equal(r, Word{})) {
      throw ParseError("relator " + p.format(r) + " is not trivial in family "
                           + to_string(p.provider->family()),
                       family_seg.line, family_seg.column);
    }
  }

  for (auto& pending : peripherals) {
    auto& spec = pending.spec;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      bool inside = std::all_of(
          p.relators[i].begin(), p.relators[i].end(), [&](Letter l) {
            return std::find(spec.generators.begin(), spec.generators.end(),
                             generator_of(l))
                   != spec.generators.end();
          });
      if (inside && !p.relators[i].empty()) {
        spec.relators.push_back(static_cast<int>(i));
      }
    }
    std::vector<Word> rels;
    for (int i : spec.relators) {
      rels.push_back(p.relators[static_cast<std::size_t>(i)]);
    }
    bool ok = true;
    switch (spec.family) {
      case Family::free:
        ok = rels.empty();
        break;
      case Family::free_abelian:
        ok = spec.generators.size() <= 1 ? rels.empty()
                                         : presents_free_abelian(rels, spec.generators);
        break;
      case Family::surface:
        ok = presents_surface(rels, spec.generators);
        break;
      case Family::table:
      case Family::direct_product:
        ok = p.provider->family() == Family::table
             || p.provider->family() == Family::direct_product;
        break;
    }
    if (!ok) {
      throw ParseError("peripheral " + spec.name
                           + " is not a subpresentation of family "
                           + to_string(spec.family),
                       pending.seg.line, pending.seg.column);
    }
    try {
      // probe: rejects subgroups the provider cannot decide membership for
      (void) p.provider->in_subgroup(Word{}, spec.generators);
    } catch (Error const& e) {
      throw ParseError(e.what(), pending.seg.line, pending.seg.column);
    }
    p.peripherals.push_back(spec);
  }
  return p;
}

std::vector<std::string> validate_presentation(GroupPresentation const& p) {
  std::vector<std::string> out;
  std::set<std::string>    names(p.generators.begin(), p.generators.end());
  if (names.size() != p.generators.size()) {
    out.push_back("generator symbols are not distinct");
  }
  auto n = static_cast<int>(p.generators.size());
  for (auto const& r : p.relators) {
    for (Letter l : r) {
      if (l == 0 || generator_of(l) >= n) {
        out.push_back("relator uses an unknown generator");
      }
    }
  }
  for (auto const& spec : p.peripherals) {
    for (int g : spec.generators) {
      if (g < 0 || g >= n) {
        out.push_back("peripheral " + spec.name + " uses an unknown generator");
      }
    }
    for (int r : spec.relators) {
      if (r < 0 || r >= static_cast<int>(p.relators.size())) {
        out.push_back("peripheral " + spec.name
                      + " relator is not a relator of the group");
      }
    }
  }
  if (!p.provider) {
    out.push_back("no normal-form provider");
  }
  return out;
}

}  // namespace cusp

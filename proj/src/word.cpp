#include "cusp/word.hpp"

#include <algorithm>

namespace cusp {

Word free_reduce(Word const& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(Word const& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) {
    l = -l;
  }
  return out;
}

Word concat(Word const& u, Word const& v) {
  Word out(u);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

int letter_rank(Letter l) {
  return 2 * generator_of(l) + (is_inverse(l) ? 1 : 0);
}

bool shortlex_less(Word const& u, Word const& v) {
  if (u.size() != v.size()) {
    return u.size() < v.size();
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) {
      return letter_rank(u[i]) < letter_rank(v[i]);
    }
  }
  return false;
}

std::string to_string(Word const& w, std::vector<std::string> const& names) {
  if (w.empty()) {
    return "e";
  }
  std::string out;
  for (Letter l : w) {
    auto g = static_cast<std::size_t>(generator_of(l));
    out += g < names.size() ? names[g] : "x" + std::to_string(g);
    if (is_inverse(l)) {
      out += '\'';
    }
  }
  return out;
}

}  // namespace cusp

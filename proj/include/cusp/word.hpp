#pragma once

#include <cstdlib>
#include <string>
#include <vector>

namespace cusp {

// A letter is a signed generator index: generator g is +(g+1), its inverse
// is -(g+1). Zero is never a valid letter.
using Letter = int;
using Word   = std::vector<Letter>;

constexpr Letter letter(int generator, bool inverse = false) {
  return inverse ? -(generator + 1) : generator + 1;
}

constexpr int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }

constexpr bool is_inverse(Letter l) { return l < 0; }

Word free_reduce(Word const& w);

Word inverse(Word const& w);

Word concat(Word const& u, Word const& v);

// Lexicographic order on words of equal length, shorter words first.
// Letters compare as a < a' < b < b' < ...
bool shortlex_less(Word const& u, Word const& v);

int letter_rank(Letter l);

std::string to_string(Word const& w, std::vector<std::string> const& names);

}  // namespace cusp

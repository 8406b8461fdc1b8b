#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace chaut {

class ChangingAlphabet;

/// Word over a changing alphabet anchored at a base level: letter j lives in
/// X_{base + j - 1} and is an integer 1..r of that level. The empty word is
/// valid at any base.
struct TreeWord {
  int base = 1;
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  bool operator==(const TreeWord&) const = default;
};

/// Word over an automaton's states, stored as state indices.
using StateWord = std::vector<int>;

/// Throws DomainError naming the offending level and its valid range.
void validate_tree_word(const ChangingAlphabet& alphabet, const TreeWord& w);

/// "1,2,3" <-> letters; the empty string is the empty word.
TreeWord parse_tree_word(std::string_view text, int base);
std::string render_tree_word(const TreeWord& w);

}  // namespace chaut

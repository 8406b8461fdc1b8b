#include "chaut/words.hpp"

#include <charconv>
#include <sstream>

#include "chaut/alphabet.hpp"
#include "chaut/errors.hpp"

namespace chaut {

void validate_tree_word(const ChangingAlphabet& alphabet, const TreeWord& w) {
  if (w.base < 1)
    throw DomainError("tree word base level must be >= 1, got " + std::to_string(w.base));
  for (int j = 0; j < w.length(); ++j) {
    int level = w.base + j;
    int r = alphabet.size(level);
    int x = w.letters[j];
    if (x < 1 || x > r)
      throw DomainError("letter " + std::to_string(x) + " out of range at level " +
                        std::to_string(level) + " (valid range 1.." + std::to_string(r) + ")");
  }
}

TreeWord parse_tree_word(std::string_view text, int base) {
  TreeWord w;
  w.base = base;
  if (!text.empty() && text.back() == ',') throw ParseError("trailing comma in tree word");
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size())
      throw ParseError("expected integer letter, got '" + std::string(item) + "'");
    w.letters.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return w;
}

std::string render_tree_word(const TreeWord& w) {
  std::ostringstream out;
  for (int j = 0; j < w.length(); ++j) out << (j ? "," : "") << w.letters[j];
  return out.str();
}

}  // namespace chaut

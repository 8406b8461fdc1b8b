#include "chaut/alphabet.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "chaut/errors.hpp"

namespace chaut {

namespace {

int affine_size(const ChangingAlphabet::Affine& rule, int level) {
  // offset + slope*level fits easily in 64 bits; clamp against the floor.
  long long raw = static_cast<long long>(rule.offset) +
                  static_cast<long long>(rule.slope) * level;
  long long r = std::max<long long>(rule.floor, raw);
  if (r > INT32_MAX) throw DomainError("alphabet size overflows at level " + std::to_string(level));
  return static_cast<int>(r);
}

void check_affine_wellformed(const ChangingAlphabet::Affine& rule) {
  if (rule.floor < 1) throw DomainError("affine alphabet rule: floor must be >= 1");
  if (rule.slope < 0) throw DomainError("affine alphabet rule: slope must be >= 0");
}

bool affine_admissible(const ChangingAlphabet::Affine& rule, std::string* reason) {
  if (rule.floor < 2) {
    if (reason) *reason = "floor < 2, so some level may have fewer than 2 letters";
    return false;
  }
  if (rule.slope < 1) {
    if (reason) *reason = "slope < 1, so the size sequence is bounded";
    return false;
  }
  return true;
}

}  // namespace

ChangingAlphabet ChangingAlphabet::affine(int offset, int slope, int floor,
                                          bool require_admissible) {
  Affine rule{offset, slope, floor};
  check_affine_wellformed(rule);
  ChangingAlphabet alphabet{Rule{rule}};
  if (require_admissible) alphabet.require_woryna_admissible();
  return alphabet;
}

ChangingAlphabet ChangingAlphabet::explicit_prefix(std::vector<int> sizes,
                                                   std::optional<Affine> affine_tail,
                                                   bool require_admissible) {
  if (sizes.empty()) throw DomainError("explicit_prefix alphabet rule: empty size list");
  for (int s : sizes)
    if (s < 1) throw DomainError("explicit_prefix alphabet rule: sizes must be >= 1");
  if (affine_tail) check_affine_wellformed(*affine_tail);
  ChangingAlphabet alphabet{Rule{ExplicitPrefix{std::move(sizes), affine_tail}}};
  if (require_admissible) alphabet.require_woryna_admissible();
  return alphabet;
}

int ChangingAlphabet::size(int level) const {
  if (level < 1) throw DomainError("alphabet level must be >= 1, got " + std::to_string(level));
  if (const auto* a = std::get_if<Affine>(&rule_)) return affine_size(*a, level);
  const auto& p = std::get<ExplicitPrefix>(rule_);
  if (level <= static_cast<int>(p.sizes.size())) return p.sizes[level - 1];
  if (p.affine_tail) return affine_size(*p.affine_tail, level);
  return p.sizes.back();
}

bool ChangingAlphabet::woryna_admissible(std::string* reason) const {
  if (const auto* a = std::get_if<Affine>(&rule_)) return affine_admissible(*a, reason);

  const auto& p = std::get<ExplicitPrefix>(rule_);
  for (std::size_t j = 0; j < p.sizes.size(); ++j) {
    if (p.sizes[j] < 2) {
      if (reason) *reason = "prefix size at level " + std::to_string(j + 1) + " is < 2";
      return false;
    }
    if (j > 0 && p.sizes[j] < p.sizes[j - 1]) {
      if (reason) *reason = "prefix sizes decrease at level " + std::to_string(j + 1);
      return false;
    }
  }
  if (!p.affine_tail) {
    if (reason) *reason = "repeat-last tail keeps the size sequence bounded";
    return false;
  }
  if (!affine_admissible(*p.affine_tail, reason)) return false;
  int junction = static_cast<int>(p.sizes.size()) + 1;
  if (affine_size(*p.affine_tail, junction) < p.sizes.back()) {
    if (reason) *reason = "tail drops below the last prefix size at level " + std::to_string(junction);
    return false;
  }
  return true;
}

void ChangingAlphabet::require_woryna_admissible() const {
  std::string reason;
  if (!woryna_admissible(&reason))
    throw DomainError("alphabet rule is not woryna-admissible: " + reason);
}

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(std::string("expected integer for ") + what + ", got '" + tok + "'");
  return value;
}

std::vector<int> parse_int_list(const std::string& tok) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= tok.size()) {
    std::size_t comma = tok.find(',', pos);
    std::string item = tok.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(parse_int(item, "size list entry"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

ChangingAlphabet parse_alphabet_rule(std::string_view text) {
  auto toks = split_ws(text);
  if (toks.empty()) throw ParseError("empty alphabet rule");
  if (toks[0] == "affine") {
    if (toks.size() != 4) throw ParseError("affine rule wants: affine OFFSET SLOPE FLOOR");
    return ChangingAlphabet::affine(parse_int(toks[1], "offset"), parse_int(toks[2], "slope"),
                                    parse_int(toks[3], "floor"));
  }
  if (toks[0] == "explicit") {
    if (toks.size() < 3) throw ParseError("explicit rule wants: explicit SIZES (repeat-last | affine O S F)");
    auto sizes = parse_int_list(toks[1]);
    if (toks[2] == "repeat-last") {
      if (toks.size() != 3) throw ParseError("unexpected tokens after repeat-last");
      return ChangingAlphabet::explicit_prefix(std::move(sizes));
    }
    if (toks[2] == "affine" && toks.size() == 6) {
      ChangingAlphabet::Affine tail{parse_int(toks[3], "offset"), parse_int(toks[4], "slope"),
                                    parse_int(toks[5], "floor")};
      return ChangingAlphabet::explicit_prefix(std::move(sizes), tail);
    }
    throw ParseError("explicit rule tail must be 'repeat-last' or 'affine O S F'");
  }
  throw ParseError("unknown alphabet rule kind '" + toks[0] + "'");
}

std::string render_alphabet_rule(const ChangingAlphabet& alphabet) {
  std::ostringstream out;
  if (const auto* a = std::get_if<ChangingAlphabet::Affine>(&alphabet.rule())) {
    out << "affine " << a->offset << ' ' << a->slope << ' ' << a->floor;
    return out.str();
  }
  const auto& p = std::get<ChangingAlphabet::ExplicitPrefix>(alphabet.rule());
  out << "explicit ";
  for (std::size_t j = 0; j < p.sizes.size(); ++j) out << (j ? "," : "") << p.sizes[j];
  if (p.affine_tail)
    out << " affine " << p.affine_tail->offset << ' ' << p.affine_tail->slope << ' '
        << p.affine_tail->floor;
  else
    out << " repeat-last";
  return out.str();
}

}  // namespace chaut

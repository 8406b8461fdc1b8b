#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chaut {

/// Size rule of a changing alphabet: level i has the letters 1..r_i.
///
/// The rule is total over all levels i >= 1 and never materialized as a
/// whole; callers query one level at a time.
class ChangingAlphabet {
 public:
  struct Affine {
    int offset = 0;
    int slope = 0;
    int floor = 2;  // r_i = max(floor, offset + slope * i)
    bool operator==(const Affine&) const = default;
  };

  struct ExplicitPrefix {
    std::vector<int> sizes;             // r_1 .. r_k
    std::optional<Affine> affine_tail;  // nullopt: repeat the last size
    bool operator==(const ExplicitPrefix&) const = default;
  };

  using Rule = std::variant<Affine, ExplicitPrefix>;

  /// Throws DomainError when the rule is malformed (floor < 1, slope < 0,
  /// empty prefix, a size < 1) or, with `require_admissible`, when the rule
  /// is not woryna-admissible.
  static ChangingAlphabet affine(int offset, int slope, int floor,
                                 bool require_admissible = false);
  static ChangingAlphabet explicit_prefix(std::vector<int> sizes,
                                          std::optional<Affine> affine_tail = std::nullopt,
                                          bool require_admissible = false);

  /// r_level for level >= 1.
  int size(int level) const;

  /// True when the rule guarantees 2 <= r_i <= r_{i+1} for every level and
  /// keeps growing (tail slope >= 1, the finite proxy for "unbounded").
  bool woryna_admissible(std::string* reason = nullptr) const;
  void require_woryna_admissible() const;

  const Rule& rule() const { return rule_; }
  bool operator==(const ChangingAlphabet&) const = default;

 private:
  explicit ChangingAlphabet(Rule rule) : rule_(std::move(rule)) {}
  Rule rule_;
};

/// Text forms: "affine OFFSET SLOPE FLOOR",
/// "explicit S1,S2,... repeat-last", "explicit S1,S2,... affine O S F".
ChangingAlphabet parse_alphabet_rule(std::string_view text);
std::string render_alphabet_rule(const ChangingAlphabet& alphabet);

}  // namespace chaut

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaut/alphabet.hpp"
#include "chaut/words.hpp"

namespace chaut {

/// Transition and output tables of one level, indexed [state][letter - 1].
/// Transition entries are state indices, output entries letters 1..r_i.
struct LevelTables {
  std::vector<std::vector<int>> transition;
  std::vector<std::vector<int>> output;

  int letter_count() const {
    return transition.empty() ? 0 : static_cast<int>(transition.front().size());
  }
  bool operator==(const LevelTables&) const = default;
};

/// How the level rule is realized; drives serialization.
enum class RuleKind {
  woryna_a,         // the 2-state preset from conditions (a)-(d)
  woryna_b,         // its 4-state companion over {a, b, a^-1, b^-1}
  explicit_tables,  // materialized levels with a repeat-last tail
  derived,          // computed rule (inverse, union, test fixtures)
};

/// Automaton over a changing alphabet: a finite state set plus one
/// transition/output table pair per level.
///
/// Immutable after construction; level tables are built lazily and memoized
/// behind a lock, so instances can be shared across threads. Copies are
/// shallow and cheap.
class Automaton {
 public:
  using LevelMaker = std::function<LevelTables(int level)>;

  static Automaton from_rule(std::vector<std::string> state_names,
                             ChangingAlphabet alphabet, LevelMaker maker,
                             RuleKind kind = RuleKind::derived);

  /// Materialized levels 1..k with a repeat-last tail. Querying a level past
  /// the prefix whose alphabet size differs from the last table's width is a
  /// DomainError.
  static Automaton from_levels(std::vector<std::string> state_names,
                               ChangingAlphabet alphabet,
                               std::vector<LevelTables> levels);

  int state_count() const;
  const std::vector<std::string>& state_names() const;
  const std::string& state_name(int state) const;
  int state_index(std::string_view name) const;  // throws DomainError
  std::optional<int> find_state(std::string_view name) const;

  const ChangingAlphabet& alphabet() const;
  RuleKind rule_kind() const;

  /// Materialized levels when rule_kind() == explicit_tables, else nullptr.
  const std::vector<LevelTables>* explicit_levels() const;

  /// Tables of one level (>= 1); validated on first use, then cached.
  const LevelTables& level(int i) const;

  int transition(int level, int state, int letter) const;
  int output(int level, int state, int letter) const;

 private:
  struct Impl;
  explicit Automaton(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct ApplyResult {
  TreeWord word;
  int final_state;
};

/// Single-letter output map sigma_{i,q}: table[x-1] = psi_i(q, x).
std::vector<int> state_function(const Automaton& a, int level, int state);

/// Runs the automaton from `state` over w (anchored at w.base); returns the
/// output word and the state after the last letter.
ApplyResult apply_state(const Automaton& a, int state, const TreeWord& w);

/// Applies the states of xi in order, leftmost first.
TreeWord apply_state_word(const Automaton& a, const StateWord& xi, const TreeWord& w);

struct ApplyWordResult {
  TreeWord word;
  std::vector<int> final_states;  // one per entry of xi
};
ApplyWordResult apply_state_word_trace(const Automaton& a, const StateWord& xi,
                                       const TreeWord& w);

/// Inverse automaton: transition (q,x) -> phi_i(q, s^-1(x)) and output
/// (q,x) -> s^-1(x) where s = sigma_{i,q}. Each level is checked for
/// invertibility when first queried.
Automaton invert(const Automaton& a);

/// Disjoint union; `rename_second` renames states of `b` first. Alphabet
/// rules must agree and the state sets must not collide.
Automaton union_automata(const Automaton& a, const Automaton& b,
                         const std::vector<std::pair<std::string, std::string>>&
                             rename_second = {});

struct InvertibilityCheck {
  bool ok = true;
  // first collision in scan order (level asc, state declaration order,
  // letters asc): sigma_{level,state}(letter1) == sigma_{level,state}(letter2)
  int level = 0;
  int state = 0;
  int letter1 = 0;
  int letter2 = 0;
};
InvertibilityCheck is_invertible_up_to(const Automaton& a, int max_level);

StateWord parse_state_word(const Automaton& a, std::string_view text);
std::string render_state_word(const Automaton& a, const StateWord& xi);

}  // namespace chaut

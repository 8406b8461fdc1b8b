#include "chaut/automaton.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "chaut/errors.hpp"

namespace chaut {

struct Automaton::Impl {
  std::vector<std::string> state_names;
  std::map<std::string, int, std::less<>> index_of;
  ChangingAlphabet alphabet;
  LevelMaker maker;
  RuleKind kind = RuleKind::derived;
  std::vector<LevelTables> explicit_levels;  // only for explicit_tables

  mutable std::mutex mutex;
  mutable std::map<int, LevelTables> cache;

  Impl(std::vector<std::string> names, ChangingAlphabet a, LevelMaker m, RuleKind k)
      : state_names(std::move(names)), alphabet(std::move(a)), maker(std::move(m)), kind(k) {
    if (state_names.empty()) throw DomainError("automaton needs at least one state");
    for (std::size_t q = 0; q < state_names.size(); ++q) {
      auto [it, fresh] = index_of.emplace(state_names[q], static_cast<int>(q));
      if (!fresh) throw DomainError("duplicate state name '" + state_names[q] + "'");
    }
  }
};

namespace {

void validate_tables(const LevelTables& t, int level, int state_count, int letter_count) {
  auto fail = [&](const std::string& what) {
    throw DomainError("level " + std::to_string(level) + " tables invalid: " + what);
  };
  if (static_cast<int>(t.transition.size()) != state_count ||
      static_cast<int>(t.output.size()) != state_count)
    fail("expected one row per state");
  for (int q = 0; q < state_count; ++q) {
    if (static_cast<int>(t.transition[q].size()) != letter_count ||
        static_cast<int>(t.output[q].size()) != letter_count)
      fail("expected one column per letter (r = " + std::to_string(letter_count) + ")");
    for (int c = 0; c < letter_count; ++c) {
      if (t.transition[q][c] < 0 || t.transition[q][c] >= state_count)
        fail("transition entry out of state range");
      if (t.output[q][c] < 1 || t.output[q][c] > letter_count)
        fail("output entry out of letter range");
    }
  }
}

}  // namespace

Automaton Automaton::from_rule(std::vector<std::string> state_names, ChangingAlphabet alphabet,
                               LevelMaker maker, RuleKind kind) {
  return Automaton{std::make_shared<const Impl>(std::move(state_names), std::move(alphabet),
                                                std::move(maker), kind)};
}

Automaton Automaton::from_levels(std::vector<std::string> state_names, ChangingAlphabet alphabet,
                                 std::vector<LevelTables> levels) {
  if (levels.empty()) throw DomainError("explicit automaton needs at least one level");
  auto shared = std::make_shared<std::vector<LevelTables>>(std::move(levels));
  ChangingAlphabet alpha = alphabet;
  LevelMaker maker = [shared, alpha](int i) -> LevelTables {
    if (i <= static_cast<int>(shared->size())) return (*shared)[i - 1];
    const LevelTables& last = shared->back();
    if (alpha.size(i) != last.letter_count())
      throw DomainError("explicit rule tail cannot cover level " + std::to_string(i) +
                        ": alphabet size " + std::to_string(alpha.size(i)) +
                        " != last table width " + std::to_string(last.letter_count()));
    return last;
  };
  auto impl = std::make_shared<Impl>(std::move(state_names), std::move(alphabet),
                                     std::move(maker), RuleKind::explicit_tables);
  impl->explicit_levels = *shared;
  return Automaton{std::shared_ptr<const Impl>(std::move(impl))};
}

int Automaton::state_count() const { return static_cast<int>(impl_->state_names.size()); }

const std::vector<std::string>& Automaton::state_names() const { return impl_->state_names; }

const std::string& Automaton::state_name(int state) const {
  if (state < 0 || state >= state_count())
    throw DomainError("state index " + std::to_string(state) + " out of range");
  return impl_->state_names[state];
}

int Automaton::state_index(std::string_view name) const {
  auto it = impl_->index_of.find(name);
  if (it == impl_->index_of.end())
    throw DomainError("unknown state '" + std::string(name) + "'");
  return it->second;
}

std::optional<int> Automaton::find_state(std::string_view name) const {
  auto it = impl_->index_of.find(name);
  if (it == impl_->index_of.end()) return std::nullopt;
  return it->second;
}

const ChangingAlphabet& Automaton::alphabet() const { return impl_->alphabet; }

RuleKind Automaton::rule_kind() const { return impl_->kind; }

const std::vector<LevelTables>* Automaton::explicit_levels() const {
  return impl_->kind == RuleKind::explicit_tables ? &impl_->explicit_levels : nullptr;
}

const LevelTables& Automaton::level(int i) const {
  if (i < 1) throw DomainError("level must be >= 1, got " + std::to_string(i));
  std::scoped_lock lock(impl_->mutex);
  auto it = impl_->cache.find(i);
  if (it == impl_->cache.end()) {
    LevelTables t = impl_->maker(i);
    validate_tables(t, i, state_count(), impl_->alphabet.size(i));
    it = impl_->cache.emplace(i, std::move(t)).first;
  }
  return it->second;
}

int Automaton::transition(int level_index, int state, int letter) const {
  const LevelTables& t = level(level_index);
  if (state < 0 || state >= state_count())
    throw DomainError("state index " + std::to_string(state) + " out of range");
  if (letter < 1 || letter > t.letter_count())
    throw DomainError("letter " + std::to_string(letter) + " out of range at level " +
                      std::to_string(level_index) + " (valid range 1.." +
                      std::to_string(t.letter_count()) + ")");
  return t.transition[state][letter - 1];
}

int Automaton::output(int level_index, int state, int letter) const {
  const LevelTables& t = level(level_index);
  if (state < 0 || state >= state_count())
    throw DomainError("state index " + std::to_string(state) + " out of range");
  if (letter < 1 || letter > t.letter_count())
    throw DomainError("letter " + std::to_string(letter) + " out of range at level " +
                      std::to_string(level_index) + " (valid range 1.." +
                      std::to_string(t.letter_count()) + ")");
  return t.output[state][letter - 1];
}

namespace {

void require_state(const Automaton& a, int state) {
  if (state < 0 || state >= a.state_count())
    throw DomainError("state index " + std::to_string(state) + " out of range");
}

void require_state_word(const Automaton& a, const StateWord& xi) {
  for (int q : xi) require_state(a, q);
}

}  // namespace

std::vector<int> state_function(const Automaton& a, int level, int state) {
  require_state(a, state);
  const LevelTables& t = a.level(level);
  return t.output[state];
}

ApplyResult apply_state(const Automaton& a, int state, const TreeWord& w) {
  require_state(a, state);
  validate_tree_word(a.alphabet(), w);
  TreeWord out;
  out.base = w.base;
  out.letters.reserve(w.letters.size());
  int q = state;
  for (int j = 0; j < w.length(); ++j) {
    const LevelTables& t = a.level(w.base + j);
    int x = w.letters[j];
    out.letters.push_back(t.output[q][x - 1]);
    q = t.transition[q][x - 1];
  }
  return {std::move(out), q};
}

TreeWord apply_state_word(const Automaton& a, const StateWord& xi, const TreeWord& w) {
  require_state_word(a, xi);
  validate_tree_word(a.alphabet(), w);
  TreeWord cur = w;
  for (int q : xi) cur = apply_state(a, q, cur).word;
  return cur;
}

ApplyWordResult apply_state_word_trace(const Automaton& a, const StateWord& xi,
                                       const TreeWord& w) {
  require_state_word(a, xi);
  validate_tree_word(a.alphabet(), w);
  ApplyWordResult result;
  result.word = w;
  result.final_states.reserve(xi.size());
  for (int q : xi) {
    ApplyResult step = apply_state(a, q, result.word);
    result.word = std::move(step.word);
    result.final_states.push_back(step.final_state);
  }
  return result;
}

Automaton invert(const Automaton& a) {
  Automaton base = a;
  auto maker = [base](int i) -> LevelTables {
    const LevelTables& t = base.level(i);
    int r = t.letter_count();
    int nq = base.state_count();
    LevelTables inv;
    inv.transition.assign(nq, std::vector<int>(r));
    inv.output.assign(nq, std::vector<int>(r));
    for (int q = 0; q < nq; ++q) {
      // sigma_{i,q}^{-1}; collisions make the state function non-invertible
      std::vector<int> pre(r + 1, 0);
      for (int x = 1; x <= r; ++x) {
        int y = t.output[q][x - 1];
        if (pre[y] != 0)
          throw DomainError("cannot invert: state function of '" + base.state_name(q) +
                            "' at level " + std::to_string(i) + " collapses letters " +
                            std::to_string(pre[y]) + " and " + std::to_string(x));
        pre[y] = x;
      }
      for (int y = 1; y <= r; ++y) {
        inv.output[q][y - 1] = pre[y];
        inv.transition[q][y - 1] = t.transition[q][pre[y] - 1];
      }
    }
    return inv;
  };
  return Automaton::from_rule(a.state_names(), a.alphabet(), std::move(maker),
                              RuleKind::derived);
}

Automaton union_automata(const Automaton& a, const Automaton& b,
                         const std::vector<std::pair<std::string, std::string>>& rename_second) {
  if (!(a.alphabet() == b.alphabet()))
    throw DomainError("union: automata use different alphabet rules");

  std::vector<std::string> second_names = b.state_names();
  for (const auto& [from, to] : rename_second) {
    int q = b.state_index(from);  // throws on unknown
    second_names[q] = to;
  }

  std::vector<std::string> names = a.state_names();
  for (const auto& name : second_names) {
    if (std::find(names.begin(), names.end(), name) != names.end())
      throw DomainError("union: state name '" + name + "' collides");
    names.push_back(name);
  }

  int offset = a.state_count();
  Automaton first = a, second = b;
  auto maker = [first, second, offset](int i) -> LevelTables {
    const LevelTables& ta = first.level(i);
    const LevelTables& tb = second.level(i);
    LevelTables t = ta;
    for (int q = 0; q < second.state_count(); ++q) {
      std::vector<int> row = tb.transition[q];
      for (int& entry : row) entry += offset;
      t.transition.push_back(std::move(row));
      t.output.push_back(tb.output[q]);
    }
    return t;
  };
  return Automaton::from_rule(std::move(names), a.alphabet(), std::move(maker),
                              RuleKind::derived);
}

InvertibilityCheck is_invertible_up_to(const Automaton& a, int max_level) {
  for (int i = 1; i <= max_level; ++i) {
    const LevelTables& t = a.level(i);
    int r = t.letter_count();
    for (int q = 0; q < a.state_count(); ++q) {
      std::vector<int> first_preimage(r + 1, 0);
      for (int x = 1; x <= r; ++x) {
        int y = t.output[q][x - 1];
        if (first_preimage[y] != 0) return {false, i, q, first_preimage[y], x};
        first_preimage[y] = x;
      }
    }
  }
  return {};
}

StateWord parse_state_word(const Automaton& a, std::string_view text) {
  StateWord xi;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto idx = a.find_state(tok);
    if (!idx) throw ParseError("unknown state '" + tok + "'");
    xi.push_back(*idx);
  }
  return xi;
}

std::string render_state_word(const Automaton& a, const StateWord& xi) {
  std::ostringstream out;
  for (std::size_t j = 0; j < xi.size(); ++j) out << (j ? " " : "") << a.state_name(xi[j]);
  return out.str();
}

}  // namespace chaut

#include "chaut/duality.hpp"

#include <string>

#include "chaut/errors.hpp"

namespace chaut {

namespace {

void require_letter(const Automaton& a, int level, int letter) {
  int r = a.alphabet().size(level);
  if (letter < 1 || letter > r)
    throw DomainError("letter " + std::to_string(letter) + " out of range at level " +
                      std::to_string(level) + " (valid range 1.." + std::to_string(r) + ")");
}

void require_state_word(const Automaton& a, const StateWord& xi) {
  for (int q : xi)
    if (q < 0 || q >= a.state_count())
      throw DomainError("state index " + std::to_string(q) + " out of range");
}

// per-letter inverse of q -> phi_i(q, x); throws when not state-invertible
std::vector<std::vector<int>> inverse_state_maps(const Automaton& a, int level) {
  const LevelTables& t = a.level(level);
  int r = t.letter_count();
  int nq = a.state_count();
  std::vector<std::vector<int>> inv(r, std::vector<int>(nq, -1));
  for (int x = 1; x <= r; ++x) {
    for (int q = 0; q < nq; ++q) {
      int q2 = t.transition[q][x - 1];
      if (inv[x - 1][q2] != -1)
        throw DomainError("not state-invertible at level " + std::to_string(level) +
                          ": letter " + std::to_string(x) + " merges states '" +
                          a.state_name(inv[x - 1][q2]) + "' and '" + a.state_name(q) + "'");
      inv[x - 1][q2] = q;
    }
  }
  return inv;
}

}  // namespace

StateWord dual_step(const Automaton& a, int level, int letter, const StateWord& xi) {
  require_letter(a, level, letter);
  require_state_word(a, xi);
  const LevelTables& t = a.level(level);
  StateWord out;
  out.reserve(xi.size());
  int x = letter;
  for (int q : xi) {
    out.push_back(t.transition[q][x - 1]);
    x = t.output[q][x - 1];
  }
  return out;
}

StateWord dual_apply(const Automaton& a, const TreeWord& w, const StateWord& xi) {
  validate_tree_word(a.alphabet(), w);
  StateWord cur = xi;
  for (int j = 0; j < w.length(); ++j) cur = dual_step(a, w.base + j, w.letters[j], cur);
  return cur;
}

StateInvertibilityCheck is_state_invertible_up_to(const Automaton& a, int max_level) {
  for (int i = 1; i <= max_level; ++i) {
    const LevelTables& t = a.level(i);
    int r = t.letter_count();
    for (int x = 1; x <= r; ++x) {
      std::vector<int> first_preimage(a.state_count(), -1);
      for (int q = 0; q < a.state_count(); ++q) {
        int q2 = t.transition[q][x - 1];
        if (first_preimage[q2] != -1) return {false, i, x, first_preimage[q2], q};
        first_preimage[q2] = q;
      }
    }
  }
  return {};
}

StateWord dual_step_inverse(const Automaton& a, int level, int letter,
                            const StateWord& xi_out) {
  require_letter(a, level, letter);
  require_state_word(a, xi_out);
  auto inv = inverse_state_maps(a, level);
  const LevelTables& t = a.level(level);
  StateWord xi;
  xi.reserve(xi_out.size());
  int x = letter;
  for (int q_out : xi_out) {
    int q = inv[x - 1][q_out];
    xi.push_back(q);
    x = t.output[q][x - 1];
  }
  return xi;
}

DualGraphComponent dual_graph_component(const Automaton& a, int level) {
  const LevelTables& t = a.level(level);
  DualGraphComponent component;
  component.level = level;
  component.letter_count = t.letter_count();
  component.arrows.reserve(static_cast<std::size_t>(t.letter_count()) * a.state_count());
  for (int x = 1; x <= t.letter_count(); ++x)
    for (int q = 0; q < a.state_count(); ++q)
      component.arrows.push_back({x, t.output[q][x - 1], q, t.transition[q][x - 1]});
  return component;
}

StateWord follow_dual_path(const DualGraphComponent& component, int start_letter,
                           const StateWord& inputs) {
  if (start_letter < 1 || start_letter > component.letter_count)
    throw DomainError("start vertex " + std::to_string(start_letter) + " out of range");
  StateWord outputs;
  outputs.reserve(inputs.size());
  int vertex = start_letter;
  for (int q : inputs) {
    const DualArrow* found = nullptr;
    for (const DualArrow& arrow : component.arrows) {
      if (arrow.from == vertex && arrow.input_state == q) {
        if (found) throw VerificationError("dual graph has duplicate arrows");
        found = &arrow;
      }
    }
    if (!found)
      throw DomainError("no arrow from vertex " + std::to_string(vertex) +
                        " with input state " + std::to_string(q));
    outputs.push_back(found->output_state);
    vertex = found->to;
  }
  return outputs;
}

}  // namespace chaut

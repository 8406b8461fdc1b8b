#pragma once

#include <vector>

#include "chaut/automaton.hpp"

namespace chaut {

/// One arrow of the dual-graph component Gamma_i: reading `input_state` at
/// vertex `from` moves to `to = psi_i(q, from)` and emits
/// `output_state = phi_i(q, from)`.
struct DualArrow {
  int from = 0;
  int to = 0;
  int input_state = 0;
  int output_state = 0;
  bool operator==(const DualArrow&) const = default;
};

struct DualGraphComponent {
  int level = 0;
  int letter_count = 0;
  std::vector<DualArrow> arrows;  // letter_count * |Q|, one per (vertex, state)
};

/// Dual mapping D_{i,x} on a state word: output phi_i(q_j, x_j) with
/// x_1 = x and x_{j+1} = psi_i(q_j, x_j). Length preserving.
StateWord dual_step(const Automaton& a, int level, int letter, const StateWord& xi);

/// D_{i,w} = D_{i+m-1,x_m} ... D_{i,x_1}, leftmost letter first (i = w.base).
StateWord dual_apply(const Automaton& a, const TreeWord& w, const StateWord& xi);

struct StateInvertibilityCheck {
  bool ok = true;
  // first collision in scan order: phi_{level}(state1, letter) ==
  // phi_{level}(state2, letter)
  int level = 0;
  int letter = 0;
  int state1 = 0;
  int state2 = 0;
};
StateInvertibilityCheck is_state_invertible_up_to(const Automaton& a, int max_level);

/// Unique preimage of xi_out under D_{level,letter}; requires the automaton
/// to be state-invertible at `level`.
StateWord dual_step_inverse(const Automaton& a, int level, int letter,
                            const StateWord& xi_out);

DualGraphComponent dual_graph_component(const Automaton& a, int level);

/// Follows arrows by input state from `start_letter`; the sequence of output
/// states must agree with dual_step. Used as the graph-route cross-check.
StateWord follow_dual_path(const DualGraphComponent& component, int start_letter,
                           const StateWord& inputs);

}  // namespace chaut

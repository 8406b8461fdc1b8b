#pragma once

#include <string>

#include "chaut/automaton.hpp"

namespace chaut {

/// Automaton definition document (JSON): fields `states`, `alphabet`, `rule`.
/// Rule kinds: "woryna", "woryna-B", "explicit" (levels + repeat-last tail).
Automaton automaton_from_json(const std::string& text);
Automaton load_automaton_file(const std::string& path);

/// Presets serialize symbolically; everything else materializes levels
/// 1..materialize_levels as an explicit rule with a repeat-last tail.
std::string automaton_to_json(const Automaton& a, int materialize_levels = 8);
void save_automaton_file(const Automaton& a, const std::string& path,
                         int materialize_levels = 8);

/// One digraph per level. Automaton graph: vertices "i:q", edges labeled by
/// the letter. Dual component: vertices "i:x", edges labeled "q|q'".
std::string automaton_level_dot(const Automaton& a, int level);
std::string dual_component_dot(const Automaton& a, int level);

}  // namespace chaut

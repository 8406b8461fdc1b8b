#include "chaut/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chaut/errors.hpp"
#include "chaut/freegroup.hpp"

namespace chaut {

namespace {

using nlohmann::json;

ChangingAlphabet::Affine affine_from_json(const json& j) {
  return {j.at("offset").get<int>(), j.at("slope").get<int>(), j.at("floor").get<int>()};
}

json affine_to_json(const ChangingAlphabet::Affine& a) {
  return {{"kind", "affine"}, {"offset", a.offset}, {"slope", a.slope}, {"floor", a.floor}};
}

ChangingAlphabet alphabet_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "affine") {
    auto a = affine_from_json(j);
    return ChangingAlphabet::affine(a.offset, a.slope, a.floor);
  }
  if (kind == "explicit_prefix") {
    auto sizes = j.at("sizes").get<std::vector<int>>();
    const json& tail = j.at("tail");
    if (tail.is_string() && tail.get<std::string>() == "repeat-last")
      return ChangingAlphabet::explicit_prefix(std::move(sizes));
    if (tail.is_object()) {
      if (tail.at("kind").get<std::string>() != "affine")
        throw ParseError("explicit_prefix tail object must be an affine rule");
      return ChangingAlphabet::explicit_prefix(std::move(sizes), affine_from_json(tail));
    }
    throw ParseError("explicit_prefix tail must be \"repeat-last\" or an affine rule");
  }
  throw ParseError("unknown alphabet kind '" + kind + "'");
}

json alphabet_to_json(const ChangingAlphabet& alphabet) {
  if (const auto* a = std::get_if<ChangingAlphabet::Affine>(&alphabet.rule()))
    return affine_to_json(*a);
  const auto& p = std::get<ChangingAlphabet::ExplicitPrefix>(alphabet.rule());
  json j{{"kind", "explicit_prefix"}, {"sizes", p.sizes}};
  j["tail"] = p.affine_tail ? affine_to_json(*p.affine_tail) : json("repeat-last");
  return j;
}

LevelTables level_from_json(const json& j, const std::vector<std::string>& states,
                            int letter_count, int level) {
  LevelTables t;
  int nq = static_cast<int>(states.size());
  t.transition.assign(nq, std::vector<int>(letter_count, -1));
  t.output.assign(nq, std::vector<int>(letter_count, 0));
  const json& trans = j.at("transition");
  const json& out = j.at("output");
  for (int q = 0; q < nq; ++q) {
    const std::string& name = states[q];
    if (!trans.contains(name) || !out.contains(name))
      throw ParseError("level " + std::to_string(level) + " misses tables for state '" +
                       name + "'");
    for (int x = 1; x <= letter_count; ++x) {
      std::string key = std::to_string(x);
      if (!trans.at(name).contains(key) || !out.at(name).contains(key))
        throw ParseError("level " + std::to_string(level) + ", state '" + name +
                         "': missing letter " + key);
      std::string target = trans.at(name).at(key).get<std::string>();
      auto it = std::find(states.begin(), states.end(), target);
      if (it == states.end())
        throw ParseError("level " + std::to_string(level) + ": unknown target state '" +
                         target + "'");
      t.transition[q][x - 1] = static_cast<int>(it - states.begin());
      t.output[q][x - 1] = out.at(name).at(key).get<int>();
    }
  }
  return t;
}

json level_to_json(const LevelTables& t, const std::vector<std::string>& states) {
  json trans = json::object();
  json out = json::object();
  for (std::size_t q = 0; q < states.size(); ++q) {
    json trow = json::object();
    json orow = json::object();
    for (int x = 1; x <= t.letter_count(); ++x) {
      trow[std::to_string(x)] = states[t.transition[q][x - 1]];
      orow[std::to_string(x)] = t.output[q][x - 1];
    }
    trans[states[q]] = std::move(trow);
    out[states[q]] = std::move(orow);
  }
  return {{"transition", std::move(trans)}, {"output", std::move(out)}};
}

void require_states(const std::vector<std::string>& got,
                    const std::vector<std::string>& want, const std::string& kind) {
  if (got != want)
    throw ParseError("rule '" + kind + "' fixes its state set; the states field must be " +
                     json(want).dump());
}

}  // namespace

Automaton automaton_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    auto states = j.at("states").get<std::vector<std::string>>();
    ChangingAlphabet alphabet = alphabet_from_json(j.at("alphabet"));
    const json& rule = j.at("rule");
    std::string kind = rule.at("kind").get<std::string>();
    if (kind == "woryna") {
      require_states(states, {"a", "b"}, kind);
      return build_woryna_a(alphabet);
    }
    if (kind == "woryna-B") {
      require_states(states, {kGroupStateNames.begin(), kGroupStateNames.end()}, kind);
      return build_woryna_b(alphabet);
    }
    if (kind == "explicit") {
      if (rule.contains("tail") && rule.at("tail").get<std::string>() != "repeat-last")
        throw ParseError("explicit rule tail must be \"repeat-last\"");
      std::vector<LevelTables> levels;
      const json& level_list = rule.at("levels");
      if (!level_list.is_array() || level_list.empty())
        throw ParseError("explicit rule wants a nonempty levels array");
      for (std::size_t i = 0; i < level_list.size(); ++i)
        levels.push_back(level_from_json(level_list[i], states,
                                         alphabet.size(static_cast<int>(i) + 1),
                                         static_cast<int>(i) + 1));
      return Automaton::from_levels(std::move(states), std::move(alphabet),
                                    std::move(levels));
    }
    throw ParseError("unknown rule kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad automaton document: ") + e.what());
  }
}

Automaton load_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return automaton_from_json(buf.str());
}

std::string automaton_to_json(const Automaton& a, int materialize_levels) {
  json j;
  j["states"] = a.state_names();
  j["alphabet"] = alphabet_to_json(a.alphabet());
  switch (a.rule_kind()) {
    case RuleKind::woryna_a:
      j["rule"] = {{"kind", "woryna"}};
      break;
    case RuleKind::woryna_b:
      j["rule"] = {{"kind", "woryna-B"}};
      break;
    default: {
      if (materialize_levels < 1)
        throw DomainError("materialize_levels must be >= 1");
      json levels = json::array();
      if (const auto* lv = a.explicit_levels()) {
        for (const LevelTables& t : *lv) levels.push_back(level_to_json(t, a.state_names()));
      } else {
        for (int i = 1; i <= materialize_levels; ++i)
          levels.push_back(level_to_json(a.level(i), a.state_names()));
      }
      j["rule"] = {{"kind", "explicit"}, {"levels", std::move(levels)}, {"tail", "repeat-last"}};
      break;
    }
  }
  return j.dump(2) + "\n";
}

void save_automaton_file(const Automaton& a, const std::string& path,
                         int materialize_levels) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << automaton_to_json(a, materialize_levels);
}

std::string automaton_level_dot(const Automaton& a, int level) {
  const LevelTables& t = a.level(level);
  std::ostringstream out;
  out << "digraph automaton_level_" << level << " {\n";
  out << "  rankdir=LR;\n";
  for (int q = 0; q < a.state_count(); ++q)
    out << "  \"" << level << ":" << a.state_name(q) << "\";\n";
  for (int q = 0; q < a.state_count(); ++q)
    for (int x = 1; x <= t.letter_count(); ++x)
      out << "  \"" << level << ":" << a.state_name(q) << "\" -> \"" << level + 1 << ":"
          << a.state_name(t.transition[q][x - 1]) << "\" [label=\"" << x << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string dual_component_dot(const Automaton& a, int level) {
  const LevelTables& t = a.level(level);
  std::ostringstream out;
  out << "digraph dual_component_" << level << " {\n";
  out << "  rankdir=LR;\n";
  for (int x = 1; x <= t.letter_count(); ++x)
    out << "  \"" << level << ":" << x << "\";\n";
  for (int x = 1; x <= t.letter_count(); ++x)
    for (int q = 0; q < a.state_count(); ++q)
      out << "  \"" << level << ":" << x << "\" -> \"" << level << ":"
          << t.output[q][x - 1] << "\" [label=\"" << a.state_name(q) << "|"
          << a.state_name(t.transition[q][x - 1]) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace chaut

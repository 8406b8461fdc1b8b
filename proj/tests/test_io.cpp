#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "chaut/errors.hpp"
#include "chaut/freegroup.hpp"
#include "chaut/io.hpp"

using namespace chaut;

namespace {

ChangingAlphabet default_rule() { return ChangingAlphabet::affine(1, 1, 2); }

bool levels_agree(const Automaton& x, const Automaton& y, int bound) {
  if (x.state_names() != y.state_names()) return false;
  for (int i = 1; i <= bound; ++i)
    if (!(x.level(i) == y.level(i))) return false;
  return true;
}

}  // namespace

TEST_CASE("preset documents round trip symbolically") {
  Automaton a = build_woryna_a(default_rule());
  std::string doc = automaton_to_json(a);
  CHECK(doc.find("\"woryna\"") != std::string::npos);
  CHECK(levels_agree(automaton_from_json(doc), a, 8));

  Automaton b = build_woryna_b(default_rule());
  doc = automaton_to_json(b);
  CHECK(doc.find("\"woryna-B\"") != std::string::npos);
  CHECK(levels_agree(automaton_from_json(doc), b, 8));
}

TEST_CASE("derived automata materialize and reload identically up to the bound") {
  Automaton a = build_woryna_a(default_rule());
  Automaton inv = invert(a);
  Automaton reloaded = automaton_from_json(automaton_to_json(inv, 6));
  CHECK(levels_agree(reloaded, inv, 6));

  Automaton merged = union_automata(a, inv, {{"a", "a^-1"}, {"b", "b^-1"}});
  Automaton merged_reloaded = automaton_from_json(automaton_to_json(merged, 6));
  CHECK(levels_agree(merged_reloaded, merged, 6));
}

TEST_CASE("explicit documents keep their levels") {
  LevelTables t1;
  t1.transition = {{1, 0}, {0, 1}};
  t1.output = {{2, 1}, {1, 2}};
  Automaton machine =
      Automaton::from_levels({"p", "q"}, ChangingAlphabet::affine(0, 0, 2), {t1});
  Automaton reloaded = automaton_from_json(automaton_to_json(machine));
  CHECK(reloaded.rule_kind() == RuleKind::explicit_tables);
  CHECK(levels_agree(reloaded, machine, 4));
}

TEST_CASE("file round trip") {
  std::string path = "chaut_io_test.json";
  Automaton b = build_woryna_b(default_rule());
  save_automaton_file(b, path);
  Automaton reloaded = load_automaton_file(path);
  CHECK(levels_agree(reloaded, b, 6));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_automaton_file("chaut_io_test_missing.json"), ParseError);
}

TEST_CASE("document validation") {
  CHECK_THROWS_AS(automaton_from_json("not json"), ParseError);
  CHECK_THROWS_AS(automaton_from_json("{}"), ParseError);
  // preset with the wrong state list
  CHECK_THROWS_AS(automaton_from_json(R"({
    "states": ["x", "y"],
    "alphabet": {"kind": "affine", "offset": 1, "slope": 1, "floor": 2},
    "rule": {"kind": "woryna"}
  })"),
                  ParseError);
  // missing letter column
  CHECK_THROWS_AS(automaton_from_json(R"({
    "states": ["p"],
    "alphabet": {"kind": "affine", "offset": 0, "slope": 0, "floor": 2},
    "rule": {"kind": "explicit", "tail": "repeat-last",
             "levels": [{"transition": {"p": {"1": "p"}}, "output": {"p": {"1": 1}}}]}
  })"),
                  ParseError);
  // unknown target state
  CHECK_THROWS_AS(automaton_from_json(R"({
    "states": ["p"],
    "alphabet": {"kind": "affine", "offset": 0, "slope": 0, "floor": 2},
    "rule": {"kind": "explicit", "tail": "repeat-last",
             "levels": [{"transition": {"p": {"1": "z", "2": "p"}},
                         "output": {"p": {"1": 1, "2": 2}}}]}
  })"),
                  ParseError);
  // explicit_prefix alphabet with an affine tail parses
  Automaton machine = automaton_from_json(R"({
    "states": ["a", "b"],
    "alphabet": {"kind": "explicit_prefix", "sizes": [2, 3],
                 "tail": {"kind": "affine", "offset": 0, "slope": 1, "floor": 3}},
    "rule": {"kind": "woryna"}
  })");
  CHECK(machine.alphabet().size(2) == 3);
  CHECK(machine.alphabet().size(9) == 9);
}

TEST_CASE("dot export shapes") {
  Automaton b = build_woryna_b(default_rule());
  std::string dot = dual_component_dot(b, 1);
  CHECK(dot.find("digraph dual_component_1") != std::string::npos);
  CHECK(dot.find("\"1:1\" -> \"1:2\" [label=\"a|b\"]") != std::string::npos);

  std::string graph = automaton_level_dot(b, 2);
  CHECK(graph.find("digraph automaton_level_2") != std::string::npos);
  CHECK(graph.find("\"2:a\" -> \"3:b\" [label=\"1\"]") != std::string::npos);
  CHECK(graph.find("\"2:a^-1\" -> \"3:b^-1\" [label=\"2\"]") != std::string::npos);
}

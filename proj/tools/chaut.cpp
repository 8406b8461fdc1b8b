// chaut — evaluate automata over changing alphabets, their dual actions,
// stabilization certificates, orbit connections and freeness sweeps.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaut/duality.hpp"
#include "chaut/errors.hpp"
#include "chaut/freegroup.hpp"
#include "chaut/io.hpp"
#include "chaut/stabilization.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitVerification = 4;
constexpr int kExitBudget = 5;

struct AutomatonSource {
  std::string family;  // "woryna" | "woryna-B"
  std::string rule_text;
  std::string file;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--family", family, "automaton family preset: woryna | woryna-B");
    cmd->add_option("--r", rule_text,
                    "alphabet rule, e.g. \"affine 1 1 2\" or \"explicit 2,2,3 repeat-last\"");
    cmd->add_option("--file", file, "automaton definition file (JSON)");
  }

  chaut::Automaton build() const {
    if (!file.empty()) {
      if (!family.empty() || !rule_text.empty())
        throw chaut::ParseError("give either --file or --family/--r, not both");
      return chaut::load_automaton_file(file);
    }
    if (family.empty() || rule_text.empty())
      throw chaut::ParseError("automaton source missing: use --file or --family with --r");
    chaut::ChangingAlphabet alphabet = chaut::parse_alphabet_rule(rule_text);
    if (family == "woryna") return chaut::build_woryna_a(alphabet);
    if (family == "woryna-B") return chaut::build_woryna_b(alphabet);
    throw chaut::ParseError("unknown family '" + family + "'");
  }

  chaut::ChangingAlphabet alphabet() const {
    if (!rule_text.empty()) return chaut::parse_alphabet_rule(rule_text);
    if (!file.empty()) return chaut::load_automaton_file(file).alphabet();
    throw chaut::ParseError("alphabet rule missing: use --r or --file");
  }
};

class Stopwatch {
 public:
  double ms() const {
    auto dt = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(dt).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw chaut::DomainError("cannot write '" + out_path + "'");
  out << text;
}

int run_eval(const AutomatonSource& src, int level, const std::string& xi_text,
             const std::string& word_text) {
  Stopwatch clock;
  chaut::Automaton a = src.build();
  chaut::StateWord xi = chaut::parse_state_word(a, xi_text);
  chaut::TreeWord w = chaut::parse_tree_word(word_text, level);
  auto out = chaut::apply_state_word_trace(a, xi, w);
  std::cout << "command: eval\n";
  std::cout << "input: level=" << level << " xi=" << chaut::render_state_word(a, xi)
            << " word=" << chaut::render_tree_word(w) << "\n";
  std::cout << "result: " << chaut::render_tree_word(out.word) << "\n";
  std::cout << "final-states: " << chaut::render_state_word(a, out.final_states) << "\n";
  // round-trip check through the inverse automaton, when it exists
  std::string verified = "skipped (not invertible on these levels)";
  bool verify_failed = false;
  try {
    chaut::Automaton inv = chaut::invert(a);
    chaut::TreeWord back = out.word;
    for (auto it = xi.rbegin(); it != xi.rend(); ++it)
      back = chaut::apply_state(inv, *it, back).word;
    if (back == w) {
      verified = "yes (inverse round trip)";
    } else {
      verified = "FAILED (inverse round trip)";
      verify_failed = true;
    }
  } catch (const chaut::DomainError&) {
  }
  std::cout << "verified: " << verified << "\n";
  std::cout << "wall-ms: " << clock.ms() << "\n";
  return verify_failed ? kExitVerification : kExitOk;
}

int run_dual(const AutomatonSource& src, int level, const std::string& word_text,
             const std::string& xi_text) {
  Stopwatch clock;
  chaut::Automaton a = src.build();
  chaut::StateWord xi = chaut::parse_state_word(a, xi_text);
  chaut::TreeWord w = chaut::parse_tree_word(word_text, level);
  chaut::StateWord out = chaut::dual_apply(a, w, xi);

  // independent route: follow the dual-graph components letter by letter
  chaut::StateWord via_graph = xi;
  for (int j = 0; j < w.length(); ++j) {
    auto component = chaut::dual_graph_component(a, w.base + j);
    via_graph = chaut::follow_dual_path(component, w.letters[j], via_graph);
  }
  bool ok = (via_graph == out);

  std::cout << "command: dual\n";
  std::cout << "input: level=" << level << " word=" << chaut::render_tree_word(w)
            << " xi=" << chaut::render_state_word(a, xi) << "\n";
  std::cout << "result: " << chaut::render_state_word(a, out) << "\n";
  std::cout << "verified: " << (ok ? "yes (dual graph route)" : "FAILED (dual graph route)")
            << "\n";
  if (!ok) std::cout << "graph-route: " << chaut::render_state_word(a, via_graph) << "\n";
  std::cout << "wall-ms: " << clock.ms() << "\n";
  return ok ? kExitOk : kExitVerification;
}

int run_connect(const AutomatonSource& src, const std::string& xi_text,
                const std::string& eta_text, const std::string& zeta_text, int min_length,
                std::uint64_t budget) {
  Stopwatch clock;
  chaut::ChangingAlphabet r = src.alphabet();
  chaut::Automaton b = chaut::build_woryna_b(r);
  chaut::GroupWord xi = chaut::parse_group_word(xi_text);
  chaut::GroupWord eta = chaut::parse_group_word(eta_text);
  std::cout << "command: connect\n";
  if (zeta_text.empty()) {
    chaut::TreeWord w = chaut::connect_irreducible(b, xi, eta, budget);
    bool ok = chaut::dual_apply(b, w, xi) == eta;
    std::cout << "input: xi=" << chaut::render_group_word(xi)
              << " eta=" << chaut::render_group_word(eta) << "\n";
    std::cout << "result: base=" << w.base << " word=" << chaut::render_tree_word(w) << "\n";
    std::cout << "verified: " << (ok ? "yes (dual_apply)" : "FAILED") << "\n";
    std::cout << "wall-ms: " << clock.ms() << "\n";
    return ok ? kExitOk : kExitVerification;
  }
  chaut::GroupWord zeta = chaut::parse_group_word(zeta_text);
  auto pair = chaut::connect_equal_length(r, xi, eta, zeta, min_length, budget);
  bool ok = chaut::dual_apply(b, pair.w, xi) == eta && chaut::dual_apply(b, pair.v, xi) == zeta &&
            pair.w.length() == pair.v.length() && pair.w.length() >= min_length;
  std::cout << "input: xi=" << chaut::render_group_word(xi)
            << " eta=" << chaut::render_group_word(eta)
            << " zeta=" << chaut::render_group_word(zeta) << " k=" << min_length << "\n";
  std::cout << "result: w=" << chaut::render_tree_word(pair.w)
            << " v=" << chaut::render_tree_word(pair.v) << " length=" << pair.w.length()
            << "\n";
  std::cout << "verified: " << (ok ? "yes (dual_apply, equal length)" : "FAILED") << "\n";
  std::cout << "wall-ms: " << clock.ms() << "\n";
  return ok ? kExitOk : kExitVerification;
}

int run_stabilize(const AutomatonSource& src, int n, int window, int bound,
                  std::uint64_t budget) {
  Stopwatch clock;
  chaut::Automaton a = src.build();
  auto lambda = chaut::stabilization_certificate(a, n, window, bound, budget);

  std::cout << "command: stabilize\n";
  std::cout << "input: n=" << n << " window=" << window << " bound=" << bound << "\n";

  // level x letter table with equivalence-class labels over the scanned range
  int top = (lambda ? *lambda : bound) + window;
  std::vector<std::vector<std::uint32_t>> classes;
  std::cout << "classes (level: letter->class):\n";
  for (int i = 1; i <= top; ++i) {
    std::cout << "  level " << i << ":";
    for (int x = 1; x <= a.alphabet().size(i); ++x) {
      auto table = chaut::restrict_dual(a, i, x, n, budget).table;
      std::size_t c = 0;
      for (; c < classes.size(); ++c)
        if (classes[c] == table) break;
      if (c == classes.size()) classes.push_back(std::move(table));
      std::cout << " " << x << "->" << static_cast<char>('A' + (c % 26));
    }
    std::cout << "\n";
  }

  bool ok = true;
  if (lambda) {
    for (int j = *lambda; j <= *lambda + window; ++j)
      ok = ok && chaut::levels_n_equivalent(a, *lambda, j, n, budget).equivalent;
    std::cout << "lambda = " << *lambda << "\n";
  } else {
    std::cout << "lambda = none (no level passes below bound " << bound << ")\n";
  }
  std::cout << "window-checked: " << window << "\n";
  std::cout << "verified: " << (ok ? "yes (window re-checked)" : "FAILED") << "\n";
  std::cout << "wall-ms: " << clock.ms() << "\n";
  return ok ? kExitOk : kExitVerification;
}

int run_freeness(const AutomatonSource& src, const std::string& xi_text, int max_len,
                 int depth_cap) {
  Stopwatch clock;
  chaut::ChangingAlphabet r = src.alphabet();
  chaut::Automaton b = chaut::build_woryna_b(r);
  std::cout << "command: freeness\n";

  auto report = [&](const chaut::GroupWord& xi) -> bool {
    auto witness = chaut::freeness_witness(b, xi, depth_cap);
    std::cout << "word: " << chaut::render_group_word(xi);
    if (!witness) {
      std::cout << " | witness none (depth cap " << depth_cap << ")\n";
      return false;
    }
    bool ok = chaut::apply_state_word(b, xi, witness->input) == witness->image &&
              !(witness->image == witness->input);
    std::cout << " | witness " << chaut::render_tree_word(witness->input) << " | depth "
              << witness->input.length() << " | image "
              << chaut::render_tree_word(witness->image)
              << " | verified " << (ok ? "yes" : "NO") << "\n";
    return ok;
  };

  bool all_ok = true;
  int max_depth = 0;
  int none_count = 0;
  if (!xi_text.empty()) {
    chaut::GroupWord xi = chaut::free_reduce(chaut::parse_group_word(xi_text));
    if (xi.empty()) throw chaut::DomainError("word reduces to the identity");
    all_ok = report(xi);
  } else {
    // sweep all nonempty reduced words up to max_len
    std::vector<chaut::GroupWord> frontier{{}};
    for (int len = 1; len <= max_len; ++len) {
      std::vector<chaut::GroupWord> next;
      for (const auto& word : frontier)
        for (int q = 0; q < 4; ++q) {
          if (!word.empty() && q == chaut::inverse_generator(word.back())) continue;
          chaut::GroupWord child = word;
          child.push_back(q);
          auto witness = chaut::freeness_witness(b, child, depth_cap);
          std::cout << "word: " << chaut::render_group_word(child);
          if (!witness) {
            std::cout << " | witness none (depth cap " << depth_cap << ")\n";
            ++none_count;
          } else {
            bool ok = chaut::apply_state_word(b, child, witness->input) == witness->image;
            max_depth = std::max(max_depth, witness->input.length());
            std::cout << " | witness " << chaut::render_tree_word(witness->input)
                      << " | depth " << witness->input.length() << " | verified "
                      << (ok ? "yes" : "NO") << "\n";
            all_ok = all_ok && ok;
          }
          next.push_back(std::move(child));
        }
      frontier = std::move(next);
    }
    std::cout << "max-depth: " << max_depth << "\n";
    std::cout << "none-count: " << none_count << "\n";
    all_ok = all_ok && none_count == 0;
  }
  std::cout << "verified: " << (all_ok ? "yes" : "FAILED") << "\n";
  std::cout << "wall-ms: " << clock.ms() << "\n";
  return all_ok ? kExitOk : kExitVerification;
}

int run_export_dot(const AutomatonSource& src, const std::string& what, int level_from,
                   int level_to, const std::string& out_path) {
  if (what != "automaton" && what != "dual")
    throw chaut::ParseError("--what must be 'automaton' or 'dual', got '" + what + "'");
  chaut::Automaton a = src.build();
  if (level_to < level_from) level_to = level_from;
  std::string text;
  for (int i = level_from; i <= level_to; ++i)
    text += (what == "dual") ? chaut::dual_component_dot(a, i)
                             : chaut::automaton_level_dot(a, i);
  emit(text, out_path);
  return kExitOk;
}

int run_invert(const AutomatonSource& src, int levels, const std::string& out_path) {
  chaut::Automaton inv = chaut::invert(src.build());
  emit(chaut::automaton_to_json(inv, levels), out_path);
  return kExitOk;
}

int run_union(const AutomatonSource& src, const std::string& second_file,
              const std::string& rename_text, int levels, const std::string& out_path) {
  chaut::Automaton first = src.build();
  chaut::Automaton second = chaut::load_automaton_file(second_file);
  std::vector<std::pair<std::string, std::string>> rename;
  std::size_t pos = 0;
  while (pos < rename_text.size()) {
    std::size_t comma = rename_text.find(',', pos);
    std::string item = rename_text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw chaut::ParseError("rename entries look like OLD=NEW, got '" + item + "'");
    rename.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  chaut::Automaton merged = chaut::union_automata(first, second, rename);
  emit(chaut::automaton_to_json(merged, levels), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"automata over changing alphabets: actions, duals, stabilization, freeness"};
  app.require_subcommand(1);

  AutomatonSource src;
  int level = 1;
  std::string xi_text, eta_text, zeta_text, word_text;
  int n = 1, window = 4, bound = 64;
  int min_length = 1;
  int max_len = 3, depth_cap = 12;
  std::uint64_t budget = chaut::kDefaultRestrictionBudget;
  std::string what = "dual", out_path;
  int level_to = 0, levels = 8;
  std::string second_file, rename_text;

  auto* eval = app.add_subcommand("eval", "apply a state word to a tree word");
  src.add_options(eval);
  eval->add_option("--level", level, "base level of the word")->capture_default_str();
  eval->add_option("--xi", xi_text, "state word, e.g. \"a b\"");
  eval->add_option("--word", word_text, "tree word, e.g. \"1,2\"");

  auto* dual = app.add_subcommand("dual", "apply dual mappings of a tree word to a state word");
  src.add_options(dual);
  dual->add_option("--level", level, "base level of the word")->capture_default_str();
  dual->add_option("--word", word_text, "tree word");
  dual->add_option("--xi", xi_text, "state word");

  auto* connect = app.add_subcommand("connect", "find tree words mapping xi to eta (and zeta)");
  src.add_options(connect);
  connect->add_option("--xi", xi_text, "group word")->required();
  connect->add_option("--eta", eta_text, "target group word")->required();
  connect->add_option("--zeta", zeta_text, "second target (equal-length mode)");
  connect->add_option("-k,--min-length", min_length, "minimum witness length (equal-length mode)")
      ->capture_default_str();
  connect->add_option("--budget", budget, "restriction table budget")->capture_default_str();

  auto* stabilize = app.add_subcommand("stabilize", "search for a stabilization certificate");
  src.add_options(stabilize);
  stabilize->add_option("-n", n, "restriction length")->capture_default_str();
  stabilize->add_option("--window", window, "levels checked above the candidate")
      ->capture_default_str();
  stabilize->add_option("--bound", bound, "largest candidate level")->capture_default_str();
  stabilize->add_option("--budget", budget, "restriction table budget")->capture_default_str();

  auto* freeness = app.add_subcommand("freeness", "search witnesses that reduced words act nontrivially");
  src.add_options(freeness);
  freeness->add_option("--xi", xi_text, "single group word (otherwise sweep)");
  freeness->add_option("--max-len", max_len, "sweep words up to this length")
      ->capture_default_str();
  freeness->add_option("--depth-cap", depth_cap, "witness search depth cap")
      ->capture_default_str();

  auto* export_dot = app.add_subcommand("export-dot", "emit DOT digraphs per level");
  src.add_options(export_dot);
  export_dot->add_option("--what", what, "automaton | dual")->capture_default_str();
  export_dot->add_option("--level", level, "first level")->capture_default_str();
  export_dot->add_option("--level-to", level_to, "last level (default: first)");
  export_dot->add_option("-o,--out", out_path, "output file (default: stdout)");

  auto* invert_cmd = app.add_subcommand("invert", "emit the inverse automaton definition");
  src.add_options(invert_cmd);
  invert_cmd->add_option("--levels", levels, "levels to materialize")->capture_default_str();
  invert_cmd->add_option("-o,--out", out_path, "output file (default: stdout)");

  auto* union_cmd = app.add_subcommand("union", "emit the union with a second automaton");
  src.add_options(union_cmd);
  union_cmd->add_option("--file2", second_file, "second automaton definition file")->required();
  union_cmd->add_option("--rename", rename_text, "rename second automaton states, OLD=NEW,...");
  union_cmd->add_option("--levels", levels, "levels to materialize")->capture_default_str();
  union_cmd->add_option("-o,--out", out_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*eval) return run_eval(src, level, xi_text, word_text);
    if (*dual) return run_dual(src, level, word_text, xi_text);
    if (*connect) return run_connect(src, xi_text, eta_text, zeta_text, min_length, budget);
    if (*stabilize) return run_stabilize(src, n, window, bound, budget);
    if (*freeness) return run_freeness(src, xi_text, max_len, depth_cap);
    if (*export_dot) return run_export_dot(src, what, level, level_to, out_path);
    if (*invert_cmd) return run_invert(src, levels, out_path);
    if (*union_cmd) return run_union(src, second_file, rename_text, levels, out_path);
  } catch (const chaut::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const chaut::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const chaut::VerificationError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const chaut::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

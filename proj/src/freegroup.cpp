#include "chaut/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

#include "chaut/duality.hpp"
#include "chaut/errors.hpp"

namespace chaut {

namespace {

int sigma(int x, int r) { return x % r + 1; }           // r-cycle (1 2 ... r)
int sigma_inv(int x, int r) { return x == 1 ? r : x - 1; }
int tau(int x) { return x == 1 ? 2 : (x == 2 ? 1 : x); }  // transposition (1 2)

LevelTables woryna_a_tables(int r) {
  LevelTables t;
  t.transition.assign(2, std::vector<int>(r));
  t.output.assign(2, std::vector<int>(r));
  for (int x = 1; x <= r; ++x) {
    t.transition[kGenA][x - 1] = (x == 1) ? kGenB : kGenA;
    t.transition[kGenB][x - 1] = (x == 1) ? kGenA : kGenB;
    t.output[kGenA][x - 1] = sigma(x, r);
    t.output[kGenB][x - 1] = tau(x);
  }
  return t;
}

LevelTables woryna_b_tables(int r) {
  LevelTables t;
  t.transition.assign(4, std::vector<int>(r));
  t.output.assign(4, std::vector<int>(r));
  for (int x = 1; x <= r; ++x) {
    int c = x - 1;
    if (x == 1) {
      t.transition[kGenA][c] = kGenB;
      t.transition[kGenB][c] = kGenA;
      t.transition[kGenAInv][c] = kGenAInv;
      t.transition[kGenBInv][c] = kGenBInv;
    } else if (x == 2) {
      t.transition[kGenA][c] = kGenA;
      t.transition[kGenB][c] = kGenB;
      t.transition[kGenAInv][c] = kGenBInv;
      t.transition[kGenBInv][c] = kGenAInv;
    } else {
      for (int q = 0; q < 4; ++q) t.transition[q][c] = q;
    }
    t.output[kGenA][c] = sigma(x, r);
    t.output[kGenAInv][c] = sigma_inv(x, r);
    t.output[kGenB][c] = tau(x);
    t.output[kGenBInv][c] = tau(x);
  }
  return t;
}

void require_group_word(const GroupWord& xi) {
  for (int q : xi)
    if (q < 0 || q > 3)
      throw DomainError("group word entry " + std::to_string(q) +
                        " is not one of a, b, a^-1, b^-1");
}

Sign sign_of(int q) { return (q == kGenA || q == kGenB) ? Sign::pos : Sign::neg; }

GroupWord repeat_pair(int first, int second, int times) {
  GroupWord out;
  out.reserve(2 * static_cast<std::size_t>(times));
  for (int j = 0; j < times; ++j) {
    out.push_back(first);
    out.push_back(second);
  }
  return out;
}

GroupWord concat(GroupWord left, const GroupWord& right) {
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

}  // namespace

Automaton build_woryna_a(const ChangingAlphabet& r) {
  r.require_woryna_admissible();
  ChangingAlphabet alpha = r;
  return Automaton::from_rule({"a", "b"}, r,
                              [alpha](int i) { return woryna_a_tables(alpha.size(i)); },
                              RuleKind::woryna_a);
}

Automaton build_woryna_b(const ChangingAlphabet& r) {
  r.require_woryna_admissible();
  ChangingAlphabet alpha = r;
  return Automaton::from_rule(
      {kGroupStateNames.begin(), kGroupStateNames.end()}, r,
      [alpha](int i) { return woryna_b_tables(alpha.size(i)); }, RuleKind::woryna_b);
}

int lambda_index(const ChangingAlphabet& r, int n) {
  if (n < 0) throw DomainError("lambda index wants n >= 0");
  constexpr int kScanCap = 1 << 20;
  for (int i = 1; i <= kScanCap; ++i)
    if (r.size(i) > 2 * n) return i;
  throw DomainError("no level with r_i > " + std::to_string(2 * n) +
                    " found below the scan cap; alphabet rule is not admissible");
}

int inverse_generator(int q) {
  switch (q) {
    case kGenA: return kGenAInv;
    case kGenB: return kGenBInv;
    case kGenAInv: return kGenA;
    case kGenBInv: return kGenB;
    default: throw DomainError("group word entry " + std::to_string(q) + " out of range");
  }
}

Pattern pattern_of(const GroupWord& xi) {
  require_group_word(xi);
  Pattern v;
  v.reserve(xi.size());
  for (int q : xi) v.push_back(sign_of(q));
  return v;
}

bool is_freely_irreducible(const GroupWord& xi) {
  require_group_word(xi);
  for (std::size_t j = 0; j + 1 < xi.size(); ++j)
    if (xi[j + 1] == inverse_generator(xi[j])) return false;
  return true;
}

GroupWord tilde(const GroupWord& xi) {
  require_group_word(xi);
  GroupWord out;
  out.reserve(xi.size());
  for (int q : xi) {
    switch (q) {
      case kGenA: out.push_back(kGenB); break;
      case kGenB: out.push_back(kGenA); break;
      case kGenAInv: out.push_back(kGenBInv); break;
      default: out.push_back(kGenAInv); break;
    }
  }
  return out;
}

GroupWord free_reduce(const GroupWord& xi) {
  require_group_word(xi);
  GroupWord out;
  out.reserve(xi.size());
  for (int q : xi) {
    if (!out.empty() && out.back() == inverse_generator(q))
      out.pop_back();
    else
      out.push_back(q);
  }
  return out;
}

PatternDecomposition decompose(const Pattern& v) {
  if (v.empty()) throw DomainError("cannot decompose the empty pattern");
  // The second part is the maximal alternating suffix; condition (i) then
  // holds because the symbol before it repeats the suffix's first symbol.
  std::size_t split = v.size() - 1;
  while (split > 0 && v[split - 1] != v[split]) --split;
  PatternDecomposition d;
  d.split = split;
  d.first.assign(v.begin(), v.begin() + split);
  d.second.assign(v.begin() + split, v.end());
  return d;
}

WordDecomposition decompose_word(const GroupWord& xi) {
  if (xi.empty()) throw DomainError("cannot decompose the empty word");
  PatternDecomposition d = decompose(pattern_of(xi));
  WordDecomposition w;
  w.split = d.split;
  w.first.assign(xi.begin(), xi.begin() + d.split);
  w.second.assign(xi.begin() + d.split, xi.end());
  return w;
}

PatternFlipWitness pattern_flip_witness(const Pattern& v, const ChangingAlphabet& r) {
  if (v.empty()) throw DomainError("pattern_flip_witness wants a nonempty pattern");
  r.require_woryna_admissible();

  PatternDecomposition parts = decompose(v);
  int level = lambda_index(r, static_cast<int>(v.size()));
  int r_i = r.size(level);

  // second part: alternating, so (l, rflag) are fixed by its length
  int l = static_cast<int>(parts.second.size()) / 2;
  int rflag = static_cast<int>(parts.second.size()) % 2;

  GroupWord xi_first, xi_second;
  int letter = 0;
  if (parts.first.empty()) {
    if (parts.second.front() == Sign::pos) {
      xi_second = concat(repeat_pair(kGenA, kGenBInv, l),
                         GroupWord(rflag, kGenA));
      letter = 1;
    } else {
      xi_second = concat(repeat_pair(kGenAInv, kGenB, l),
                         GroupWord(rflag, kGenAInv));
      letter = 2;
    }
  } else if (parts.first.back() == Sign::pos) {
    // first part a^{n_1} b^{-m_1} ... a^m; z climbs the sigma-cycle across
    // every a of the first part and wraps exactly at its last letter
    int pos_count = 0;
    for (Sign s : parts.first) {
      xi_first.push_back(s == Sign::pos ? kGenA : kGenBInv);
      if (s == Sign::pos) ++pos_count;
    }
    xi_second = concat(repeat_pair(kGenA, kGenBInv, l), GroupWord(rflag, kGenA));
    letter = r_i - pos_count + 1;
  } else {
    // mirror case: first part a^{-n_1} b^{m_1} ... a^{-m}, z descends
    int neg_count = 0;
    for (Sign s : parts.first) {
      xi_first.push_back(s == Sign::neg ? kGenAInv : kGenB);
      if (s == Sign::neg) ++neg_count;
    }
    xi_second = concat(repeat_pair(kGenAInv, kGenB, l), GroupWord(rflag, kGenAInv));
    letter = neg_count + 2;
  }

  PatternFlipWitness witness;
  witness.xi = concat(xi_first, xi_second);
  witness.level = level;
  witness.letter = letter;
  witness.image = concat(xi_first, tilde(xi_second));

  if (!is_freely_irreducible(witness.xi) || pattern_of(witness.xi) != v)
    throw VerificationError("pattern_flip_witness built an invalid word");
  Automaton b = build_woryna_b(r);
  StateWord actual = dual_step(b, level, letter, witness.xi);
  if (actual != witness.image)
    throw VerificationError("pattern_flip_witness self-check failed: D_{" + std::to_string(level) +
                            "," + std::to_string(letter) + "}(" +
                            render_group_word(witness.xi) + ") = " +
                            render_group_word(actual) + " != " +
                            render_group_word(witness.image));
  return witness;
}

namespace {

// letter at `level` whose restriction to Q^n matches `target`, least first
int matching_letter(const Automaton& b, int level, int n,
                    const std::vector<std::uint32_t>& target, std::uint64_t budget) {
  int r = b.alphabet().size(level);
  for (int y = 1; y <= r; ++y)
    if (restrict_dual(b, level, y, n, budget).table == target) return y;
  throw VerificationError("no letter at level " + std::to_string(level) +
                          " realizes the required restricted dual map");
}

TreeWord connect_irreducible_impl(const Automaton& b, const GroupWord& xi,
                                  const GroupWord& eta, std::uint64_t budget) {
  if (!is_freely_irreducible(xi) || !is_freely_irreducible(eta))
    throw DomainError("connect_irreducible wants freely irreducible words");
  if (pattern_of(xi) != pattern_of(eta))
    throw DomainError("connect_irreducible wants words following the same pattern");

  int n = static_cast<int>(xi.size());
  int lambda = lambda_index(b.alphabet(), n);
  if (n == 0) return TreeWord{lambda, {}};

  int r_lambda = b.alphabet().size(lambda);
  std::vector<RestrictedDualMap> generators;
  generators.reserve(r_lambda);
  for (int x = 1; x <= r_lambda; ++x)
    generators.push_back(restrict_dual(b, lambda, x, n, budget));

  // BFS on codes of Q^n; parents give the generator sequence
  std::uint64_t start = encode_state_word(xi, b.state_count());
  std::uint64_t goal = encode_state_word(eta, b.state_count());
  std::size_t table_size = generators.front().table.size();
  std::vector<std::int64_t> parent(table_size, -1);
  std::vector<int> via_letter(table_size, 0);
  std::deque<std::uint64_t> queue;
  parent[start] = static_cast<std::int64_t>(start);
  queue.push_back(start);
  while (!queue.empty() && parent[goal] == -1) {
    std::uint64_t cur = queue.front();
    queue.pop_front();
    for (int x = 1; x <= r_lambda; ++x) {
      std::uint64_t next = generators[x - 1].table[cur];
      if (parent[next] != -1) continue;
      parent[next] = static_cast<std::int64_t>(cur);
      via_letter[next] = x;
      queue.push_back(next);
    }
  }
  if (parent[goal] == -1)
    throw VerificationError("restricted orbit search exhausted without reaching the target");

  std::vector<int> generator_letters;
  for (std::uint64_t cur = goal; cur != start; cur = static_cast<std::uint64_t>(parent[cur]))
    generator_letters.push_back(via_letter[cur]);
  std::reverse(generator_letters.begin(), generator_letters.end());

  // realize step j by a concrete letter at level lambda + j - 1 with the
  // same restriction; exists at every such level by stabilization
  TreeWord w{lambda, {}};
  w.letters.reserve(generator_letters.size());
  for (std::size_t j = 0; j < generator_letters.size(); ++j) {
    int level = lambda + static_cast<int>(j);
    const auto& target = generators[generator_letters[j] - 1].table;
    w.letters.push_back(level == lambda ? generator_letters[j]
                                        : matching_letter(b, level, n, target, budget));
  }

  if (dual_apply(b, w, xi) != eta)
    throw VerificationError("connect_irreducible witness failed re-verification");
  return w;
}

}  // namespace

TreeWord connect_irreducible(const Automaton& woryna_b, const GroupWord& xi,
                             const GroupWord& eta, std::uint64_t budget) {
  return connect_irreducible_impl(woryna_b, xi, eta, budget);
}

TreeWord connect_irreducible(const ChangingAlphabet& r, const GroupWord& xi,
                             const GroupWord& eta, std::uint64_t budget) {
  return connect_irreducible_impl(build_woryna_b(r), xi, eta, budget);
}

EqualLengthWitness connect_equal_length(const ChangingAlphabet& r, const GroupWord& xi,
                                        const GroupWord& eta, const GroupWord& zeta,
                                        int min_length, std::uint64_t budget) {
  if (!is_freely_irreducible(xi) || !is_freely_irreducible(eta) ||
      !is_freely_irreducible(zeta))
    throw DomainError("connect_equal_length wants freely irreducible words");
  if (pattern_of(xi) != pattern_of(eta) || pattern_of(xi) != pattern_of(zeta))
    throw DomainError("connect_equal_length wants words following the same pattern");

  Automaton b = build_woryna_b(r);
  int n = static_cast<int>(xi.size());
  int lambda = lambda_index(r, n);

  // climb from base 1 to base lambda with fixed letters, then connect
  TreeWord prefix{1, std::vector<int>(static_cast<std::size_t>(lambda - 1), 1)};
  GroupWord xi_at_lambda = dual_apply(b, prefix, xi);

  auto build = [&](const GroupWord& target) {
    TreeWord tail = connect_irreducible_impl(b, xi_at_lambda, target, budget);
    TreeWord word = prefix;
    word.letters.insert(word.letters.end(), tail.letters.begin(), tail.letters.end());
    return word;
  };
  TreeWord w = build(eta);
  TreeWord v = build(zeta);

  // pad with letters whose dual maps fix Q^n: n+2 <= x <= r_i - n + 1
  int target_length = std::max({min_length, w.length(), v.length()});
  auto pad = [&](TreeWord& word) {
    while (word.length() < target_length) {
      int level = word.base + word.length();
      int pad_letter = n + 2;
      if (pad_letter > r.size(level) - n + 1)
        throw DomainError("no identity-class padding letter at level " +
                          std::to_string(level));
      word.letters.push_back(pad_letter);
    }
  };
  pad(w);
  pad(v);

  if (dual_apply(b, w, xi) != eta || dual_apply(b, v, xi) != zeta ||
      w.length() != v.length() || w.length() < min_length)
    throw VerificationError("connect_equal_length witness failed re-verification");
  return {std::move(w), std::move(v)};
}

namespace {

std::optional<FreenessWitness> freeness_witness_impl(const Automaton& b,
                                                     const GroupWord& xi, int depth_cap) {
  if (xi.empty()) throw DomainError("freeness_witness wants a nonempty word");
  if (!is_freely_irreducible(xi))
    throw DomainError("freeness_witness wants a reduced word; apply free_reduce first");

  // breadth-first over the subtree fixed so far; a node stores the word and
  // the dual image of xi along it, so one letter extends it in O(|xi|)
  struct Node {
    TreeWord word;
    StateWord delta;
  };
  std::vector<Node> frontier{{TreeWord{1, {}}, xi}};
  for (int depth = 1; depth <= depth_cap && !frontier.empty(); ++depth) {
    int r_d = b.alphabet().size(depth);
    const LevelTables& t = b.level(depth);
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (int x = 1; x <= r_d; ++x) {
        // thread x through delta: outputs feed on, transitions make the
        // child's delta (Eq. of the dual action); final letter = image of x
        StateWord child_delta;
        child_delta.reserve(node.delta.size());
        int cur = x;
        for (int q : node.delta) {
          child_delta.push_back(t.transition[q][cur - 1]);
          cur = t.output[q][cur - 1];
        }
        TreeWord child = node.word;
        child.letters.push_back(x);
        if (cur != x) {
          TreeWord image = apply_state_word(b, xi, child);
          return FreenessWitness{std::move(child), std::move(image)};
        }
        next.push_back({std::move(child), std::move(child_delta)});
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

std::optional<FreenessWitness> freeness_witness(const Automaton& woryna_b,
                                                const GroupWord& xi, int depth_cap) {
  return freeness_witness_impl(woryna_b, xi, depth_cap);
}

std::optional<FreenessWitness> freeness_witness(const ChangingAlphabet& r,
                                                const GroupWord& xi, int depth_cap) {
  return freeness_witness_impl(build_woryna_b(r), xi, depth_cap);
}

ProofPermutations proof_permutations(const ChangingAlphabet& r, int level, int l,
                                     int rflag) {
  if (l < 0 || (rflag != 0 && rflag != 1)) throw DomainError("want l >= 0 and rflag in {0,1}");
  if (l == 0 && rflag == 0) throw DomainError("(l, rflag) = (0, 0) is excluded");
  int r_i = r.size(level);
  if (r_i <= 2 * l + rflag + 2)
    throw DomainError("level " + std::to_string(level) + " has r_i = " + std::to_string(r_i) +
                      " <= 2l + r + 2 = " + std::to_string(2 * l + rflag + 2));

  ProofPermutations result;
  result.pi1.resize(r_i);
  result.pi2.resize(r_i);
  for (int x = 1; x <= r_i; ++x) {
    int y = x;
    for (int j = 0; j < rflag; ++j) y = sigma(y, r_i);
    for (int j = 0; j < 2 * l; ++j) y = sigma(tau(y), r_i);
    for (int j = 0; j < rflag; ++j) y = tau(y);
    result.pi1[x - 1] = y;

    y = x;
    for (int j = 0; j < rflag; ++j) y = sigma_inv(y, r_i);
    for (int j = 0; j < 2 * l; ++j) y = sigma_inv(tau(y), r_i);
    for (int j = 0; j < rflag; ++j) y = tau(y);
    result.pi2[x - 1] = y;
  }

  int expect1 = 3;
  for (int j = 0; j < 2 * l + rflag; ++j) expect1 = sigma(expect1, r_i);
  result.pi1_moves_3 = (result.pi1[2] == expect1) && (result.pi1[2] != 3);

  int expect2 = r_i;
  for (int j = 0; j < 2 * l + rflag; ++j) expect2 = sigma_inv(expect2, r_i);
  result.pi2_moves_top = (result.pi2[r_i - 1] == expect2) && (result.pi2[r_i - 1] != r_i);

  // compare with the one-letter restrictions of the eta actions
  GroupWord eta1 = concat(GroupWord(rflag, kGenA),
                          concat(repeat_pair(kGenBInv, kGenA, 2 * l), GroupWord(rflag, kGenBInv)));
  GroupWord eta2 = concat(GroupWord(rflag, kGenAInv),
                          concat(repeat_pair(kGenB, kGenAInv, 2 * l), GroupWord(rflag, kGenB)));
  Automaton b = build_woryna_b(r);
  result.pi1_matches_eta1 = true;
  result.pi2_matches_eta2 = true;
  for (int x = 1; x <= r_i; ++x) {
    TreeWord one{level, {x}};
    if (apply_state_word(b, eta1, one).letters != std::vector<int>{result.pi1[x - 1]})
      result.pi1_matches_eta1 = false;
    if (apply_state_word(b, eta2, one).letters != std::vector<int>{result.pi2[x - 1]})
      result.pi2_matches_eta2 = false;
  }
  return result;
}

GroupWord parse_group_word(std::string_view text) {
  auto letter_of = [](const std::string& tok) -> int {
    if (tok == "a") return kGenA;
    if (tok == "b") return kGenB;
    if (tok == "a^-1" || tok == "a'") return kGenAInv;
    if (tok == "b^-1" || tok == "b'") return kGenBInv;
    throw ParseError("unknown group letter '" + tok + "'");
  };
  GroupWord xi;
  bool spaced = text.find_first_of(" \t") != std::string_view::npos;
  if (spaced) {
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) xi.push_back(letter_of(tok));
    return xi;
  }
  // compact form: a, b with optional apostrophe; also accept ^-1 inline
  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (c != 'a' && c != 'b')
      throw ParseError(std::string("unexpected character '") + c + "' in group word");
    bool inverse = false;
    ++pos;
    if (pos < text.size() && text[pos] == '\'') {
      inverse = true;
      ++pos;
    } else if (text.substr(pos, 3) == "^-1") {
      inverse = true;
      pos += 3;
    }
    int base = (c == 'a') ? kGenA : kGenB;
    xi.push_back(inverse ? inverse_generator(base) : base);
  }
  return xi;
}

std::string render_group_word(const GroupWord& xi) {
  require_group_word(xi);
  std::ostringstream out;
  for (std::size_t j = 0; j < xi.size(); ++j)
    out << (j ? " " : "") << kGroupStateNames[xi[j]];
  return out.str();
}

std::string render_pattern(const Pattern& v) {
  std::ostringstream out;
  for (std::size_t j = 0; j < v.size(); ++j)
    out << (j ? " " : "") << (v[j] == Sign::pos ? "*" : "*^-1");
  return out.str();
}

}  // namespace chaut

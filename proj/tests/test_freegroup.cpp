#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "chaut/duality.hpp"
#include "chaut/errors.hpp"
#include "chaut/freegroup.hpp"

using namespace chaut;

namespace {

ChangingAlphabet default_rule() { return ChangingAlphabet::affine(1, 1, 2); }

GroupWord gw(std::initializer_list<int> xs) { return GroupWord(xs); }

Pattern pat(std::initializer_list<Sign> xs) { return Pattern(xs); }

void enumerate_group_words(int len, const std::function<void(const GroupWord&)>& fn) {
  GroupWord xi;
  std::function<void()> rec = [&] {
    if (static_cast<int>(xi.size()) == len) {
      fn(xi);
      return;
    }
    for (int q = 0; q < 4; ++q) {
      xi.push_back(q);
      rec();
      xi.pop_back();
    }
  };
  rec();
}

std::vector<GroupWord> irreducible_with_pattern(const Pattern& v) {
  std::vector<GroupWord> out;
  enumerate_group_words(static_cast<int>(v.size()), [&](const GroupWord& xi) {
    if (is_freely_irreducible(xi) && pattern_of(xi) == v) out.push_back(xi);
  });
  return out;
}

void enumerate_patterns(int len, const std::function<void(const Pattern&)>& fn) {
  Pattern v;
  std::function<void()> rec = [&] {
    if (static_cast<int>(v.size()) == len) {
      fn(v);
      return;
    }
    for (Sign s : {Sign::pos, Sign::neg}) {
      v.push_back(s);
      rec();
      v.pop_back();
    }
  };
  rec();
}

// alternating? the shapes (* *^-1)^l *^r / (*^-1 *)^l *^-r are exactly the
// nonempty alternating patterns, so the split validity can be checked from
// scratch for the uniqueness oracle
bool alternating(const Pattern& v) {
  for (std::size_t j = 0; j + 1 < v.size(); ++j)
    if (v[j] == v[j + 1]) return false;
  return true;
}

}  // namespace

TEST_CASE("the two concrete automata match their defining tables") {
  Automaton a = build_woryna_a(default_rule());
  CHECK(a.state_names() == std::vector<std::string>{"a", "b"});
  for (int i = 1; i <= 8; ++i) {
    int r = a.alphabet().size(i);
    std::vector<int> cyc = state_function(a, i, kGenA);
    for (int x = 1; x <= r; ++x) CHECK(cyc[x - 1] == (x == r ? 1 : x + 1));
    CHECK(a.transition(i, kGenA, 1) == kGenB);
    CHECK(a.transition(i, kGenB, 1) == kGenA);
    for (int x = 2; x <= r; ++x) {
      CHECK(a.transition(i, kGenA, x) == kGenA);
      CHECK(a.transition(i, kGenB, x) == kGenB);
    }
  }
  CHECK(is_invertible_up_to(a, 10).ok);

  Automaton b = build_woryna_b(default_rule());
  CHECK(b.state_names() == std::vector<std::string>{"a", "b", "a^-1", "b^-1"});
  for (int i = 1; i <= 8; ++i) {
    int r = b.alphabet().size(i);
    // the nine transition cases at letters 1 and 2
    CHECK(b.transition(i, kGenB, 1) == kGenA);
    CHECK(b.transition(i, kGenA, 1) == kGenB);
    CHECK(b.transition(i, kGenAInv, 1) == kGenAInv);
    CHECK(b.transition(i, kGenBInv, 1) == kGenBInv);
    CHECK(b.transition(i, kGenA, 2) == kGenA);
    CHECK(b.transition(i, kGenB, 2) == kGenB);
    CHECK(b.transition(i, kGenBInv, 2) == kGenAInv);
    CHECK(b.transition(i, kGenAInv, 2) == kGenBInv);
    for (int x = 3; x <= r; ++x)
      for (int q = 0; q < 4; ++q) CHECK(b.transition(i, q, x) == q);
    // outputs: sigma, sigma^-1, tau, tau
    for (int x = 1; x <= r; ++x) {
      CHECK(b.output(i, kGenA, x) == (x == r ? 1 : x + 1));
      CHECK(b.output(i, kGenAInv, x) == (x == 1 ? r : x - 1));
      CHECK(b.output(i, kGenB, x) == (x == 1 ? 2 : x == 2 ? 1 : x));
      CHECK(b.output(i, kGenBInv, x) == b.output(i, kGenB, x));
    }
  }
}

TEST_CASE("the 4-state automaton is the union of the 2-state one with its renamed inverse") {
  Automaton a = build_woryna_a(default_rule());
  Automaton b = build_woryna_b(default_rule());
  Automaton assembled = union_automata(a, invert(a), {{"a", "a^-1"}, {"b", "b^-1"}});
  CHECK(assembled.state_names() == b.state_names());
  for (int i = 1; i <= 6; ++i) CHECK(assembled.level(i) == b.level(i));
}

TEST_CASE("inverse states invert the actions") {
  Automaton b = build_woryna_b(default_rule());
  std::function<void(TreeWord&, int)> sweep = [&](TreeWord& w, int remaining) {
    for (int q : {kGenA, kGenB}) {
      int q_inv = inverse_generator(q);
      CHECK(apply_state(b, q_inv, apply_state(b, q, w).word).word == w);
      CHECK(apply_state(b, q, apply_state(b, q_inv, w).word).word == w);
    }
    if (remaining == 0) return;
    for (int x = 1; x <= b.alphabet().size(w.base + w.length()); ++x) {
      w.letters.push_back(x);
      sweep(w, remaining - 1);
      w.letters.pop_back();
    }
  };
  for (int base = 1; base <= 2; ++base) {
    TreeWord w{base, {}};
    sweep(w, 4);
  }
}

TEST_CASE("lambda index") {
  CHECK(lambda_index(default_rule(), 1) == 2);
  CHECK(lambda_index(default_rule(), 3) == 6);
  CHECK(lambda_index(ChangingAlphabet::affine(0, 2, 2), 1) == 2);
  CHECK(lambda_index(default_rule(), 0) == 1);
  // a bounded rule never reaches r > 2n
  CHECK_THROWS_AS(lambda_index(ChangingAlphabet::affine(0, 0, 2), 5), DomainError);
}

TEST_CASE("patterns, tilde, irreducibility") {
  CHECK(pattern_of(gw({kGenA, kGenBInv, kGenA})) == pat({Sign::pos, Sign::neg, Sign::pos}));
  CHECK(pattern_of(gw({})).empty());
  CHECK(tilde(gw({kGenA, kGenBInv})) == gw({kGenB, kGenAInv}));
  CHECK_FALSE(is_freely_irreducible(gw({kGenA, kGenAInv})));
  CHECK(is_freely_irreducible(gw({kGenA, kGenBInv})));
  CHECK(is_freely_irreducible(gw({})));
  for (int q = 0; q < 4; ++q) CHECK(is_freely_irreducible(gw({q})));

  enumerate_group_words(5, [&](const GroupWord& xi) {
    CHECK(tilde(tilde(xi)) == xi);
    CHECK(pattern_of(tilde(xi)) == pattern_of(xi));
    CHECK(is_freely_irreducible(tilde(xi)) == is_freely_irreducible(xi));
  });
}

TEST_CASE("free reduction") {
  CHECK(free_reduce(gw({kGenA, kGenAInv})).empty());
  CHECK(free_reduce(gw({kGenA, kGenB, kGenBInv, kGenAInv, kGenA})) == gw({kGenA}));
  CHECK(free_reduce(gw({kGenA, kGenBInv})) == gw({kGenA, kGenBInv}));
  enumerate_group_words(5, [&](const GroupWord& xi) {
    GroupWord reduced = free_reduce(xi);
    CHECK(is_freely_irreducible(reduced));
    CHECK(free_reduce(reduced) == reduced);
  });
}

TEST_CASE("pattern decomposition is the unique valid split") {
  CHECK(decompose(pat({Sign::pos, Sign::neg})).first.empty());
  CHECK(decompose(pat({Sign::pos, Sign::pos, Sign::neg})).split == 1);
  CHECK(decompose(pat({Sign::pos, Sign::pos})).split == 1);
  CHECK_THROWS_AS(decompose(Pattern{}), DomainError);

  for (int len = 1; len <= 7; ++len)
    enumerate_patterns(len, [&](const Pattern& v) {
      // oracle: scan every split point for the two defining conditions
      std::vector<std::size_t> valid;
      for (std::size_t split = 0; split < v.size(); ++split) {
        Pattern second(v.begin() + split, v.end());
        if (!alternating(second)) continue;
        if (split > 0 && v[split - 1] != second.front()) continue;
        valid.push_back(split);
      }
      REQUIRE(valid.size() == 1);
      PatternDecomposition d = decompose(v);
      CHECK(d.split == valid.front());
      Pattern glued = d.first;
      glued.insert(glued.end(), d.second.begin(), d.second.end());
      CHECK(glued == v);
    });

  // word overload splits at the same index
  GroupWord xi = gw({kGenA, kGenA, kGenBInv});
  WordDecomposition wd = decompose_word(xi);
  CHECK(wd.split == decompose(pattern_of(xi)).split);
  CHECK(wd.first == gw({kGenA}));
  CHECK(wd.second == gw({kGenA, kGenBInv}));
}

TEST_CASE("exactly two irreducible words follow each second-part shape") {
  for (int l = 0; l <= 3; ++l)
    for (int rflag = 0; rflag <= 1; ++rflag) {
      if (l == 0 && rflag == 0) continue;
      if (l + rflag > 3) continue;
      Pattern shape1, shape2;
      for (int j = 0; j < l; ++j) {
        shape1.insert(shape1.end(), {Sign::pos, Sign::neg});
        shape2.insert(shape2.end(), {Sign::neg, Sign::pos});
      }
      for (int j = 0; j < rflag; ++j) {
        shape1.push_back(Sign::pos);
        shape2.push_back(Sign::neg);
      }

      GroupWord w1, w2;
      for (int j = 0; j < l; ++j) {
        w1.insert(w1.end(), {kGenA, kGenBInv});
        w2.insert(w2.end(), {kGenB, kGenAInv});
      }
      for (int j = 0; j < rflag; ++j) {
        w1.push_back(kGenA);
        w2.push_back(kGenB);
      }
      CHECK(irreducible_with_pattern(shape1) == std::vector<GroupWord>{w1, w2});

      GroupWord m1, m2;
      for (int j = 0; j < l; ++j) {
        m1.insert(m1.end(), {kGenAInv, kGenB});
        m2.insert(m2.end(), {kGenBInv, kGenA});
      }
      for (int j = 0; j < rflag; ++j) {
        m1.push_back(kGenAInv);
        m2.push_back(kGenBInv);
      }
      CHECK(irreducible_with_pattern(shape2) == std::vector<GroupWord>{m1, m2});
    }
}

TEST_CASE("pattern-flip witnesses") {
  ChangingAlphabet r = default_rule();

  PatternFlipWitness w = pattern_flip_witness(pat({Sign::pos}), r);
  CHECK(w.xi == gw({kGenA}));
  CHECK(w.level == 2);
  CHECK(w.letter == 1);
  CHECK(w.image == gw({kGenB}));

  w = pattern_flip_witness(pat({Sign::pos, Sign::neg}), r);
  CHECK(w.xi == gw({kGenA, kGenBInv}));
  CHECK(w.level == 4);
  CHECK(w.letter == 1);
  CHECK(w.image == gw({kGenB, kGenAInv}));

  w = pattern_flip_witness(pat({Sign::pos, Sign::pos}), r);
  CHECK(w.xi == gw({kGenA, kGenA}));
  CHECK(w.level == 4);
  CHECK(w.letter == r.size(4));
  CHECK(w.image == gw({kGenA, kGenB}));

  CHECK_THROWS_AS(pattern_flip_witness(Pattern{}, r), DomainError);

  // the constructor self-verifies; sweep every short pattern and recheck by
  // hand against the dual action and the decomposition
  Automaton b = build_woryna_b(r);
  for (int len = 1; len <= 5; ++len)
    enumerate_patterns(len, [&](const Pattern& v) {
      PatternFlipWitness witness = pattern_flip_witness(v, r);
      CHECK(witness.level == lambda_index(r, len));
      CHECK(is_freely_irreducible(witness.xi));
      CHECK(pattern_of(witness.xi) == v);
      WordDecomposition parts = decompose_word(witness.xi);
      GroupWord expect = parts.first;
      GroupWord flipped = tilde(parts.second);
      expect.insert(expect.end(), flipped.begin(), flipped.end());
      CHECK(dual_step(b, witness.level, witness.letter, witness.xi) == expect);
      CHECK(witness.image == expect);
    });
}

TEST_CASE("orbit connection between irreducible words") {
  ChangingAlphabet r = default_rule();
  Automaton b = build_woryna_b(r);

  TreeWord w = connect_irreducible(b, gw({kGenA}), gw({kGenB}));
  CHECK(w.base == 2);
  CHECK(w == TreeWord{2, {1}});

  CHECK(connect_irreducible(b, gw({kGenA}), gw({kGenA})).empty());

  TreeWord w2 = connect_irreducible(b, gw({kGenA, kGenBInv}), gw({kGenB, kGenAInv}));
  CHECK(dual_apply(b, w2, gw({kGenA, kGenBInv})) == gw({kGenB, kGenAInv}));

  CHECK_THROWS_AS(connect_irreducible(b, gw({kGenA, kGenAInv}), gw({kGenA, kGenAInv})),
                  DomainError);
  CHECK_THROWS_AS(connect_irreducible(b, gw({kGenA}), gw({kGenAInv})), DomainError);

  // exhaustive length <= 2: every same-pattern pair connects, verified
  for (int len = 1; len <= 2; ++len)
    enumerate_patterns(len, [&](const Pattern& v) {
      auto words = irreducible_with_pattern(v);
      for (const auto& xi : words)
        for (const auto& eta : words) {
          TreeWord witness = connect_irreducible(b, xi, eta);
          CHECK(dual_apply(b, witness, xi) == eta);
        }
    });
}

TEST_CASE("orbits cover every irreducible word of the same pattern") {
  ChangingAlphabet r = default_rule();
  Automaton b = build_woryna_b(r);
  for (int len = 1; len <= 2; ++len)
    enumerate_patterns(len, [&](const Pattern& v) {
      auto words = irreducible_with_pattern(v);
      // grow the orbit of the first word under every letter dual at lambda_n
      int lambda = lambda_index(r, len);
      std::set<GroupWord> orbit{words.front()};
      std::vector<GroupWord> queue{words.front()};
      while (!queue.empty()) {
        GroupWord cur = queue.back();
        queue.pop_back();
        for (int x = 1; x <= r.size(lambda); ++x) {
          GroupWord next = dual_step(b, lambda, x, cur);
          if (orbit.insert(next).second) queue.push_back(next);
        }
      }
      CHECK(orbit == std::set<GroupWord>(words.begin(), words.end()));
    });
}

TEST_CASE("equal-length connections") {
  ChangingAlphabet r = default_rule();
  Automaton b = build_woryna_b(r);

  auto pair = connect_equal_length(r, gw({kGenA}), gw({kGenA}), gw({kGenA}), 3);
  CHECK(pair.w.length() == pair.v.length());
  CHECK(pair.w.length() >= 3);
  CHECK(dual_apply(b, pair.w, gw({kGenA})) == gw({kGenA}));
  CHECK(dual_apply(b, pair.v, gw({kGenA})) == gw({kGenA}));

  pair = connect_equal_length(r, gw({kGenA}), gw({kGenB}), gw({kGenA}), 1);
  CHECK(pair.w.length() == pair.v.length());
  CHECK(dual_apply(b, pair.w, gw({kGenA})) == gw({kGenB}));
  CHECK(dual_apply(b, pair.v, gw({kGenA})) == gw({kGenA}));

  // over-budget restriction must fail loudly
  CHECK_THROWS_AS(connect_equal_length(r, GroupWord(10, kGenA), GroupWord(10, kGenA),
                                       GroupWord(10, kGenA), 1),
                  BudgetError);
}

TEST_CASE("freeness witnesses") {
  ChangingAlphabet r = default_rule();
  Automaton b = build_woryna_b(r);

  auto w = freeness_witness(b, gw({kGenA}), 12);
  REQUIRE(w.has_value());
  CHECK(w->input == TreeWord{1, {1}});
  CHECK(w->image == TreeWord{1, {2}});

  w = freeness_witness(b, gw({kGenA, kGenA}), 12);
  REQUIRE(w.has_value());
  CHECK(w->input == TreeWord{1, {1, 1}});
  CHECK(w->image == TreeWord{1, {1, 3}});

  GroupWord commutator = gw({kGenA, kGenB, kGenAInv, kGenBInv});
  w = freeness_witness(b, commutator, 12);
  REQUIRE(w.has_value());
  CHECK(apply_state_word(b, commutator, w->input) == w->image);
  CHECK_FALSE(w->image == w->input);

  CHECK_THROWS_AS(freeness_witness(b, GroupWord{}, 12), DomainError);
  CHECK_THROWS_AS(freeness_witness(b, gw({kGenA, kGenAInv}), 12), DomainError);
}

TEST_CASE("proof permutations") {
  ChangingAlphabet r = default_rule();

  // l = 1, rflag = 0 at the least level with r_i = 5
  ProofPermutations p = proof_permutations(r, 4, 1, 0);
  CHECK(p.pi1[3 - 1] == 5);
  CHECK(p.all_ok());

  // l = 0, rflag = 1 with r_i = 4: pi1 = tau . sigma
  p = proof_permutations(r, 3, 0, 1);
  CHECK(p.pi1[3 - 1] == 4);
  CHECK(p.all_ok());
  // independent composition of the two defining permutations
  for (int x = 1; x <= 4; ++x) {
    int y = (x == 4 ? 1 : x + 1);
    y = (y == 1 ? 2 : y == 2 ? 1 : y);
    CHECK(p.pi1[x - 1] == y);
  }

  CHECK_THROWS_AS(proof_permutations(r, 4, 0, 0), DomainError);
  CHECK_THROWS_AS(proof_permutations(r, 3, 1, 0), DomainError);  // r_3 = 4 <= 2l+r+2
}

TEST_CASE("pattern and irreducibility survive the dual action") {
  // small-scale version of the exhaustive acceptance suite
  ChangingAlphabet r = default_rule();
  Automaton b = build_woryna_b(r);
  for (int len = 0; len <= 3; ++len)
    enumerate_group_words(len, [&](const GroupWord& xi) {
      for (int i = 1; i <= 2; ++i)
        for (int x = 1; x <= r.size(i); ++x) {
          GroupWord image = dual_step(b, i, x, xi);
          CHECK(pattern_of(image) == pattern_of(xi));
          CHECK(is_freely_irreducible(image) == is_freely_irreducible(xi));
        }
    });
}

TEST_CASE("a second admissible family works end to end") {
  ChangingAlphabet r = ChangingAlphabet::affine(0, 2, 2);  // r_i = 2i
  Automaton b = build_woryna_b(r);
  CHECK(lambda_index(r, 3) == 4);  // r_3 = 6 just misses, r_4 = 8 clears

  GroupWord xi = gw({kGenA, kGenB, kGenA});
  GroupWord eta = gw({kGenB, kGenA, kGenB});
  TreeWord w = connect_irreducible(b, xi, eta);
  CHECK(w.base == 4);
  CHECK(dual_apply(b, w, xi) == eta);

  auto witness = freeness_witness(b, gw({kGenA, kGenBInv}), 12);
  REQUIRE(witness.has_value());
  CHECK(apply_state_word(b, gw({kGenA, kGenBInv}), witness->input) == witness->image);

  PatternFlipWitness flip = pattern_flip_witness(pat({Sign::neg, Sign::neg, Sign::pos}), r);
  CHECK(flip.level == lambda_index(r, 3));
}

TEST_CASE("group word text forms") {
  CHECK(parse_group_word("a b a^-1 b^-1") == gw({kGenA, kGenB, kGenAInv, kGenBInv}));
  CHECK(parse_group_word("aba'b'") == gw({kGenA, kGenB, kGenAInv, kGenBInv}));
  CHECK(parse_group_word("a^-1b") == gw({kGenAInv, kGenB}));
  CHECK(parse_group_word("").empty());
  CHECK(render_group_word(gw({kGenA, kGenBInv})) == "a b^-1");
  CHECK(parse_group_word(render_group_word(gw({kGenBInv, kGenA}))) == gw({kGenBInv, kGenA}));
  CHECK_THROWS_AS(parse_group_word("xyz"), ParseError);
  CHECK_THROWS_AS(parse_group_word("a c"), ParseError);
  CHECK(render_pattern(pat({Sign::pos, Sign::neg})) == "* *^-1");
}

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chaut/automaton.hpp"
#include "chaut/stabilization.hpp"

namespace chaut {

// State indices shared by build_woryna_a / build_woryna_b and all group-word
// operations. Words over {a, b, a^-1, b^-1} are plain StateWords under this
// convention.
inline constexpr int kGenA = 0;
inline constexpr int kGenB = 1;
inline constexpr int kGenAInv = 2;
inline constexpr int kGenBInv = 3;
inline constexpr std::array<const char*, 4> kGroupStateNames{"a", "b", "a^-1", "b^-1"};

using GroupWord = StateWord;

enum class Sign : unsigned char { pos, neg };
using Pattern = std::vector<Sign>;

/// The 2-state automaton with transitions swapping a<->b on letter 1 and
/// outputs sigma_i (full cycle) for a, tau_i (transposition (1,2)) for b.
/// The alphabet must be woryna-admissible.
Automaton build_woryna_a(const ChangingAlphabet& r);

/// Its 4-state companion over {a, b, a^-1, b^-1}: the union of the automaton
/// above with its renamed inverse, realized in closed form.
Automaton build_woryna_b(const ChangingAlphabet& r);

/// Least level i with r_i > 2n.
int lambda_index(const ChangingAlphabet& r, int n);

int inverse_generator(int q);
Pattern pattern_of(const GroupWord& xi);
bool is_freely_irreducible(const GroupWord& xi);
GroupWord tilde(const GroupWord& xi);  // swap a<->b and a^-1<->b^-1

/// Cancels adjacent inverse pairs to a fixed point.
GroupWord free_reduce(const GroupWord& xi);

/// Unique split of a nonempty pattern into first/second part: the second
/// part is the maximal alternating suffix, of shape (* *^-1)^l *^r or
/// (*^-1 *)^l *^-r.
struct PatternDecomposition {
  Pattern first;
  Pattern second;
  std::size_t split = 0;  // index where the second part starts
};
PatternDecomposition decompose(const Pattern& v);

struct WordDecomposition {
  GroupWord first;
  GroupWord second;
  std::size_t split = 0;
};
WordDecomposition decompose_word(const GroupWord& xi);

/// Constructive form of the one-letter pattern-flip: a freely irreducible
/// word xi following v and a letter z in X_i, i = lambda_{|v|}, with
/// D_{i,z}(xi) = xi_I ~xi_II. Self-verified before returning.
struct PatternFlipWitness {
  GroupWord xi;
  int level = 0;
  int letter = 0;
  GroupWord image;  // xi_I concat tilde(xi_II)
};
PatternFlipWitness pattern_flip_witness(const Pattern& v, const ChangingAlphabet& r);

/// Word w at base lambda_n with D_{lambda_n,w}(xi) = eta, found by BFS over
/// the restricted orbit and re-verified with dual_apply before returning.
TreeWord connect_irreducible(const ChangingAlphabet& r, const GroupWord& xi,
                             const GroupWord& eta,
                             std::uint64_t budget = kDefaultRestrictionBudget);
TreeWord connect_irreducible(const Automaton& woryna_b, const GroupWord& xi,
                             const GroupWord& eta,
                             std::uint64_t budget = kDefaultRestrictionBudget);

/// Equal-length witnesses at base 1: D_{1,w}(xi) = eta, D_{1,v}(xi) = zeta,
/// |w| = |v| >= min_length. The shorter word is padded with letters whose
/// dual maps act as the identity on Q^n.
struct EqualLengthWitness {
  TreeWord w;
  TreeWord v;
};
EqualLengthWitness connect_equal_length(const ChangingAlphabet& r, const GroupWord& xi,
                                        const GroupWord& eta, const GroupWord& zeta,
                                        int min_length,
                                        std::uint64_t budget = kDefaultRestrictionBudget);

/// Length-lexicographically least word u at base 1, |u| <= depth_cap, moved
/// by the action of xi; nullopt when every word up to the cap is fixed.
/// xi must be nonempty and freely irreducible.
struct FreenessWitness {
  TreeWord input;
  TreeWord image;
};
std::optional<FreenessWitness> freeness_witness(const ChangingAlphabet& r,
                                                const GroupWord& xi, int depth_cap);
std::optional<FreenessWitness> freeness_witness(const Automaton& woryna_b,
                                                const GroupWord& xi, int depth_cap);

/// The two letter permutations pi1 = tau^r (sigma tau)^{2l} sigma^r and
/// pi2 = tau^r (sigma^-1 tau)^{2l} sigma^-r on X_i, with the checks that
/// pi1 moves 3, pi2 moves r_i, and both agree with the one-letter
/// restrictions of the actions of eta1 = a^r (b^-1 a)^{2l} b^-r and
/// eta2 = a^-r (b a^-1)^{2l} b^r.
struct ProofPermutations {
  std::vector<int> pi1;  // pi1[x-1]
  std::vector<int> pi2;
  bool pi1_moves_3 = false;
  bool pi2_moves_top = false;
  bool pi1_matches_eta1 = false;
  bool pi2_matches_eta2 = false;
  bool all_ok() const {
    return pi1_moves_3 && pi2_moves_top && pi1_matches_eta1 && pi2_matches_eta2;
  }
};
ProofPermutations proof_permutations(const ChangingAlphabet& r, int level, int l,
                                     int rflag);

/// "a b a^-1 b^-1" (canonical) or compact "aba'b'" (apostrophe = inverse).
GroupWord parse_group_word(std::string_view text);
std::string render_group_word(const GroupWord& xi);
std::string render_pattern(const Pattern& v);  // "* * *^-1"

}  // namespace chaut

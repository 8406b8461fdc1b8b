#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaut/automaton.hpp"

namespace chaut {

/// Cap on |Q|^n for exhaustively materialized restrictions.
inline constexpr std::uint64_t kDefaultRestrictionBudget = 4096;

/// Restriction of a dual mapping to Q^n, materialized as a full table.
/// State words are encoded base-|Q| with the first state least significant.
struct RestrictedDualMap {
  std::string source;  // e.g. "D[2,1]"
  int state_count = 0;
  int n = 0;
  std::vector<std::uint32_t> table;  // size |Q|^n

  bool is_bijection() const;
};

std::uint64_t encode_state_word(const StateWord& xi, int state_count);
StateWord decode_state_word(std::uint64_t code, int n, int state_count);

RestrictedDualMap restrict_dual(const Automaton& a, int level, int letter, int n,
                                std::uint64_t budget = kDefaultRestrictionBudget);

/// Same n, same state set, tables equal. Mismatched n or state counts is a
/// DomainError.
bool maps_n_equivalent(const RestrictedDualMap& t1, const RestrictedDualMap& t2);

struct LevelEquivalence {
  bool equivalent = false;
  // when equivalent: least matching letter per letter, both directions
  std::vector<int> forward;   // forward[x-1]: letter at level_b matching x
  std::vector<int> backward;  // backward[y-1]: letter at level_a matching y
  // when not: first letter (scanning level_a then level_b, ascending) with
  // no n-equivalent partner on the other side
  int unmatched_level = 0;
  int unmatched_letter = 0;
};
LevelEquivalence levels_n_equivalent(const Automaton& a, int level_a, int level_b,
                                     int n,
                                     std::uint64_t budget = kDefaultRestrictionBudget);

/// Smallest lambda <= search_bound with levels_n_equivalent(lambda, j, n) for
/// every j in [lambda, lambda + window]; nullopt when none exists below the
/// bound. A finite certificate, not a proof of stabilization.
std::optional<int> stabilization_certificate(const Automaton& a, int n, int window,
                                             int search_bound,
                                             std::uint64_t budget = kDefaultRestrictionBudget);

/// Smallest p >= 1 with (D_{level,letter})^p acting as the identity on Q^n,
/// so the inverse restriction is the (p-1)-th power. DomainError when the
/// restriction is not a bijection; BudgetError when p would overflow.
std::uint64_t dual_inverse_mod_n(const Automaton& a, int level, int letter, int n,
                                 std::uint64_t budget = kDefaultRestrictionBudget);

}  // namespace chaut

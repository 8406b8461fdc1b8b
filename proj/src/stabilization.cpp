#include "chaut/stabilization.hpp"

#include <algorithm>
#include <numeric>

#include "chaut/duality.hpp"
#include "chaut/errors.hpp"

namespace chaut {

namespace {

std::uint64_t checked_pow(int base, int exp, std::uint64_t budget) {
  // table codes are stored as uint32, so no budget may pass that ceiling
  std::uint64_t cap = std::min<std::uint64_t>(budget, UINT32_MAX);
  std::uint64_t size = 1;
  for (int j = 0; j < exp; ++j) {
    size *= static_cast<std::uint64_t>(base);
    if (size > cap)
      throw BudgetError("restriction table |Q|^n = " + std::to_string(base) + "^" +
                        std::to_string(exp) + " exceeds budget " + std::to_string(cap));
  }
  return size;
}

}  // namespace

bool RestrictedDualMap::is_bijection() const {
  std::vector<bool> hit(table.size(), false);
  for (std::uint32_t image : table) {
    if (image >= table.size() || hit[image]) return false;
    hit[image] = true;
  }
  return true;
}

std::uint64_t encode_state_word(const StateWord& xi, int state_count) {
  std::uint64_t code = 0;
  std::uint64_t place = 1;
  for (int q : xi) {
    code += place * static_cast<std::uint64_t>(q);
    place *= static_cast<std::uint64_t>(state_count);
  }
  return code;
}

StateWord decode_state_word(std::uint64_t code, int n, int state_count) {
  StateWord xi(n);
  for (int j = 0; j < n; ++j) {
    xi[j] = static_cast<int>(code % state_count);
    code /= state_count;
  }
  return xi;
}

RestrictedDualMap restrict_dual(const Automaton& a, int level, int letter, int n,
                                std::uint64_t budget) {
  if (n < 1) throw DomainError("restriction length must be >= 1");
  int nq = a.state_count();
  std::uint64_t size = checked_pow(nq, n, budget);
  RestrictedDualMap map;
  map.source = "D[" + std::to_string(level) + "," + std::to_string(letter) + "]";
  map.state_count = nq;
  map.n = n;
  map.table.resize(size);
  for (std::uint64_t code = 0; code < size; ++code) {
    StateWord image = dual_step(a, level, letter, decode_state_word(code, n, nq));
    map.table[code] = static_cast<std::uint32_t>(encode_state_word(image, nq));
  }
  return map;
}

bool maps_n_equivalent(const RestrictedDualMap& t1, const RestrictedDualMap& t2) {
  if (t1.n != t2.n)
    throw DomainError("n-equivalence of restrictions with different n (" +
                      std::to_string(t1.n) + " vs " + std::to_string(t2.n) + ")");
  if (t1.state_count != t2.state_count)
    throw DomainError("n-equivalence of restrictions over different state sets");
  return t1.table == t2.table;
}

LevelEquivalence levels_n_equivalent(const Automaton& a, int level_a, int level_b, int n,
                                     std::uint64_t budget) {
  int ra = a.alphabet().size(level_a);
  int rb = a.alphabet().size(level_b);
  std::vector<RestrictedDualMap> ta, tb;
  ta.reserve(ra);
  tb.reserve(rb);
  for (int x = 1; x <= ra; ++x) ta.push_back(restrict_dual(a, level_a, x, n, budget));
  for (int y = 1; y <= rb; ++y) tb.push_back(restrict_dual(a, level_b, y, n, budget));

  LevelEquivalence result;
  result.forward.assign(ra, 0);
  result.backward.assign(rb, 0);
  for (int x = 1; x <= ra; ++x) {
    for (int y = 1; y <= rb; ++y)
      if (ta[x - 1].table == tb[y - 1].table) {
        result.forward[x - 1] = y;
        break;
      }
    if (result.forward[x - 1] == 0) return {false, {}, {}, level_a, x};
  }
  for (int y = 1; y <= rb; ++y) {
    for (int x = 1; x <= ra; ++x)
      if (tb[y - 1].table == ta[x - 1].table) {
        result.backward[y - 1] = x;
        break;
      }
    if (result.backward[y - 1] == 0) return {false, {}, {}, level_b, y};
  }
  result.equivalent = true;
  return result;
}

std::optional<int> stabilization_certificate(const Automaton& a, int n, int window,
                                             int search_bound, std::uint64_t budget) {
  if (window < 1) throw DomainError("certificate window must be >= 1");
  for (int lambda = 1; lambda <= search_bound; ++lambda) {
    bool ok = true;
    for (int j = lambda; j <= lambda + window && ok; ++j)
      ok = levels_n_equivalent(a, lambda, j, n, budget).equivalent;
    if (ok) return lambda;
  }
  return std::nullopt;
}

std::uint64_t dual_inverse_mod_n(const Automaton& a, int level, int letter, int n,
                                 std::uint64_t budget) {
  RestrictedDualMap map = restrict_dual(a, level, letter, n, budget);
  if (!map.is_bijection())
    throw DomainError("dual restriction " + map.source + " at n = " + std::to_string(n) +
                      " is not a bijection (automaton not state-invertible)");
  // order of the permutation: lcm of cycle lengths
  constexpr std::uint64_t kOrderCap = std::uint64_t{1} << 62;
  std::vector<bool> seen(map.table.size(), false);
  std::uint64_t order = 1;
  for (std::uint64_t start = 0; start < map.table.size(); ++start) {
    if (seen[start]) continue;
    std::uint64_t len = 0;
    std::uint64_t cur = start;
    do {
      seen[cur] = true;
      cur = map.table[cur];
      ++len;
    } while (cur != start);
    std::uint64_t g = std::gcd(order, len);
    if (order / g > kOrderCap / len)
      throw BudgetError("permutation order exceeds the iteration cap");
    order = order / g * len;
  }
  return order;
}

}  // namespace chaut

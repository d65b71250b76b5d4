#ifndef DRLSOFT_TESTS_SUPPORT_HPP
#define DRLSOFT_TESTS_SUPPORT_HPP

// Test-only helpers: independent constructions used as oracles, and the
// fixed instances shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "drlsoft/drlsoft.hpp"

namespace drlsoft::testing {

/// All distributive lattices with 2..max_size elements up to isomorphism,
/// built as down-set lattices of finite posets. Does not use derive_lattice.
inline std::vector<OrderTable> distributive_lattices(std::size_t max_size) {
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<OrderTable> out;
  for (std::size_t m = 1; m < max_size; ++m) {
    // Strict relations compatible with the order 0 < 1 < ... < m-1.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (mask >> p & 1u) below[pairs[p].first][pairs[p].second] = true;
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            if (below[i][l] && below[l][j]) below[i][j] = true;
      // Down-sets as bitmasks.
      std::vector<std::uint32_t> downsets;
      for (std::uint32_t s = 0; s < (1u << m); ++s) {
        bool closed = true;
        for (std::size_t j = 0; j < m && closed; ++j)
          if (s >> j & 1u)
            for (std::size_t i = 0; i < m && closed; ++i)
              if (below[i][j] && !(s >> i & 1u)) closed = false;
        if (closed) downsets.push_back(s);
      }
      const std::size_t n = downsets.size();
      if (n > max_size) continue;
      // Canonical form: lexicographically least order matrix over all relabelings.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<std::uint8_t> best;
      do {
        std::vector<std::uint8_t> flat(n * n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) {
            const auto a = downsets[perm[x]], b = downsets[perm[y]];
            flat[x * n + y] = (a & ~b) == 0;
          }
        if (best.empty() || flat < best) best = flat;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!seen.insert(best).second) continue;
      out.push_back(OrderTable::generate(n, [&](std::size_t x, std::size_t y) { return best[x * n + y]; }));
    }
  }
  return out;
}

/// Residuum from the textbook closed forms of each chain family, written
/// independently of the sup formula.
inline OpTable closed_form_residuum(const std::string& family, std::size_t n) {
  return OpTable::generate(n, [&](std::size_t x, std::size_t y) -> std::size_t {
    if (family == "godel") return x <= y ? n - 1 : y;
    if (family == "lukasiewicz") return std::min(n - 1, n - 1 - x + y);
    // weighted: ids are costs, top = 0; x -> y is the truncated difference.
    return y > x ? y - x : 0;
  });
}

struct NamedAlgebra {
  std::string label;
  std::shared_ptr<const FiniteDRL> algebra;
};

inline std::shared_ptr<const FiniteDRL> share(FiniteDRL a) {
  return std::make_shared<const FiniteDRL>(std::move(a));
}

/// boolean; godel and lukasiewicz chains of length 2..8; weighted(1..10);
/// Heyting algebras on every distributive lattice with at most 6 elements.
inline std::vector<NamedAlgebra> base_suite() {
  std::vector<NamedAlgebra> out;
  out.push_back({"boolean", share(boolean_algebra())});
  for (std::size_t n = 2; n <= 8; ++n) out.push_back({"godel_chain(" + std::to_string(n) + ")", share(godel_chain(n))});
  for (std::size_t n = 2; n <= 8; ++n)
    out.push_back({"lukasiewicz_chain(" + std::to_string(n) + ")", share(lukasiewicz_chain(n))});
  for (std::size_t n = 1; n <= 10; ++n) out.push_back({"weighted(" + std::to_string(n) + ")", share(weighted(n))});
  std::size_t idx = 0;
  for (const auto& leq : distributive_lattices(6)) {
    const auto label = "heyting#" + std::to_string(idx++) + "[" + std::to_string(leq.size()) + "]";
    out.push_back({label, share(heyting_from_lattice(leq, label))});
  }
  return out;
}

/// Unordered pairs (including squares) of base_suite() with carrier <= cap.
inline std::vector<NamedAlgebra> product_suite(const std::vector<NamedAlgebra>& base, std::size_t cap = 64) {
  std::vector<NamedAlgebra> out;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j)
      if (base[i].algebra->size * base[j].algebra->size <= cap)
        out.push_back({base[i].label + " x " + base[j].label,
                       share(direct_product(*base[i].algebra, *base[j].algebra))});
  return out;
}

inline OrderTable diamond_order() {
  // 0 = bottom, 1 = a, 2 = b, 3 = top; a and b incomparable.
  return OrderTable::generate(4, [](std::size_t x, std::size_t y) {
    return x == y || x == 0 || y == 3;
  });
}

/// weighted(10), D1 = D2 = {a, b}; C_1 = (0, 1); C_12 = (2, 5, 0, 3).
inline Problem weighted_example() {
  Problem p(share(weighted(10)), {2, 2});
  p.set_constraint({{0}, {0, 1}});
  p.set_constraint({{0, 1}, {2, 5, 0, 3}});
  return p;
}

// Ids in boolean x boolean: (l, r) -> 2l + r.
inline constexpr Element kSqBottom = 0, kSqRight = 1, kSqLeft = 2, kSqTop = 3;

/// boolean x boolean; D1 = {a, b}, D2 = {c, d}; unaries top;
/// C_12(a,c) = C_12(b,d) = (top, bottom), C_12(a,d) = C_12(b,c) = (bottom, top).
inline Problem boolean_square_instance() {
  Problem p(share(direct_product(boolean_algebra(), boolean_algebra())), {2, 2});
  p.set_constraint({{0, 1}, {kSqLeft, kSqRight, kSqRight, kSqLeft}});
  return p;
}

inline std::vector<Element> values_of(const Problem& p, const Scope& s) { return p.constraint(s).values; }

}  // namespace drlsoft::testing

#endif  // DRLSOFT_TESTS_SUPPORT_HPP

#ifndef DRLSOFT_ENFORCE_HPP
#define DRLSOFT_ENFORCE_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "problem.hpp"
#include "rng.hpp"

namespace drlsoft {

// ---------------------------------------------------------------------------
// Choice of the projected value

enum class StrategyKind { MaximalLex, MaximalSeeded, Join };

/// How the value projected onto a unary entry is chosen from the
/// constraint values that extend it.
///
/// - MaximalLex: the maximal value whose first occurrence comes earliest in
///   canonical tuple order.
/// - MaximalSeeded: uniform among the maximal values, driven by SplitMix64.
/// - Join: the join of all values; it need not occur in the table.
///
/// On chains every strategy picks the maximum.
struct Strategy {
  StrategyKind kind = StrategyKind::MaximalLex;
  std::uint64_t seed = 0;

  static Strategy maximal_lex() { return {StrategyKind::MaximalLex, 0}; }
  static Strategy maximal_seeded(std::uint64_t seed) { return {StrategyKind::MaximalSeeded, seed}; }
  static Strategy join() { return {StrategyKind::Join, 0}; }

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

inline std::string to_string(const Strategy& s) {
  switch (s.kind) {
    case StrategyKind::MaximalLex: return "maximal-lex";
    case StrategyKind::MaximalSeeded: return "maximal-seeded:" + std::to_string(s.seed);
    case StrategyKind::Join: return "join";
  }
  return "?";
}

/// Parses "maximal-lex", "maximal-seeded:SEED" or "join".
inline std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "maximal-lex") return Strategy::maximal_lex();
  if (text == "join") return Strategy::join();
  constexpr std::string_view prefix = "maximal-seeded:";
  if (text.substr(0, prefix.size()) == prefix) {
    std::uint64_t seed = 0;
    const auto digits = text.substr(prefix.size());
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty())
      return Strategy::maximal_seeded(seed);
  }
  return std::nullopt;
}

/// Stateful selector; one per enforcement run so seeded choices are
/// reproducible.
class ValueSelector {
 public:
  explicit ValueSelector(Strategy strategy) : strategy_(strategy), rng_(strategy.seed) {}

  const Strategy& strategy() const noexcept { return strategy_; }

  /// `candidates` lists C_Y(t . a) in canonical order of t.
  Element select(const FiniteDRL& alg, std::span<const Element> candidates) {
    if (strategy_.kind == StrategyKind::Join) {
      Element acc = alg.bottom;
      for (Element v : candidates) acc = alg.join(acc, v);
      return acc;
    }
    const auto maxima = maximal_elements(alg, candidates);
    if (maxima.size() == 1) return maxima.front();
    if (strategy_.kind == StrategyKind::MaximalSeeded) return maxima[rng_.below(maxima.size())];
    for (Element v : candidates)
      if (std::binary_search(maxima.begin(), maxima.end(), v)) return v;
    return maxima.front();
  }

 private:
  Strategy strategy_;
  SplitMix64 rng_;
};

// ---------------------------------------------------------------------------
// Project and the main loop

struct EnforcementCounters {
  std::size_t main_loop_iterations = 0;
  std::size_t project_calls = 0;
  std::size_t inner_tuple_iterations = 0;
  std::size_t queue_pushes = 0;  ///< including the initial n

  friend bool operator==(const EnforcementCounters&, const EnforcementCounters&) = default;
};

/// Moves cost from C_Y onto the unary constraint of i: for each live value
/// a of i, picks x from {C_Y(t . a)}, combines it into C_{i}(a) and
/// replaces each C_Y(t . a) by x -> C_Y(t . a). Returns true iff some
/// unary entry of i dropped to bottom.
inline bool project(Problem& problem, const Scope& scope, Var i, ValueSelector& selector,
                    EnforcementCounters* counters = nullptr) {
  if (!problem.contains(scope))
    throw Error(ErrorCode::ScopeMissing, "no constraint with scope " + scope_to_string(scope));
  if (scope.size() < 2) throw Error(ErrorCode::ScopeError, "project needs a scope of arity >= 2");
  const ExtensionIndices ext(scope, problem.domains(), i);

  const FiniteDRL& alg = problem.algebra();
  auto table = problem.values(scope);
  auto unary = problem.values(Scope{i});
  std::vector<Element> candidates;
  candidates.reserve(ext.count());
  bool shrinks = false;

  for (std::size_t a = 0; a < unary.size(); ++a) {
    if (unary[a] == alg.bottom) continue;
    candidates.clear();
    ext.for_each(a, [&](std::size_t idx) { candidates.push_back(table[idx]); });
    const Element x = selector.select(alg, candidates);
    unary[a] = alg.otimes(unary[a], x);
    if (unary[a] == alg.bottom) shrinks = true;
    ext.for_each(a, [&](std::size_t idx) { table[idx] = alg.residuum(x, table[idx]); });
    if (counters) counters->inner_tuple_iterations += 2 * ext.count();
  }
  if (counters) ++counters->project_calls;
  return shrinks;
}

inline bool project(Problem& problem, const Scope& scope, Var i, Strategy strategy) {
  ValueSelector selector(strategy);
  return project(problem, scope, i, selector);
}

struct EnforcementOutcome {
  std::optional<Problem> problem;        ///< empty iff inconsistency was detected
  std::optional<Var> failed_variable;    ///< variable whose unary became all-bottom
  EnforcementCounters counters;

  bool inconsistent() const noexcept { return !problem.has_value(); }
};

/// Enforces k-hyperarc consistency on a copy of `input`.
///
/// The worklist is FIFO without duplicates and starts with every variable
/// in id order; scopes incident to a popped variable are visited in
/// canonical order. A variable is re-queued whenever a projection onto it
/// drops some unary entry to bottom.
inline EnforcementOutcome enforce_k_hyperarc(const Problem& input, std::size_t k,
                                             Strategy strategy = Strategy::maximal_lex()) {
  if (k < 2) throw Error(ErrorCode::BadK, "k must be at least 2", {k});
  EnforcementOutcome out;
  Problem work = input;
  ValueSelector selector(strategy);
  const std::size_t n = work.variable_count();
  const FiniteDRL& alg = work.algebra();

  std::vector<std::vector<Scope>> incident(n);
  for (const auto& [scope, c] : work.constraints())
    if (scope.size() >= 2 && scope.size() <= k)
      for (Var v : scope) incident[v].push_back(scope);

  std::deque<Var> queue;
  std::vector<char> queued(n, 1);
  for (Var v = 0; v < n; ++v) queue.push_back(v);
  out.counters.queue_pushes = n;

  while (!queue.empty()) {
    const Var i = queue.front();
    queue.pop_front();
    queued[i] = 0;
    ++out.counters.main_loop_iterations;
    for (const Scope& scope : incident[i]) {
      const bool shrinks = project(work, scope, i, selector, &out.counters);
      const auto& unary = work.unary(i).values;
      if (std::all_of(unary.begin(), unary.end(), [&](Element u) { return u == alg.bottom; })) {
        out.failed_variable = i;
        return out;
      }
      if (shrinks && !queued[i]) {
        queue.push_back(i);
        queued[i] = 1;
        ++out.counters.queue_pushes;
      }
    }
  }
  out.problem = std::move(work);
  return out;
}

/// Iteration bounds of the worklist: at most n(d+1) main-loop iterations
/// and at most e projections per iteration.
inline bool check_counter_bound(const EnforcementCounters& c, std::size_t n, std::size_t d, std::size_t e) {
  const std::size_t loop_bound = n * (d + 1);
  return c.main_loop_iterations <= loop_bound && c.queue_pushes <= loop_bound &&
         c.project_calls <= loop_bound * e;
}

}  // namespace drlsoft

#endif  // DRLSOFT_ENFORCE_HPP

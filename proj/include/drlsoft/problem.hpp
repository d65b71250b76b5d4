#ifndef DRLSOFT_PROBLEM_HPP
#define DRLSOFT_PROBLEM_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"

namespace drlsoft {

using Var = std::size_t;
/// Strictly increasing variable ids.
using Scope = std::vector<Var>;
/// Values of the scope variables, in scope order.
using Tuple = std::vector<std::size_t>;

inline constexpr std::size_t kMaxTableEntries = 1'000'000;

// ---------------------------------------------------------------------------
// Tuple indexing. Row-major: the last scope variable varies fastest.

inline std::string scope_to_string(const Scope& scope) {
  std::string s = "{";
  for (std::size_t j = 0; j < scope.size(); ++j) s += (j ? "," : "") + std::to_string(scope[j]);
  return s + "}";
}

inline bool is_strictly_increasing(const Scope& scope) {
  return std::adjacent_find(scope.begin(), scope.end(), std::greater_equal<>()) == scope.end();
}

inline std::size_t table_size(const Scope& scope, std::span<const std::size_t> domains) {
  std::size_t size = 1;
  for (Var v : scope) {
    if (v >= domains.size())
      throw Error(ErrorCode::ScopeError, "variable " + std::to_string(v) + " out of range", {v});
    if (domains[v] != 0 && size > kMaxTableEntries / domains[v])
      throw Error(ErrorCode::TooLarge, "table over " + scope_to_string(scope) + " exceeds " +
                                           std::to_string(kMaxTableEntries) + " entries");
    size *= domains[v];
  }
  return size;
}

inline std::size_t tuple_index(const Scope& scope, std::span<const std::size_t> domains,
                               std::span<const std::size_t> tuple) {
  if (tuple.size() != scope.size())
    throw Error(ErrorCode::OutOfRange, "tuple length does not match scope");
  std::size_t index = 0;
  for (std::size_t j = 0; j < scope.size(); ++j) {
    const std::size_t d = domains[scope[j]];
    if (tuple[j] >= d)
      throw Error(ErrorCode::OutOfRange,
                  "value " + std::to_string(tuple[j]) + " outside domain of variable " +
                      std::to_string(scope[j]),
                  {scope[j], tuple[j]});
    index = index * d + tuple[j];
  }
  return index;
}

inline Tuple index_tuple(const Scope& scope, std::span<const std::size_t> domains, std::size_t index) {
  if (index >= table_size(scope, domains))
    throw Error(ErrorCode::OutOfRange, "tuple index " + std::to_string(index) + " out of range");
  Tuple t(scope.size());
  for (std::size_t j = scope.size(); j-- > 0;) {
    const std::size_t d = domains[scope[j]];
    t[j] = index % d;
    index /= d;
  }
  return t;
}

/// Index into a table over `scope` of the restriction of a full assignment.
inline std::size_t restricted_index(const Scope& scope, std::span<const std::size_t> domains,
                                    std::span<const std::size_t> full) {
  std::size_t index = 0;
  for (Var v : scope) index = index * domains[v] + full[v];
  return index;
}

/// t|_Z for a tuple t over Y, where Z is a subset of Y.
inline Tuple restrict_tuple(const Scope& from, const Tuple& t, const Scope& to) {
  Tuple r;
  r.reserve(to.size());
  for (Var v : to) {
    auto it = std::lower_bound(from.begin(), from.end(), v);
    if (it == from.end() || *it != v)
      throw Error(ErrorCode::VariableNotInScope, "variable " + std::to_string(v) + " not in scope", {v});
    r.push_back(t[static_cast<std::size_t>(it - from.begin())]);
  }
  return r;
}

/// t . a: extends a tuple over `rest` with value a for variable i (i not in rest).
/// Returns the scope rest + {i} and the extended tuple.
inline std::pair<Scope, Tuple> extend_tuple(const Scope& rest, const Tuple& t, Var i, std::size_t a) {
  auto pos = static_cast<std::size_t>(std::lower_bound(rest.begin(), rest.end(), i) - rest.begin());
  if (pos < rest.size() && rest[pos] == i)
    throw Error(ErrorCode::ScopeError, "variable already in scope", {i});
  Scope scope = rest;
  Tuple ext = t;
  scope.insert(scope.begin() + static_cast<std::ptrdiff_t>(pos), i);
  ext.insert(ext.begin() + static_cast<std::ptrdiff_t>(pos), a);
  return {std::move(scope), std::move(ext)};
}

/// Enumerates the table indices of t . a for fixed (i, a) as t ranges over
/// l(Y \ {i}) in canonical (row-major) order.
class ExtensionIndices {
 public:
  ExtensionIndices(const Scope& scope, std::span<const std::size_t> domains, Var i) {
    auto it = std::lower_bound(scope.begin(), scope.end(), i);
    if (it == scope.end() || *it != i)
      throw Error(ErrorCode::VariableNotInScope,
                  "variable " + std::to_string(i) + " not in scope " + scope_to_string(scope), {i});
    const auto pos = static_cast<std::size_t>(it - scope.begin());
    for (std::size_t j = pos + 1; j < scope.size(); ++j) inner_ *= domains[scope[j]];
    for (std::size_t j = 0; j < pos; ++j) outer_ *= domains[scope[j]];
    domain_ = domains[i];
  }

  /// Number of tuples t, |l(Y \ {i})|.
  std::size_t count() const noexcept { return outer_ * inner_; }

  template <class F>
  void for_each(std::size_t a, F&& f) const {
    for (std::size_t hi = 0; hi < outer_; ++hi) {
      const std::size_t base = (hi * domain_ + a) * inner_;
      for (std::size_t lo = 0; lo < inner_; ++lo) f(base + lo);
    }
  }

 private:
  std::size_t outer_ = 1;
  std::size_t inner_ = 1;
  std::size_t domain_ = 1;
};

// ---------------------------------------------------------------------------
// Constraints and problems

struct Constraint {
  Scope scope;
  std::vector<Element> values;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

namespace detail {

inline void validate_constraint(const Constraint& c, std::span<const std::size_t> domains,
                                const FiniteDRL& algebra) {
  if (!is_strictly_increasing(c.scope))
    throw Error(ErrorCode::ScopeError, "scope " + scope_to_string(c.scope) + " is not strictly increasing");
  const std::size_t expected = table_size(c.scope, domains);
  if (c.values.size() != expected)
    throw Error(ErrorCode::ScopeError, "constraint over " + scope_to_string(c.scope) + " has " +
                                           std::to_string(c.values.size()) + " values, expected " +
                                           std::to_string(expected));
  for (std::size_t k = 0; k < c.values.size(); ++k)
    if (c.values[k] >= algebra.size)
      throw Error(ErrorCode::ValueOutOfRange,
                  "value " + std::to_string(c.values[k]) + " in constraint " + scope_to_string(c.scope) +
                      " is not an element of " + algebra.name,
                  {k, c.values[k]});
}

inline void validate_domains(std::span<const std::size_t> domains) {
  for (std::size_t i = 0; i < domains.size(); ++i)
    if (domains[i] == 0) throw Error(ErrorCode::BadParams, "domain of variable " + std::to_string(i) + " is empty", {i});
}

}  // namespace detail

/// A constraint multiset as read from input: duplicate scopes and missing
/// unary constraints are allowed.
struct RawProblem {
  std::shared_ptr<const FiniteDRL> algebra;
  std::vector<std::size_t> domains;
  std::vector<Constraint> constraints;

  std::size_t variable_count() const noexcept { return domains.size(); }

  void validate() const {
    if (!algebra) throw Error(ErrorCode::BadParams, "problem has no algebra");
    detail::validate_domains(domains);
    for (const auto& c : constraints) detail::validate_constraint(c, domains, *algebra);
  }
};

/// A normalized problem: one constraint per scope and a unary constraint
/// on every variable. Scopes iterate in canonical (lexicographic) order.
class Problem {
 public:
  /// Creates a problem whose only constraints are constant-top unaries.
  Problem(std::shared_ptr<const FiniteDRL> algebra, std::vector<std::size_t> domains)
      : algebra_(std::move(algebra)), domains_(std::move(domains)) {
    if (!algebra_) throw Error(ErrorCode::BadParams, "problem has no algebra");
    detail::validate_domains(domains_);
    for (Var i = 0; i < domains_.size(); ++i)
      constraints_.emplace(Scope{i}, Constraint{{i}, std::vector<Element>(domains_[i], algebra_->top)});
  }

  const FiniteDRL& algebra() const noexcept { return *algebra_; }
  const std::shared_ptr<const FiniteDRL>& algebra_ptr() const noexcept { return algebra_; }
  std::size_t variable_count() const noexcept { return domains_.size(); }
  const std::vector<std::size_t>& domains() const noexcept { return domains_; }
  std::size_t max_domain_size() const {
    return domains_.empty() ? 0 : *std::max_element(domains_.begin(), domains_.end());
  }
  std::size_t constraint_count() const noexcept { return constraints_.size(); }
  const std::map<Scope, Constraint>& constraints() const noexcept { return constraints_; }

  bool contains(const Scope& scope) const { return constraints_.count(scope) != 0; }

  const Constraint& constraint(const Scope& scope) const {
    auto it = constraints_.find(scope);
    if (it == constraints_.end())
      throw Error(ErrorCode::ScopeMissing, "no constraint with scope " + scope_to_string(scope));
    return it->second;
  }
  const Constraint& unary(Var i) const { return constraint(Scope{i}); }

  /// Mutable view of a table; its length is fixed.
  std::span<Element> values(const Scope& scope) {
    auto it = constraints_.find(scope);
    if (it == constraints_.end())
      throw Error(ErrorCode::ScopeMissing, "no constraint with scope " + scope_to_string(scope));
    return it->second.values;
  }

  /// Inserts or replaces the constraint with c's scope.
  void set_constraint(Constraint c) {
    if (c.scope.empty()) throw Error(ErrorCode::ScopeError, "constraints need a nonempty scope");
    detail::validate_constraint(c, domains_, *algebra_);
    Scope key = c.scope;
    constraints_.insert_or_assign(std::move(key), std::move(c));
  }

  RawProblem to_raw() const {
    RawProblem raw{algebra_, domains_, {}};
    raw.constraints.reserve(constraints_.size());
    for (const auto& [scope, c] : constraints_) raw.constraints.push_back(c);
    return raw;
  }

  /// Same algebra tables, domains and constraint store.
  friend bool operator==(const Problem& a, const Problem& b) {
    return (a.algebra_ == b.algebra_ || same_tables(*a.algebra_, *b.algebra_)) &&
           a.domains_ == b.domains_ && a.constraints_ == b.constraints_;
  }

 private:
  std::shared_ptr<const FiniteDRL> algebra_;
  std::vector<std::size_t> domains_;
  std::map<Scope, Constraint> constraints_;
};

// ---------------------------------------------------------------------------
// Normalization

struct NormalizeOutcome {
  std::optional<Problem> problem;     ///< empty iff some domain emptied
  std::optional<Var> emptied_variable;

  bool inconsistent() const noexcept { return !problem.has_value(); }
};

/// Merges duplicate scopes with otimes, adds missing constant-top unaries,
/// and drops domain values whose unary value is bottom (re-indexing every
/// table over the surviving values).
inline NormalizeOutcome normalize(const RawProblem& raw) {
  raw.validate();
  const FiniteDRL& alg = *raw.algebra;
  const std::size_t n = raw.variable_count();

  std::map<Scope, std::vector<Element>> merged;
  for (Var i = 0; i < n; ++i) merged.emplace(Scope{i}, std::vector<Element>(raw.domains[i], alg.top));
  for (const auto& c : raw.constraints) {
    if (c.scope.empty()) throw Error(ErrorCode::ScopeError, "constraints need a nonempty scope");
    auto [it, inserted] = merged.try_emplace(c.scope, c.values);
    if (inserted) continue;
    auto& acc = it->second;
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = alg.otimes(acc[k], c.values[k]);
  }

  std::vector<std::vector<std::size_t>> kept(n);
  bool shrinks = false;
  for (Var i = 0; i < n; ++i) {
    const auto& unary = merged.at(Scope{i});
    for (std::size_t a = 0; a < unary.size(); ++a)
      if (unary[a] != alg.bottom) kept[i].push_back(a);
    if (kept[i].empty()) return {std::nullopt, i};
    shrinks = shrinks || kept[i].size() != raw.domains[i];
  }

  std::vector<std::size_t> domains(n);
  for (Var i = 0; i < n; ++i) domains[i] = kept[i].size();
  Problem out(raw.algebra, domains);
  for (auto& [scope, values] : merged) {
    if (!shrinks) {
      out.set_constraint(Constraint{scope, std::move(values)});
      continue;
    }
    const std::size_t size = table_size(scope, domains);
    std::vector<Element> projected(size);
    for (std::size_t k = 0; k < size; ++k) {
      Tuple t = index_tuple(scope, domains, k);
      for (std::size_t j = 0; j < scope.size(); ++j) t[j] = kept[scope[j]][t[j]];
      projected[k] = values[tuple_index(scope, raw.domains, t)];
    }
    out.set_constraint(Constraint{scope, std::move(projected)});
  }
  return {std::move(out), std::nullopt};
}

inline NormalizeOutcome normalize(const Problem& p) { return normalize(p.to_raw()); }

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline const Constraint& as_constraint(const Constraint& c) { return c; }
inline const Constraint& as_constraint(const std::pair<const Scope, Constraint>& kv) { return kv.second; }

}  // namespace detail

inline std::span<const std::size_t> domains_of(const Problem& p) { return p.domains(); }
inline std::span<const std::size_t> domains_of(const RawProblem& p) { return p.domains; }
inline const std::map<Scope, Constraint>& constraints_of(const Problem& p) { return p.constraints(); }
inline const std::vector<Constraint>& constraints_of(const RawProblem& p) { return p.constraints; }
inline const FiniteDRL& algebra_of(const Problem& p) { return p.algebra(); }
inline const FiniteDRL& algebra_of(const RawProblem& p) { return *p.algebra; }

/// Combination of every constraint's value at the projections of a full
/// assignment. Top for an empty store.
template <class P>
Element combined_value(const P& problem, std::span<const std::size_t> full) {
  const auto domains = domains_of(problem);
  const FiniteDRL& alg = algebra_of(problem);
  if (full.size() != domains.size())
    throw Error(ErrorCode::OutOfRange, "full tuple length does not match variable count");
  for (std::size_t v = 0; v < full.size(); ++v)
    if (full[v] >= domains[v])
      throw Error(ErrorCode::OutOfRange, "value outside domain of variable " + std::to_string(v), {v, full[v]});
  Element acc = alg.top;
  for (const auto& entry : constraints_of(problem)) {
    const Constraint& c = detail::as_constraint(entry);
    acc = alg.otimes(acc, c.values[restricted_index(c.scope, domains, full)]);
    if (acc == alg.bottom) break;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// k-hyperarc consistency

struct Violation {
  Scope scope;
  Var variable = 0;
  std::size_t value = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Returns the first violated (scope, variable, value) in canonical order,
/// or nullopt if every stored scope of arity 2..k is k-hyperarc consistent.
inline std::optional<Violation> find_hyperarc_violation(const Problem& p, std::size_t k) {
  if (k < 2) throw Error(ErrorCode::BadK, "k must be at least 2", {k});
  const FiniteDRL& alg = p.algebra();
  for (const auto& [scope, c] : p.constraints()) {
    if (scope.size() < 2 || scope.size() > k) continue;
    for (Var i : scope) {
      const auto& unary = p.unary(i).values;
      ExtensionIndices ext(scope, p.domains(), i);
      for (std::size_t a = 0; a < unary.size(); ++a) {
        const Element u = unary[a];
        if (u == alg.bottom) continue;
        bool witnessed = false;
        ext.for_each(a, [&](std::size_t idx) { witnessed = witnessed || alg.otimes(u, c.values[idx]) == u; });
        if (!witnessed) return Violation{scope, i, a};
      }
    }
  }
  return std::nullopt;
}

inline bool is_k_hyperarc_consistent(const Problem& p, std::size_t k) {
  return !find_hyperarc_violation(p, k).has_value();
}

}  // namespace drlsoft

#endif  // DRLSOFT_PROBLEM_HPP

#ifndef DRLSOFT_GENERATE_HPP
#define DRLSOFT_GENERATE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "problem.hpp"
#include "rng.hpp"

namespace drlsoft {

struct GenParams {
  std::size_t variables = 0;     ///< n
  std::size_t domain = 0;        ///< d, every domain has this size
  std::size_t constraints = 0;   ///< e, including the n unary constraints
  std::size_t max_arity = 2;
  std::uint64_t seed = 0;
};

/// All scopes of arity 2..max_arity over n variables, arity-major then
/// lexicographic.
inline std::vector<Scope> candidate_scopes(std::size_t n, std::size_t max_arity) {
  std::vector<Scope> out;
  for (std::size_t arity = 2; arity <= max_arity; ++arity) {
    Scope s(arity);
    for (std::size_t j = 0; j < arity; ++j) s[j] = j;
    for (;;) {
      out.push_back(s);
      std::size_t j = arity;
      while (j > 0 && s[j - 1] == n - arity + j - 1) --j;
      if (j == 0) break;
      ++s[j - 1];
      for (std::size_t l = j; l < arity; ++l) s[l] = s[l - 1] + 1;
    }
  }
  return out;
}

/// Deterministic random instance. Draw order: unary values for variables
/// 0..n-1 (uniform over non-bottom ids), then e - n times a scope uniform
/// among the unused candidates followed by its values (uniform over all ids).
inline Problem gen_random_problem(std::shared_ptr<const FiniteDRL> algebra, const GenParams& p) {
  if (!algebra) throw Error(ErrorCode::BadParams, "no algebra");
  const std::size_t n = p.variables;
  if (n < 1 || p.domain < 1 || p.max_arity < 2 || p.max_arity > n || p.constraints < n)
    throw Error(ErrorCode::BadParams, "need n,d >= 1, 2 <= max_arity <= n and e >= n");
  if (algebra->size < 2) throw Error(ErrorCode::BadParams, "algebra has no element above bottom");

  std::vector<Element> live;
  for (Element v = 0; v < algebra->size; ++v)
    if (v != algebra->bottom) live.push_back(v);

  auto scopes = candidate_scopes(n, p.max_arity);
  const std::size_t extra = p.constraints - n;
  if (extra > scopes.size())
    throw Error(ErrorCode::NotEnoughScopes, "only " + std::to_string(scopes.size()) + " scopes of arity 2.." +
                                                std::to_string(p.max_arity) + " exist");

  SplitMix64 rng(p.seed);
  Problem out(algebra, std::vector<std::size_t>(n, p.domain));
  for (Var i = 0; i < n; ++i) {
    std::vector<Element> values(p.domain);
    for (auto& v : values) v = live[rng.below(live.size())];
    out.set_constraint(Constraint{{i}, std::move(values)});
  }
  for (std::size_t c = 0; c < extra; ++c) {
    const auto pick = static_cast<std::ptrdiff_t>(rng.below(scopes.size()));
    Scope scope = std::move(scopes[static_cast<std::size_t>(pick)]);
    scopes.erase(scopes.begin() + pick);
    std::vector<Element> values(table_size(scope, out.domains()));
    for (auto& v : values) v = static_cast<Element>(rng.below(algebra->size));
    out.set_constraint(Constraint{std::move(scope), std::move(values)});
  }
  return out;
}

}  // namespace drlsoft

#endif  // DRLSOFT_GENERATE_HPP

#ifndef DRLSOFT_ORACLE_HPP
#define DRLSOFT_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "problem.hpp"

namespace drlsoft {

inline constexpr std::size_t kDefaultTupleCap = 1'000'000;

struct OracleOptions {
  std::size_t tuple_cap = kDefaultTupleCap;
  unsigned threads = 1;
};

/// Ids of the input with nothing in the input strictly above them, sorted.
inline std::vector<Element> maximal_elements(const FiniteDRL& alg, std::span<const Element> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "maximal_elements of an empty set");
  std::vector<char> present(alg.size, 0);
  for (Element v : values) {
    if (v >= alg.size) throw Error(ErrorCode::ValueOutOfRange, "element outside the carrier", {v});
    present[v] = 1;
  }
  std::vector<Element> distinct;
  for (Element v = 0; v < alg.size; ++v)
    if (present[v]) distinct.push_back(v);
  std::vector<Element> out;
  for (Element m : distinct) {
    bool dominated = std::any_of(distinct.begin(), distinct.end(), [&](Element y) { return alg.lt(m, y); });
    if (!dominated) out.push_back(m);
  }
  return out;
}

namespace detail {

inline std::size_t count_full_tuples(std::span<const std::size_t> domains, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t d : domains) {
    if (d != 0 && total > cap / d)
      throw Error(ErrorCode::TooLarge, "search space exceeds " + std::to_string(cap) + " full tuples");
    total *= d;
  }
  return total;
}

/// Full assignment with canonical rank `index` (variable 0 varies slowest).
inline void decode_full(std::span<const std::size_t> domains, std::size_t index, std::vector<std::size_t>& out) {
  out.resize(domains.size());
  for (std::size_t v = domains.size(); v-- > 0;) {
    out[v] = index % domains[v];
    index /= domains[v];
  }
}

inline void advance_full(std::span<const std::size_t> domains, std::vector<std::size_t>& t) {
  for (std::size_t v = domains.size(); v-- > 0;) {
    if (++t[v] < domains[v]) return;
    t[v] = 0;
  }
}

inline std::size_t slice_count(std::size_t total, unsigned threads) {
  return std::max<std::size_t>(1, std::min<std::size_t>(threads, total / 1024 + 1));
}

/// Runs body(slice, begin, end) over `slices` contiguous pieces of [0, total),
/// one thread per piece.
template <class F>
void for_each_slice(std::size_t total, std::size_t slices, F&& body) {
  if (slices <= 1) {
    body(std::size_t{0}, std::size_t{0}, total);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t step = (total + slices - 1) / slices;
  for (std::size_t w = 0; w < slices; ++w) {
    const std::size_t begin = std::min(total, w * step), end = std::min(total, begin + step);
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
}

template <class P>
std::vector<Element> all_combined_values(const P& problem, const OracleOptions& opts) {
  const auto domains = domains_of(problem);
  const std::size_t total = count_full_tuples(domains, opts.tuple_cap);
  std::vector<Element> values(total);
  for_each_slice(total, slice_count(total, opts.threads), [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<std::size_t> t;
    decode_full(domains, begin, t);
    for (std::size_t r = begin; r < end; ++r) {
      values[r] = combined_value(problem, t);
      advance_full(domains, t);
    }
  });
  return values;
}

}  // namespace detail

struct SolutionSet {
  std::vector<Element> optimal_values;                 ///< antichain, sorted ids
  std::vector<std::vector<std::size_t>> solutions;     ///< canonical order
  bool inconsistent = false;                           ///< optimal_values == {bottom}
};

/// Enumerates every full assignment. Works on raw and normalized problems.
template <class P>
SolutionSet brute_force_solve(const P& problem, const OracleOptions& opts = {}) {
  const FiniteDRL& alg = algebra_of(problem);
  const auto domains = domains_of(problem);
  const auto values = detail::all_combined_values(problem, opts);
  SolutionSet out;
  if (values.empty()) {
    // Some domain is empty: no assignment survives.
    out.optimal_values = {alg.bottom};
    out.inconsistent = true;
    return out;
  }
  out.optimal_values = maximal_elements(alg, values);
  std::vector<char> optimal(alg.size, 0);
  for (Element v : out.optimal_values) optimal[v] = 1;
  std::vector<std::size_t> t;
  for (std::size_t r = 0; r < values.size(); ++r)
    if (optimal[values[r]]) {
      detail::decode_full(domains, r, t);
      out.solutions.push_back(t);
    }
  out.inconsistent = out.optimal_values.size() == 1 && out.optimal_values.front() == alg.bottom;
  return out;
}

struct Equivalence {
  bool equal = true;
  std::vector<std::size_t> tuple;   ///< first differing full assignment
  Element value_a = 0;
  Element value_b = 0;
};

/// Compares combined values on every full assignment; reports the
/// canonically first difference.
template <class PA, class PB>
Equivalence check_equivalent(const PA& a, const PB& b, const OracleOptions& opts = {}) {
  const auto da = domains_of(a), db = domains_of(b);
  if (!std::equal(da.begin(), da.end(), db.begin(), db.end()))
    throw Error(ErrorCode::ShapeMismatch, "problems have different variables or domains");
  if (&algebra_of(a) != &algebra_of(b) && !same_tables(algebra_of(a), algebra_of(b)))
    throw Error(ErrorCode::ShapeMismatch, "problems use different algebras");

  const std::size_t total = detail::count_full_tuples(da, opts.tuple_cap);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t slices = detail::slice_count(total, opts.threads);
  std::vector<std::size_t> first(slices, kNone);
  detail::for_each_slice(total, slices, [&](std::size_t w, std::size_t begin, std::size_t end) {
    std::vector<std::size_t> t;
    detail::decode_full(da, begin, t);
    for (std::size_t r = begin; r < end; ++r) {
      if (combined_value(a, t) != combined_value(b, t)) {
        first[w] = r;
        return;
      }
      detail::advance_full(da, t);
    }
  });
  const std::size_t rank = *std::min_element(first.begin(), first.end());
  Equivalence out;
  if (rank == kNone) return out;
  out.equal = false;
  detail::decode_full(da, rank, out.tuple);
  out.value_a = combined_value(a, out.tuple);
  out.value_b = combined_value(b, out.tuple);
  return out;
}

}  // namespace drlsoft

#endif  // DRLSOFT_ORACLE_HPP

// Enforces 2-hyperarc consistency on a two-variable weighted problem and
// prints the tables before and after, plus the optimal assignment.

#include <drlsoft/drlsoft.hpp>
#include <iostream>
#include <memory>

namespace {

void print(const drlsoft::Problem& p) {
  for (const auto& [scope, c] : p.constraints()) {
    std::cout << "  C" << drlsoft::scope_to_string(scope) << " =";
    for (auto v : c.values) std::cout << ' ' << v;
    std::cout << '\n';
  }
}

}  // namespace

int main() {
  using namespace drlsoft;
  // Costs in 0..10, combined by truncated addition; 10 means forbidden.
  auto costs = std::make_shared<const FiniteDRL>(weighted(10));
  Problem p(costs, {2, 2});
  p.set_constraint({{0}, {0, 1}});
  p.set_constraint({{0, 1}, {2, 5, 0, 3}});

  std::cout << "input\n";
  print(p);

  const auto out = enforce_k_hyperarc(p, 2);
  if (out.inconsistent()) {
    std::cout << "inconsistent\n";
    return 0;
  }
  std::cout << "after enforcement (" << out.counters.project_calls << " projections)\n";
  print(*out.problem);

  std::cout << "equivalent: " << std::boolalpha << check_equivalent(p, *out.problem).equal << '\n';
  const auto best = brute_force_solve(*out.problem);
  std::cout << "optimal cost " << best.optimal_values.front() << " at (" << best.solutions.front()[0] << ", "
            << best.solutions.front()[1] << ")\n";
}

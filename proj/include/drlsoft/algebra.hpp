#ifndef DRLSOFT_ALGEBRA_HPP
#define DRLSOFT_ALGEBRA_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace drlsoft {

/// Carrier elements are dense ids 0..size-1.
using Element = std::uint32_t;
using Triple = std::array<Element, 3>;

inline constexpr std::size_t kDefaultCarrierCap = 4096;

/// Dense size x size table, row-major.
template <class T>
class SquareTable {
 public:
  SquareTable() = default;
  explicit SquareTable(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  template <class F>
  static SquareTable generate(std::size_t n, F&& f) {
    SquareTable t(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) t(x, y) = static_cast<T>(f(x, y));
    return t;
  }

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  T operator()(std::size_t x, std::size_t y) const { return data_[x * n_ + y]; }
  T& operator()(std::size_t x, std::size_t y) { return data_[x * n_ + y]; }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const SquareTable&, const SquareTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using OrderTable = SquareTable<std::uint8_t>;
using OpTable = SquareTable<Element>;

/// A finite commutative bounded divisible residuated lattice, stored as
/// operation tables. Nothing here enforces the axioms: builders and loaders
/// produce lawful tables, and check_axioms() audits arbitrary ones.
struct FiniteDRL {
  std::string name;
  std::size_t size = 0;
  Element top = 0;
  Element bottom = 0;
  OrderTable leq;
  OpTable meet;
  OpTable join;
  OpTable otimes;
  OpTable residuum;

  bool le(Element x, Element y) const { return leq(x, y) != 0; }
  bool lt(Element x, Element y) const { return x != y && le(x, y); }
  Element combine(Element x, Element y) const { return otimes(x, y); }
  Element implies(Element x, Element y) const { return residuum(x, y); }
  Element negate(Element x) const { return residuum(x, bottom); }
};

/// Table-for-table equality, ignoring the name.
inline bool same_tables(const FiniteDRL& a, const FiniteDRL& b) {
  return a.size == b.size && a.top == b.top && a.bottom == b.bottom && a.leq == b.leq &&
         a.meet == b.meet && a.join == b.join && a.otimes == b.otimes &&
         a.residuum == b.residuum;
}

struct Lattice {
  OpTable meet;
  OpTable join;
  Element top = 0;
  Element bottom = 0;
};

// ---------------------------------------------------------------------------
// Lattice derivation

namespace detail {

inline void require_partial_order(const OrderTable& leq) {
  const std::size_t n = leq.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!leq(x, x)) throw Error(ErrorCode::NotAPartialOrder, "order is not reflexive", {x});
    for (std::size_t y = 0; y < n; ++y) {
      if (leq(x, y) > 1)
        throw Error(ErrorCode::MalformedTables, "order entries must be 0 or 1", {x, y});
      if (x != y && leq(x, y) && leq(y, x))
        throw Error(ErrorCode::NotAPartialOrder, "order is not antisymmetric", {x, y});
      if (!leq(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (leq(y, z) && !leq(x, z))
          throw Error(ErrorCode::NotAPartialOrder, "order is not transitive", {x, y, z});
    }
  }
}

}  // namespace detail

/// Meets and joins induced by a partial order, plus its bounds.
inline Lattice derive_lattice(const OrderTable& leq) {
  const std::size_t n = leq.size();
  if (n == 0) throw Error(ErrorCode::NotBounded, "empty carrier");
  detail::require_partial_order(leq);

  std::optional<Element> top, bottom;
  for (std::size_t c = 0; c < n; ++c) {
    bool is_top = true, is_bottom = true;
    for (std::size_t x = 0; x < n; ++x) {
      is_top = is_top && leq(x, c);
      is_bottom = is_bottom && leq(c, x);
    }
    if (is_top) top = static_cast<Element>(c);
    if (is_bottom) bottom = static_cast<Element>(c);
  }
  if (!top || !bottom) throw Error(ErrorCode::NotBounded, "order has no greatest or no least element");

  Lattice lat{OpTable(n), OpTable(n), *top, *bottom};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x; y < n; ++y) {
      std::optional<Element> glb, lub;
      for (std::size_t c = 0; c < n && !glb; ++c) {
        if (!leq(c, x) || !leq(c, y)) continue;
        bool greatest = true;
        for (std::size_t l = 0; l < n && greatest; ++l)
          if (leq(l, x) && leq(l, y) && !leq(l, c)) greatest = false;
        if (greatest) glb = static_cast<Element>(c);
      }
      for (std::size_t c = 0; c < n && !lub; ++c) {
        if (!leq(x, c) || !leq(y, c)) continue;
        bool least = true;
        for (std::size_t u = 0; u < n && least; ++u)
          if (leq(x, u) && leq(y, u) && !leq(c, u)) least = false;
        if (least) lub = static_cast<Element>(c);
      }
      if (!glb || !lub)
        throw Error(ErrorCode::NotALattice,
                    "elements " + std::to_string(x) + " and " + std::to_string(y) +
                        " lack a " + (glb ? "least upper" : "greatest lower") + " bound",
                    {x, y});
      lat.meet(x, y) = lat.meet(y, x) = *glb;
      lat.join(x, y) = lat.join(y, x) = *lub;
    }
  }
  return lat;
}

/// True iff meet distributes over join on every triple.
inline bool is_distributive(const Lattice& lat) {
  const std::size_t n = lat.meet.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (lat.meet(x, lat.join(y, z)) != lat.join(lat.meet(x, y), lat.meet(x, z))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Residuum

/// x -> y as the join of {z | x (.) z <= y}. No validation.
inline OpTable sup_residuum(const OrderTable& leq, const OpTable& join, const OpTable& otimes,
                            Element bottom) {
  const std::size_t n = leq.size();
  OpTable res(n, bottom);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Element acc = bottom;
      for (std::size_t z = 0; z < n; ++z)
        if (leq(otimes(x, z), y)) acc = join(acc, z);
      res(x, y) = acc;
    }
  return res;
}

/// The residuum forced by (leq, join, otimes). Throws ResiduationFails with
/// the least violating triple when the derived table is not an adjoint,
/// which happens only if otimes is not monotone or does not distribute
/// over join.
inline OpTable residuum_from_tables(const OrderTable& leq, const OpTable& join,
                                    const OpTable& otimes, Element bottom) {
  OpTable res = sup_residuum(leq, join, otimes, bottom);
  const std::size_t n = leq.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if ((leq(otimes(x, z), y) != 0) != (leq(z, res(x, y)) != 0))
          throw Error(ErrorCode::ResiduationFails,
                      "derived residuum violates residuation at (" + std::to_string(x) + "," +
                          std::to_string(y) + "," + std::to_string(z) + ")",
                      {x, y, z});
  return res;
}

// ---------------------------------------------------------------------------
// Axiom checking

enum class Profile { Drl, Derived, CisReduct };

inline std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::Drl: return "drl";
    case Profile::Derived: return "derived";
    case Profile::CisReduct: return "cis-reduct";
  }
  return "?";
}

inline std::optional<Profile> parse_profile(std::string_view s) {
  if (s == "drl") return Profile::Drl;
  if (s == "derived") return Profile::Derived;
  if (s == "cis-reduct") return Profile::CisReduct;
  return std::nullopt;
}

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::optional<Triple> counterexample;  ///< set iff !pass; unused coordinates are 0
};

struct AxiomReport {
  Profile profile = Profile::Drl;
  std::vector<AxiomResult> entries;

  bool all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.pass; }));
  }
  const AxiomResult* find(std::string_view id) const {
    for (const auto& e : entries)
      if (e.axiom == id) return &e;
    return nullptr;
  }
};

/// Raised when an algebra that must be lawful is not.
class AxiomViolationError : public Error {
 public:
  explicit AxiomViolationError(AxiomReport report)
      : Error(ErrorCode::AxiomViolation, describe(report)), report_(std::move(report)) {}
  const AxiomReport& report() const noexcept { return report_; }

 private:
  static std::string describe(const AxiomReport& r) {
    for (const auto& e : r.entries)
      if (!e.pass) {
        const auto& c = *e.counterexample;
        return "axiom " + e.axiom + " fails at (" + std::to_string(c[0]) + "," +
               std::to_string(c[1]) + "," + std::to_string(c[2]) + ")";
      }
    return "no failure recorded";
  }
  AxiomReport report_;
};

namespace detail {

using AxiomPredicate = bool (*)(const FiniteDRL&, Element, Element, Element);

struct AxiomRule {
  std::string_view id;
  Profile profile;
  int arity;
  AxiomPredicate holds;
};

// clang-format off
inline constexpr AxiomRule kAxioms[] = {
  // Bounded lattice given by leq, meet, join.
  {"order.reflexive", Profile::Drl, 1, [](const FiniteDRL& a, Element x, Element, Element) { return a.le(x, x); }},
  {"order.antisymmetric", Profile::Drl, 2, [](const FiniteDRL& a, Element x, Element y, Element) {
     return !(a.le(x, y) && a.le(y, x)) || x == y; }},
  {"order.transitive", Profile::Drl, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return !(a.le(x, y) && a.le(y, z)) || a.le(x, z); }},
  {"order.bounded", Profile::Drl, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.le(a.bottom, x) && a.le(x, a.top); }},
  {"lattice.meet-glb", Profile::Drl, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     const Element m = a.meet(x, y);
     return a.le(m, x) && a.le(m, y) && (!(a.le(z, x) && a.le(z, y)) || a.le(z, m)); }},
  {"lattice.join-lub", Profile::Drl, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     const Element j = a.join(x, y);
     return a.le(x, j) && a.le(y, j) && (!(a.le(x, z) && a.le(y, z)) || a.le(j, z)); }},
  // Commutative monoid with identity top.
  {"monoid.commutative", Profile::Drl, 2, [](const FiniteDRL& a, Element x, Element y, Element) {
     return a.otimes(x, y) == a.otimes(y, x); }},
  {"monoid.associative", Profile::Drl, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return a.otimes(x, a.otimes(y, z)) == a.otimes(a.otimes(x, y), z); }},
  {"monoid.identity", Profile::Drl, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.otimes(x, a.top) == x; }},
  // x (.) z <= y  iff  z <= x -> y
  {"residuation", Profile::Drl, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return a.le(a.otimes(x, z), y) == a.le(z, a.residuum(x, y)); }},
  // x ^ y = x (.) (x -> y)
  {"divisibility", Profile::Drl, 2, [](const FiniteDRL& a, Element x, Element y, Element) {
     return a.meet(x, y) == a.otimes(x, a.residuum(x, y)); }},

  // Consequences of the DRL axioms.
  {"derived.associative", Profile::Derived, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return a.otimes(x, a.otimes(y, z)) == a.otimes(a.otimes(x, y), z); }},
  {"derived.commutative", Profile::Derived, 2, [](const FiniteDRL& a, Element x, Element y, Element) {
     return a.otimes(x, y) == a.otimes(y, x); }},
  {"derived.top-identity", Profile::Derived, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.otimes(x, a.top) == x; }},
  {"derived.bottom-annihilator", Profile::Derived, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.otimes(x, a.bottom) == a.bottom; }},
  {"derived.monotone", Profile::Derived, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return !a.le(x, y) || a.le(a.otimes(x, z), a.otimes(y, z)); }},
  {"derived.order-by-residuum", Profile::Derived, 2, [](const FiniteDRL& a, Element x, Element y, Element) {
     return a.le(x, y) == (a.residuum(x, y) == a.top); }},
  {"derived.residual-cancel", Profile::Derived, 2, [](const FiniteDRL& a, Element x, Element y, Element) {
     return !a.le(y, x) || a.otimes(x, a.residuum(x, y)) == y; }},
  {"derived.residual-transfer", Profile::Derived, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return !a.le(y, z) || a.otimes(a.otimes(x, z), a.residuum(z, y)) == a.otimes(x, y); }},
  {"derived.distributes-over-join", Profile::Derived, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return a.otimes(x, a.join(y, z)) == a.join(a.otimes(x, y), a.otimes(x, z)); }},

  // Commutative idempotent semiring on the (join, otimes, top, bottom) reduct.
  {"cis.join-commutative", Profile::CisReduct, 2, [](const FiniteDRL& a, Element x, Element y, Element) {
     return a.join(x, y) == a.join(y, x); }},
  {"cis.join-associative", Profile::CisReduct, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return a.join(x, a.join(y, z)) == a.join(a.join(x, y), z); }},
  {"cis.join-idempotent", Profile::CisReduct, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.join(x, x) == x; }},
  {"cis.join-bottom-identity", Profile::CisReduct, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.join(x, a.bottom) == x; }},
  {"cis.join-top-absorbing", Profile::CisReduct, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.join(x, a.top) == a.top; }},
  {"cis.times-commutative", Profile::CisReduct, 2, [](const FiniteDRL& a, Element x, Element y, Element) {
     return a.otimes(x, y) == a.otimes(y, x); }},
  {"cis.times-associative", Profile::CisReduct, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return a.otimes(x, a.otimes(y, z)) == a.otimes(a.otimes(x, y), z); }},
  {"cis.times-idempotent", Profile::CisReduct, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.otimes(x, x) == x; }},
  {"cis.times-top-identity", Profile::CisReduct, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.otimes(x, a.top) == x; }},
  {"cis.times-bottom-annihilator", Profile::CisReduct, 1, [](const FiniteDRL& a, Element x, Element, Element) {
     return a.otimes(x, a.bottom) == a.bottom; }},
  {"cis.distributes", Profile::CisReduct, 3, [](const FiniteDRL& a, Element x, Element y, Element z) {
     return a.otimes(x, a.join(y, z)) == a.join(a.otimes(x, y), a.otimes(x, z)); }},
};
// clang-format on

inline const AxiomRule* find_axiom(std::string_view id) {
  for (const auto& rule : kAxioms)
    if (rule.id == id) return &rule;
  return nullptr;
}

inline std::optional<Triple> first_failure(const FiniteDRL& a, const AxiomRule& rule) {
  const auto n = static_cast<Element>(a.size);
  const Element ny = rule.arity >= 2 ? n : 1;
  const Element nz = rule.arity >= 3 ? n : 1;
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < ny; ++y)
      for (Element z = 0; z < nz; ++z)
        if (!rule.holds(a, x, y, z)) return Triple{x, y, z};
  return std::nullopt;
}

/// Tables a profile reads must be square over the carrier with in-range ids.
inline void require_well_formed(const FiniteDRL& a, Profile profile) {
  const std::size_t n = a.size;
  if (n == 0) throw Error(ErrorCode::MalformedTables, "empty carrier");
  if (a.top >= n || a.bottom >= n)
    throw Error(ErrorCode::MalformedTables, "top/bottom outside the carrier");
  auto check = [n](const OpTable& t, std::string_view what) {
    if (t.size() != n)
      throw Error(ErrorCode::MalformedTables, std::string(what) + " table has wrong dimension");
    for (Element v : t.data())
      if (v >= n) throw Error(ErrorCode::MalformedTables, std::string(what) + " entry out of range");
  };
  check(a.join, "join");
  check(a.otimes, "otimes");
  if (profile == Profile::CisReduct) return;
  if (a.leq.size() != n) throw Error(ErrorCode::MalformedTables, "leq table has wrong dimension");
  check(a.meet, "meet");
  check(a.residuum, "residuum");
}

}  // namespace detail

/// Exhaustively checks every axiom of `profile`. Counterexamples are the
/// lexicographically least failing triple.
inline AxiomReport check_axioms(const FiniteDRL& algebra, Profile profile = Profile::Drl) {
  detail::require_well_formed(algebra, profile);
  AxiomReport report{profile, {}};
  for (const auto& rule : detail::kAxioms) {
    if (rule.profile != profile) continue;
    auto failure = detail::first_failure(algebra, rule);
    report.entries.push_back({std::string(rule.id), !failure.has_value(), failure});
  }
  return report;
}

/// Re-evaluates a single axiom at a triple. Returns true if it holds there.
inline bool replay_axiom(const FiniteDRL& algebra, std::string_view axiom, const Triple& at) {
  const auto* rule = detail::find_axiom(axiom);
  if (!rule) throw Error(ErrorCode::BadParams, "unknown axiom " + std::string(axiom));
  return rule->holds(algebra, at[0], at[1], at[2]);
}

inline void require_drl(const FiniteDRL& algebra) {
  auto report = check_axioms(algebra, Profile::Drl);
  if (!report.all_pass()) throw AxiomViolationError(std::move(report));
}

// ---------------------------------------------------------------------------
// Classification

enum class Variety { GBL, BL, Heyting, MV, Godel, Boolean };

inline std::string_view to_string(Variety v) {
  switch (v) {
    case Variety::GBL: return "GBL";
    case Variety::BL: return "BL";
    case Variety::Heyting: return "Heyting";
    case Variety::MV: return "MV";
    case Variety::Godel: return "Gödel";
    case Variety::Boolean: return "Boolean";
  }
  return "?";
}

struct VarietyFlags {
  bool prelinear = false;
  bool idempotent = false;
  bool involutive = false;
  bool chain = false;
  Variety variety = Variety::GBL;

  friend bool operator==(const VarietyFlags&, const VarietyFlags&) = default;
};

/// Most specific variety label for the given equations.
inline Variety variety_for(bool prelinear, bool idempotent, bool involutive) {
  if (involutive && idempotent) return Variety::Boolean;
  if (prelinear && idempotent) return Variety::Godel;
  if (prelinear && involutive) return Variety::MV;
  if (idempotent) return Variety::Heyting;
  if (prelinear) return Variety::BL;
  return Variety::GBL;
}

inline VarietyFlags classify(const FiniteDRL& a) {
  VarietyFlags f{true, true, true, true, Variety::GBL};
  const auto n = static_cast<Element>(a.size);
  for (Element x = 0; x < n; ++x) {
    f.idempotent = f.idempotent && a.otimes(x, x) == x;
    f.involutive = f.involutive && a.negate(a.negate(x)) == x;
    for (Element y = 0; y < n; ++y) {
      f.prelinear = f.prelinear && a.join(a.residuum(x, y), a.residuum(y, x)) == a.top;
      f.chain = f.chain && (a.le(x, y) || a.le(y, x));
    }
  }
  f.variety = variety_for(f.prelinear, f.idempotent, f.involutive);
  return f;
}

// ---------------------------------------------------------------------------
// Construction

/// Assembles an algebra from an order and a monoid table, deriving the
/// lattice operations and the residuum.
inline FiniteDRL from_order_and_monoid(std::string name, const OrderTable& leq, OpTable otimes) {
  Lattice lat = derive_lattice(leq);
  if (otimes.size() != leq.size())
    throw Error(ErrorCode::MalformedTables, "otimes table has wrong dimension");
  FiniteDRL a;
  a.name = std::move(name);
  a.size = leq.size();
  a.top = lat.top;
  a.bottom = lat.bottom;
  a.leq = leq;
  a.residuum = residuum_from_tables(leq, lat.join, otimes, lat.bottom);
  a.meet = std::move(lat.meet);
  a.join = std::move(lat.join);
  a.otimes = std::move(otimes);
  return a;
}

inline OrderTable chain_order(std::size_t n) {
  return OrderTable::generate(n, [](std::size_t x, std::size_t y) { return x <= y; });
}

inline FiniteDRL godel_chain(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadParams, "godel chain needs n >= 2");
  return from_order_and_monoid("godel_chain(" + std::to_string(n) + ")", chain_order(n),
                               OpTable::generate(n, [](std::size_t x, std::size_t y) { return std::min(x, y); }));
}

inline FiniteDRL boolean_algebra() {
  auto a = godel_chain(2);
  a.name = "boolean";
  return a;
}

/// Chain 0 < 1 < ... < n-1 with x (.) y = max(0, x + y - (n-1)).
inline FiniteDRL lukasiewicz_chain(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadParams, "lukasiewicz chain needs n >= 2");
  const std::size_t m = n - 1;
  return from_order_and_monoid(
      "lukasiewicz_chain(" + std::to_string(n) + ")", chain_order(n),
      OpTable::generate(n, [m](std::size_t x, std::size_t y) { return x + y > m ? x + y - m : 0; }));
}

/// Costs 0..max_cost: id k is cost k, lower cost is better, so the order is
/// reversed (top = 0, bottom = max_cost) and combination is saturating
/// addition.
inline FiniteDRL weighted(std::size_t max_cost) {
  if (max_cost < 1) throw Error(ErrorCode::BadParams, "weighted needs N >= 1");
  const std::size_t n = max_cost + 1;
  return from_order_and_monoid(
      "weighted(" + std::to_string(max_cost) + ")",
      OrderTable::generate(n, [](std::size_t x, std::size_t y) { return x >= y; }),
      OpTable::generate(n, [max_cost](std::size_t x, std::size_t y) { return std::min(max_cost, x + y); }));
}

/// The Heyting algebra on a finite distributive lattice (otimes = meet).
inline FiniteDRL heyting_from_lattice(const OrderTable& leq, std::string name = "heyting") {
  Lattice lat = derive_lattice(leq);
  if (!is_distributive(lat)) throw Error(ErrorCode::NotDistributive, "lattice is not distributive");
  return from_order_and_monoid(std::move(name), leq, lat.meet);
}

/// Componentwise product; the pair (x, y) has id x * |B| + y.
inline FiniteDRL direct_product(const FiniteDRL& a, const FiniteDRL& b,
                                std::size_t carrier_cap = kDefaultCarrierCap) {
  if (a.size == 0 || b.size == 0) throw Error(ErrorCode::BadParams, "empty factor");
  if (a.size > carrier_cap / b.size || a.size * b.size > carrier_cap)
    throw Error(ErrorCode::SizeOverflow, "product carrier " + std::to_string(a.size) + "x" +
                                             std::to_string(b.size) + " exceeds cap " +
                                             std::to_string(carrier_cap));
  const std::size_t nb = b.size, n = a.size * b.size;
  auto lift = [&](const OpTable& ta, const OpTable& tb) {
    return OpTable::generate(n, [&](std::size_t p, std::size_t q) {
      return ta(p / nb, q / nb) * nb + tb(p % nb, q % nb);
    });
  };
  FiniteDRL r;
  r.name = a.name + "x" + b.name;
  r.size = n;
  r.top = static_cast<Element>(a.top * nb + b.top);
  r.bottom = static_cast<Element>(a.bottom * nb + b.bottom);
  r.leq = OrderTable::generate(n, [&](std::size_t p, std::size_t q) {
    return a.leq(p / nb, q / nb) && b.leq(p % nb, q % nb);
  });
  r.meet = lift(a.meet, b.meet);
  r.join = lift(a.join, b.join);
  r.otimes = lift(a.otimes, b.otimes);
  r.residuum = lift(a.residuum, b.residuum);
  return r;
}

/// Expands a commutative idempotent semiring (join, times, top, bottom) to a
/// Heyting algebra: meet := times, residuum by the sup formula.
inline FiniteDRL expand_cis(const OpTable& join, const OpTable& times, Element top, Element bottom,
                            std::string name = "cis") {
  FiniteDRL reduct;
  reduct.size = join.size();
  reduct.top = top;
  reduct.bottom = bottom;
  reduct.join = join;
  reduct.otimes = times;
  auto report = check_axioms(reduct, Profile::CisReduct);
  for (const auto& e : report.entries)
    if (!e.pass) {
      const auto& c = *e.counterexample;
      throw Error(ErrorCode::NotACIS, "axiom " + e.axiom + " fails", {c[0], c[1], c[2]});
    }

  const std::size_t n = reduct.size;
  FiniteDRL a;
  a.name = std::move(name);
  a.size = n;
  a.top = top;
  a.bottom = bottom;
  a.leq = OrderTable::generate(n, [&](std::size_t x, std::size_t y) { return join(x, y) == y; });
  a.join = join;
  a.meet = times;
  a.otimes = times;
  a.residuum = sup_residuum(a.leq, join, times, bottom);
  return a;
}

// ---------------------------------------------------------------------------
// Builtin dispatch

enum class BuiltinKind { Boolean, Godel, Lukasiewicz, Weighted, Heyting, Product };

inline std::optional<BuiltinKind> parse_builtin_kind(std::string_view s) {
  if (s == "boolean") return BuiltinKind::Boolean;
  if (s == "godel") return BuiltinKind::Godel;
  if (s == "lukasiewicz") return BuiltinKind::Lukasiewicz;
  if (s == "weighted") return BuiltinKind::Weighted;
  if (s == "heyting") return BuiltinKind::Heyting;
  if (s == "product") return BuiltinKind::Product;
  return std::nullopt;
}

struct BuiltinParams {
  std::size_t n = 0;                    ///< chain length, or max cost for weighted
  std::optional<OrderTable> lattice;    ///< heyting
  const FiniteDRL* left = nullptr;      ///< product
  const FiniteDRL* right = nullptr;     ///< product
  std::size_t carrier_cap = kDefaultCarrierCap;
};

inline FiniteDRL make_builtin(BuiltinKind kind, const BuiltinParams& p = {}) {
  switch (kind) {
    case BuiltinKind::Boolean: return boolean_algebra();
    case BuiltinKind::Godel: return godel_chain(p.n);
    case BuiltinKind::Lukasiewicz: return lukasiewicz_chain(p.n);
    case BuiltinKind::Weighted: return weighted(p.n);
    case BuiltinKind::Heyting:
      if (!p.lattice) throw Error(ErrorCode::BadParams, "heyting needs a lattice order");
      return heyting_from_lattice(*p.lattice);
    case BuiltinKind::Product:
      if (!p.left || !p.right) throw Error(ErrorCode::BadParams, "product needs two factors");
      return direct_product(*p.left, *p.right, p.carrier_cap);
  }
  throw Error(ErrorCode::BadParams, "unknown builtin kind");
}

}  // namespace drlsoft

#endif  // DRLSOFT_ALGEBRA_HPP

#include <gtest/gtest.h>

#include "drlsoft/algebra.hpp"
#include "support.hpp"

namespace drlsoft {
namespace {

using testing::closed_form_residuum;
using testing::diamond_order;

constexpr Element kA = 1, kB = 2;  // atoms of the diamond

TEST(DeriveLattice, TwoElementChain) {
  auto lat = derive_lattice(chain_order(2));
  EXPECT_EQ(lat.top, 1u);
  EXPECT_EQ(lat.bottom, 0u);
  for (Element x = 0; x < 2; ++x)
    for (Element y = 0; y < 2; ++y) {
      EXPECT_EQ(lat.meet(x, y), std::min(x, y));
      EXPECT_EQ(lat.join(x, y), std::max(x, y));
    }
}

TEST(DeriveLattice, Diamond) {
  auto lat = derive_lattice(diamond_order());
  EXPECT_EQ(lat.meet(kA, kB), 0u);
  EXPECT_EQ(lat.join(kA, kB), 3u);
  EXPECT_EQ(lat.top, 3u);
  EXPECT_EQ(lat.bottom, 0u);
}

TEST(DeriveLattice, TwoMaximalElementsIsNotBounded) {
  // 0 < 1, 0 < 2, 1 || 2
  auto leq = OrderTable::generate(3, [](std::size_t x, std::size_t y) { return x == y || x == 0; });
  try {
    derive_lattice(leq);
    FAIL() << "expected NotBounded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBounded);
  }
}

TEST(DeriveLattice, MissingJoinIsNotALattice) {
  // bottom < a, b < c, d < top with a, b both below c and d: a v b has no least bound.
  auto leq = OrderTable::generate(6, [](std::size_t x, std::size_t y) {
    if (x == y || x == 0 || y == 5) return true;
    return (x == 1 || x == 2) && (y == 3 || y == 4);
  });
  try {
    derive_lattice(leq);
    FAIL() << "expected NotALattice";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotALattice);
    EXPECT_EQ(e.witness(), (std::vector<std::size_t>{1, 2}));
  }
}

TEST(DeriveLattice, RejectsNonOrders) {
  auto cyclic = OrderTable::generate(2, [](std::size_t, std::size_t) { return true; });
  EXPECT_THROW(derive_lattice(cyclic), Error);
}

TEST(Residuum, BooleanBottomImpliesEverything) {
  const auto b = boolean_algebra();
  for (Element y = 0; y < 2; ++y) EXPECT_EQ(b.residuum(b.bottom, y), b.top);
}

TEST(Residuum, LukasiewiczThreeHalfImpliesZero) {
  const auto l3 = lukasiewicz_chain(3);
  EXPECT_EQ(l3.residuum(1, 0), 1u);
  // Independent brute-force sup over {z | 1 (.) z <= 0}.
  Element sup = 0;
  for (Element z = 0; z < 3; ++z)
    if ((1 + z > 2 ? 1 + z - 2 : 0) <= 0) sup = std::max(sup, z);
  EXPECT_EQ(sup, 1u);
}

TEST(Residuum, GodelThree) {
  const auto g3 = godel_chain(3);
  EXPECT_EQ(g3.residuum(2, 1), 1u);
  EXPECT_EQ(g3.residuum(1, 2), g3.top);
}

TEST(Residuum, ChainFamiliesMatchClosedForms) {
  for (std::size_t n = 2; n <= 8; ++n) {
    EXPECT_EQ(godel_chain(n).residuum, closed_form_residuum("godel", n)) << n;
    EXPECT_EQ(lukasiewicz_chain(n).residuum, closed_form_residuum("lukasiewicz", n)) << n;
    EXPECT_EQ(weighted(n).residuum, closed_form_residuum("weighted", n + 1)) << n;
  }
}

TEST(Residuum, NonDistributingProductIsRejected) {
  // On the diamond, x (.) y = top only when both are top, bottom otherwise except
  // identities: a (.) a = a breaks distribution over a v b.
  const auto leq = diamond_order();
  const auto lat = derive_lattice(leq);
  auto times = OpTable::generate(4, [](std::size_t x, std::size_t y) -> std::size_t {
    if (x == 3) return y;
    if (y == 3) return x;
    return 0;
  });
  times(kA, kA) = kA;
  try {
    residuum_from_tables(leq, lat.join, times, lat.bottom);
    FAIL() << "expected ResiduationFails";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResiduationFails);
    ASSERT_EQ(e.witness().size(), 3u);
  }
}

TEST(CheckAxioms, BooleanPassesAllProfiles) {
  const auto b = boolean_algebra();
  EXPECT_TRUE(check_axioms(b, Profile::Drl).all_pass());
  EXPECT_TRUE(check_axioms(b, Profile::Derived).all_pass());
  EXPECT_TRUE(check_axioms(b, Profile::CisReduct).all_pass());
}

TEST(CheckAxioms, MutatedLukasiewiczFails) {
  auto l3 = lukasiewicz_chain(3);
  l3.otimes = OpTable::generate(3, [](std::size_t x, std::size_t y) { return std::min(x, y); });
  const auto report = check_axioms(l3, Profile::Drl);
  EXPECT_FALSE(report.all_pass());
  const auto* res = report.find("residuation");
  const auto* div = report.find("divisibility");
  ASSERT_TRUE(res && div);
  EXPECT_TRUE(!res->pass || !div->pass);
  // Least failing triple, found by exhaustive replay: min(x, z) <= y vs z <= x ->_L y.
  EXPECT_FALSE(res->pass);
  EXPECT_EQ(*res->counterexample, (Triple{1, 0, 1}));
  for (const auto& e : report.entries) {
    if (!e.pass) {
      EXPECT_FALSE(replay_axiom(l3, e.axiom, *e.counterexample)) << e.axiom;
    }
  }
}

TEST(CheckAxioms, CorruptMonoidReportsAssociativity) {
  // 1 (.) 2 raised from 0 to 1: 1 (.) (2 (.) 2) = 0 but (1 (.) 2) (.) 2 = 1.
  auto g = lukasiewicz_chain(4);
  g.otimes(1, 2) = g.otimes(2, 1) = 1;
  const auto report = check_axioms(g, Profile::Drl);
  const auto* assoc = report.find("monoid.associative");
  ASSERT_TRUE(assoc);
  EXPECT_FALSE(assoc->pass);
  EXPECT_EQ(*assoc->counterexample, (Triple{1, 2, 2}));
  EXPECT_FALSE(replay_axiom(g, "monoid.associative", *assoc->counterexample));
}

TEST(CheckAxioms, CisReductOfNonIdempotentFails) {
  const auto report = check_axioms(lukasiewicz_chain(3), Profile::CisReduct);
  const auto* idem = report.find("cis.times-idempotent");
  ASSERT_TRUE(idem);
  EXPECT_FALSE(idem->pass);
  EXPECT_EQ(*idem->counterexample, (Triple{1, 0, 0}));
}

TEST(CheckAxioms, MalformedTablesThrow) {
  auto b = boolean_algebra();
  b.otimes(0, 1) = 7;
  EXPECT_THROW(check_axioms(b), Error);
}

TEST(Classify, GodelThree) {
  EXPECT_EQ(classify(godel_chain(3)), (VarietyFlags{true, true, false, true, Variety::Godel}));
}

TEST(Classify, LukasiewiczThree) {
  EXPECT_EQ(classify(lukasiewicz_chain(3)), (VarietyFlags{true, false, true, true, Variety::MV}));
}

TEST(Classify, Boolean) {
  EXPECT_EQ(classify(boolean_algebra()), (VarietyFlags{true, true, true, true, Variety::Boolean}));
}

TEST(Classify, WeightedIsLukasiewiczRelabelled) {
  // cost c <-> truth value N - c maps saturating addition onto the
  // Lukasiewicz t-norm.
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto w = weighted(n);
    const auto l = lukasiewicz_chain(n + 1);
    for (std::size_t x = 0; x <= n; ++x)
      for (std::size_t y = 0; y <= n; ++y) {
        EXPECT_EQ(n - w.otimes(x, y), l.otimes(n - x, n - y));
        EXPECT_EQ(n - w.residuum(x, y), l.residuum(n - x, n - y));
      }
  }
  EXPECT_EQ(classify(weighted(4)), (VarietyFlags{true, false, true, true, Variety::MV}));
}

TEST(Classify, VarietyLabelPrecedence) {
  EXPECT_EQ(variety_for(false, true, true), Variety::Boolean);
  EXPECT_EQ(variety_for(true, true, false), Variety::Godel);
  EXPECT_EQ(variety_for(true, false, true), Variety::MV);
  EXPECT_EQ(variety_for(false, true, false), Variety::Heyting);
  EXPECT_EQ(variety_for(true, false, false), Variety::BL);
  EXPECT_EQ(variety_for(false, false, true), Variety::GBL);
}

TEST(Builtins, WeightedSaturatesAndSubtracts) {
  const auto w = weighted(4);
  EXPECT_EQ(w.top, 0u);
  EXPECT_EQ(w.bottom, 4u);
  EXPECT_EQ(w.otimes(1, 3), 4u);
  EXPECT_EQ(w.residuum(1, 3), 2u);
}

TEST(Builtins, GodelTwoIsBoolean) { EXPECT_TRUE(same_tables(godel_chain(2), boolean_algebra())); }

TEST(Builtins, HeytingDiamond) {
  const auto h = heyting_from_lattice(diamond_order());
  EXPECT_EQ(h.residuum(kA, kB), kB);
  EXPECT_TRUE(check_axioms(h).all_pass());
  EXPECT_EQ(classify(h).variety, Variety::Boolean);  // the diamond is the four-element Boolean algebra
}

TEST(Builtins, HeytingRejectsNonDistributive) {
  // M3: bottom, three atoms, top.
  auto m3 = OrderTable::generate(5, [](std::size_t x, std::size_t y) { return x == y || x == 0 || y == 4; });
  try {
    heyting_from_lattice(m3);
    FAIL() << "expected NotDistributive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDistributive);
  }
}

TEST(Builtins, BadParams) {
  EXPECT_THROW(godel_chain(1), Error);
  EXPECT_THROW(lukasiewicz_chain(0), Error);
  EXPECT_THROW(weighted(0), Error);
  EXPECT_THROW(make_builtin(BuiltinKind::Product, {}), Error);
  EXPECT_THROW(make_builtin(BuiltinKind::Heyting, {}), Error);
}

TEST(Builtins, DispatchMatchesNamedConstructors) {
  BuiltinParams p;
  p.n = 5;
  EXPECT_TRUE(same_tables(make_builtin(BuiltinKind::Lukasiewicz, p), lukasiewicz_chain(5)));
  EXPECT_TRUE(same_tables(make_builtin(BuiltinKind::Weighted, p), weighted(5)));
  EXPECT_TRUE(same_tables(make_builtin(BuiltinKind::Boolean), boolean_algebra()));
}

TEST(DirectProduct, BooleanSquareIsDiamond) {
  const auto sq = direct_product(boolean_algebra(), boolean_algebra());
  const auto diamond = heyting_from_lattice(diamond_order());
  EXPECT_EQ(sq.leq, diamond.leq);
  EXPECT_EQ(sq.otimes, diamond.meet);
  EXPECT_EQ(sq.residuum, diamond.residuum);
  EXPECT_TRUE(check_axioms(sq).all_pass());
}

TEST(DirectProduct, ChainsProduceIncomparablePair) {
  const auto a = godel_chain(3), b = lukasiewicz_chain(4);
  const auto p = direct_product(a, b);
  const Element top_bot = static_cast<Element>(a.top * b.size + b.bottom);
  const Element bot_top = static_cast<Element>(a.bottom * b.size + b.top);
  EXPECT_FALSE(p.le(top_bot, bot_top));
  EXPECT_FALSE(p.le(bot_top, top_bot));
  EXPECT_FALSE(classify(p).chain);
}

TEST(DirectProduct, LukasiewiczTimesGodel) {
  const auto p = direct_product(lukasiewicz_chain(3), godel_chain(3));
  EXPECT_TRUE(check_axioms(p).all_pass());
  const auto f = classify(p);
  EXPECT_FALSE(f.idempotent);
  EXPECT_FALSE(f.chain);
  EXPECT_FALSE(f.involutive);
  EXPECT_TRUE(f.prelinear);  // prelinearity is an equation, so it survives products
  EXPECT_EQ(f.variety, Variety::BL);
}

TEST(DirectProduct, CarrierCap) {
  try {
    direct_product(weighted(64), weighted(63), 4096);
    FAIL() << "expected SizeOverflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeOverflow);
  }
  EXPECT_NO_THROW(direct_product(weighted(63), weighted(63), 4096));
}

TEST(ExpandCis, DiamondGivesDiamondHeyting) {
  const auto lat = derive_lattice(diamond_order());
  const auto h = expand_cis(lat.join, lat.meet, lat.top, lat.bottom);
  EXPECT_TRUE(check_axioms(h).all_pass());
  EXPECT_TRUE(same_tables(h, heyting_from_lattice(diamond_order())));
  EXPECT_TRUE(classify(h).idempotent);
}

TEST(ExpandCis, BooleanRoundTrip) {
  const auto b = boolean_algebra();
  EXPECT_TRUE(check_axioms(b, Profile::CisReduct).all_pass());
  EXPECT_TRUE(same_tables(expand_cis(b.join, b.otimes, b.top, b.bottom), b));
}

TEST(ExpandCis, NonIdempotentIsRejected) {
  const auto l3 = lukasiewicz_chain(3);
  try {
    expand_cis(l3.join, l3.otimes, l3.top, l3.bottom);
    FAIL() << "expected NotACIS";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACIS);
    EXPECT_NE(std::string(e.what()).find("cis.times-idempotent"), std::string::npos);
  }
}

}  // namespace
}  // namespace drlsoft

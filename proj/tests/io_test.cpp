#include <gtest/gtest.h>

#include <filesystem>
#include <nlohmann/json.hpp>

#include "drlsoft/generate.hpp"
#include "drlsoft/io.hpp"
#include "support.hpp"

namespace drlsoft {
namespace {

using json = nlohmann::json;
using namespace drlsoft::testing;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::BadParams;
}

TEST(AlgebraIo, BooleanWithoutResiduum) {
  const auto a = load_algebra(R"({"size":2,"top":1,"bottom":0,"leq":[[1,1],[0,1]],"otimes":[[0,0],[0,1]]})");
  EXPECT_EQ(a.residuum, boolean_algebra().residuum);
  EXPECT_EQ(a.meet, boolean_algebra().meet);
  EXPECT_EQ(a.join, boolean_algebra().join);
}

TEST(AlgebraIo, MismatchedResiduumIsRejected) {
  auto j = json::parse(save_algebra(lukasiewicz_chain(3)));
  j["residuum"][2][1] = 2;  // 2 -> 1 should be 1
  try {
    load_algebra(j.dump());
    FAIL();
  } catch (const AxiomViolationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::AxiomViolation);
    ASSERT_TRUE(e.report().find("residuation"));
    EXPECT_FALSE(e.report().find("residuation")->pass);
  }
  // Structure mode keeps the broken table for auditing.
  EXPECT_EQ(load_algebra(j.dump(), AlgebraCheck::Structure).residuum(2, 1), 2u);
}

TEST(AlgebraIo, RoundTripIsByteIdentical) {
  for (const auto& alg : {lukasiewicz_chain(5), weighted(4), direct_product(godel_chain(2), lukasiewicz_chain(3))}) {
    const auto text = save_algebra(alg);
    ASSERT_EQ(text.back(), '\n');
    const auto back = load_algebra(text);
    EXPECT_TRUE(same_tables(back, alg));
    EXPECT_EQ(save_algebra(back), text);
  }
}

TEST(AlgebraIo, ParseErrors) {
  EXPECT_EQ(code_of([] { load_algebra("{"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_algebra(R"({"size":2,"top":1,"bottom":0})"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_algebra(R"({"size":2,"top":1,"bottom":0,"leq":[[1,1]],"otimes":[[0,0],[0,1]]})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_algebra(R"({"size":2,"top":1,"bottom":0,"leq":[[1,1],[0,1]],"otimes":[[0,0],[0,2]]})"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_algebra(R"({"size":2,"top":1,"bottom":0,"leq":[[1,1],[1,1]],"otimes":[[0,0],[0,1]]})"); }),
            ErrorCode::NotAPartialOrder);
}

TEST(AlgebraIo, LoadOrder) {
  const auto leq = load_order(R"({"leq":[[1,1,1,1],[0,1,0,1],[0,0,1,1],[0,0,0,1]]})");
  EXPECT_EQ(leq, diamond_order());
}

std::string weighted_problem_json(const std::string& constraints) {
  json j{{"algebra", algebra_to_json(weighted(10))}, {"domains", {2, 2}}, {"constraints", json::parse(constraints)}};
  return j.dump();
}

TEST(ProblemIo, RawKeepsDuplicatesNormalizedMerges) {
  const auto text = weighted_problem_json(
      R"([{"scope":[0,1],"values":[1,2,3,4]},{"scope":[0,1],"values":[1,1,1,9]}])");
  const auto raw = parse_problem(text);
  EXPECT_EQ(raw.constraints.size(), 2u);
  const auto norm = load_problem(text);
  ASSERT_FALSE(norm.inconsistent());
  EXPECT_EQ(norm.problem->constraint_count(), 3u);
  EXPECT_EQ(norm.problem->constraint({0, 1}).values, (std::vector<Element>{2, 3, 4, 10}));
}

TEST(ProblemIo, MissingUnariesAreTop) {
  const auto norm = load_problem(weighted_problem_json(R"([{"scope":[0,1],"values":[2,5,0,3]}])"));
  ASSERT_FALSE(norm.inconsistent());
  EXPECT_EQ(norm.problem->unary(0).values, (std::vector<Element>{0, 0}));
  EXPECT_EQ(norm.problem->unary(1).values, (std::vector<Element>{0, 0}));
}

TEST(ProblemIo, WeightedExampleRoundTrip) {
  const auto p = weighted_example();
  const auto text = save_problem(p);
  const auto back = load_problem(text);
  ASSERT_FALSE(back.inconsistent());
  EXPECT_EQ(*back.problem, p);
  EXPECT_EQ(save_problem(*back.problem), text);
}

TEST(ProblemIo, Validation) {
  EXPECT_EQ(code_of([] { parse_problem(weighted_problem_json(R"([{"scope":[0],"values":[0,11]}])")); }),
            ErrorCode::ValueOutOfRange);
  EXPECT_EQ(code_of([] { parse_problem(weighted_problem_json(R"([{"scope":[],"values":[0]}])")); }),
            ErrorCode::ScopeError);
  EXPECT_EQ(code_of([] { parse_problem(weighted_problem_json(R"([{"scope":[1,0],"values":[0,0,0,0]}])")); }),
            ErrorCode::ScopeError);
  EXPECT_EQ(code_of([] { parse_problem(weighted_problem_json(R"([{"scope":[0],"values":[0,0,0]}])")); }),
            ErrorCode::ScopeError);
  EXPECT_EQ(code_of([] { parse_problem(R"({"domains":[2],"constraints":[]})"); }), ErrorCode::ParseError);
}

TEST(ProblemIo, AlgebraByRelativePath) {
  const auto dir = std::filesystem::temp_directory_path() / "drlsoft_io_test";
  std::filesystem::create_directories(dir);
  write_file(dir / "l3.json", save_algebra(lukasiewicz_chain(3)));
  const auto raw = parse_problem(R"({"algebra":"l3.json","domains":[2],"constraints":[]})", {dir, nullptr});
  EXPECT_TRUE(same_tables(*raw.algebra, lukasiewicz_chain(3)));
  std::filesystem::remove_all(dir);
}

TEST(Generator, CandidateScopeOrder) {
  EXPECT_EQ(candidate_scopes(4, 3), (std::vector<Scope>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                                        {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
}

TEST(Generator, SameSeedSameProblem) {
  const auto alg = share(lukasiewicz_chain(4));
  const GenParams params{5, 3, 9, 3, 1234};
  EXPECT_EQ(gen_random_problem(alg, params), gen_random_problem(alg, params));
  EXPECT_EQ(save_problem(gen_random_problem(alg, params)), save_problem(gen_random_problem(alg, params)));
  auto other = params;
  other.seed = 1235;
  EXPECT_NE(gen_random_problem(alg, params), gen_random_problem(alg, other));
}

TEST(Generator, UnaryOnlyIsVacuouslyConsistent) {
  const auto p = gen_random_problem(share(godel_chain(5)), {4, 3, 4, 2, 9});
  EXPECT_EQ(p.constraint_count(), 4u);
  EXPECT_TRUE(is_k_hyperarc_consistent(p, 2));
  EXPECT_TRUE(is_k_hyperarc_consistent(p, 4));
}

TEST(Generator, BatchPassesLoaderValidation) {
  const auto alg = share(weighted(8));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto p = gen_random_problem(alg, {4, 3, 7, seed % 2 ? 3u : 2u, seed});
    EXPECT_EQ(p.constraint_count(), 7u);
    for (Var i = 0; i < 4; ++i)
      for (Element v : p.unary(i).values) EXPECT_NE(v, alg->bottom);
    const auto back = parse_problem(save_problem(p));
    EXPECT_NO_THROW(back.validate());
    const auto norm = normalize(back);
    ASSERT_FALSE(norm.inconsistent());
    EXPECT_EQ(*norm.problem, p);
  }
}

TEST(Generator, BadParams) {
  const auto alg = share(weighted(8));
  EXPECT_EQ(code_of([&] { gen_random_problem(alg, {3, 2, 2, 2, 0}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([&] { gen_random_problem(alg, {3, 2, 4, 4, 0}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([&] { gen_random_problem(alg, {3, 0, 4, 2, 0}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([&] { gen_random_problem(alg, {3, 2, 7, 2, 0}); }), ErrorCode::NotEnoughScopes);
}

TEST(SplitMix, KnownSequence) {
  // Reference outputs of splitmix64 seeded with 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix, BelowIsInRangeAndCoversIt) {
  SplitMix64 rng(77);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

}  // namespace
}  // namespace drlsoft

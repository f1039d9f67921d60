#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "punity/partition.hpp"

using namespace punity;

namespace {

LocallyConstantFunction table(SystemPtr sys, int depth, std::vector<double> vals) {
  return LocallyConstantFunction(std::move(sys), depth, std::move(vals));
}

}  // namespace

TEST_CASE("member validation reports the residual") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  std::vector<LocallyConstantFunction> short_sum = {LocallyConstantFunction::constant(fs, 0.3),
                                                    LocallyConstantFunction::constant(fs, 0.6)};
  PartitionReport rep = validate_members(short_sum);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_residual == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(rep.residuals.size() == 2);  // two depth-1 words
  CHECK_THROWS_AS(PartitionOfUnity{short_sum}, std::invalid_argument);

  std::vector<LocallyConstantFunction> exact = {LocallyConstantFunction::constant(fs, 0.3),
                                                LocallyConstantFunction::constant(fs, 0.7)};
  CHECK(validate_members(exact).pass);
  CHECK(validate_members(exact).max_residual == 0.0);
}

TEST_CASE("values outside the unit interval are rejected") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  std::vector<LocallyConstantFunction> bad = {LocallyConstantFunction::constant(fs, 1.2),
                                              LocallyConstantFunction::constant(fs, -0.2)};
  CHECK_THROWS_AS(PartitionOfUnity{bad}, std::invalid_argument);
}

TEST_CASE("cylinder partition is an indicator family") {
  SystemPtr gm = SubshiftSystem::golden_mean();
  PartitionOfUnity p = make_cylinder_partition(gm, 2);
  CHECK(p.size() == 3);
  CHECK(p.is_indicator());
  CHECK_FALSE(p.is_positive());
  CHECK(p.validate().pass);
  // member order tracks word order
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < 3; ++j) CHECK(p.member(i).value_by_index(j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("smoothed partition values") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  PartitionOfUnity p = make_smoothed_partition(fs, 1, 0.5);
  CHECK(p.is_positive());
  CHECK_FALSE(p.is_indicator());
  // (1 - lambda) + lambda/2 on the own word, lambda/2 elsewhere
  CHECK(p.member(0).value_by_index(0) == 0.75);
  CHECK(p.member(0).value_by_index(1) == 0.25);
  CHECK(p.member(1).value_by_index(0) == 0.25);
  CHECK(p.member(1).value_by_index(1) == 0.75);
  CHECK_THROWS_AS(make_smoothed_partition(fs, 1, 1.5), std::invalid_argument);
}

TEST_CASE("join multiplies values pairwise") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  PartitionOfUnity a = make_smoothed_partition(fs, 1, 0.5);
  PartitionOfUnity b = make_smoothed_partition(fs, 1, 0.25);
  PartitionOfUnity ab = join(a, b);
  CHECK(ab.size() == 4);
  CHECK(ab.depth() == 1);
  CHECK(ab.validate().pass);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      for (int w = 0; w < 2; ++w)
        CHECK(ab.member(i * b.size() + j).value_by_index(w) ==
              a.member(i).value_by_index(w) * b.member(j).value_by_index(w));
}

TEST_CASE("join is associative up to rounding") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  PartitionOfUnity a = make_smoothed_partition(fs, 1, 0.5);
  PartitionOfUnity b = make_smoothed_partition(fs, 1, 0.25);
  PartitionOfUnity c = make_smoothed_partition(fs, 2, 0.125);
  PartitionOfUnity left = join(join(a, b), c);
  PartitionOfUnity right = join(a, join(b, c));
  REQUIRE(left.size() == right.size());
  REQUIRE(left.depth() == right.depth());
  const int W = fs->words(left.depth()).count();
  for (int m = 0; m < left.size(); ++m)
    for (int w = 0; w < W; ++w)
      CHECK(left.member(m).value_by_index(w) ==
            doctest::Approx(right.member(m).value_by_index(w)).epsilon(1e-12));
}

TEST_CASE("iterated join prunes members that vanish everywhere") {
  SystemPtr gm = SubshiftSystem::golden_mean();
  PartitionOfUnity p = make_cylinder_partition(gm, 1);
  PartitionOfUnity p2 = iterate_join(p, 2);
  // the (1,1) member dies on the golden mean shift
  CHECK(p2.size() == 3);
  CHECK(p2.depth() == 2);
  CHECK(p2.is_indicator());
  CHECK(p2.validate().pass);
  PartitionOfUnity p5 = iterate_join(p, 5);
  CHECK(p5.size() == gm->words(5).count());
}

TEST_CASE("iterated join at n = 1 is the partition itself") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  PartitionOfUnity p = make_smoothed_partition(fs, 1, 0.5);
  PartitionOfUnity q = iterate_join(p, 1);
  REQUIRE(q.size() == p.size());
  for (int m = 0; m < p.size(); ++m) CHECK(q.member(m).values() == p.member(m).values());
}

TEST_CASE("iterated join values are products along the orbit") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  PartitionOfUnity p = make_smoothed_partition(fs, 1, 0.5);
  PartitionOfUnity p3 = iterate_join(p, 3);
  REQUIRE(p3.size() == 8);
  const WordSet& ws = fs->words(3);
  for (int m = 0; m < 8; ++m) {
    const int i = m >> 2, j = (m >> 1) & 1, k = m & 1;
    for (int w = 0; w < ws.count(); ++w) {
      auto word = ws.word(w);
      const double expect = p.member(i).value_on(word.subspan(0)) *
                            p.member(j).value_on(word.subspan(1)) *
                            p.member(k).value_on(word.subspan(2));
      CHECK(p3.member(m).value_by_index(w) == doctest::Approx(expect).epsilon(1e-14));
    }
  }
}

TEST_CASE("iterated join refuses work beyond the budget upfront") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  PartitionOfUnity p = make_smoothed_partition(fs, 1, 0.5);
  EvalBudget tiny(100);
  CHECK_THROWS_AS(iterate_join(p, 12, &tiny), budget_exceeded_error);
}

TEST_CASE("scaled copies stay a partition of unity") {
  SystemPtr fs = SubshiftSystem::full_shift(2);
  PartitionOfUnity p = make_smoothed_partition(fs, 1, 0.5);
  PartitionOfUnity q = scale_copies(p, 3);
  CHECK(q.size() == 6);
  CHECK(q.validate().pass);
  CHECK(q.member(0).value_by_index(0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(scale_copies(p, 0), std::invalid_argument);
}

TEST_CASE("diameter in the word metric") {
  SystemPtr gm = SubshiftSystem::golden_mean();
  CHECK(diameter(make_cylinder_partition(gm, 1)) == 0.5);
  CHECK(diameter(make_cylinder_partition(gm, 3)) == std::pow(2.0, -3));
  CHECK(diameter(make_smoothed_partition(gm, 3, 0.25)) == 1.0);  // full supports
  // supports {00, 01} and {10}: longest common prefixes of length 1 and 2
  PartitionOfUnity mixed({table(gm, 2, {1, 1, 0}), table(gm, 2, {0, 0, 1})});
  CHECK(diameter(mixed) == 0.5);
  PartitionOfUnity trivial({LocallyConstantFunction::constant(gm, 1.0)});
  CHECK(diameter(trivial) == 1.0);
}

TEST_CASE("refining a partition preserves membership values") {
  SystemPtr gm = SubshiftSystem::golden_mean();
  PartitionOfUnity p = make_smoothed_partition(gm, 1, 0.25);
  PartitionOfUnity q = refine_partition(p, 3);
  CHECK(q.depth() == 3);
  REQUIRE(q.size() == p.size());
  const WordSet& ws = gm->words(3);
  for (int m = 0; m < p.size(); ++m)
    for (int w = 0; w < ws.count(); ++w)
      CHECK(q.member(m).value_by_index(w) == p.member(m).value_on(ws.word(w)));
}

TEST_CASE("partition pullback shifts every member") {
  SystemPtr gm = SubshiftSystem::golden_mean();
  PartitionOfUnity p = make_smoothed_partition(gm, 1, 0.25);
  PartitionOfUnity q = p.shift_pullback();
  CHECK(q.depth() == 2);
  CHECK(q.validate().pass);
  const WordSet& ws = gm->words(2);
  for (int m = 0; m < p.size(); ++m)
    for (int w = 0; w < ws.count(); ++w) {
      auto word = ws.word(w);
      CHECK(q.member(m).value_by_index(w) == p.member(m).value_on(word.subspan(1)));
    }
}

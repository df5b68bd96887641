#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "flexmm/plan.hpp"

using namespace flexmm;

namespace {

SchemePlan small_plan(std::size_t n, std::vector<std::size_t> thresholds,
                      std::vector<PartitionParams> parts, MatrixDims dims = {6, 6, 6},
                      Residue modulus = 101) {
  return build_plan(n, RecoveryProfile{std::move(thresholds)}, parts, dims, PrimeField(modulus));
}

}  // namespace

TEST_CASE("task counts follow the layer recurrence") {
  CHECK(gamma_counts(RecoveryProfile{{5}}) == std::vector<std::size_t>{1});
  // gamma_2 = (5-3)*1 = 2.
  CHECK(gamma_counts(RecoveryProfile{{5, 3}}) == std::vector<std::size_t>{1, 2});
  // gamma_3 = (3-2)*(1+2) = 3.
  CHECK(gamma_counts(RecoveryProfile{{5, 3, 2}}) == std::vector<std::size_t>{1, 2, 3});
  // Ladder 8..5: 1, 3*1=3... check: g2=(8-7)*1=1, g3=(7-6)*2=2, g4=(6-5)*4=4.
  CHECK(gamma_counts(RecoveryProfile{{8, 7, 6, 5}}) == std::vector<std::size_t>{1, 1, 2, 4});
}

TEST_CASE("profile validation rejects non-decreasing or empty profiles") {
  CHECK_THROWS_AS((RecoveryProfile{{}}.validate()), ShapeError);
  CHECK_THROWS_AS((RecoveryProfile{{3, 3}}.validate()), ShapeError);
  CHECK_THROWS_AS((RecoveryProfile{{3, 4}}.validate()), ShapeError);
  CHECK_NOTHROW((RecoveryProfile{{5, 3, 2}}.validate()));
}

TEST_CASE("routing for the two-layer worked example") {
  auto routing = enumerate_routing(RecoveryProfile{{5, 3}});
  REQUIRE(routing.size() == 2);
  CHECK(routing[0].empty());
  REQUIRE(routing[1].size() == 2);
  // Tasks of layer 2 consume parities t = 1, 2 of the single layer-1 task.
  CHECK(routing[1][0] == TaskSource{1, 1, 1});
  CHECK(routing[1][1] == TaskSource{2, 1, 1});
}

TEST_CASE("routing for the three-layer worked example") {
  auto routing = enumerate_routing(RecoveryProfile{{5, 3, 2}});
  REQUIRE(routing.size() == 3);
  // Layer 2 tasks take parities t = 2, 3 of the layer-1 task (t = 1 is
  // left for layer 3).
  REQUIRE(routing[1].size() == 2);
  CHECK(routing[1][0] == TaskSource{2, 1, 1});
  CHECK(routing[1][1] == TaskSource{3, 1, 1});
  // Layer 3 tasks take parity t = 1 of every task below.
  REQUIRE(routing[2].size() == 3);
  CHECK(routing[2][0] == TaskSource{1, 1, 1});
  CHECK(routing[2][1] == TaskSource{1, 2, 1});
  CHECK(routing[2][2] == TaskSource{1, 2, 2});
}

TEST_CASE("routing consumes every parity of every task exactly once") {
  for (const auto& thresholds :
       {std::vector<std::size_t>{9, 6, 4}, {10, 7, 5, 4}, {6, 5, 4, 3, 2}, {12, 8}}) {
    RecoveryProfile profile{thresholds};
    auto gammas = gamma_counts(profile);
    auto routing = enumerate_routing(profile);
    const std::size_t r_last = profile.final();
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, int> used;
    for (std::size_t j = 2; j <= profile.layer_count(); ++j) {
      REQUIRE(routing[j - 1].size() == gammas[j - 1]);
      for (const auto& src : routing[j - 1]) {
        CHECK(src.source_layer < j);
        CHECK(src.source_index >= 1);
        CHECK(src.source_index <= gammas[src.source_layer - 1]);
        // Parity t must exist: task (J, delta) has R_J - R_a parities.
        CHECK(src.parity_index >= 1);
        CHECK(src.parity_index <= profile.r(src.source_layer) - r_last);
        ++used[{src.source_layer, src.source_index, src.parity_index}];
      }
    }
    for (const auto& [key, count] : used) CHECK(count == 1);
    // Every parity of every non-final-layer task is consumed.
    std::size_t expected = 0;
    for (std::size_t j = 1; j < profile.layer_count(); ++j)
      expected += gammas[j - 1] * (profile.r(j) - r_last);
    CHECK(used.size() == expected);
  }
}

TEST_CASE("tasks_required steps down one extra round per missing server") {
  SchemePlan plan = small_plan(5, {5, 3}, {{3, 1, 1}, {2, 1, 1}});
  CHECK(tasks_required(plan, 5) == 1);
  CHECK(tasks_required(plan, 4) == 2);
  CHECK(tasks_required(plan, 3) == 3);
  CHECK_THROWS_AS(tasks_required(plan, 2), DecodeError);

  SchemePlan plan3 = small_plan(5, {5, 3, 2}, {{3, 1, 1}, {2, 1, 1}, {1, 2, 1}});
  CHECK(tasks_required(plan3, 5) == 1);
  CHECK(tasks_required(plan3, 4) == 2);
  CHECK(tasks_required(plan3, 3) == 3);
  // R_hat = 2: all of layers 1-2 plus (1 + R_2 - R_hat) * (g1 + g2) totals 6.
  CHECK(tasks_required(plan3, 2) == 6);
}

TEST_CASE("build_plan checks thresholds against partitions and the server count") {
  // Partition threshold 3*1*1+2 = 5 must equal the declared layer threshold.
  CHECK_THROWS_AS(small_plan(5, {4, 3}, {{3, 1, 1}, {2, 1, 1}}), ShapeError);
  // R_1 may not exceed N.
  CHECK_THROWS_AS(small_plan(4, {5, 3}, {{3, 1, 1}, {2, 1, 1}}), ShapeError);
  // Layer count mismatch.
  CHECK_THROWS_AS(small_plan(5, {5, 3}, {{3, 1, 1}}), ShapeError);
  CHECK_NOTHROW(small_plan(5, {5, 3}, {{3, 1, 1}, {2, 1, 1}}));
}

TEST_CASE("evaluation points cover servers plus parities") {
  SchemePlan plan = small_plan(5, {5, 3}, {{3, 1, 1}, {2, 1, 1}});
  // N + R_1 - R_a = 5 + 5 - 3 = 7 points, alpha_i = i - 1.
  REQUIRE(plan.points().size() == 7);
  for (std::size_t i = 1; i <= 7; ++i) CHECK(plan.point(i) == i - 1);
}

TEST_CASE("padded dimensions divide all partition chains") {
  SchemePlan plan = small_plan(5, {5, 3, 2}, {{3, 1, 1}, {2, 1, 1}, {1, 2, 1}},
                               MatrixDims{7, 11, 5}, 103);
  const auto& padded = plan.padded_dims();
  CHECK(padded.rows_a >= 7);
  CHECK(padded.inner >= 11);
  CHECK(padded.cols_b >= 5);
  for (std::size_t j = 1; j <= 3; ++j)
    for (std::size_t d = 1; d <= plan.layer(j).task_count; ++d) {
      Shape a = plan.source_shape_a(j, d);
      Shape b = plan.source_shape_b(j, d);
      const auto& part = plan.layer(j).partition;
      CHECK(a.rows % part.m == 0);
      CHECK(a.cols % part.p == 0);
      CHECK(b.rows % part.p == 0);
      CHECK(b.cols % part.n == 0);
      CHECK(a.cols == b.rows);
    }
}

TEST_CASE("task shapes shrink along the layer chain") {
  SchemePlan plan = small_plan(5, {5, 3}, {{3, 1, 1}, {2, 1, 1}});
  // Layer 1 sees the padded inputs.
  CHECK(plan.source_shape_a(1, 1) == Shape{6, 6});
  CHECK(plan.source_shape_b(1, 1) == Shape{6, 6});
  // Layer 2 re-encodes layer-1 parities: f has shape (lam/m1) x (kap/p1),
  // g has (kap/p1) x (mu/n1) = 6x2 and 2x6.
  CHECK(plan.source_shape_a(2, 1) == Shape{6, 2});
  CHECK(plan.source_shape_b(2, 1) == Shape{2, 6});
}

TEST_CASE("global task indexing is layer-major") {
  SchemePlan plan = small_plan(5, {5, 3, 2}, {{3, 1, 1}, {2, 1, 1}, {1, 2, 1}});
  CHECK(plan.total_tasks() == 6);
  CHECK(plan.layer_offset(1) == 1);
  CHECK(plan.layer_offset(2) == 2);
  CHECK(plan.layer_offset(3) == 4);
  CHECK(plan.task_location(1) == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(plan.task_location(3) == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(plan.task_location(6) == std::pair<std::size_t, std::size_t>{3, 3});
}

#include <benchmark/benchmark.h>

#include <random>
#include <set>

#include "flexmm/decode.hpp"
#include "flexmm/shares.hpp"

namespace {

using namespace flexmm;

SchemePlan example_plan(std::size_t dim) {
  RecoveryProfile profile{{5, 3}};
  std::vector<PartitionParams> partitions{{3, 1, 1}, {2, 1, 1}};
  return build_plan(5, profile, partitions, MatrixDims{dim, dim, dim}, PrimeField(1000003));
}

void BM_encode(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  SchemePlan plan = example_plan(dim);
  std::mt19937_64 rng(7);
  FieldMatrix a = FieldMatrix::random(dim, dim, plan.field(), rng);
  FieldMatrix b = FieldMatrix::random(dim, dim, plan.field(), rng);
  for (auto _ : state) {
    EncodingOutput enc = generate_shares(plan, a, b);
    benchmark::DoNotOptimize(enc.shares.data());
  }
}
BENCHMARK(BM_encode)->Arg(24)->Arg(48)->Arg(96);

void BM_compute_and_decode(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  SchemePlan plan = example_plan(dim);
  std::mt19937_64 rng(7);
  FieldMatrix a = FieldMatrix::random(dim, dim, plan.field(), rng);
  FieldMatrix b = FieldMatrix::random(dim, dim, plan.field(), rng);
  EncodingOutput enc = generate_shares(plan, a, b);
  std::set<std::size_t> available{1, 2, 3};
  for (auto _ : state) {
    std::vector<TaskResult> results;
    for (std::size_t id : available) {
      auto part = compute_tasks(enc.shares[id - 1], tasks_required(plan, available.size()));
      results.insert(results.end(), part.begin(), part.end());
    }
    FieldMatrix product = decode(plan, results, available);
    benchmark::DoNotOptimize(product.data().data());
  }
}
BENCHMARK(BM_compute_and_decode)->Arg(24)->Arg(48)->Arg(96);

void BM_interpolate(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  PrimeField field(1000003);
  std::mt19937_64 rng(11);
  std::vector<FieldMatrix> coeffs;
  for (std::size_t i = 0; i < k; ++i) coeffs.push_back(FieldMatrix::random(8, 8, field, rng));
  MatrixPoly poly{std::move(coeffs)};
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < k; ++i) samples.emplace_back(i, poly_eval(poly, i));
  for (auto _ : state) {
    MatrixPoly out = interpolate(samples, k);
    benchmark::DoNotOptimize(out.coeffs.data());
  }
}
BENCHMARK(BM_interpolate)->Arg(8)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();

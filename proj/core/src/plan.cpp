#include "flexmm/plan.hpp"

#include <numeric>
#include <string>

namespace flexmm {

void RecoveryProfile::validate() const {
  if (thresholds.empty()) throw ShapeError("recovery profile must have at least one layer");
  for (std::size_t i = 0; i + 1 < thresholds.size(); ++i) {
    if (thresholds[i] <= thresholds[i + 1])
      throw ShapeError("recovery profile must be strictly decreasing");
  }
  if (thresholds.back() == 0) throw ShapeError("recovery threshold must be positive");
}

std::vector<std::size_t> gamma_counts(const RecoveryProfile& profile) {
  profile.validate();
  std::vector<std::size_t> gamma;
  gamma.reserve(profile.layer_count());
  std::size_t total = 0;
  for (std::size_t j = 1; j <= profile.layer_count(); ++j) {
    std::size_t g = (j == 1) ? 1 : (profile.r(j - 1) - profile.r(j)) * total;
    gamma.push_back(g);
    total += g;
  }
  return gamma;
}

std::vector<std::vector<TaskSource>> enumerate_routing(const RecoveryProfile& profile) {
  const auto gamma = gamma_counts(profile);
  const std::size_t ra = profile.final();
  std::vector<std::vector<TaskSource>> routing(profile.layer_count());
  for (std::size_t j = 2; j <= profile.layer_count(); ++j) {
    auto& list = routing[j - 1];
    for (std::size_t t = profile.r(j) - ra + 1; t <= profile.r(j - 1) - ra; ++t)
      for (std::size_t J = 1; J < j; ++J)
        for (std::size_t delta = 1; delta <= gamma[J - 1]; ++delta)
          list.push_back(TaskSource{t, J, delta});
  }
  return routing;
}

SchemePlan::SchemePlan(std::size_t n_servers, RecoveryProfile profile,
                       std::vector<LayerSpec> layers, PrimeField field,
                       std::vector<Residue> points, std::vector<std::vector<TaskSource>> routing,
                       MatrixDims dims, MatrixDims padded, std::vector<std::vector<Shape>> shape_a,
                       std::vector<std::vector<Shape>> shape_b)
    : n_(n_servers),
      profile_(std::move(profile)),
      layers_(std::move(layers)),
      field_(field),
      points_(std::move(points)),
      routing_(std::move(routing)),
      dims_(dims),
      padded_(padded),
      shape_a_(std::move(shape_a)),
      shape_b_(std::move(shape_b)) {
  total_tasks_ = 0;
  for (const auto& l : layers_) total_tasks_ += l.task_count;
}

Shape SchemePlan::task_result_shape(std::size_t j, std::size_t delta) const {
  const auto& part = layer(j).partition;
  Shape a = source_shape_a(j, delta);
  Shape b = source_shape_b(j, delta);
  return Shape{a.rows / part.m, b.cols / part.n};
}

Shape SchemePlan::task_product_shape(std::size_t j, std::size_t delta) const {
  return Shape{source_shape_a(j, delta).rows, source_shape_b(j, delta).cols};
}

std::size_t SchemePlan::layer_offset(std::size_t j) const {
  std::size_t off = 1;
  for (std::size_t l = 1; l < j; ++l) off += layers_[l - 1].task_count;
  return off;
}

std::pair<std::size_t, std::size_t> SchemePlan::task_location(std::size_t k) const {
  std::size_t off = 1;
  for (std::size_t j = 1; j <= layers_.size(); ++j) {
    if (k < off + layers_[j - 1].task_count) return {j, k - off + 1};
    off += layers_[j - 1].task_count;
  }
  throw ShapeError("task index " + std::to_string(k) + " out of range");
}

namespace {
std::size_t round_up(std::size_t v, std::size_t q) { return (v + q - 1) / q * q; }
}  // namespace

SchemePlan build_plan(std::size_t n_servers, const RecoveryProfile& profile,
                      const std::vector<PartitionParams>& partitions, const MatrixDims& dims,
                      const PrimeField& field) {
  profile.validate();
  if (partitions.size() != profile.layer_count())
    throw ShapeError("need one partition triple per layer");
  if (profile.top() > n_servers)
    throw ShapeError("R_1 cannot exceed the number of servers");
  for (std::size_t j = 1; j <= profile.layer_count(); ++j) {
    if (partitions[j - 1].recovery_threshold() != profile.r(j))
      throw ShapeError("layer " + std::to_string(j) + ": partition threshold " +
                       std::to_string(partitions[j - 1].recovery_threshold()) +
                       " does not match profile threshold " + std::to_string(profile.r(j)));
  }

  const std::size_t n_points = n_servers + profile.top() - profile.final();
  auto points = eval_points(n_points, field);

  const auto gamma = gamma_counts(profile);
  auto routing = enumerate_routing(profile);

  std::vector<LayerSpec> layers;
  for (std::size_t j = 1; j <= profile.layer_count(); ++j)
    layers.push_back(LayerSpec{profile.r(j), partitions[j - 1], gamma[j - 1]});

  // Pad so every routing chain divides evenly: lambda by prod m_j,
  // kappa by prod p_j, mu by prod n_j.
  std::size_t pm = 1, pp = 1, pn = 1;
  for (const auto& part : partitions) {
    pm *= part.m;
    pp *= part.p;
    pn *= part.n;
  }
  MatrixDims padded{round_up(dims.rows_a, pm), round_up(dims.inner, pp),
                    round_up(dims.cols_b, pn)};

  std::vector<std::vector<Shape>> shape_a(profile.layer_count());
  std::vector<std::vector<Shape>> shape_b(profile.layer_count());
  shape_a[0] = {Shape{padded.rows_a, padded.inner}};
  shape_b[0] = {Shape{padded.inner, padded.cols_b}};
  for (std::size_t j = 2; j <= profile.layer_count(); ++j) {
    for (const TaskSource& src : routing[j - 1]) {
      const auto& part = partitions[src.source_layer - 1];
      Shape sa = shape_a[src.source_layer - 1][src.source_index - 1];
      Shape sb = shape_b[src.source_layer - 1][src.source_index - 1];
      shape_a[j - 1].push_back(Shape{sa.rows / part.m, sa.cols / part.p});
      shape_b[j - 1].push_back(Shape{sb.rows / part.p, sb.cols / part.n});
    }
  }

  return SchemePlan(n_servers, profile, std::move(layers), field, std::move(points),
                    std::move(routing), dims, padded, std::move(shape_a), std::move(shape_b));
}

std::size_t tasks_required(const SchemePlan& plan, std::size_t available) {
  const auto& profile = plan.profile();
  if (available < profile.final())
    throw DecodeError("need at least " + std::to_string(profile.final()) + " servers, have " +
                      std::to_string(available));
  if (available > plan.n_servers())
    throw ShapeError("more available servers than servers in the plan");
  if (available >= profile.top()) return 1;
  std::size_t j = 2;
  while (available < profile.r(j)) ++j;
  std::size_t below = 0;
  for (std::size_t J = 1; J < j; ++J) below += plan.layer(J).task_count;
  return below + (profile.r(j - 1) - available) * below;
}

}  // namespace flexmm

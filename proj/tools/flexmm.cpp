// flexmm: plan, encode, compute, decode, simulate and report for flexible
// coded distributed matrix multiplication over prime fields.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "flexmm/decode.hpp"
#include "flexmm/io.hpp"
#include "flexmm/optimize.hpp"
#include "flexmm/simulate.hpp"

namespace fs = std::filesystem;
using namespace flexmm;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInsufficient = 4;
constexpr int kExitCorruption = 5;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FLEXMM_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

StragglerDist dist_from_options(std::size_t n, std::size_t r, double epsilon,
                                const std::string& dist_file) {
  if (!dist_file.empty()) {
    std::ifstream is(dist_file);
    if (!is) throw IoError("cannot open " + dist_file);
    StragglerDist dist;
    double q;
    while (is >> q) dist.probs.push_back(q);
    if (dist.probs.size() != n - r + 1)
      throw ShapeError("distribution file must list q_0..q_" + std::to_string(n - r));
    dist.validate();
    return dist;
  }
  return truncated_binomial(n, r, epsilon);
}

std::string partition_str(const PartitionParams& p) {
  std::ostringstream os;
  os << "(p=" << p.p << ", m=" << p.m << ", n=" << p.n << ")";
  return os.str();
}

void print_candidate(std::ostream& os, const char* label, const IntCandidate& c) {
  os << label << ": profile (";
  for (std::size_t j = 0; j < c.thresholds.size(); ++j)
    os << c.thresholds[j] << (j + 1 < c.thresholds.size() ? ", " : "");
  os << "), partitions";
  for (const auto& p : c.partitions) os << ' ' << partition_str(p);
  os << "\n  expected load " << c.expected_load << "  approx load " << c.approx_load
     << "  storage " << c.storage_used << '\n';
}

int cmd_plan(std::size_t n, std::size_t r, std::size_t lam, std::size_t kap, std::size_t mu,
             double storage_cap, const std::string& model_str, double epsilon,
             const std::string& dist_file, std::size_t max_layers, std::uint64_t modulus,
             const std::string& out, const std::string& report_out) {
  const CommModel model = model_str == "multi-round" ? CommModel::multi_round
                                                     : CommModel::one_round;
  const ProblemDims dims{static_cast<double>(lam), static_cast<double>(kap),
                         static_cast<double>(mu)};
  const StragglerDist dist = dist_from_options(n, r, epsilon, dist_file);
  const OptimizationReport report =
      integer_search(dims, n, r, storage_cap, model, dist, max_layers);

  if (report.kind == OptimizationReport::Kind::infeasible) {
    std::cerr << "infeasible: need storage C >= " << report.min_storage_required << '\n';
    return kExitInfeasible;
  }

  const IntCandidate& best = *report.best;
  std::cout << "decision: "
            << (report.kind == OptimizationReport::Kind::flexible ? "flexible" : "fixed EP")
            << '\n';
  if (report.ep_choice) print_candidate(std::cout, "best fixed EP", *report.ep_choice);
  if (report.flex_choice) print_candidate(std::cout, "best flexible", *report.flex_choice);
  print_candidate(std::cout, "chosen", best);
  if (report.ep_real)
    std::cout << "EP real relaxation: p=" << report.ep_real->p << " L=" << report.ep_real->load
              << '\n';
  if (report.flex_real)
    std::cout << "2-layer real relaxation: p1=" << report.flex_real->p1
              << " p2=" << report.flex_real->p2 << " L=" << report.flex_real->load << '\n';

  const PrimeField field(modulus != 0 ? modulus
                                      : PrimeField::next_prime(n + best.thresholds.front() -
                                                               best.thresholds.back()));
  RecoveryProfile profile{best.thresholds};
  SchemePlan plan = build_plan(n, profile, best.partitions, MatrixDims{lam, kap, mu}, field);
  save_plan(out, plan);
  std::cout << "plan written to " << out << '\n';

  if (!report_out.empty()) {
    std::ofstream os(report_out);
    os << "flexmm-report 1\n";
    os << "decision "
       << (report.kind == OptimizationReport::Kind::flexible ? "flexible" : "fixed-ep") << '\n';
    os << "expected_load " << best.expected_load << '\n';
    os << "approx_load " << best.approx_load << '\n';
    os << "storage_used " << best.storage_used << '\n';
    os << "layers " << best.thresholds.size() << '\n';
    for (std::size_t j = 0; j < best.thresholds.size(); ++j)
      os << "layer " << best.thresholds[j] << ' ' << best.partitions[j].p << ' '
         << best.partitions[j].m << ' ' << best.partitions[j].n << '\n';
  }
  return 0;
}

int cmd_encode(const std::string& plan_file, const std::string& a_file, const std::string& b_file,
               const std::string& out_dir) {
  SchemePlan plan = load_plan(plan_file);
  FieldMatrix a = load_matrix(a_file);
  FieldMatrix b = load_matrix(b_file);
  EncodingOutput enc = generate_shares(plan, a, b);
  fs::create_directories(out_dir);
  for (const auto& share : enc.shares)
    save_share(fs::path(out_dir) / ("share_" + std::to_string(share.server_id) + ".txt"), share);
  std::cout << "wrote " << enc.shares.size() << " shares to " << out_dir << '\n';
  return 0;
}

int cmd_compute(const std::string& share_file, std::size_t tasks, const std::string& out) {
  ServerShare share = load_share(share_file);
  const std::size_t up_to = tasks == 0 ? share.coded_pairs.size() : tasks;
  auto results = compute_tasks(share, up_to);
  save_results(out, results);
  std::uint64_t mults = 0;
  for (const auto& r : results) mults += r.mults;
  std::cout << "server " << share.server_id << ": " << results.size() << " tasks, " << mults
            << " scalar multiplications\n";
  return 0;
}

int cmd_decode(const std::string& plan_file, const std::string& available_str,
               const std::string& results_dir, const std::string& out) {
  SchemePlan plan = load_plan(plan_file);
  std::set<std::size_t> available;
  std::stringstream ss(available_str);
  for (std::string tok; std::getline(ss, tok, ',');) available.insert(std::stoul(tok));
  std::vector<TaskResult> results;
  for (std::size_t id : available) {
    fs::path p = fs::path(results_dir) / ("results_" + std::to_string(id) + ".txt");
    if (!fs::exists(p)) throw DecodeError("no results file for server " + std::to_string(id));
    auto part = load_results(p);
    results.insert(results.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  const std::size_t needed = tasks_required(plan, available.size());
  FieldMatrix product = decode(plan, results, available);
  save_matrix(out, product);
  std::cout << "decoded with " << available.size() << " servers, " << needed
            << " tasks per server";
  if (available.size() >= plan.profile().top()) {
    std::cout << " (layer 1 only)\n";
  } else {
    std::size_t j = 2;
    while (available.size() < plan.profile().r(j)) ++j;
    std::cout << " (layers 1-" << j << ")\n";
  }
  std::cout << "product written to " << out << '\n';
  return 0;
}

void write_cdf_csv(std::ostream& os, const LatencyReport& flex, const LatencyReport* ep,
                   std::size_t resolution) {
  if (ep == nullptr) {
    os << "latency,cdf\n";
    for (const auto& [x, p] : emit_cdf(flex, resolution)) os << x << ',' << p << '\n';
    return;
  }
  os << "# mean_flex=" << flex.mean << '\n';
  os << "# mean_ep=" << ep->mean << '\n';
  // Shared grid so the curves are directly comparable.
  std::vector<double> all = flex.samples;
  all.insert(all.end(), ep->samples.begin(), ep->samples.end());
  LatencyReport merged{std::move(all), {}, 0, {}};
  auto grid = emit_cdf(merged, resolution);
  std::vector<double> fs_sorted = flex.samples, ep_sorted = ep->samples;
  std::sort(fs_sorted.begin(), fs_sorted.end());
  std::sort(ep_sorted.begin(), ep_sorted.end());
  os << "latency,cdf_flex,cdf_ep\n";
  for (const auto& [x, _] : grid) {
    auto frac = [x](const std::vector<double>& v) {
      return static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) /
             static_cast<double>(v.size());
    };
    os << x << ',' << frac(fs_sorted) << ',' << frac(ep_sorted) << '\n';
  }
}

int cmd_simulate(const std::string& plan_file, std::size_t unit, double mean, std::size_t trials,
                 std::uint64_t seed, std::size_t resolution, const std::string& ep_str,
                 const std::string& out, const std::string& samples_out) {
  SchemePlan plan = load_plan(plan_file);
  LatencyModel model{unit, mean, trials, seed};
  LatencyReport flex = simulate(plan, model);
  std::cout << "flexible mean latency " << flex.mean << '\n';

  std::optional<LatencyReport> ep;
  if (!ep_str.empty()) {
    PartitionParams p;
    if (std::sscanf(ep_str.c_str(), "%zu,%zu,%zu", &p.p, &p.m, &p.n) != 3)
      throw IoError("--ep expects p,m,n");
    ep = simulate_ep(plan.n_servers(), plan.profile().final(), p, plan.dims(), model);
    std::cout << "EP mean latency " << ep->mean << '\n';
  }

  std::ofstream os(out);
  if (!os) throw IoError("cannot write " + out);
  write_cdf_csv(os, flex, ep ? &*ep : nullptr, resolution);

  if (!samples_out.empty()) {
    std::ofstream ss_out(samples_out);
    ss_out << "trial,latency,winning_R\n";
    for (std::size_t t = 0; t < flex.samples.size(); ++t)
      ss_out << t << ',' << flex.samples[t] << ',' << flex.winners[t] << '\n';
  }
  return 0;
}

int cmd_report(std::size_t n, std::size_t r, std::size_t lam, std::size_t kap, std::size_t mu,
               double epsilon, double c_from, double c_to, double c_step,
               const std::string& out) {
  const ProblemDims dims{static_cast<double>(lam), static_cast<double>(kap),
                         static_cast<double>(mu)};
  const StragglerDist dist = truncated_binomial(n, r, epsilon);
  std::ofstream os(out);
  if (!os) throw IoError("cannot write " + out);
  os << "C,L_EP,L_flex_expected,L_flex_approx\n";
  for (double c = c_from; c <= c_to + 1e-9; c += c_step) {
    OptimizationReport rep = integer_search(dims, n, r, c, CommModel::one_round, dist);
    os << c << ',';
    if (rep.ep_choice)
      os << rep.ep_choice->expected_load;
    else
      os << "nan";
    os << ',';
    // A flexible candidate that does not beat EP means the construction
    // reduces to the fixed code at this storage point.
    const IntCandidate* flex = rep.best && rep.best->thresholds.size() > 1 ? &*rep.best
                               : rep.ep_choice ? &*rep.ep_choice
                                               : nullptr;
    if (flex)
      os << flex->expected_load << ',' << flex->approx_load << '\n';
    else
      os << "nan,nan\n";
  }
  std::cout << "sweep written to " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flexible coded distributed matrix multiplication"};
  app.require_subcommand(1);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "choose a scheme and write a plan file");
  std::size_t n = 0, r = 0, lam = 1, kap = 1, mu = 1, max_layers = 64, tasks = 0, unit = 1,
              trials = 100000, resolution = 200;
  double storage_cap = 0, epsilon = 0, mean = 0.1, c_from = 0, c_to = 0, c_step = 0.01;
  std::uint64_t modulus = 0, seed = default_seed();
  std::string model_str = "one-round", dist_file, out = "plan.txt", report_out, a_file, b_file,
              out_dir = "shares", plan_file = "plan.txt", share_file, available_str, results_dir,
              ep_str, samples_out;
  plan_cmd->add_option("--n", n, "number of servers")->required();
  plan_cmd->add_option("--r", r, "recovery threshold")->required();
  plan_cmd->add_option("--lambda", lam, "rows of A")->required();
  plan_cmd->add_option("--kappa", kap, "shared dimension")->required();
  plan_cmd->add_option("--mu", mu, "columns of B")->required();
  plan_cmd->add_option("--storage", storage_cap, "per-server storage capacity (entries)")
      ->required();
  plan_cmd->add_option("--model", model_str, "one-round or multi-round")
      ->check(CLI::IsMember({"one-round", "multi-round"}));
  plan_cmd->add_option("--epsilon", epsilon, "per-server straggler probability");
  plan_cmd->add_option("--dist-file", dist_file, "file with q_0..q_{N-R}");
  plan_cmd->add_option("--layers", max_layers, "maximum number of layers");
  plan_cmd->add_option("--modulus", modulus, "field modulus override (prime)");
  plan_cmd->add_option("--out", out, "plan file to write");
  plan_cmd->add_option("--report-out", report_out, "machine-readable report file");

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "encode A and B into per-server shares");
  encode_cmd->add_option("--plan", plan_file, "plan file")->required();
  encode_cmd->add_option("--a", a_file, "matrix A file")->required();
  encode_cmd->add_option("--b", b_file, "matrix B file")->required();
  encode_cmd->add_option("--out-dir", out_dir, "directory for share files");

  // compute
  auto* compute_cmd = app.add_subcommand("compute", "run a server's tasks on its share");
  compute_cmd->add_option("--share", share_file, "share file")->required();
  compute_cmd->add_option("--tasks", tasks, "number of tasks to compute (0 = all)");
  compute_cmd->add_option("--out", out, "results file to write")->required();

  // decode
  auto* decode_cmd = app.add_subcommand("decode", "recover the product from task results");
  decode_cmd->add_option("--plan", plan_file, "plan file")->required();
  decode_cmd->add_option("--available", available_str, "comma list of available server ids")
      ->required();
  decode_cmd->add_option("--results-dir", results_dir, "directory with results_<id>.txt")
      ->required();
  decode_cmd->add_option("--out", out, "product matrix file")->required();

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo latency simulation");
  sim_cmd->add_option("--plan", plan_file, "plan file")->required();
  sim_cmd->add_option("--unit", unit, "unit block edge U")->required();
  sim_cmd->add_option("--mean", mean, "mean seconds per unit multiplication");
  sim_cmd->add_option("--trials", trials, "number of trials");
  sim_cmd->add_option("--seed", seed, "RNG seed");
  sim_cmd->add_option("--resolution", resolution, "CDF grid rows");
  sim_cmd->add_option("--ep", ep_str, "also simulate a fixed EP code, p,m,n");
  sim_cmd->add_option("--out", out, "CDF csv file")->required();
  sim_cmd->add_option("--samples-out", samples_out, "raw per-trial csv file");

  // report
  auto* report_cmd = app.add_subcommand("report", "storage sweep csv (load comparison)");
  report_cmd->add_option("--n", n, "number of servers")->required();
  report_cmd->add_option("--r", r, "recovery threshold")->required();
  report_cmd->add_option("--lambda", lam, "rows of A")->required();
  report_cmd->add_option("--kappa", kap, "shared dimension")->required();
  report_cmd->add_option("--mu", mu, "columns of B")->required();
  report_cmd->add_option("--epsilon", epsilon, "per-server straggler probability");
  report_cmd->add_option("--storage-from", c_from, "sweep start")->required();
  report_cmd->add_option("--storage-to", c_to, "sweep end")->required();
  report_cmd->add_option("--storage-step", c_step, "sweep step");
  report_cmd->add_option("--out", out, "csv file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  try {
    if (plan_cmd->parsed())
      return cmd_plan(n, r, lam, kap, mu, storage_cap, model_str, epsilon, dist_file, max_layers,
                      modulus, out, report_out);
    if (encode_cmd->parsed()) return cmd_encode(plan_file, a_file, b_file, out_dir);
    if (compute_cmd->parsed()) return cmd_compute(share_file, tasks, out);
    if (decode_cmd->parsed()) return cmd_decode(plan_file, available_str, results_dir, out);
    if (sim_cmd->parsed())
      return cmd_simulate(plan_file, unit, mean, trials, seed, resolution, ep_str, out,
                          samples_out);
    if (report_cmd->parsed())
      return cmd_report(n, r, lam, kap, mu, epsilon, c_from, c_to, c_step, out);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << " (need C >= " << e.min_storage_required << ")\n";
    return kExitInfeasible;
  } catch (const CorruptionError& e) {
    std::cerr << "corruption: " << e.what() << '\n';
    return kExitCorruption;
  } catch (const DecodeError& e) {
    std::cerr << "insufficient results: " << e.what() << '\n';
    return kExitInsufficient;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}

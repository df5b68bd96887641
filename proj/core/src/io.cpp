#include "flexmm/io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace flexmm {

namespace {

constexpr char kMatrixMagic[8] = {'F', 'X', 'M', 'M', 'A', 'T', 'B', '1'};

void write_u64(std::ostream& os, std::uint64_t v) {
  std::array<unsigned char, 8> buf;
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf.data()), 8);
}

std::uint64_t read_u64(std::istream& is) {
  std::array<unsigned char, 8> buf;
  is.read(reinterpret_cast<char*>(buf.data()), 8);
  if (!is) throw IoError("truncated binary matrix");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return is;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  return os;
}

void expect_header(std::istream& is, const std::string& name, int version) {
  std::string tag;
  int ver = 0;
  if (!(is >> tag >> ver) || tag != name || ver != version)
    throw IoError("expected '" + name + " " + std::to_string(version) + "' header");
}

std::string expect_key(std::istream& is, const std::string& key) {
  std::string k, v;
  if (!(is >> k) || k != key) throw IoError("expected '" + key + "' field");
  return key;
}

}  // namespace

void write_matrix_text(std::ostream& os, const FieldMatrix& m) {
  os << m.rows() << ' ' << m.cols() << ' ' << m.field().modulus() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << m.at(r, c) << (c + 1 == m.cols() ? '\n' : ' ');
  }
}

void write_matrix_binary(std::ostream& os, const FieldMatrix& m) {
  os.write(kMatrixMagic, sizeof(kMatrixMagic));
  write_u64(os, m.rows());
  write_u64(os, m.cols());
  write_u64(os, m.field().modulus());
  for (Residue e : m.data()) write_u64(os, e);
}

FieldMatrix read_matrix(std::istream& is) {
  // Peek for the binary magic; fall back to the text parser.
  char magic[8];
  std::streampos start = is.tellg();
  is.read(magic, sizeof(magic));
  if (is && std::memcmp(magic, kMatrixMagic, sizeof(magic)) == 0) {
    const std::uint64_t rows = read_u64(is);
    const std::uint64_t cols = read_u64(is);
    const std::uint64_t modulus = read_u64(is);
    FieldMatrix m(rows, cols, PrimeField(modulus));
    for (std::uint64_t r = 0; r < rows; ++r)
      for (std::uint64_t c = 0; c < cols; ++c) {
        std::uint64_t v = read_u64(is);
        if (v >= modulus) throw IoError("matrix entry " + std::to_string(v) + " >= modulus");
        m.set(r, c, v);
      }
    return m;
  }
  is.clear();
  is.seekg(start);
  std::size_t rows, cols;
  std::uint64_t modulus;
  if (!(is >> rows >> cols >> modulus)) throw IoError("bad matrix header");
  FieldMatrix m(rows, cols, PrimeField(modulus));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      std::uint64_t v;
      if (!(is >> v)) throw IoError("matrix data ends early");
      if (v >= modulus) throw IoError("matrix entry " + std::to_string(v) + " >= modulus");
      m.set(r, c, v);
    }
  return m;
}

void save_matrix(const std::filesystem::path& path, const FieldMatrix& m, bool binary) {
  auto os = open_out(path);
  binary ? write_matrix_binary(os, m) : write_matrix_text(os, m);
}

FieldMatrix load_matrix(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_matrix(is);
}

void save_plan(const std::filesystem::path& path, const SchemePlan& plan) {
  auto os = open_out(path);
  os << "flexmm-plan 1\n";
  os << "servers " << plan.n_servers() << '\n';
  os << "modulus " << plan.field().modulus() << '\n';
  os << "dims " << plan.dims().rows_a << ' ' << plan.dims().inner << ' ' << plan.dims().cols_b
     << '\n';
  os << "layers " << plan.layers().size() << '\n';
  for (const auto& l : plan.layers())
    os << "layer " << l.threshold << ' ' << l.partition.p << ' ' << l.partition.m << ' '
       << l.partition.n << '\n';
}

SchemePlan load_plan(const std::filesystem::path& path) {
  auto is = open_in(path);
  expect_header(is, "flexmm-plan", 1);
  std::size_t n_servers, layers;
  std::uint64_t modulus;
  MatrixDims dims;
  expect_key(is, "servers");
  if (!(is >> n_servers)) throw IoError("bad servers field");
  expect_key(is, "modulus");
  if (!(is >> modulus)) throw IoError("bad modulus field");
  expect_key(is, "dims");
  if (!(is >> dims.rows_a >> dims.inner >> dims.cols_b)) throw IoError("bad dims field");
  expect_key(is, "layers");
  if (!(is >> layers)) throw IoError("bad layers field");
  RecoveryProfile profile;
  std::vector<PartitionParams> partitions;
  for (std::size_t j = 0; j < layers; ++j) {
    expect_key(is, "layer");
    std::size_t threshold;
    PartitionParams part;
    if (!(is >> threshold >> part.p >> part.m >> part.n)) throw IoError("bad layer line");
    profile.thresholds.push_back(threshold);
    partitions.push_back(part);
  }
  return build_plan(n_servers, profile, partitions, dims, PrimeField(modulus));
}

void save_share(const std::filesystem::path& path, const ServerShare& share) {
  auto os = open_out(path);
  os << "flexmm-share 1\n";
  os << "server " << share.server_id << '\n';
  os << "tasks " << share.coded_pairs.size() << '\n';
  for (const auto& [a, b] : share.coded_pairs) {
    write_matrix_text(os, a);
    write_matrix_text(os, b);
  }
}

ServerShare load_share(const std::filesystem::path& path) {
  auto is = open_in(path);
  expect_header(is, "flexmm-share", 1);
  ServerShare share;
  std::size_t tasks;
  expect_key(is, "server");
  if (!(is >> share.server_id)) throw IoError("bad server field");
  expect_key(is, "tasks");
  if (!(is >> tasks)) throw IoError("bad tasks field");
  for (std::size_t k = 0; k < tasks; ++k) {
    FieldMatrix a = read_matrix(is);
    FieldMatrix b = read_matrix(is);
    share.coded_pairs.emplace_back(std::move(a), std::move(b));
  }
  return share;
}

void save_results(const std::filesystem::path& path, const std::vector<TaskResult>& results) {
  auto os = open_out(path);
  os << "flexmm-results 1\n";
  os << "count " << results.size() << '\n';
  for (const auto& r : results) {
    os << "task " << r.server_id << ' ' << r.task_index << ' ' << r.mults << '\n';
    write_matrix_text(os, r.value);
  }
}

std::vector<TaskResult> load_results(const std::filesystem::path& path) {
  auto is = open_in(path);
  expect_header(is, "flexmm-results", 1);
  std::size_t count;
  expect_key(is, "count");
  if (!(is >> count)) throw IoError("bad count field");
  std::vector<TaskResult> results;
  results.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    expect_key(is, "task");
    TaskResult r{0, 0, FieldMatrix(0, 0, PrimeField(2)), 0};
    if (!(is >> r.server_id >> r.task_index >> r.mults)) throw IoError("bad task line");
    r.value = read_matrix(is);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace flexmm

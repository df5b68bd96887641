#pragma once

#include <filesystem>
#include <iosfwd>

#include "flexmm/shares.hpp"

namespace flexmm {

/// Text matrix format: line 1 "rows cols modulus", then whitespace
/// separated residues row by row. Binary variant: magic "FXMMATB1",
/// little-endian u64 rows, cols, modulus, then u64 residues. Readers
/// auto-detect by the magic.
void write_matrix_text(std::ostream& os, const FieldMatrix& m);
void write_matrix_binary(std::ostream& os, const FieldMatrix& m);
FieldMatrix read_matrix(std::istream& is);

void save_matrix(const std::filesystem::path& path, const FieldMatrix& m, bool binary = false);
FieldMatrix load_matrix(const std::filesystem::path& path);

/// Plan files carry a schema version line ("flexmm-plan 1") followed by
/// servers, modulus, dims and the per-layer thresholds and partitions.
/// Routing and evaluation points are deterministic, so they are rebuilt on
/// load rather than stored.
void save_plan(const std::filesystem::path& path, const SchemePlan& plan);
SchemePlan load_plan(const std::filesystem::path& path);

void save_share(const std::filesystem::path& path, const ServerShare& share);
ServerShare load_share(const std::filesystem::path& path);

void save_results(const std::filesystem::path& path, const std::vector<TaskResult>& results);
std::vector<TaskResult> load_results(const std::filesystem::path& path);

}  // namespace flexmm

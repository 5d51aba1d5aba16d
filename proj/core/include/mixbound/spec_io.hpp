#pragma once

#include <string>
#include <vector>

#include "mixbound/process_spec.hpp"

namespace mixbound {

/// A parsed process-spec document. File layout notes:
///  - kernels[t][from][to] = p_t(to | from): rows are indexed by the
///    conditioning symbol, the transpose of the internal column convention;
///    the loader transposes.
///  - node/position indices are 1-based; symbols are referenced by label.
///  - homogeneous shorthand {"kernel": K, "repeat": m} expands to m copies
///    ({"potential": M, "repeat": m} for potentials).
///  - tree kernels are parallel to edges; entries are inline matrices or
///    names into the optional "kernel_defs" map.
struct SpecDocument {
  std::string format_version;
  std::string type_tag;  // chain | undirected_chain | tree | mmp
  ProcessSpec process;
  std::string hash;  // fnv1a-64 of the document bytes, hex

  // Filled when a tree spec arrived with valid but non-breadth-first
  // numbering and was canonically renumbered.
  bool tree_renumbered = false;
  std::vector<int> tree_old_to_new;  // 1-based, slot 0 unused
};

/// Parse a spec document from text. Throws SchemaError for structural
/// problems, NumericError for value-level validation failures (diagnostics
/// name the offending kernel index and column label), CapError never.
SpecDocument parse_spec(const std::string& text);

/// Read and parse a file; file-system problems surface as SchemaError.
SpecDocument load_spec_file(const std::string& path);

/// FNV-1a 64-bit, hex-encoded; the spec hash echoed in reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace mixbound

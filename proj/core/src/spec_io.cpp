#include "mixbound/spec_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mixbound {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& what) { throw SchemaError(what); }

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) schema_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) schema_fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Alphabet parse_alphabet(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_array() || v.empty()) schema_fail(std::string("'") + key + "' must be a nonempty array of labels");
  std::vector<std::string> labels;
  for (const auto& e : v) {
    if (!e.is_string()) schema_fail(std::string("'") + key + "' entries must be strings");
    labels.push_back(e.get<std::string>());
  }
  return Alphabet::from_labels(std::move(labels));
}

std::vector<double> parse_number_array(const json& v, const std::string& what) {
  if (!v.is_array()) schema_fail(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) schema_fail(what + " entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> parse_matrix(const json& v, const std::string& what,
                                              std::size_t dim) {
  if (!v.is_array() || v.size() != dim)
    schema_fail(what + " must be a " + std::to_string(dim) + "x" + std::to_string(dim) +
                " matrix");
  std::vector<std::vector<double>> rows;
  for (const auto& r : v) {
    auto row = parse_number_array(r, what + " row");
    if (row.size() != dim)
      schema_fail(what + " must be a " + std::to_string(dim) + "x" +
                  std::to_string(dim) + " matrix");
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Labels used in diagnostics for the conditioning states of a kernel.
std::vector<std::string> pair_labels(const Alphabet& obs, const Alphabet& hid) {
  std::vector<std::string> out;
  out.reserve(obs.size() * hid.size());
  for (const auto& o : obs.labels())
    for (const auto& h : hid.labels()) out.push_back("(" + o + "," + h + ")");
  return out;
}

/// Validates the row-per-source layout and transposes into a Kernel. The
/// diagnostic names the kernel position and the conditioning column label.
Kernel kernel_from_rows(const std::vector<std::vector<double>>& rows,
                        std::size_t kernel_index_1based,
                        const std::vector<std::string>& source_labels) {
  for (std::size_t s = 0; s < rows.size(); ++s) {
    double sum = 0.0;
    for (double p : rows[s]) {
      if (!std::isfinite(p) || p < 0.0)
        throw NumericError("kernel[" + std::to_string(kernel_index_1based) +
                           "] column '" + source_labels[s] +
                           "': entries must be finite and nonnegative");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kInputTol) {
      std::ostringstream msg;
      msg << "kernel[" << kernel_index_1based << "] column '" << source_labels[s]
          << "': sum " << sum << " deviates from 1 beyond tolerance 1e-9";
      throw NumericError(msg.str());
    }
  }
  return Kernel::from_source_rows(rows);
}

/// Expands the kernel list with the {"kernel": K, "repeat": m} shorthand.
std::vector<Kernel> parse_kernels(const json& j, std::size_t dim,
                                  const std::vector<std::string>& source_labels) {
  const json& list = require(j, "kernels");
  if (!list.is_array()) schema_fail("'kernels' must be an array (empty means n = 1)");
  std::vector<Kernel> out;
  for (const auto& entry : list) {
    if (entry.is_object()) {
      const json& k = require(entry, "kernel");
      const json& rep = require(entry, "repeat");
      if (!rep.is_number_unsigned() || rep.get<std::size_t>() < 1)
        schema_fail("'repeat' must be a positive integer");
      const auto rows =
          parse_matrix(k, "kernel[" + std::to_string(out.size() + 1) + "]", dim);
      const std::size_t m = rep.get<std::size_t>();
      for (std::size_t r = 0; r < m; ++r)
        out.push_back(kernel_from_rows(rows, out.size() + 1, source_labels));
    } else {
      const auto rows = parse_matrix(
          entry, "kernel[" + std::to_string(out.size() + 1) + "]", dim);
      out.push_back(kernel_from_rows(rows, out.size() + 1, source_labels));
    }
  }
  return out;
}

ProbVec parse_p0(const json& j, std::size_t dim) {
  auto w = parse_number_array(require(j, "p0"), "'p0'");
  if (w.size() != dim)
    schema_fail("'p0' must have " + std::to_string(dim) + " entries");
  return ProbVec::validated(std::move(w));
}

SpecDocument parse_chain(const json& j) {
  Alphabet alphabet = parse_alphabet(j, "alphabet");
  auto p0 = parse_p0(j, alphabet.size());
  auto kernels = parse_kernels(j, alphabet.size(), alphabet.labels());
  SpecDocument doc;
  doc.process = ChainSpec::make(std::move(alphabet), std::move(p0), std::move(kernels));
  return doc;
}

SpecDocument parse_undirected(const json& j) {
  Alphabet alphabet = parse_alphabet(j, "alphabet");
  const std::size_t m = alphabet.size();
  const json& list = require(j, "potentials");
  if (!list.is_array() || list.empty())
    schema_fail("'potentials' must be a nonempty array");
  std::vector<Matrix> pots;
  for (const auto& entry : list) {
    std::size_t repeat = 1;
    const json* mat = &entry;
    if (entry.is_object()) {
      mat = &require(entry, "potential");
      const json& rep = require(entry, "repeat");
      if (!rep.is_number_unsigned() || rep.get<std::size_t>() < 1)
        schema_fail("'repeat' must be a positive integer");
      repeat = rep.get<std::size_t>();
    }
    const auto rows =
        parse_matrix(*mat, "potential[" + std::to_string(pots.size() + 1) + "]", m);
    Matrix psi(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) psi(a, b) = rows[a][b];
    for (std::size_t r = 0; r < repeat; ++r) pots.push_back(psi);
  }
  SpecDocument doc;
  doc.process = UndirectedChainSpec::make(std::move(alphabet), std::move(pots));
  return doc;
}

SpecDocument parse_tree(const json& j) {
  Alphabet alphabet = parse_alphabet(j, "alphabet");
  const std::size_t m = alphabet.size();
  auto p0 = parse_p0(j, m);

  const json& edges_json = require(j, "edges");
  if (!edges_json.is_array()) schema_fail("'edges' must be an array of [u,v] pairs");
  TreeTopology topo;
  for (const auto& e : edges_json) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      schema_fail("'edges' entries must be [u,v] integer pairs");
    topo.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  topo.n = topo.edges.size() + 1;

  const json& klist = require(j, "kernels");
  if (!klist.is_array() || klist.size() != topo.edges.size())
    schema_fail("'kernels' must be parallel to 'edges'");

  std::vector<Kernel> kernels;
  for (std::size_t e = 0; e < klist.size(); ++e) {
    const json* mat = &klist[e];
    if (klist[e].is_string()) {
      const std::string name = klist[e].get<std::string>();
      const json& defs = require(j, "kernel_defs");
      if (!defs.is_object() || !defs.contains(name))
        schema_fail("kernel reference '" + name + "' not found in 'kernel_defs'");
      mat = &defs.at(name);
    }
    const auto rows = parse_matrix(*mat, "kernel[" + std::to_string(e + 1) + "]", m);
    kernels.push_back(kernel_from_rows(rows, e + 1, alphabet.labels()));
  }

  auto renumbered = renumber_breadth_first(std::move(topo), std::move(alphabet),
                                           std::move(p0), std::move(kernels));
  SpecDocument doc;
  doc.tree_renumbered = renumbered.changed;
  if (renumbered.changed) doc.tree_old_to_new = renumbered.old_to_new;
  doc.process = std::move(renumbered.spec);
  return doc;
}

SpecDocument parse_mmp(const json& j) {
  Alphabet obs = parse_alphabet(j, "obs_alphabet");
  Alphabet hid = parse_alphabet(j, "hid_alphabet");
  const std::size_t pairs = obs.size() * hid.size();
  auto labels = pair_labels(obs, hid);
  auto p0 = parse_p0(j, pairs);
  auto kernels = parse_kernels(j, pairs, labels);
  SpecDocument doc;
  doc.process =
      MmpSpec::make(std::move(obs), std::move(hid), std::move(p0), std::move(kernels));
  return doc;
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_fail("spec document must be a JSON object");

  const std::string version = require_string(j, "format_version");
  if (version != "1") schema_fail("unsupported format_version '" + version + "'");
  const std::string type = require_string(j, "type");

  SpecDocument doc;
  if (type == "chain")
    doc = parse_chain(j);
  else if (type == "undirected_chain")
    doc = parse_undirected(j);
  else if (type == "tree")
    doc = parse_tree(j);
  else if (type == "mmp")
    doc = parse_mmp(j);
  else
    schema_fail("unknown spec type '" + type + "'");

  doc.format_version = version;
  doc.type_tag = type;
  doc.hash = fnv1a_hex(text);
  return doc;
}

SpecDocument load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace mixbound

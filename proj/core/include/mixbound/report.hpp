#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixbound/mixing.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/spec_io.hpp"

namespace mixbound {

struct AnalyzeOptions {
  bool exact = false;  // add oracle values by enumeration
  std::size_t max_exact_states = kDefaultOracleCap;
  bool timing = true;
  std::vector<double> t_grid;  // defaults to 0:1:0.1 when empty
};

/// Per-family analysis carried into reports and the envelope command.
struct Analysis {
  std::size_t n = 0;
  std::vector<double> thetas;               // per step (chain/undirected/mmp)
  std::vector<double> theta_ratio_bounds;   // undirected only
  std::vector<double> edge_thetas;          // tree only
  double theta_max = 0.0;
  EtaMatrix eta_bound{1};
  std::optional<EtaMatrix> eta_exact;       // propagation (chain/undirected)
  std::optional<EtaMatrix> eta_oracle;      // enumeration, under --exact
  std::size_t oracle_excluded = 0;
  double delta_inf = 1.0;
  Gamma2Result gamma2;

  // Tree extras.
  std::optional<double> simple_theta_tilde;
  std::optional<double> simple_delta_bound;
  std::size_t tree_width = 0;
  std::size_t tree_depth = 0;
};

/// Runs the full bound pipeline for the document's family. The emitter
/// enforces exact <= bound + 1e-12 on every pair it reports.
Analysis analyze_process(const SpecDocument& doc, const AnalyzeOptions& opt);

/// Machine report document: stable key order, deterministic content
/// (except the optional timing block).
nlohmann::ordered_json report_to_json(const SpecDocument& doc, const Analysis& a,
                                      const AnalyzeOptions& opt);

/// Human-readable rendering of the same report.
std::string report_to_text(const nlohmann::ordered_json& report);

/// Envelope table for the analyzed spec over a t grid.
EnvelopeTable make_envelope_table(const Analysis& a, std::span<const double> ts,
                                  const std::string& which);

nlohmann::ordered_json envelope_to_json(const EnvelopeTable& table);
std::string envelope_to_text(const EnvelopeTable& table);

/// "a:b:c" -> {a, a+c, ..., up to b inclusive within 1e-9}.
std::vector<double> parse_t_grid(const std::string& text);

}  // namespace mixbound

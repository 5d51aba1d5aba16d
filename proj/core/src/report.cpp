#include "mixbound/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "mixbound/oracle.hpp"

namespace mixbound {

namespace {

using nlohmann::ordered_json;

std::vector<double> default_grid() {
  std::vector<double> ts;
  for (int k = 0; k <= 10; ++k) ts.push_back(0.1 * k);
  return ts;
}

void fill_pair_bounds(Analysis& a, const std::function<double(std::size_t, std::size_t)>& bound) {
  for (std::size_t i = 1; i < a.n; ++i)
    for (std::size_t j = i + 1; j <= a.n; ++j)
      a.eta_bound.set(i, j, bound(i, j), EtaProvenance::Bound);
}

void add_oracle(Analysis& a, const ProcessSpec& spec, std::size_t cap) {
  const JointTable table = enumerate_joint(spec, cap);
  EtaMatrix oracle(a.n);
  for (std::size_t i = 1; i < a.n; ++i)
    for (std::size_t j = i + 1; j <= a.n; ++j) {
      const auto r = exact_eta(table, i, j);
      oracle.set(i, j, r.value, EtaProvenance::Exact);
      a.oracle_excluded += r.excluded;
    }
  a.eta_oracle = std::move(oracle);
}

void analyze_chain_like(Analysis& a, const ChainSpec& chain) {
  a.n = chain.length();
  a.eta_bound = EtaMatrix(a.n);
  for (std::size_t i = 1; i < a.n; ++i) a.thetas.push_back(chain_theta(chain, i));
  a.theta_max = a.thetas.empty() ? 0.0 : *std::max_element(a.thetas.begin(), a.thetas.end());
  fill_pair_bounds(a, [&](std::size_t i, std::size_t j) { return chain_eta_bound(chain, i, j); });
  EtaMatrix exact(a.n);
  for (std::size_t i = 1; i < a.n; ++i)
    for (std::size_t j = i + 1; j <= a.n; ++j)
      exact.set(i, j, chain_eta_exact(chain, i, j), EtaProvenance::Exact);
  a.eta_exact = std::move(exact);
}

ordered_json eta_triplets(const EtaMatrix& m) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 1; i < m.n(); ++i)
    for (std::size_t j = i + 1; j <= m.n(); ++j)
      out.push_back(ordered_json::array({i, j, m.value(i, j)}));
  return out;
}

}  // namespace

Analysis analyze_process(const SpecDocument& doc, const AnalyzeOptions& opt) {
  Analysis a;
  a.n = process_length(doc.process);
  a.eta_bound = EtaMatrix(std::max<std::size_t>(a.n, 1));

  if (const auto* chain = std::get_if<ChainSpec>(&doc.process)) {
    analyze_chain_like(a, *chain);
  } else if (const auto* und = std::get_if<UndirectedChainSpec>(&doc.process)) {
    const ChainSpec derived = derive_kernels(*und);
    analyze_chain_like(a, derived);
    for (std::size_t i = 1; i < a.n; ++i)
      a.theta_ratio_bounds.push_back(undirected_theta_bound(*und, i));
  } else if (const auto* tree = std::get_if<TreeSpec>(&doc.process)) {
    a.n = tree->length();
    a.eta_bound = EtaMatrix(a.n);
    a.edge_thetas = tree->edge_thetas();
    a.theta_max = tree->theta_max();
    a.tree_width = tree->levels().width;
    a.tree_depth = tree->levels().depth;
    fill_pair_bounds(a, [&](std::size_t i, std::size_t j) {
      return tree_eta_bound_levels(*tree, static_cast<int>(i), static_cast<int>(j));
    });
    if (a.theta_max < 1.0 && a.n > 1) {
      const std::size_t width = std::max<std::size_t>(a.tree_width, 1);
      a.simple_theta_tilde = theta_tilde(a.theta_max, width);
      a.simple_delta_bound = tree_delta_bound(a.theta_max, width);
    }
  } else if (const auto* mmp = std::get_if<MmpSpec>(&doc.process)) {
    a.n = mmp->length();
    a.eta_bound = EtaMatrix(a.n);
    for (std::size_t i = 1; i < a.n; ++i) a.thetas.push_back(mmp_theta(*mmp, i));
    a.theta_max = a.thetas.empty() ? 0.0 : *std::max_element(a.thetas.begin(), a.thetas.end());
    fill_pair_bounds(a, [&](std::size_t i, std::size_t j) { return mmp_eta_bound(*mmp, i, j); });
  }

  if (opt.exact) add_oracle(a, doc.process, opt.max_exact_states);

  // Emitter invariant: every reported exact value stays within fp slack
  // of its bound.
  auto enforce = [&](const EtaMatrix& exact, const char* what) {
    for (std::size_t i = 1; i < a.n; ++i)
      for (std::size_t j = i + 1; j <= a.n; ++j)
        if (exact.value(i, j) > a.eta_bound.value(i, j) + kInternalTol)
          throw NumericError(std::string(what) + " eta(" + std::to_string(i) + "," +
                             std::to_string(j) + ") = " +
                             std::to_string(exact.value(i, j)) + " exceeds bound " +
                             std::to_string(a.eta_bound.value(i, j)));
  };
  if (a.eta_exact) enforce(*a.eta_exact, "exact");
  if (a.eta_oracle) enforce(*a.eta_oracle, "oracle");

  const MixingMatrices m = build_matrices(a.eta_bound);
  a.delta_inf = delta_inf_norm(m);
  a.gamma2 = gamma_2_norm(m);
  return a;
}

ordered_json report_to_json(const SpecDocument& doc, const Analysis& a,
                            const AnalyzeOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  ordered_json r;
  r["format_version"] = "1";
  r["spec_hash"] = doc.hash;
  r["type"] = doc.type_tag;
  r["n"] = a.n;

  if (const auto* mmp = std::get_if<MmpSpec>(&doc.process)) {
    r["obs_alphabet"] = mmp->obs_alphabet().labels();
    r["hid_alphabet"] = mmp->hid_alphabet().labels();
  } else {
    r["alphabet"] = process_alphabet(doc.process).labels();
  }

  if (!a.thetas.empty()) r["theta"] = a.thetas;
  if (!a.theta_ratio_bounds.empty()) r["theta_ratio_bound"] = a.theta_ratio_bounds;

  if (const auto* tree = std::get_if<TreeSpec>(&doc.process)) {
    ordered_json edges = ordered_json::array();
    for (const auto& [u, v] : tree->topology().edges)
      edges.push_back(ordered_json::array({u, v}));
    ordered_json tr;
    tr["edges"] = edges;
    tr["edge_theta"] = a.edge_thetas;
    tr["width"] = a.tree_width;
    tr["depth"] = a.tree_depth;
    tr["theta_max"] = a.theta_max;
    if (a.simple_theta_tilde) tr["theta_tilde"] = *a.simple_theta_tilde;
    if (a.simple_delta_bound) tr["delta_inf_dimension_free"] = *a.simple_delta_bound;
    if (doc.tree_renumbered) {
      tr["renumbered"] = true;
      ordered_json map = ordered_json::array();
      for (std::size_t v = 1; v < doc.tree_old_to_new.size(); ++v)
        map.push_back(doc.tree_old_to_new[v]);
      tr["old_to_new"] = map;
    }
    r["tree"] = tr;
  }

  r["eta_bound"] = eta_triplets(a.eta_bound);
  if (a.eta_exact) r["eta_exact"] = eta_triplets(*a.eta_exact);
  if (a.eta_oracle) {
    r["eta_oracle"] = eta_triplets(*a.eta_oracle);
    r["oracle_excluded_conditionings"] = a.oracle_excluded;
  }

  r["delta_inf"] = a.delta_inf;
  r["gamma2"] = ordered_json{{"value", a.gamma2.value},
                             {"gershgorin_upper", a.gamma2.gershgorin_upper},
                             {"converged", a.gamma2.converged},
                             {"iterations", a.gamma2.iterations}};

  const auto ts = opt.t_grid.empty() ? default_grid() : opt.t_grid;
  const EnvelopeTable env = make_envelope_table(a, ts, "all");
  ordered_json envelopes;
  envelopes["t"] = env.ts;
  for (const auto& col : env.columns) envelopes[col.name] = col.raw;
  r["envelopes"] = envelopes;

  if (opt.timing) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - started);
    r["timing"] = ordered_json{{"emit_us", elapsed.count()}};
  }
  return r;
}

std::string report_to_text(const ordered_json& report) {
  std::ostringstream out;
  out << "mixbound report\n";
  out << "  type: " << report.at("type").get<std::string>() << "\n";
  out << "  n: " << report.at("n").get<std::size_t>() << "\n";
  out << "  spec_hash: " << report.at("spec_hash").get<std::string>() << "\n";
  if (report.contains("theta")) {
    out << "  theta:";
    for (const auto& v : report.at("theta")) out << " " << v.get<double>();
    out << "\n";
  }
  if (report.contains("theta_ratio_bound")) {
    out << "  theta ratio bound:";
    for (const auto& v : report.at("theta_ratio_bound")) out << " " << v.get<double>();
    out << "\n";
  }
  if (report.contains("tree")) {
    const auto& tr = report.at("tree");
    out << "  tree: width " << tr.at("width").get<std::size_t>() << ", depth "
        << tr.at("depth").get<std::size_t>() << ", theta_max "
        << tr.at("theta_max").get<double>() << "\n";
    if (tr.contains("delta_inf_dimension_free"))
      out << "  dimension-free delta bound: "
          << tr.at("delta_inf_dimension_free").get<double>() << "\n";
  }
  auto print_eta = [&](const char* key, const char* label) {
    if (!report.contains(key)) return;
    out << "  " << label << ":\n";
    for (const auto& triple : report.at(key)) {
      char buf[80];
      std::snprintf(buf, sizeof(buf), "    (%zu,%zu) %.12g",
                    triple[0].get<std::size_t>(), triple[1].get<std::size_t>(),
                    triple[2].get<double>());
      out << buf << "\n";
    }
  };
  print_eta("eta_bound", "eta bounds");
  print_eta("eta_exact", "eta exact");
  print_eta("eta_oracle", "eta oracle");
  out << "  ||Delta||_inf = " << report.at("delta_inf").get<double>() << "\n";
  const auto& g = report.at("gamma2");
  out << "  ||Gamma||_2 = " << g.at("value").get<double>() << " (Gershgorin upper "
      << g.at("gershgorin_upper").get<double>() << ")\n";
  if (report.contains("envelopes")) {
    const auto& env = report.at("envelopes");
    EnvelopeTable table;
    table.ts = env.at("t").get<std::vector<double>>();
    for (const auto& [key, value] : env.items()) {
      if (key == "t") continue;
      table.columns.push_back({key, value.get<std::vector<double>>()});
    }
    out << "  envelopes (raw; >= 1 is vacuous):\n";
    std::istringstream lines(envelope_to_text(table));
    std::string line;
    while (std::getline(lines, line)) out << "    " << line << "\n";
  }
  return out.str();
}

EnvelopeTable make_envelope_table(const Analysis& a, std::span<const double> ts,
                                  const std::string& which) {
  EnvelopeTable table;
  table.ts.assign(ts.begin(), ts.end());
  const bool all = which == "all";

  auto add = [&](const std::string& name, const std::function<double(double)>& f) {
    EnvelopeColumn col;
    col.name = name;
    for (double t : ts) col.raw.push_back(f(t));
    table.columns.push_back(std::move(col));
  };

  if (all || which == "mcdiarmid")
    add("mcdiarmid", [&](double t) { return envelope_mcdiarmid(t, a.n); });
  if (which == "marton" || (all && a.theta_max < 1.0))
    add("marton", [&](double t) { return envelope_marton(t, a.n, a.theta_max); });
  if (all || which == "samson")
    add("samson", [&](double t) { return envelope_samson(t, a.gamma2.value); });
  if (all || which == "kontram")
    add("kontram", [&](double t) { return envelope_kontram(t, a.delta_inf); });
  if (table.columns.empty())
    throw SchemaError("unknown envelope selection '" + which + "'");
  return table;
}

ordered_json envelope_to_json(const EnvelopeTable& table) {
  ordered_json out;
  out["t"] = table.ts;
  for (const auto& col : table.columns) {
    ordered_json c;
    c["raw"] = col.raw;
    ordered_json capped = ordered_json::array();
    ordered_json vacuous = ordered_json::array();
    for (double v : col.raw) {
      capped.push_back(std::min(v, 1.0));
      vacuous.push_back(v >= 1.0);
    }
    c["capped"] = capped;
    c["vacuous"] = vacuous;
    out[col.name] = c;
  }
  return out;
}

std::string envelope_to_text(const EnvelopeTable& table) {
  std::ostringstream out;
  out << std::left;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-10s", "t");
  out << buf;
  for (const auto& col : table.columns) {
    std::snprintf(buf, sizeof(buf), "%-16s", col.name.c_str());
    out << buf;
  }
  out << "\n";
  for (std::size_t r = 0; r < table.ts.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "%-10.4g", table.ts[r]);
    out << buf;
    for (const auto& col : table.columns) {
      const double v = col.raw[r];
      if (v >= 1.0)
        std::snprintf(buf, sizeof(buf), "%-16s", "vacuous");
      else
        std::snprintf(buf, sizeof(buf), "%-16.6g", v);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<double> parse_t_grid(const std::string& text) {
  double a = 0.0, b = 0.0, c = 0.0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &c, &extra) != 3)
    throw SchemaError("malformed t-grid '" + text + "', expected start:stop:step");
  if (c <= 0.0 || b < a) throw SchemaError("t-grid needs stop >= start and step > 0");
  std::vector<double> ts;
  for (double t = a; t <= b + 1e-9; t += c) ts.push_back(t);
  return ts;
}

}  // namespace mixbound

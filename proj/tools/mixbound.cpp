#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mixbound/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"eta-mixing bounds and concentration envelopes for finite-alphabet "
               "Markov-type processes"};
  app.require_subcommand(1);

  std::string specfile;

  mixbound::AnalyzeFlags analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "full bound report for a spec");
  cmd_analyze->add_option("spec", specfile, "spec JSON file")->required();
  cmd_analyze->add_flag("--exact", analyze.exact, "add oracle values by enumeration");
  cmd_analyze->add_option("--max-exact-states", analyze.max_exact_states,
                          "state-space cap for --exact");
  cmd_analyze->add_option("--t-grid", analyze.t_grid, "envelope grid start:stop:step");
  cmd_analyze->add_option("--out", analyze.output.out, "write to file");
  cmd_analyze->add_option("--format", analyze.output.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));
  bool no_timing = false;
  cmd_analyze->add_flag("--no-timing", no_timing, "omit the timing block");

  mixbound::VerifyFlags verify;
  auto* cmd_verify = app.add_subcommand("verify", "property suite for a spec family");
  cmd_verify->add_option("spec", specfile, "spec JSON file")->required();
  cmd_verify->add_option("--trials", verify.trials, "randomized trials");
  cmd_verify->add_option("--seed", verify.seed, "suite seed");
  cmd_verify->add_option("--envelope-count", verify.envelope_count,
                         "trajectories for the envelope check");
  cmd_verify->add_option("--out", verify.output.out, "write to file");
  cmd_verify->add_option("--format", verify.output.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd_verify->add_flag("--negate-bound", verify.negate_bound)->group("");

  mixbound::EnvelopeFlags envelope;
  auto* cmd_envelope = app.add_subcommand("envelope", "tabulate the tail envelopes");
  cmd_envelope->add_option("spec", specfile, "spec JSON file")->required();
  cmd_envelope->add_option("--t-grid", envelope.t_grid, "grid start:stop:step");
  cmd_envelope->add_option("--which", envelope.which,
                           "mcdiarmid|marton|samson|kontram|all");
  cmd_envelope->add_option("--out", envelope.output.out, "write to file");
  cmd_envelope->add_option("--format", envelope.output.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));

  mixbound::SampleFlags sample;
  auto* cmd_sample = app.add_subcommand("sample", "draw trajectories from a spec");
  cmd_sample->add_option("spec", specfile, "spec JSON file")->required();
  cmd_sample->add_option("--seed", sample.seed, "sampling seed");
  cmd_sample->add_option("--trials", sample.trials, "number of trajectories");
  cmd_sample->add_option("--out", sample.output.out, "write to file");
  cmd_sample->add_option("--format", sample.output.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));

  CLI11_PARSE(app, argc, argv);

  if (cmd_analyze->parsed()) {
    analyze.timing = !no_timing;
    return mixbound::cmd_analyze(specfile, analyze, std::cout, std::cerr);
  }
  if (cmd_verify->parsed())
    return mixbound::cmd_verify(specfile, verify, std::cout, std::cerr);
  if (cmd_envelope->parsed())
    return mixbound::cmd_envelope(specfile, envelope, std::cout, std::cerr);
  if (cmd_sample->parsed())
    return mixbound::cmd_sample(specfile, sample, std::cout, std::cerr);
  return 0;
}

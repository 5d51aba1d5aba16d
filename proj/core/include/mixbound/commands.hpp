#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mixbound/report.hpp"

namespace mixbound {

// Process exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitNumeric = 4;

struct OutputFlags {
  std::string out;             // empty = stdout
  std::string format = "text";  // text | machine
};

struct AnalyzeFlags {
  OutputFlags output;
  bool exact = false;
  std::size_t max_exact_states = kDefaultOracleCap;
  bool timing = true;
  std::string t_grid;  // optional start:stop:step
};

struct VerifyFlags {
  OutputFlags output;
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  bool negate_bound = false;  // self-test hook: invert dominance checks
  std::size_t envelope_count = 20000;
};

struct EnvelopeFlags {
  OutputFlags output;
  std::string t_grid = "0:1:0.1";
  std::string which = "all";
};

struct SampleFlags {
  OutputFlags output;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
};

int cmd_analyze(const std::string& specfile, const AnalyzeFlags& flags,
                std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& specfile, const VerifyFlags& flags,
               std::ostream& out, std::ostream& err);
int cmd_envelope(const std::string& specfile, const EnvelopeFlags& flags,
                 std::ostream& out, std::ostream& err);
int cmd_sample(const std::string& specfile, const SampleFlags& flags,
               std::ostream& out, std::ostream& err);

}  // namespace mixbound

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpc/session.hpp"

namespace qpc::cli {

enum class Command { Run, Sweep, Verify };
enum class OutputFormat { Json, Csv, Table };

struct RunSpec {
  Command command = Command::Run;
  SessionConfig config{};
  // sweep value lists; empty means "not swept"
  std::vector<int> sweep_users;
  std::vector<int> sweep_bits;
  std::vector<int> sweep_decoys;
  bool decoys_given = false;  // sweep combos default d = L when false
  OutputFormat format = OutputFormat::Table;
  std::optional<std::string> output_path;
  bool dump_transcript = false;

  bool operator==(const RunSpec&) const = default;
};

// Parses argv (program name excluded). Throws CLI::ParseError on any usage
// problem; run_cli maps those to exit code 2.
RunSpec parse_args(const std::vector<std::string>& args);

// 0 success (including expected adversarial aborts), 1 on an abort without an
// adversary or on I/O failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

// Exit code for a finished run: an abort with no adversary configured points
// at a defect, everything else is success.
int exit_status_for(const SessionConfig& config, const TrialAggregate& aggregate);

}  // namespace qpc::cli

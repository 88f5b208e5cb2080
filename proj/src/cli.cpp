#include "qpc/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpc/protocol.hpp"
#include "qpc/report_io.hpp"
#include "qpc/selfcheck.hpp"

namespace qpc::cli {
namespace {

// Raw option storage; finalize() turns this into a validated RunSpec.
// Sentinels: decoys -1 means "match --bits", actor/target -1 mean unset.
struct Bindings {
  int users = 2;
  int bits = 8;
  int decoys = -1;
  AdversaryKind adversary = AdversaryKind::None;
  BasisPolicy policy = BasisPolicy::RandomZOrX;
  int actor = -1;
  int target = -1;
  std::uint64_t seed = 0;
  int trials = 1;
  std::vector<std::string> secrets;
  std::vector<int> sweep_users;
  std::vector<int> sweep_bits;
  std::vector<int> sweep_decoys;
  OutputFormat format = OutputFormat::Table;
  std::string output;
  bool dump_transcript = false;
};

const std::map<std::string, AdversaryKind>& adversary_names() {
  static const std::map<std::string, AdversaryKind> names{
      {"none", AdversaryKind::None},
      {"intercept-resend", AdversaryKind::InterceptResend},
      {"measure-resend", AdversaryKind::MeasureResend},
      {"dishonest-user", AdversaryKind::DishonestUser},
  };
  return names;
}

const std::map<std::string, BasisPolicy>& policy_names() {
  static const std::map<std::string, BasisPolicy> names{
      {"random", BasisPolicy::RandomZOrX},
      {"z", BasisPolicy::AlwaysZ},
      {"x", BasisPolicy::AlwaysX},
  };
  return names;
}

const std::map<std::string, OutputFormat>& format_names() {
  static const std::map<std::string, OutputFormat> names{
      {"json", OutputFormat::Json},
      {"csv", OutputFormat::Csv},
      {"table", OutputFormat::Table},
  };
  return names;
}

void add_shared_options(CLI::App* cmd, Bindings& b) {
  cmd->add_option("--adversary", b.adversary, "channel attack to simulate")
      ->transform(CLI::CheckedTransformer(adversary_names(), CLI::ignore_case))
      ->default_str("none");
  cmd->add_option("--basis-policy", b.policy,
                  "measurement basis the attacker uses on tapped particles")
      ->transform(CLI::CheckedTransformer(policy_names(), CLI::ignore_case))
      ->default_str("random");
  cmd->add_option("--actor", b.actor,
                  "which user (1-based) plays dishonest; requires --adversary dishonest-user")
      ->check(CLI::Range(1, 4096));
  cmd->add_option("--target", b.target,
                  "which user's (1-based) channel to TP gets attacked")
      ->check(CLI::Range(1, 4096));
  cmd->add_option("--seed", b.seed, "root seed; every trial derives from it")
      ->envname("QPC_SIM_SEED");
  cmd->add_option("--trials", b.trials, "independent protocol runs")
      ->check(CLI::Range(1, 100000000));
  cmd->add_option("--format", b.format, "output format: json, csv or table")
      ->transform(CLI::CheckedTransformer(format_names(), CLI::ignore_case))
      ->default_str("table");
  cmd->add_option("--output", b.output, "write the report to a file instead of stdout");
}

std::unique_ptr<CLI::App> build_app(Bindings& b) {
  auto app = std::make_unique<CLI::App>(
      "simulator for the multi-user quantum private comparison protocol");
  app->name("qpc_sim");
  app->require_subcommand(1);

  CLI::App* run = app->add_subcommand("run", "run one configuration");
  run->add_option("--users,-K", b.users, "number of comparing users")
      ->check(CLI::Range(2, 4096));
  run->add_option("--bits,-L", b.bits, "secret length in bits")
      ->check(CLI::Range(1, 65536));
  run->add_option("--decoys", b.decoys, "decoy photons per channel (default: --bits)")
      ->check(CLI::Range(0, 65536));
  run->add_option("--secret", b.secrets,
                  "fixed secret per user as 0b... or 0x...; give exactly --users of them")
      ->take_all();
  run->add_flag("--dump-transcript", b.dump_transcript,
                "include the full message transcript in json output");
  add_shared_options(run, b);

  CLI::App* sweep = app->add_subcommand(
      "sweep", "run a grid of configurations; at least one list required");
  sweep->add_option("--users", b.sweep_users, "comma list of user counts")
      ->delimiter(',')
      ->check(CLI::Range(2, 4096));
  sweep->add_option("--bits", b.sweep_bits, "comma list of secret lengths")
      ->delimiter(',')
      ->check(CLI::Range(1, 65536));
  sweep->add_option("--decoys", b.sweep_decoys,
                    "comma list of decoy counts (default: match bits)")
      ->delimiter(',')
      ->check(CLI::Range(0, 65536));
  add_shared_options(sweep, b);

  app->add_subcommand("verify", "run the built-in invariant checks and exit");

  return app;
}

RunSpec finalize(const Bindings& b, const CLI::App& app) {
  RunSpec spec;
  if (app.got_subcommand("verify")) {
    spec.command = Command::Verify;
    return spec;
  }

  spec.command = app.got_subcommand("sweep") ? Command::Sweep : Command::Run;
  spec.format = b.format;
  if (!b.output.empty()) spec.output_path = b.output;
  spec.dump_transcript = b.dump_transcript;

  SessionConfig& config = spec.config;
  config.seed = b.seed;
  config.trials = b.trials;

  AdversaryModel& model = config.adversary;
  model.kind = b.adversary;
  model.basis_policy = b.policy;
  if (b.actor != -1) {
    if (model.kind != AdversaryKind::DishonestUser)
      throw CLI::ValidationError("--actor only applies to --adversary dishonest-user");
    model.actor = b.actor - 1;
  } else if (model.kind == AdversaryKind::DishonestUser) {
    throw CLI::ValidationError("--adversary dishonest-user requires --actor");
  }
  if (b.target != -1) {
    if (!model.present())
      throw CLI::ValidationError("--target requires an adversary");
    model.target_user = b.target - 1;
  }

  if (spec.command == Command::Sweep) {
    if (b.sweep_users.empty() && b.sweep_bits.empty() && b.sweep_decoys.empty())
      throw CLI::ValidationError(
          "sweep needs at least one of --users, --bits, --decoys");
    spec.sweep_users = b.sweep_users;
    spec.sweep_bits = b.sweep_bits;
    spec.sweep_decoys = b.sweep_decoys;
    spec.decoys_given = !b.sweep_decoys.empty();
    int min_users = spec.sweep_users.empty()
                        ? config.users
                        : *std::min_element(spec.sweep_users.begin(),
                                            spec.sweep_users.end());
    if (model.kind == AdversaryKind::DishonestUser && model.actor >= min_users)
      throw CLI::ValidationError("--actor exceeds the smallest swept user count");
    if (model.target_user && *model.target_user >= min_users)
      throw CLI::ValidationError("--target exceeds the smallest swept user count");
    return spec;
  }

  config.users = b.users;
  config.bits = b.bits;
  config.decoys = b.decoys < 0 ? b.bits : b.decoys;
  spec.decoys_given = b.decoys >= 0;

  if (!b.secrets.empty()) {
    if (static_cast<int>(b.secrets.size()) != config.users) {
      std::ostringstream msg;
      msg << "--secret given " << b.secrets.size() << " times, need exactly "
          << config.users;
      throw CLI::ValidationError(msg.str());
    }
    std::vector<Secret> parsed;
    parsed.reserve(b.secrets.size());
    for (const std::string& literal : b.secrets) {
      try {
        parsed.push_back(parse_secret_literal(literal, config.bits));
      } catch (const std::invalid_argument& err) {
        throw CLI::ValidationError(err.what());
      }
    }
    config.secrets = std::move(parsed);
  }

  try {
    config.validate();
  } catch (const std::invalid_argument& err) {
    throw CLI::ValidationError(err.what());
  }
  return spec;
}

std::string format_digest(std::uint64_t value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

// 0 on success, 1 when the target file cannot be written.
int emit_payload(const std::optional<std::string>& path, const std::string& payload) {
  if (!path) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << *path << " for writing\n";
    return 1;
  }
  out << payload;
  out.close();
  if (!out) {
    std::cerr << "error: failed writing " << *path << '\n';
    return 1;
  }
  return 0;
}

int execute_run(const RunSpec& spec) {
  TrialsResult result = run_trials(spec.config);
  std::ostringstream os;
  switch (spec.format) {
    case OutputFormat::Json:
      os << render_run_json(spec.config, result, spec.dump_transcript);
      break;
    case OutputFormat::Csv:
      write_run_csv(os, spec.config, result);
      break;
    case OutputFormat::Table:
      write_run_table(os, spec.config, result);
      break;
  }
  if (int io = emit_payload(spec.output_path, os.str()); io != 0) return io;
  return exit_status_for(spec.config, result.aggregate);
}

struct SweepCell {
  SessionConfig config;
  TrialsResult result;
};

std::vector<SweepCell> collect_sweep(const RunSpec& spec) {
  std::vector<int> users = spec.sweep_users.empty()
                               ? std::vector<int>{spec.config.users}
                               : spec.sweep_users;
  std::vector<int> bits = spec.sweep_bits.empty()
                              ? std::vector<int>{spec.config.bits}
                              : spec.sweep_bits;
  std::vector<SweepCell> cells;
  for (int k : users) {
    for (int l : bits) {
      std::vector<int> decoys =
          spec.decoys_given ? spec.sweep_decoys : std::vector<int>{l};
      for (int d : decoys) {
        SessionConfig config = spec.config;
        config.users = k;
        config.bits = l;
        config.decoys = d;
        config.validate();
        cells.push_back({config, run_trials(config)});
      }
    }
  }
  return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << "users,bits,decoys,trial,i,j,verdict,aborted,detection\n";
  for (const SweepCell& cell : cells) {
    bool adversarial = cell.config.adversary.present();
    for (const PairRow& row : cell.result.rows) {
      out << cell.config.users << ',' << cell.config.bits << ','
          << cell.config.decoys << ',' << row.trial << ',' << row.user_i + 1
          << ',' << row.user_j + 1 << ',' << pair_verdict_name(row.verdict) << ','
          << (row.aborted ? 1 : 0) << ','
          << (row.aborted && adversarial ? 1 : 0) << '\n';
    }
  }
}

void write_sweep_table(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << std::setw(6) << "users" << std::setw(6) << "bits" << std::setw(8)
      << "decoys" << std::setw(8) << "trials" << std::setw(8) << "aborts"
      << std::setw(11) << "detection" << std::setw(7) << "equal"
      << std::setw(9) << "unequal" << '\n';
  for (const SweepCell& cell : cells) {
    const TrialAggregate& agg = cell.result.aggregate;
    out << std::setw(6) << cell.config.users << std::setw(6)
        << cell.config.bits << std::setw(8) << cell.config.decoys
        << std::setw(8) << agg.trials << std::setw(8) << agg.aborts
        << std::setw(11) << std::fixed << std::setprecision(4)
        << agg.detection_rate << std::setw(7) << agg.equal_pairs
        << std::setw(9) << agg.unequal_pairs << '\n';
    out.unsetf(std::ios::fixed);
  }
}

std::string render_sweep_json(const RunSpec& spec,
                              const std::vector<SweepCell>& cells) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["sweep"]["users"] = spec.sweep_users;
  doc["sweep"]["bits"] = spec.sweep_bits;
  doc["sweep"]["decoys"] = spec.sweep_decoys;
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepCell& cell : cells) {
    const TrialAggregate& agg = cell.result.aggregate;
    nlohmann::json row;
    row["config"] = config_to_json(cell.config);
    row["trials"] = agg.trials;
    row["aborts"] = agg.aborts;
    row["detection_rate"] = agg.detection_rate;
    row["oracle_disagreements"] = agg.oracle_disagreements;
    row["pair_verdicts"] = {{"equal", agg.equal_pairs},
                            {"unequal", agg.unequal_pairs},
                            {"aborted", agg.aborted_pairs}};
    Ratio eff = qubit_efficiency(cell.config.users, cell.config.bits);
    row["qubit_efficiency"] = {{"num", eff.num}, {"den", eff.den}};
    row["trials_digest"] = format_digest(agg.combined_digest);
    rows.push_back(std::move(row));
  }
  doc["results"] = std::move(rows);
  return doc.dump(2) + "\n";
}

int execute_sweep(const RunSpec& spec) {
  std::vector<SweepCell> cells = collect_sweep(spec);
  std::ostringstream os;
  switch (spec.format) {
    case OutputFormat::Json:
      os << render_sweep_json(spec, cells);
      break;
    case OutputFormat::Csv:
      write_sweep_csv(os, cells);
      break;
    case OutputFormat::Table:
      write_sweep_table(os, cells);
      break;
  }
  if (int io = emit_payload(spec.output_path, os.str()); io != 0) return io;
  for (const SweepCell& cell : cells) {
    if (exit_status_for(cell.config, cell.result.aggregate) != 0) return 1;
  }
  return 0;
}

int execute_verify() {
  std::vector<CheckResult> checks = run_invariant_checks();
  bool all_passed = true;
  for (const CheckResult& check : checks) {
    std::cout << check.name << ": " << (check.passed ? "PASS" : "FAIL");
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << '\n';
    all_passed = all_passed && check.passed;
  }
  return all_passed ? 0 : 1;
}

int execute(const RunSpec& spec) {
  switch (spec.command) {
    case Command::Run:
      return execute_run(spec);
    case Command::Sweep:
      return execute_sweep(spec);
    case Command::Verify:
      return execute_verify();
  }
  return 2;
}

}  // namespace

RunSpec parse_args(const std::vector<std::string>& args) {
  Bindings bindings;
  auto app = build_app(bindings);
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qpc_sim");
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  app->parse(static_cast<int>(argv.size()), argv.data());
  return finalize(bindings, *app);
}

int exit_status_for(const SessionConfig& config, const TrialAggregate& aggregate) {
  if (aggregate.aborts > 0 && !config.adversary.present()) return 1;
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  Bindings bindings;
  auto app = build_app(bindings);
  RunSpec spec;
  try {
    app->parse(argc, argv);
    spec = finalize(bindings, *app);
  } catch (const CLI::ParseError& err) {
    int code = app->exit(err);
    return code == 0 ? 0 : 2;
  }
  try {
    return execute(spec);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}

}  // namespace qpc::cli

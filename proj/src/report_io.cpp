#include "qpc/report_io.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qpc {
namespace {

std::string adversary_kind_name(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::None: return "none";
    case AdversaryKind::InterceptResend: return "intercept-resend";
    case AdversaryKind::MeasureResend: return "measure-resend";
    case AdversaryKind::DishonestUser: return "dishonest-user";
  }
  return "none";
}

AdversaryKind adversary_kind_from(const std::string& name) {
  if (name == "none") return AdversaryKind::None;
  if (name == "intercept-resend") return AdversaryKind::InterceptResend;
  if (name == "measure-resend") return AdversaryKind::MeasureResend;
  if (name == "dishonest-user") return AdversaryKind::DishonestUser;
  throw std::invalid_argument("unknown adversary kind: " + name);
}

std::string basis_policy_name(BasisPolicy policy) {
  switch (policy) {
    case BasisPolicy::RandomZOrX: return "random";
    case BasisPolicy::AlwaysZ: return "z";
    case BasisPolicy::AlwaysX: return "x";
  }
  return "random";
}

BasisPolicy basis_policy_from(const std::string& name) {
  if (name == "random") return BasisPolicy::RandomZOrX;
  if (name == "z") return BasisPolicy::AlwaysZ;
  if (name == "x") return BasisPolicy::AlwaysX;
  throw std::invalid_argument("unknown basis policy: " + name);
}

std::string mode_id_string(ModeId id) {
  switch (id) {
    case ModeId::A: return "a";
    case ModeId::B: return "b";
    case ModeId::C: return "c";
    case ModeId::D1: return "d1";
    case ModeId::D2: return "d2";
    case ModeId::E: return "e";
    case ModeId::F: return "f";
    case ModeId::G: return "g";
    case ModeId::H: return "h";
    case ModeId::Unclassified: return "unclassified";
  }
  return "unclassified";
}

nlohmann::json ratio_to_json(const Ratio& r) {
  return {{"num", r.num}, {"den", r.den}};
}

std::string shape_display(TransmissionShape s) {
  switch (s) {
    case TransmissionShape::Circled: return "circled";
    case TransmissionShape::OneWayDivergent: return "one-way divergent";
    case TransmissionShape::BidirectionalDivergent: return "bidirectional divergent";
    case TransmissionShape::Bidirectional: return "bidirectional";
    case TransmissionShape::OneWayConvergent: return "one-way convergent";
    case TransmissionShape::Hybrid: return "hybrid";
    case TransmissionShape::OneWay: return "one-way";
    case TransmissionShape::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

nlohmann::json config_to_json(const SessionConfig& config) {
  nlohmann::json adv = {
      {"kind", adversary_kind_name(config.adversary.kind)},
      {"basis_policy", basis_policy_name(config.adversary.basis_policy)},
      {"actor", config.adversary.actor},
  };
  if (config.adversary.target_user)
    adv["target"] = *config.adversary.target_user;
  else
    adv["target"] = nullptr;

  nlohmann::json j = {
      {"users", config.users},   {"bits", config.bits}, {"decoys", config.decoys},
      {"adversary", adv},        {"seed", config.seed}, {"trials", config.trials},
  };
  if (config.secrets) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Secret& s : *config.secrets) arr.push_back(s.to_binary_literal());
    j["secrets"] = arr;
  } else {
    j["secrets"] = nullptr;
  }
  return j;
}

SessionConfig config_from_json(const nlohmann::json& j) {
  SessionConfig config;
  config.users = j.at("users").get<int>();
  config.bits = j.at("bits").get<int>();
  config.decoys = j.at("decoys").get<int>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.trials = j.at("trials").get<int>();

  const nlohmann::json& adv = j.at("adversary");
  config.adversary.kind = adversary_kind_from(adv.at("kind").get<std::string>());
  config.adversary.basis_policy =
      basis_policy_from(adv.at("basis_policy").get<std::string>());
  config.adversary.actor = adv.at("actor").get<int>();
  if (adv.contains("target") && !adv.at("target").is_null())
    config.adversary.target_user = adv.at("target").get<int>();

  if (j.contains("secrets") && !j.at("secrets").is_null()) {
    std::vector<Secret> secrets;
    for (const auto& s : j.at("secrets"))
      secrets.push_back(parse_secret_literal(s.get<std::string>(), config.bits));
    config.secrets = std::move(secrets);
  }
  return config;
}

nlohmann::json matrix_to_json(const ComparisonMatrix& matrix) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < matrix.user_count(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < matrix.user_count(); ++j)
      row.push_back(std::string(pair_verdict_name(matrix.at(i, j))));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json mode_to_json(const ModeDescriptor& mode) {
  return {
      {"id", mode_id_string(mode.id)},
      {"label", std::string(mode.label)},
      {"name", std::string(mode.name)},
      {"preparers", std::string(preparer_set_name(mode.preparers))},
      {"shape", std::string(transmission_shape_name(mode.shape))},
      {"citations", mode.citations},
  };
}

nlohmann::json transcript_to_json(const Transcript& transcript) {
  nlohmann::json msgs = nlohmann::json::array();
  for (const Message& m : transcript.messages()) {
    nlohmann::json entry = {
        {"kind", std::string(message_kind_name(m.kind))},
        {"from", party_name(m.from)},
        {"to", party_name(m.to)},
        {"public", m.visibility.is_public},
        {"bits", m.bits},
        {"positions", m.positions},
        {"note", m.note},
    };
    if (!m.visibility.is_public) {
      nlohmann::json parties = nlohmann::json::array();
      for (PartyId p : m.visibility.parties) parties.push_back(party_name(p));
      entry["parties"] = parties;
    }
    msgs.push_back(entry);
  }
  return msgs;
}

nlohmann::json run_to_json(const SessionConfig& config, const TrialsResult& result,
                           bool dump_transcript) {
  const TrialAggregate& agg = result.aggregate;
  nlohmann::json metrics = {
      {"trials", agg.trials},
      {"aborts", agg.aborts},
      {"detection_rate", agg.detection_rate},
      {"oracle_disagreements", agg.oracle_disagreements},
      {"compared_bits", result.first.metrics.compared_bits},
      {"consumed_particles", result.first.metrics.consumed_particles},
      {"decoy_particles", result.first.metrics.decoy_particles},
      {"qubit_efficiency", ratio_to_json(result.first.metrics.efficiency)},
      {"qubit_efficiency_gross", ratio_to_json(result.first.metrics.efficiency_gross)},
      {"zero_decoy_coverage", result.first.metrics.zero_decoy_coverage},
      {"pair_verdicts",
       {{"equal", agg.equal_pairs}, {"unequal", agg.unequal_pairs}, {"aborted", agg.aborted_pairs}}},
      {"report_bit_ones", agg.report_bit_ones},
      {"reports_counted", agg.reports_counted},
  };

  nlohmann::json j = {
      {"schema_version", kSchemaVersion},
      {"config", config_to_json(config)},
      {"mode", mode_to_json(result.first.mode)},
      {"matrix", matrix_to_json(result.first.matrix)},
      {"metrics", metrics},
      {"transcript_digest", result.first.transcript.digest_hex()},
  };
  if (config.trials > 1) {
    char buf[8 + 16 + 1];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(agg.combined_digest));
    j["trials_digest"] = buf;
  }
  if (dump_transcript) j["transcript"] = transcript_to_json(result.first.transcript);
  return j;
}

std::string render_run_json(const SessionConfig& config, const TrialsResult& result,
                            bool dump_transcript) {
  return run_to_json(config, result, dump_transcript).dump(2) + "\n";
}

void write_run_csv(std::ostream& out, const SessionConfig& config,
                   const TrialsResult& result) {
  out << "trial,i,j,verdict,aborted,detection\n";
  const bool adversarial = config.adversary.present();
  for (const PairRow& row : result.rows) {
    out << row.trial << ',' << row.user_i + 1 << ',' << row.user_j + 1 << ','
        << pair_verdict_name(row.verdict) << ',' << (row.aborted ? 1 : 0) << ','
        << ((row.aborted && adversarial) ? 1 : 0) << '\n';
  }
}

std::string mode_display(const ModeDescriptor& mode) {
  const bool scattered = mode.preparers == PreparerSet::AllUsers ||
                         mode.preparers == PreparerSet::TpAndUsers;
  return std::string(scattered ? "scattered preparation" : "centralized preparation") +
         ", " + shape_display(mode.shape);
}

void write_run_table(std::ostream& out, const SessionConfig& config,
                     const TrialsResult& result) {
  const SessionMetrics& m = result.first.metrics;
  const TrialAggregate& agg = result.aggregate;

  out << "quantum private comparison summary\n";
  out << "mode: " << result.first.mode.label << ' ' << mode_display(result.first.mode)
      << '\n';
  out << "users (K): " << config.users << "   bits (L): " << config.bits
      << "   decoys per channel (d): " << config.decoys << '\n';
  out << "adversary: " << adversary_kind_name(config.adversary.kind);
  if (config.adversary.present()) {
    out << " [basis policy: " << basis_policy_name(config.adversary.basis_policy);
    if (config.adversary.kind == AdversaryKind::DishonestUser)
      out << ", actor: " << party_name(config.adversary.actor);
    if (config.adversary.target_user)
      out << ", target: " << party_name(*config.adversary.target_user);
    out << ']';
  }
  out << "   seed: " << config.seed << "   trials: " << config.trials << '\n';

  out << "matrix (trial 0):\n";
  constexpr int w = 10;
  out << std::setw(w) << ' ';
  for (int j = 0; j < config.users; ++j) out << std::setw(w) << party_name(j);
  out << '\n';
  for (int i = 0; i < config.users; ++i) {
    out << std::setw(w) << party_name(i);
    for (int j = 0; j < config.users; ++j) {
      const PairVerdict v = result.first.matrix.at(i, j);
      out << std::setw(w) << (v == PairVerdict::SelfCell ? "-" : pair_verdict_name(v));
    }
    out << '\n';
  }

  out << "compared bits (c): " << m.compared_bits
      << "   carrier particles (t): " << m.consumed_particles
      << "   decoys: " << m.decoy_particles;
  if (m.zero_decoy_coverage) out << " [zero coverage]";
  out << '\n';
  out << "qubit efficiency: " << m.efficiency.num << '/' << m.efficiency.den << " (gross "
      << m.efficiency_gross.num << '/' << m.efficiency_gross.den << ")\n";
  out << "aborts: " << agg.aborts << '/' << agg.trials << "   detection rate: "
      << std::fixed << std::setprecision(4) << agg.detection_rate << '\n';
  out.unsetf(std::ios::fixed);
  out << std::setprecision(6);
  out << "oracle disagreements: " << agg.oracle_disagreements << '\n';
  out << "transcript digest: " << result.first.transcript.digest_hex() << '\n';
}

}  // namespace qpc

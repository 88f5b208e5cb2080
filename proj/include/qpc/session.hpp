#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qpc/channel.hpp"
#include "qpc/protocol.hpp"
#include "qpc/transcript.hpp"

namespace qpc {

struct SessionConfig {
  int users = 2;   // K
  int bits = 8;    // L
  int decoys = 8;  // d per channel
  AdversaryModel adversary{};
  std::uint64_t seed = 0;
  int trials = 1;
  std::optional<std::vector<Secret>> secrets;  // drawn per trial when absent

  void validate() const;  // throws std::invalid_argument
};

enum class PairVerdict { SelfCell, Equal, Unequal, Aborted, NotCompared };
std::string_view pair_verdict_name(PairVerdict v);

class ComparisonMatrix {
 public:
  explicit ComparisonMatrix(int user_count);

  int user_count() const { return user_count_; }
  PairVerdict at(int i, int j) const;
  void set_pair(int i, int j, PairVerdict verdict);  // symmetric, i != j
  void abort_all();

  bool operator==(const ComparisonMatrix&) const = default;

 private:
  int user_count_;
  std::vector<PairVerdict> cells_;
};

struct Ratio {
  long long num = 0;
  long long den = 1;
  static Ratio reduced(long long num, long long den);
  bool operator==(const Ratio&) const = default;
};

// Compared bits over consumed carrier particles: L / 2KL, i.e. 1/(2K).
// Decoys and the key layer are excluded from this figure.
Ratio qubit_efficiency(int users, int bits);

struct SessionMetrics {
  int compared_bits = 0;             // c = L
  long long consumed_particles = 0;  // t = 2KL carrier particles
  long long decoy_particles = 0;     // K * d, tracked separately
  Ratio efficiency;                  // c / t
  Ratio efficiency_gross;            // c / (t + decoys)
  bool aborted = false;
  bool zero_decoy_coverage = false;  // d == 0: checks ran vacuously
  int equal_pairs = 0;
  int unequal_pairs = 0;
  int aborted_pairs = 0;
};

// The eight preparation/transmission shapes of the comparison-protocol
// literature. Only mode (e) is executable here; the others exist so a role
// graph can be classified against the full taxonomy.
enum class ModeId { A, B, C, D1, D2, E, F, G, H, Unclassified };
enum class PreparerSet { TpOnly, SingleUser, AllUsers, TpAndUsers };
enum class TransmissionShape {
  Circled,
  OneWayDivergent,
  BidirectionalDivergent,
  Bidirectional,
  OneWayConvergent,
  Hybrid,
  OneWay,
  Unknown,
};

struct ModeDescriptor {
  ModeId id = ModeId::Unclassified;
  std::string_view label;  // "(e)"
  std::string_view name;
  PreparerSet preparers = PreparerSet::AllUsers;
  TransmissionShape shape = TransmissionShape::Unknown;
  std::vector<int> citations;  // literature reference numbers
};

const std::vector<ModeDescriptor>& mode_catalog();
std::string_view mode_id_label(ModeId id);
std::string_view preparer_set_name(PreparerSet p);
std::string_view transmission_shape_name(TransmissionShape s);

// Who prepares carriers and which directed quantum transmissions occur.
struct RoleGraph {
  bool tp_prepares = false;
  std::vector<int> preparing_users;
  std::vector<QuantumEdge> edges;
};

ModeDescriptor classify_mode(const RoleGraph& graph);
RoleGraph role_graph_from(const Transcript& transcript);

struct SessionResult {
  ComparisonMatrix matrix;
  Transcript transcript;
  SessionMetrics metrics;
  std::vector<Secret> secrets_used;
  ModeDescriptor mode;
};

// One full protocol execution. Deterministic in (config, trial_index): all
// randomness comes from streams derived from (seed, trial, participant,
// purpose), so unrelated draws never perturb each other.
SessionResult run_session(const SessionConfig& config, int trial_index = 0);

struct PairRow {
  int trial;
  int user_i;  // 0-based
  int user_j;
  PairVerdict verdict;
  bool aborted;
};

struct TrialAggregate {
  int trials = 0;
  int aborts = 0;
  double detection_rate = 0.0;
  long long oracle_disagreements = 0;
  std::vector<long long> report_bit_ones;  // per position k over all reports
  long long reports_counted = 0;
  long long equal_pairs = 0;
  long long unequal_pairs = 0;
  long long aborted_pairs = 0;
  std::uint64_t combined_digest = 0;
};

struct TrialsResult {
  SessionResult first;  // trial 0, kept for reporting
  TrialAggregate aggregate;
  std::vector<PairRow> rows;  // one per (trial, unordered pair)
};

// Monte-Carlo driver: independent trials, each deterministic in its index;
// verdicts are checked against the classical equality oracle of the secrets
// actually used.
TrialsResult run_trials(const SessionConfig& config);

ComparisonMatrix classical_equality_matrix(const std::vector<Secret>& secrets);

}  // namespace qpc

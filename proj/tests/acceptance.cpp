// Acceptance suite: one line per criterion, exit code = number of failures.
// Statistical criteria run on fixed seeds, so a pass here is reproducible.

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpc/channel.hpp"
#include "qpc/protocol.hpp"
#include "qpc/qstate.hpp"
#include "qpc/report_io.hpp"
#include "qpc/rng.hpp"
#include "qpc/session.hpp"
#include "qpc/stats.hpp"

using namespace qpc;

namespace {

constexpr double kSigmas = 3.0;       // binomial acceptance window
constexpr double kZCritical = 3.2905; // two-sided 0.001 normal quantile
constexpr double kMinPValue = 0.001;  // per-stream uniformity threshold

int failures = 0;

void report(int n, const char* name, bool pass, const std::string& detail) {
  std::printf("[%d/9] %-22s %s (%s)\n", n, name, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

double force(int bit) { return bit == 0 ? 0.25 : 0.75; }

// Measured codes of one correlated pair per user, with forced branches.
struct ForcedPair {
  int home;
  int travel;
};

ForcedPair forced_pair(int branch) {
  std::vector<ParticlePair> pairs = prepare_sequence(1);
  ScriptedStream rng({force(branch)});
  int home = pairs[0].measure_home(rng);
  int travel = pairs[0].measure_travel(Basis::Z, rng).bit;
  return {home, travel};
}

void criterion_code_identity() {
  int checked = 0, good = 0;
  for (int bi : {0, 1}) {
    for (int bj : {0, 1}) {
      ForcedPair pi = forced_pair(bi);
      ForcedPair pj = forced_pair(bj);
      ++checked;
      bool branch_ok = pi.home == bi && pi.travel == bi && pj.home == bj &&
                       pj.travel == bj &&
                       (pi.home ^ pj.home ^ tp_code(pi.travel, pj.travel)) == 0;
      if (branch_ok) ++good;
    }
  }
  std::ostringstream d;
  d << good << "/" << checked << " joint branches cancel";
  report(1, "code-identity", good == checked && checked == 4, d.str());
}

void criterion_per_bit_recovery() {
  int checked = 0, good = 0;
  for (int gi : {0, 1}) {
    for (int gj : {0, 1}) {
      for (int key : {0, 1}) {
        for (int bi : {0, 1}) {
          for (int bj : {0, 1}) {
            ForcedPair pi = forced_pair(bi);
            ForcedPair pj = forced_pair(bj);
            int rij = encode_report(gi, pi.home, key);
            int rji = encode_report(gj, pj.home, key);
            int ct = tp_code(pi.travel, pj.travel);
            ++checked;
            if ((rij ^ rji ^ ct) == (gi ^ gj)) ++good;
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << good << "/" << checked << " cases recover the xor";
  report(2, "per-bit-recovery", good == checked && checked == 32, d.str());
}

void criterion_oracle_agreement() {
  long long sessions = 0, disagreements = 0, aborts = 0;
  for (std::uint64_t seed = 0; seed < 52; ++seed) {
    for (int users : {2, 3, 4, 5, 6}) {
      for (int bits : {1, 7, 8, 32}) {
        SessionConfig c;
        c.users = users;
        c.bits = bits;
        c.decoys = 3;
        c.seed = seed;
        SessionResult r = run_session(c);
        ++sessions;
        if (r.metrics.aborted) {
          ++aborts;
          continue;
        }
        ComparisonMatrix oracle = classical_equality_matrix(r.secrets_used);
        for (int i = 0; i < users; ++i)
          for (int j = i + 1; j < users; ++j)
            if (r.matrix.at(i, j) != oracle.at(i, j)) ++disagreements;
      }
    }
  }
  std::ostringstream d;
  d << disagreements << " disagreements, " << aborts << " aborts in " << sessions
    << " honest sessions";
  report(3, "oracle-agreement",
         sessions >= 1000 && disagreements == 0 && aborts == 0, d.str());
}

void criterion_detection_curve() {
  const int trials = 10000;
  bool all_ok = true;
  std::ostringstream d;
  for (int decoys : {1, 5, 10, 20}) {
    SessionConfig c;
    c.users = 2;
    c.bits = 1;
    c.decoys = decoys;
    c.adversary.kind = AdversaryKind::InterceptResend;
    c.trials = trials;
    c.seed = 880000 + static_cast<std::uint64_t>(decoys);
    TrialsResult t = run_trials(c);
    double expected = 1.0 - std::pow(0.75, decoys);
    bool ok = stats::within_sigmas(static_cast<std::size_t>(t.aggregate.aborts),
                                   trials, expected, kSigmas);
    all_ok = all_ok && ok;
    d << "d=" << decoys << ":" << t.aggregate.detection_rate << "/" << expected
      << (ok ? " " : "! ");
  }
  report(4, "detection-curve", all_ok, d.str());
}

void criterion_attack_equivalence() {
  const int trials = 10000;
  auto aborts_for = [&](AdversaryKind kind, std::uint64_t seed) {
    SessionConfig c;
    c.users = 2;
    c.bits = 1;
    c.decoys = 5;
    c.adversary.kind = kind;
    c.trials = trials;
    c.seed = seed;
    return run_trials(c).aggregate.aborts;
  };
  int intercept = aborts_for(AdversaryKind::InterceptResend, 9901);
  int measure = aborts_for(AdversaryKind::MeasureResend, 9902);
  double z = stats::two_proportion_z(static_cast<std::size_t>(intercept), trials,
                                     static_cast<std::size_t>(measure), trials);
  std::ostringstream d;
  d << "aborts " << intercept << " vs " << measure << ", |z|=" << std::abs(z);
  report(5, "attack-equivalence", std::abs(z) < kZCritical, d.str());
}

void criterion_report_uniformity() {
  const int trials = 10000, bits = 8;
  double min_p = 1.0;
  long long streams = 0;
  for (std::uint64_t base : {40000ull, 50000ull}) {
    SessionConfig c;
    c.users = 2;
    c.bits = bits;
    c.decoys = 0;  // no channel noise needed to exercise the reports
    c.secrets = std::vector<Secret>(
        2, Secret::from_value(base == 40000ull ? 0 : 255, bits));

    // ones[direction][position]
    std::vector<std::vector<long long>> ones(2, std::vector<long long>(bits, 0));
    for (int t = 0; t < trials; ++t) {
      c.seed = base + static_cast<std::uint64_t>(t);
      SessionResult r = run_session(c);
      for (const Message& m : r.transcript.messages()) {
        if (m.kind != MessageKind::Report) continue;
        int direction = m.from == 0 ? 0 : 1;
        for (int k = 0; k < bits; ++k) ones[direction][k] += m.bits[k];
      }
    }
    for (int direction = 0; direction < 2; ++direction) {
      for (int k = 0; k < bits; ++k) {
        double p = stats::uniform_bit_pvalue(
            static_cast<std::size_t>(ones[direction][k]), trials);
        min_p = std::min(min_p, p);
        ++streams;
      }
    }
  }
  std::ostringstream d;
  d << streams << " report streams, min p=" << min_p;
  report(6, "report-uniformity", min_p > kMinPValue, d.str());
}

void criterion_qubit_efficiency() {
  bool ok = true;
  for (int users = 2; users <= 10; ++users)
    for (int bits : {1, 8, 32})
      ok = ok && (qubit_efficiency(users, bits) == Ratio::reduced(1, 2 * users));

  SessionConfig c;
  c.users = 3;
  c.bits = 5;
  c.decoys = 2;
  c.seed = 4;
  SessionResult r = run_session(c);
  ok = ok && r.metrics.consumed_particles == 2 * 3 * 5;
  ok = ok && r.metrics.decoy_particles == 3 * 2;
  ok = ok && r.metrics.efficiency == Ratio{1, 6};
  ok = ok && r.metrics.efficiency_gross == Ratio::reduced(5, 36);
  report(7, "qubit-efficiency", ok,
         "1/(2K) for K=2..10, carriers 2KL, decoys Kd");
}

void criterion_operation_counts() {
  bool ok = true;
  std::ostringstream d;
  for (int users = 2; users <= 6; ++users) {
    SessionConfig c;
    c.users = users;
    c.bits = 4;
    c.decoys = 2;
    c.seed = 60 + static_cast<std::uint64_t>(users);
    SessionResult r = run_session(c);
    const Transcript& t = r.transcript;
    bool this_ok = !r.metrics.aborted &&
                   t.op_count(QuantumOp::Prepare) == users &&
                   t.op_count(QuantumOp::PrepareDecoys) == users &&
                   t.op_count(QuantumOp::Transmit) == users &&
                   t.op_count(QuantumOp::HomeMeasure) == users &&
                   t.op_count(QuantumOp::TravelMeasure) == users &&
                   t.op_count(QuantumOp::DecoyMeasure) == users;
    std::vector<PartyId> preparers = t.parties_with(QuantumOp::Prepare);
    this_ok = this_ok && static_cast<int>(preparers.size()) == users;
    ok = ok && this_ok;
    d << "K=" << users << (this_ok ? " " : "! ");
  }
  report(8, "operation-counts", ok, "one prepare/transmit/measure per user: " + d.str());
}

void criterion_determinism() {
  SessionConfig c;
  c.users = 3;
  c.bits = 6;
  c.decoys = 2;
  c.trials = 3;
  c.seed = 77;
  c.adversary.kind = AdversaryKind::InterceptResend;

  TrialsResult a = run_trials(c);
  TrialsResult b = run_trials(c);
  bool ok = a.aggregate.combined_digest == b.aggregate.combined_digest;
  ok = ok && render_run_json(c, a, true) == render_run_json(c, b, true);

  SessionConfig honest;
  honest.trials = 2;
  honest.seed = 78;
  TrialsResult h1 = run_trials(honest);
  TrialsResult h2 = run_trials(honest);
  ok = ok && render_run_json(honest, h1, false) == render_run_json(honest, h2, false);

  report(9, "determinism", ok, "identical configs render byte-identical output");
}

}  // namespace

int main() {
  criterion_code_identity();
  criterion_per_bit_recovery();
  criterion_oracle_agreement();
  criterion_detection_curve();
  criterion_attack_equivalence();
  criterion_report_uniformity();
  criterion_qubit_efficiency();
  criterion_operation_counts();
  criterion_determinism();
  return failures;
}

#include "qpc/session.hpp"

#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace qpc {
namespace {

std::string trial_tag(int trial, const std::string& purpose) {
  return "trial/" + std::to_string(trial) + "/" + purpose;
}

int resolve_target(const AdversaryModel& adversary, int user_count) {
  if (!adversary.present()) return -1;
  if (adversary.target_user) return *adversary.target_user;
  if (adversary.kind == AdversaryKind::DishonestUser) {
    for (int i = 0; i < user_count; ++i)
      if (i != adversary.actor) return i;
  }
  return 0;
}

const ModeDescriptor& catalog_entry(ModeId id) {
  for (const ModeDescriptor& d : mode_catalog())
    if (d.id == id) return d;
  throw std::logic_error("mode missing from catalog");
}

ModeDescriptor unclassified_mode() {
  return {ModeId::Unclassified, "(?)", "unclassified", PreparerSet::AllUsers,
          TransmissionShape::Unknown, {}};
}

}  // namespace

void SessionConfig::validate() const {
  if (users < 2) throw std::invalid_argument("comparison needs at least two users");
  if (bits < 1) throw std::invalid_argument("secrets need at least one bit");
  if (decoys < 0) throw std::invalid_argument("decoy count cannot be negative");
  if (trials < 1) throw std::invalid_argument("at least one trial");
  if (secrets) {
    if (static_cast<int>(secrets->size()) != users)
      throw std::invalid_argument("need exactly one secret per user");
    for (const Secret& s : *secrets) {
      if (s.length() != bits)
        throw std::invalid_argument("every secret must have exactly L bits");
      for (int b : s.bits)
        if (b != 0 && b != 1) throw std::invalid_argument("secret bits must be 0 or 1");
    }
  }
  if (adversary.kind == AdversaryKind::DishonestUser) {
    if (adversary.actor < 0 || adversary.actor >= users)
      throw std::invalid_argument("dishonest user index out of range");
    if (adversary.target_user && *adversary.target_user == adversary.actor)
      throw std::invalid_argument("a dishonest user does not attack its own channel");
  }
  if (adversary.present() && adversary.target_user &&
      (*adversary.target_user < 0 || *adversary.target_user >= users))
    throw std::invalid_argument("attack target out of range");
}

std::string_view pair_verdict_name(PairVerdict v) {
  switch (v) {
    case PairVerdict::SelfCell: return "self";
    case PairVerdict::Equal: return "equal";
    case PairVerdict::Unequal: return "unequal";
    case PairVerdict::Aborted: return "aborted";
    case PairVerdict::NotCompared: return "not_compared";
  }
  return "unknown";
}

ComparisonMatrix::ComparisonMatrix(int user_count)
    : user_count_(user_count),
      cells_(static_cast<std::size_t>(user_count) * user_count, PairVerdict::NotCompared) {
  if (user_count < 2) throw std::invalid_argument("matrix needs at least two users");
  for (int i = 0; i < user_count; ++i)
    cells_[static_cast<std::size_t>(i) * user_count + i] = PairVerdict::SelfCell;
}

PairVerdict ComparisonMatrix::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= user_count_ || j >= user_count_)
    throw std::out_of_range("matrix index out of range");
  return cells_[static_cast<std::size_t>(i) * user_count_ + j];
}

void ComparisonMatrix::set_pair(int i, int j, PairVerdict verdict) {
  if (i < 0 || j < 0 || i >= user_count_ || j >= user_count_)
    throw std::out_of_range("matrix index out of range");
  if (i == j) throw std::invalid_argument("diagonal cells are fixed");
  cells_[static_cast<std::size_t>(i) * user_count_ + j] = verdict;
  cells_[static_cast<std::size_t>(j) * user_count_ + i] = verdict;
}

void ComparisonMatrix::abort_all() {
  for (int i = 0; i < user_count_; ++i)
    for (int j = 0; j < user_count_; ++j)
      if (i != j) cells_[static_cast<std::size_t>(i) * user_count_ + j] = PairVerdict::Aborted;
}

Ratio Ratio::reduced(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("ratio with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

Ratio qubit_efficiency(int users, int bits) {
  if (users < 2) throw std::invalid_argument("efficiency needs at least two users");
  if (bits < 1) throw std::invalid_argument("efficiency needs at least one bit");
  return Ratio::reduced(bits, 2ll * users * bits);
}

const std::vector<ModeDescriptor>& mode_catalog() {
  static const std::vector<ModeDescriptor> catalog = {
      {ModeId::A, "(a)", "centralized preparation and circled transmission",
       PreparerSet::TpOnly, TransmissionShape::Circled, {38, 42, 49, 63}},
      {ModeId::B, "(b)", "centralized preparation and one-way divergent transmission",
       PreparerSet::TpOnly, TransmissionShape::OneWayDivergent,
       {36, 37, 40, 43, 44, 45, 46, 47, 51, 54, 55, 56, 58, 59, 60, 61, 63}},
      {ModeId::C, "(c)", "centralized preparation and bidirectional divergent transmission",
       PreparerSet::TpOnly, TransmissionShape::BidirectionalDivergent, {34, 48, 62}},
      {ModeId::D1, "(d1)", "scattered preparation and bidirectional transmission",
       PreparerSet::TpAndUsers, TransmissionShape::Bidirectional, {39, 64}},
      {ModeId::D2, "(d2)", "scattered preparation and bidirectional transmission",
       PreparerSet::AllUsers, TransmissionShape::Bidirectional, {53}},
      {ModeId::E, "(e)", "scattered preparation and one-way convergent transmission",
       PreparerSet::AllUsers, TransmissionShape::OneWayConvergent, {41}},
      {ModeId::F, "(f)", "scattered preparation and hybrid transmission",
       PreparerSet::AllUsers, TransmissionShape::Hybrid, {50}},
      {ModeId::G, "(g)", "scattered preparation and one-way transmission",
       PreparerSet::AllUsers, TransmissionShape::OneWay, {52}},
      {ModeId::H, "(h)", "centralized preparation and one-way transmission",
       PreparerSet::SingleUser, TransmissionShape::OneWay, {57}},
  };
  return catalog;
}

std::string_view mode_id_label(ModeId id) {
  if (id == ModeId::Unclassified) return "(?)";
  return catalog_entry(id).label;
}

std::string_view preparer_set_name(PreparerSet p) {
  switch (p) {
    case PreparerSet::TpOnly: return "tp_only";
    case PreparerSet::SingleUser: return "single_user";
    case PreparerSet::AllUsers: return "all_users";
    case PreparerSet::TpAndUsers: return "tp_and_users";
  }
  return "unknown";
}

std::string_view transmission_shape_name(TransmissionShape s) {
  switch (s) {
    case TransmissionShape::Circled: return "circled";
    case TransmissionShape::OneWayDivergent: return "one_way_divergent";
    case TransmissionShape::BidirectionalDivergent: return "bidirectional_divergent";
    case TransmissionShape::Bidirectional: return "bidirectional";
    case TransmissionShape::OneWayConvergent: return "one_way_convergent";
    case TransmissionShape::Hybrid: return "hybrid";
    case TransmissionShape::OneWay: return "one_way";
    case TransmissionShape::Unknown: return "unknown";
  }
  return "unknown";
}

ModeDescriptor classify_mode(const RoleGraph& graph) {
  std::set<std::pair<int, int>> edges;
  for (const QuantumEdge& e : graph.edges) edges.insert({e.from, e.to});
  const std::set<int> preparers(graph.preparing_users.begin(), graph.preparing_users.end());

  std::set<int> participant_users = preparers;
  std::set<int> tp_receives_from;
  std::set<int> tp_sends_to;
  std::set<std::pair<int, int>> user_edges;
  for (const auto& [from, to] : edges) {
    if (from >= 0) participant_users.insert(from);
    if (to >= 0) participant_users.insert(to);
    if (from >= 0 && to == kTp) {
      tp_receives_from.insert(from);
    } else if (from == kTp && to >= 0) {
      tp_sends_to.insert(to);
    } else if (from >= 0 && to >= 0 && from != to) {
      user_edges.insert({from, to});
    } else {
      return unclassified_mode();
    }
  }
  const std::size_t to_tp = tp_receives_from.size();
  const std::size_t from_tp = tp_sends_to.size();
  const std::size_t between_users = user_edges.size();
  const std::size_t prep_count = preparers.size();

  if (graph.tp_prepares && prep_count == 0) {
    if (participant_users.size() != 2) return unclassified_mode();
    if (from_tp == 2 && to_tp == 0 && between_users == 0) return catalog_entry(ModeId::B);
    if (from_tp == 2 && to_tp == 2 && between_users == 0) return catalog_entry(ModeId::C);
    if (from_tp == 1 && to_tp == 1 && between_users == 1) {
      const int first = *tp_sends_to.begin();
      const int last = *tp_receives_from.begin();
      if (first != last && user_edges.contains({first, last}))
        return catalog_entry(ModeId::A);
    }
    return unclassified_mode();
  }

  if (!graph.tp_prepares && prep_count == 1) {
    if (to_tp == 0 && from_tp == 0 && between_users == 1 &&
        user_edges.begin()->first == *preparers.begin())
      return catalog_entry(ModeId::H);
    return unclassified_mode();
  }

  if (graph.tp_prepares && prep_count >= 2) {
    if (between_users == 0 && tp_receives_from == preparers && tp_sends_to == preparers)
      return catalog_entry(ModeId::D1);
    return unclassified_mode();
  }

  if (!graph.tp_prepares && prep_count >= 2) {
    if (from_tp == 0 && between_users == 0 && tp_receives_from == preparers)
      return catalog_entry(ModeId::E);
    if (prep_count == 2) {
      const int a = *preparers.begin();
      const int b = *std::next(preparers.begin());
      const bool ab = user_edges.contains({a, b});
      const bool ba = user_edges.contains({b, a});
      if (from_tp == 0 && to_tp == 0 && between_users == 2 && ab && ba)
        return catalog_entry(ModeId::D2);
      if (from_tp == 0 && tp_receives_from == preparers && between_users == 2 && ab && ba)
        return catalog_entry(ModeId::F);
      if (from_tp == 0 && tp_receives_from == preparers && between_users == 1 && (ab || ba))
        return catalog_entry(ModeId::G);
    }
    return unclassified_mode();
  }

  return unclassified_mode();
}

RoleGraph role_graph_from(const Transcript& transcript) {
  RoleGraph graph;
  for (PartyId p : transcript.parties_with(QuantumOp::Prepare)) {
    if (p == kTp)
      graph.tp_prepares = true;
    else
      graph.preparing_users.push_back(p);
  }
  graph.edges = transcript.edges();
  return graph;
}

SessionResult run_session(const SessionConfig& config, int trial_index) {
  config.validate();
  if (trial_index < 0) throw std::invalid_argument("trial index is non-negative");
  const int K = config.users;
  const int L = config.bits;
  const int d = config.decoys;

  const SeededStream root(config.seed);
  auto stream = [&](const std::string& purpose) {
    return root.child(trial_tag(trial_index, purpose));
  };

  Transcript transcript;

  std::vector<Secret> secrets;
  if (config.secrets) {
    secrets = *config.secrets;
  } else {
    SeededStream secret_rng = stream("secrets");
    secrets.reserve(K);
    for (int i = 0; i < K; ++i) secrets.push_back(Secret::random(L, secret_rng));
  }

  // Preliminary: the trusted key oracle hands each unordered pair a fresh
  // uniform key; only the two holders can read the record.
  SeededStream key_rng = stream("keys");
  const KeyTable keys = KeyTable::uniform(K, L, key_rng);
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j)
      transcript.record({MessageKind::KeyShare, i, j, Visibility::restricted({i, j}),
                         keys.key(i, j), {},
                         party_name(i) + "~" + party_name(j)});

  std::vector<User> users;
  users.reserve(K);
  for (int i = 0; i < K; ++i) users.emplace_back(i, secrets[i]);
  ThirdParty tp(K);

  const int target = resolve_target(config.adversary, K);

  struct ChannelState {
    std::vector<FlyingParticle> received;
    std::vector<DecoyPhoton> manifest;
    ChannelCheckResult check;
  };
  std::vector<ChannelState> channels(K);
  bool aborted = false;

  // Steps 1-2 on every channel; a mismatch anywhere aborts the session once
  // all block transmissions are through.
  for (int i = 0; i < K; ++i) {
    users[i].prepare();
    transcript.count_op(QuantumOp::Prepare, i, 2ull * static_cast<std::size_t>(L));

    SeededStream decoy_rng = stream("user/" + std::to_string(i) + "/decoys");
    auto [combined, manifest] = insert_decoys(users[i].release_travel(), d, decoy_rng);
    channels[i].manifest = std::move(manifest);
    transcript.count_op(QuantumOp::PrepareDecoys, i, channels[i].manifest.size());
    transcript.count_op(QuantumOp::Transmit, i, combined.size());
    transcript.record_edge(i, kTp);

    AdversaryKind kind = AdversaryKind::None;
    if (config.adversary.present() && i == target) kind = config.adversary.kind;
    SeededStream eve_rng = stream("eve/" + std::to_string(i));
    TransmitOutcome sent =
        transmit(std::move(combined), kind, config.adversary.basis_policy, eve_rng);
    if (sent.tap) {
      const PartyId eve = config.adversary.kind == AdversaryKind::DishonestUser
                              ? config.adversary.actor
                              : kEavesdropper;
      transcript.record({MessageKind::AdversaryNote, eve, eve,
                         Visibility::restricted({eve}), sent.tap->bits, {},
                         "tap:" + party_name(i)});
    }
    channels[i].received = std::move(sent.received);

    // Positions and bases go out only after TP confirms the block arrived.
    tp.confirm_receipt(i, channels[i].received.size());
    transcript.record({MessageKind::ReceiptConfirm, kTp, i, Visibility::public_channel(),
                       {}, {}, "block:" + std::to_string(channels[i].received.size())});

    std::vector<std::size_t> positions;
    std::vector<int> bases;
    positions.reserve(channels[i].manifest.size());
    bases.reserve(channels[i].manifest.size());
    for (const DecoyPhoton& dp : channels[i].manifest) {
      positions.push_back(dp.position);
      bases.push_back(dp.basis == Basis::X ? 1 : 0);
    }
    transcript.record({MessageKind::DecoyDisclosure, i, kTp, Visibility::public_channel(),
                       std::move(bases), std::move(positions), "bases:z=0,x=1"});

    SeededStream tp_rng = stream("tp/" + std::to_string(i) + "/decoy-check");
    channels[i].check = run_decoy_check(channels[i].received, channels[i].manifest, tp_rng);
    transcript.count_op(QuantumOp::DecoyMeasure, i, channels[i].manifest.size());
    transcript.record({MessageKind::DecoyResults, kTp, i, Visibility::public_channel(),
                       channels[i].check.measured_bits, {},
                       "mismatches:" + std::to_string(channels[i].check.mismatches)});
    const bool clean = channels[i].check.verdict == ChannelVerdictKind::Clean;
    transcript.record({MessageKind::ChannelVerdict, i, kTp, Visibility::public_channel(),
                       {}, {}, clean ? "clean" : "abort"});
    if (!clean) aborted = true;
  }

  ComparisonMatrix matrix(K);
  if (aborted) {
    matrix.abort_all();
  } else {
    for (int i = 0; i < K; ++i)
      tp.accept_travel(
          i, strip_decoys(std::move(channels[i].received), channels[i].manifest,
                          channels[i].check));

    // Step 3: home measurements, then every user publishes one report per
    // counterpart.
    for (int i = 0; i < K; ++i) {
      SeededStream home_rng = stream("user/" + std::to_string(i) + "/home");
      users[i].measure_home(home_rng);
      transcript.count_op(QuantumOp::HomeMeasure, i, static_cast<std::size_t>(L));
      for (int j = 0; j < K; ++j) {
        if (j == i) continue;
        const Report r = users[i].report_for(j, keys);
        tp.receive_report(r);
        transcript.record({MessageKind::Report, i, kTp, Visibility::public_channel(),
                           r.bits, {}, "about:" + party_name(j)});
      }
    }

    // Step 4
    for (int i = 0; i < K; ++i) {
      SeededStream travel_rng = stream("tp/" + std::to_string(i) + "/travel");
      tp.measure_travel(i, travel_rng);
      transcript.count_op(QuantumOp::TravelMeasure, i, static_cast<std::size_t>(L));
    }

    // Step 5: each verdict goes to exactly that pair.
    for (int i = 0; i < K; ++i) {
      for (int j = i + 1; j < K; ++j) {
        const PairOutcome out = tp.compare_pair(i, j);
        matrix.set_pair(i, j, out.equal ? PairVerdict::Equal : PairVerdict::Unequal);
        const std::string verdict =
            out.equal ? "equal" : "unequal@k=" + std::to_string(out.first_unequal_k);
        transcript.record({MessageKind::ComparisonResult, kTp, i,
                           Visibility::restricted({kTp, i, j}), {}, {},
                           party_name(i) + "~" + party_name(j) + ":" + verdict});
      }
    }
  }

  SessionMetrics metrics;
  metrics.compared_bits = L;
  metrics.consumed_particles = static_cast<long long>(transcript.particles(QuantumOp::Prepare));
  metrics.decoy_particles =
      static_cast<long long>(transcript.particles(QuantumOp::PrepareDecoys));
  metrics.efficiency = qubit_efficiency(K, L);
  metrics.efficiency_gross =
      Ratio::reduced(L, metrics.consumed_particles + metrics.decoy_particles);
  metrics.aborted = aborted;
  metrics.zero_decoy_coverage = (d == 0);
  for (int i = 0; i < K; ++i) {
    for (int j = i + 1; j < K; ++j) {
      switch (matrix.at(i, j)) {
        case PairVerdict::Equal: ++metrics.equal_pairs; break;
        case PairVerdict::Unequal: ++metrics.unequal_pairs; break;
        case PairVerdict::Aborted: ++metrics.aborted_pairs; break;
        default: break;
      }
    }
  }

  ModeDescriptor mode = classify_mode(role_graph_from(transcript));

  return {std::move(matrix), std::move(transcript), metrics, std::move(secrets),
          std::move(mode)};
}

ComparisonMatrix classical_equality_matrix(const std::vector<Secret>& secrets) {
  const int K = static_cast<int>(secrets.size());
  ComparisonMatrix matrix(K);
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j)
      matrix.set_pair(i, j, secrets[i] == secrets[j] ? PairVerdict::Equal
                                                     : PairVerdict::Unequal);
  return matrix;
}

TrialsResult run_trials(const SessionConfig& config) {
  config.validate();
  TrialAggregate agg;
  agg.trials = config.trials;
  agg.report_bit_ones.assign(config.bits, 0);

  std::vector<PairRow> rows;
  rows.reserve(static_cast<std::size_t>(config.trials) * config.users * (config.users - 1) / 2);
  std::optional<SessionResult> first;
  std::string digest_feed;

  for (int t = 0; t < config.trials; ++t) {
    SessionResult result = run_session(config, t);
    digest_feed += result.transcript.digest_hex();
    digest_feed += '\n';

    if (result.metrics.aborted) {
      ++agg.aborts;
    } else {
      const ComparisonMatrix oracle = classical_equality_matrix(result.secrets_used);
      for (int i = 0; i < config.users; ++i)
        for (int j = i + 1; j < config.users; ++j)
          if (result.matrix.at(i, j) != oracle.at(i, j)) ++agg.oracle_disagreements;
      for (const Message& m : result.transcript.messages()) {
        if (m.kind != MessageKind::Report) continue;
        for (std::size_t k = 0; k < m.bits.size(); ++k) agg.report_bit_ones[k] += m.bits[k];
        ++agg.reports_counted;
      }
    }

    for (int i = 0; i < config.users; ++i) {
      for (int j = i + 1; j < config.users; ++j) {
        const PairVerdict v = result.matrix.at(i, j);
        rows.push_back({t, i, j, v, result.metrics.aborted});
        switch (v) {
          case PairVerdict::Equal: ++agg.equal_pairs; break;
          case PairVerdict::Unequal: ++agg.unequal_pairs; break;
          case PairVerdict::Aborted: ++agg.aborted_pairs; break;
          default: break;
        }
      }
    }
    if (t == 0) first = std::move(result);
  }

  agg.detection_rate = static_cast<double>(agg.aborts) / static_cast<double>(config.trials);
  agg.combined_digest = fnv1a64(digest_feed);
  return {std::move(*first), std::move(agg), std::move(rows)};
}

}  // namespace qpc

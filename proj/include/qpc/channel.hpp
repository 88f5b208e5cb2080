#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qpc/particles.hpp"

namespace qpc {

// Manifest entry for one decoy photon: what the sender prepared and where it
// sits in the combined sequence. Only positions and bases are ever disclosed;
// the prepared bit stays with the sender.
struct DecoyPhoton {
  SingleState prepared;
  Basis basis;
  std::size_t position;
};

enum class AdversaryKind { None, InterceptResend, MeasureResend, DishonestUser };
enum class BasisPolicy { RandomZOrX, AlwaysZ, AlwaysX };

struct AdversaryModel {
  AdversaryKind kind = AdversaryKind::None;
  BasisPolicy basis_policy = BasisPolicy::RandomZOrX;
  int actor = -1;                   // attacking user's index (DishonestUser)
  std::optional<int> target_user;   // attacked channel; defaulted by the session

  bool present() const { return kind != AdversaryKind::None; }
};

// Step 2: insert d decoys, each drawn uniformly from {Zero, One, Plus, Minus},
// at uniformly random distinct positions among the L + d slots. Travel
// particles keep their relative order.
std::pair<std::vector<FlyingParticle>, std::vector<DecoyPhoton>> insert_decoys(
    std::vector<ParticlePair> travel, int decoy_count, RandomStream& rng);

// What a wiretap learned, in sequence order.
struct InterceptionRecord {
  std::vector<Basis> bases;
  std::vector<int> bits;
};

struct TransmitOutcome {
  std::vector<FlyingParticle> received;
  std::optional<InterceptionRecord> tap;
};

// Block transmission of one combined sequence. An intercept-resend adversary
// measures every particle and forwards fresh eigenstates of its outcomes; a
// measure-resend adversary measures and forwards the collapsed particles.
// The adversary never sees the decoy manifest.
TransmitOutcome transmit(std::vector<FlyingParticle> sequence, AdversaryKind kind,
                         BasisPolicy policy, RandomStream& eve_rng);

enum class ChannelVerdictKind { Clean, Abort };

struct ChannelCheckResult {
  std::size_t decoys_checked = 0;
  std::size_t mismatches = 0;
  ChannelVerdictKind verdict = ChannelVerdictKind::Clean;
  std::vector<int> measured_bits;  // TP's decoy outcomes, manifest order
};

// Eavesdropping check: TP measures each disclosed decoy slot in its
// preparation basis; any outcome that differs from the prepared bit aborts
// the channel. Zero tolerance, and vacuously Clean when d = 0.
ChannelCheckResult run_decoy_check(std::vector<FlyingParticle>& received,
                                   const std::vector<DecoyPhoton>& manifest,
                                   RandomStream& tp_rng);

// Drop the decoy slots; the travel particles come back in their original
// order. Calling this for an aborted channel is a programming error.
std::vector<FlyingParticle> strip_decoys(std::vector<FlyingParticle> received,
                                         const std::vector<DecoyPhoton>& manifest,
                                         const ChannelCheckResult& check);

}  // namespace qpc

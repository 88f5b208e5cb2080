#include "qpc/channel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qpc {
namespace {

constexpr SingleState kDecoyStates[4] = {SingleState::Zero, SingleState::One,
                                         SingleState::Plus, SingleState::Minus};

void validate_manifest(const std::vector<DecoyPhoton>& manifest, std::size_t sequence_length) {
  std::vector<bool> seen(sequence_length, false);
  for (const DecoyPhoton& d : manifest) {
    if (d.position >= sequence_length)
      throw std::invalid_argument("decoy position outside the sequence");
    if (seen[d.position]) throw std::invalid_argument("duplicate decoy position");
    seen[d.position] = true;
  }
}

}  // namespace

std::pair<std::vector<FlyingParticle>, std::vector<DecoyPhoton>> insert_decoys(
    std::vector<ParticlePair> travel, int decoy_count, RandomStream& rng) {
  if (decoy_count < 0) throw std::invalid_argument("decoy count cannot be negative");
  const std::size_t total = travel.size() + static_cast<std::size_t>(decoy_count);

  // Partial Fisher-Yates: a uniform d-subset of the slots becomes decoys.
  std::vector<std::size_t> slots(total);
  std::iota(slots.begin(), slots.end(), 0);
  for (int i = 0; i < decoy_count; ++i) {
    const std::size_t j = i + rng.pick(total - i);
    std::swap(slots[i], slots[j]);
  }
  std::vector<std::size_t> decoy_slots(slots.begin(), slots.begin() + decoy_count);
  std::sort(decoy_slots.begin(), decoy_slots.end());

  std::vector<DecoyPhoton> manifest;
  manifest.reserve(decoy_count);
  std::vector<bool> is_decoy(total, false);
  for (std::size_t pos : decoy_slots) {
    const SingleState prepared = kDecoyStates[rng.pick(4)];
    manifest.push_back({prepared, preparation_basis(prepared), pos});
    is_decoy[pos] = true;
  }

  std::vector<FlyingParticle> combined;
  combined.reserve(total);
  std::size_t next_travel = 0;
  std::size_t next_decoy = 0;
  for (std::size_t pos = 0; pos < total; ++pos) {
    if (is_decoy[pos])
      combined.emplace_back(make_single(manifest[next_decoy++].prepared));
    else
      combined.emplace_back(std::move(travel[next_travel++]));
  }
  return {std::move(combined), std::move(manifest)};
}

TransmitOutcome transmit(std::vector<FlyingParticle> sequence, AdversaryKind kind,
                         BasisPolicy policy, RandomStream& eve_rng) {
  if (kind == AdversaryKind::None) return {std::move(sequence), std::nullopt};

  InterceptionRecord tap;
  tap.bases.reserve(sequence.size());
  tap.bits.reserve(sequence.size());
  // A dishonest user on someone else's channel plays exactly intercept-resend.
  const bool resend_fresh = kind != AdversaryKind::MeasureResend;

  for (FlyingParticle& particle : sequence) {
    Basis basis;
    switch (policy) {
      case BasisPolicy::AlwaysZ: basis = Basis::Z; break;
      case BasisPolicy::AlwaysX: basis = Basis::X; break;
      default: basis = eve_rng.bit() ? Basis::X : Basis::Z; break;
    }
    const MeasurementOutcome outcome = particle.measure(basis, eve_rng);
    tap.bases.push_back(basis);
    tap.bits.push_back(outcome.bit);
    if (resend_fresh)
      particle = FlyingParticle(make_single(eigenstate(basis, outcome.bit)));
  }
  return {std::move(sequence), std::move(tap)};
}

ChannelCheckResult run_decoy_check(std::vector<FlyingParticle>& received,
                                   const std::vector<DecoyPhoton>& manifest,
                                   RandomStream& tp_rng) {
  validate_manifest(manifest, received.size());
  ChannelCheckResult result;
  result.decoys_checked = manifest.size();
  result.measured_bits.reserve(manifest.size());
  for (const DecoyPhoton& decoy : manifest) {
    const MeasurementOutcome outcome = received[decoy.position].measure(decoy.basis, tp_rng);
    result.measured_bits.push_back(outcome.bit);
    if (outcome.bit != eigen_bit(decoy.prepared)) ++result.mismatches;
  }
  result.verdict =
      result.mismatches > 0 ? ChannelVerdictKind::Abort : ChannelVerdictKind::Clean;
  return result;
}

std::vector<FlyingParticle> strip_decoys(std::vector<FlyingParticle> received,
                                         const std::vector<DecoyPhoton>& manifest,
                                         const ChannelCheckResult& check) {
  if (check.verdict == ChannelVerdictKind::Abort)
    throw std::logic_error("strip_decoys: channel aborted, nothing to strip");
  validate_manifest(manifest, received.size());

  std::vector<bool> is_decoy(received.size(), false);
  for (const DecoyPhoton& d : manifest) is_decoy[d.position] = true;

  std::vector<FlyingParticle> travel;
  travel.reserve(received.size() - manifest.size());
  for (std::size_t pos = 0; pos < received.size(); ++pos)
    if (!is_decoy[pos]) travel.push_back(std::move(received[pos]));
  return travel;
}

}  // namespace qpc

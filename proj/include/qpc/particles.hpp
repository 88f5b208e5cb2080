#pragma once

#include <memory>
#include <variant>

#include "qpc/qstate.hpp"

namespace qpc {

// One Bell pair, indexed 1..L within a sequence. The handle kept by the
// preparing user and the handle sent toward TP share the pair state: a copy
// is another handle to the same pair, and measuring either side collapses
// the state for both.
class ParticlePair {
 public:
  static constexpr int kHomeQubit = 0;
  static constexpr int kTravelQubit = 1;

  ParticlePair(int index, PureState state);

  int index() const { return index_; }
  const PureState& state() const { return core_->state; }

  // Sigma_z on the retained particle. Measuring the same home particle twice
  // is a programming error and throws.
  int measure_home(RandomStream& rng);

  // Measurement on the travel particle; used by TP (Z) and by in-flight
  // adversaries (any basis). Re-measurement is physically meaningful here
  // (an intercepted particle gets measured again downstream), so no guard.
  MeasurementOutcome measure_travel(Basis basis, RandomStream& rng);

  bool home_measured() const { return core_->home_done; }

 private:
  struct Core {
    PureState state;
    bool home_done = false;
  };
  int index_;
  std::shared_ptr<Core> core_;
};

// A photon in flight on a user->TP link: either the travel half of a Bell
// pair or a standalone single qubit (a decoy, or an eavesdropper's resend).
class FlyingParticle {
 public:
  explicit FlyingParticle(ParticlePair travel_half);
  explicit FlyingParticle(PureState single_qubit);

  MeasurementOutcome measure(Basis basis, RandomStream& rng);

  bool from_pair() const;
  int pair_index() const;  // -1 for standalone photons

 private:
  std::variant<ParticlePair, PureState> photon_;
};

}  // namespace qpc

#include "qpc/particles.hpp"

#include <stdexcept>

namespace qpc {

ParticlePair::ParticlePair(int index, PureState state)
    : index_(index), core_(std::make_shared<Core>(Core{std::move(state)})) {
  if (core_->state.num_qubits() != 2)
    throw std::invalid_argument("a particle pair needs a two-qubit state");
  if (index < 1) throw std::invalid_argument("pair index starts at 1");
}

int ParticlePair::measure_home(RandomStream& rng) {
  if (core_->home_done) throw std::logic_error("home particle already measured");
  auto [outcome, next] = qpc::measure(std::move(core_->state), kHomeQubit, Basis::Z, rng);
  core_->state = std::move(next);
  core_->home_done = true;
  return outcome.bit;
}

MeasurementOutcome ParticlePair::measure_travel(Basis basis, RandomStream& rng) {
  auto [outcome, next] = qpc::measure(std::move(core_->state), kTravelQubit, basis, rng);
  core_->state = std::move(next);
  return outcome;
}

FlyingParticle::FlyingParticle(ParticlePair travel_half)
    : photon_(std::move(travel_half)) {}

FlyingParticle::FlyingParticle(PureState single_qubit) : photon_(std::move(single_qubit)) {
  if (std::get<PureState>(photon_).num_qubits() != 1)
    throw std::invalid_argument("a standalone photon is a single qubit");
}

MeasurementOutcome FlyingParticle::measure(Basis basis, RandomStream& rng) {
  if (auto* pair = std::get_if<ParticlePair>(&photon_))
    return pair->measure_travel(basis, rng);
  auto [outcome, next] =
      qpc::measure(std::move(std::get<PureState>(photon_)), 0, basis, rng);
  photon_ = std::move(next);
  return outcome;
}

bool FlyingParticle::from_pair() const {
  return std::holds_alternative<ParticlePair>(photon_);
}

int FlyingParticle::pair_index() const {
  if (auto* pair = std::get_if<ParticlePair>(&photon_)) return pair->index();
  return -1;
}

}  // namespace qpc

#include "qpc/qstate.hpp"

#include <cmath>
#include <stdexcept>

namespace qpc {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// In-place Hadamard on one qubit; its own inverse, so it rotates X-basis
// questions into Z-basis ones and back.
void hadamard(std::vector<amplitude>& amps, int qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const amplitude lo = amps[i];
    const amplitude hi = amps[i | mask];
    amps[i] = (lo + hi) * kInvSqrt2;
    amps[i | mask] = (lo - hi) * kInvSqrt2;
  }
}

}  // namespace

PureState::PureState(std::vector<amplitude> amplitudes) : amps_(std::move(amplitudes)) {
  std::size_t dim = amps_.size();
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("amplitude vector length must be a power of two, at least 2");
  num_qubits_ = 0;
  while ((std::size_t{1} << num_qubits_) < dim) ++num_qubits_;
  if (num_qubits_ > kMaxQubits)
    throw std::invalid_argument("register larger than the supported qubit cap");
  if (std::abs(norm_squared() - 1.0) > kNormTolerance)
    throw std::invalid_argument("state is not normalized");
}

double PureState::norm_squared() const {
  double total = 0.0;
  for (const amplitude& a : amps_) total += std::norm(a);
  return total;
}

PureState make_single(SingleState which) {
  switch (which) {
    case SingleState::Zero:  return PureState({{1.0, 0.0}, {0.0, 0.0}});
    case SingleState::One:   return PureState({{0.0, 0.0}, {1.0, 0.0}});
    case SingleState::Plus:  return PureState({{kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}});
    case SingleState::Minus: return PureState({{kInvSqrt2, 0.0}, {-kInvSqrt2, 0.0}});
  }
  throw std::invalid_argument("unknown single-qubit state");
}

PureState make_bell(BellState which) {
  switch (which) {
    case BellState::PhiPlus:
      return PureState({{kInvSqrt2, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {kInvSqrt2, 0.0}});
    case BellState::PsiPlus:
      return PureState({{0.0, 0.0}, {kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}, {0.0, 0.0}});
  }
  throw std::invalid_argument("unknown Bell state");
}

std::pair<MeasurementOutcome, PureState> measure(PureState state, int qubit_index,
                                                 Basis basis, RandomStream& rng) {
  if (qubit_index < 0 || qubit_index >= state.num_qubits())
    throw std::out_of_range("qubit index out of range");

  auto& amps = state.amps_;
  if (basis == Basis::X) hadamard(amps, qubit_index);

  const std::size_t mask = std::size_t{1} << qubit_index;
  double p0 = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (!(i & mask)) p0 += std::norm(amps[i]);

  int bit = rng.uniform01() < p0 ? 0 : 1;
  double keep = bit == 0 ? p0 : 1.0 - p0;
  if (keep <= 0.0) {  // the sampled branch has no weight; take the other one
    bit ^= 1;
    keep = 1.0 - keep;
  }

  const double scale = 1.0 / std::sqrt(keep);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool matches = ((i & mask) != 0) == (bit == 1);
    amps[i] = matches ? amps[i] * scale : amplitude{};
  }

  if (basis == Basis::X) hadamard(amps, qubit_index);
  return {MeasurementOutcome{bit, basis}, std::move(state)};
}

double fidelity(const PureState& state, const PureState& reference) {
  if (state.dimension() != reference.dimension())
    throw std::invalid_argument("fidelity: dimension mismatch");
  amplitude inner{0.0, 0.0};
  for (std::size_t i = 0; i < state.dimension(); ++i)
    inner += std::conj(reference.amplitudes()[i]) * state.amplitudes()[i];
  return std::norm(inner);
}

Basis preparation_basis(SingleState which) {
  return (which == SingleState::Zero || which == SingleState::One) ? Basis::Z : Basis::X;
}

int eigen_bit(SingleState which) {
  return (which == SingleState::Zero || which == SingleState::Plus) ? 0 : 1;
}

SingleState eigenstate(Basis basis, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  if (basis == Basis::Z) return bit == 0 ? SingleState::Zero : SingleState::One;
  return bit == 0 ? SingleState::Plus : SingleState::Minus;
}

}  // namespace qpc

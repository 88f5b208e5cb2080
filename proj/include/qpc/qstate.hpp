#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "qpc/rng.hpp"

namespace qpc {

using amplitude = std::complex<double>;

// Z is the computational basis {|0>, |1>}; X is {|+>, |->} with
// |+-> = (|0> +- |1>) / sqrt(2).
enum class Basis { Z, X };

enum class SingleState { Zero, One, Plus, Minus };

// |phi+> = (|00> + |11>) / sqrt(2), |psi+> = (|01> + |10>) / sqrt(2).
enum class BellState { PhiPlus, PsiPlus };

struct MeasurementOutcome {
  int bit;      // 0 <-> |0> or |+>, 1 <-> |1> or |->, per the measuring basis
  Basis basis;
};

// Pure state of a small qubit register. Amplitude order is little-endian by
// qubit index: amplitudes()[i] multiplies the basis ket whose qubit q holds
// bit q of i. For two qubits that reads |00>, |01>, |10>, |11> with qubit 0
// written rightmost.
class PureState {
 public:
  static constexpr int kMaxQubits = 4;
  static constexpr double kNormTolerance = 1e-12;

  explicit PureState(std::vector<amplitude> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const amplitude> amplitudes() const { return amps_; }
  double norm_squared() const;

 private:
  friend std::pair<MeasurementOutcome, PureState> measure(PureState, int, Basis,
                                                          RandomStream&);
  int num_qubits_;
  std::vector<amplitude> amps_;
};

PureState make_single(SingleState which);
PureState make_bell(BellState which);

// Born-rule projective measurement of one qubit. Consumes the state and
// returns the renormalized post-measurement successor; the argument must not
// be reused.
std::pair<MeasurementOutcome, PureState> measure(PureState state, int qubit_index,
                                                 Basis basis, RandomStream& rng);

// |<reference|state>|^2. Both states must have the same dimension.
double fidelity(const PureState& state, const PureState& reference);

Basis preparation_basis(SingleState which);

// The bit a prepared state encodes in its own basis: 0 for Zero/Plus,
// 1 for One/Minus.
int eigen_bit(SingleState which);

SingleState eigenstate(Basis basis, int bit);

}  // namespace qpc

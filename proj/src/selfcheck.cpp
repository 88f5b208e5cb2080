#include "qpc/selfcheck.hpp"

#include <cmath>

#include "qpc/channel.hpp"
#include "qpc/protocol.hpp"
#include "qpc/session.hpp"

namespace qpc {
namespace {

constexpr double kTol = 1e-12;

bool close(double a, double b) { return std::abs(a - b) <= kTol; }

// u below 0.5 picks the first branch of a fair split, u above picks the
// second; travel outcomes after collapse are deterministic.
double force(int bit) { return bit == 0 ? 0.25 : 0.75; }

CheckResult check_state_amplitudes() {
  const double r = 1.0 / std::sqrt(2.0);
  bool ok = true;

  const PureState phi = make_bell(BellState::PhiPlus);
  ok &= close(phi.amplitudes()[0].real(), r) && close(phi.amplitudes()[1].real(), 0.0) &&
        close(phi.amplitudes()[2].real(), 0.0) && close(phi.amplitudes()[3].real(), r);
  const PureState psi = make_bell(BellState::PsiPlus);
  ok &= close(psi.amplitudes()[0].real(), 0.0) && close(psi.amplitudes()[1].real(), r) &&
        close(psi.amplitudes()[2].real(), r) && close(psi.amplitudes()[3].real(), 0.0);

  const PureState plus = make_single(SingleState::Plus);
  const PureState minus = make_single(SingleState::Minus);
  ok &= close(plus.amplitudes()[0].real(), r) && close(plus.amplitudes()[1].real(), r);
  ok &= close(minus.amplitudes()[0].real(), r) && close(minus.amplitudes()[1].real(), -r);
  ok &= close(phi.norm_squared(), 1.0) && close(psi.norm_squared(), 1.0);

  return {"state-amplitudes", ok, "|phi+>, |psi+>, |+>, |-> exact"};
}

CheckResult check_bell_z_correlation() {
  bool ok = true;
  for (int branch = 0; branch <= 1; ++branch) {
    ParticlePair pair(1, make_bell(BellState::PhiPlus));
    ScriptedStream home_rng({force(branch)});
    const int home = pair.measure_home(home_rng);
    ScriptedStream travel_rng({0.5});
    const int travel = pair.measure_travel(Basis::Z, travel_rng).bit;
    ok &= (home == branch) && (travel == home);
  }
  return {"bell-z-correlation", ok, "both branches: home equals travel"};
}

CheckResult check_code_identity() {
  // Two independent pairs, all four joint home branches: the user codes and
  // TP's code always cancel.
  int cases = 0;
  bool ok = true;
  for (int bi = 0; bi <= 1; ++bi) {
    for (int bj = 0; bj <= 1; ++bj) {
      ParticlePair pi(1, make_bell(BellState::PhiPlus));
      ParticlePair pj(1, make_bell(BellState::PhiPlus));
      ScriptedStream si({force(bi)});
      ScriptedStream sj({force(bj)});
      const int ci = pi.measure_home(si);
      const int cj = pj.measure_home(sj);
      ScriptedStream st({0.5});
      const int mi = pi.measure_travel(Basis::Z, st).bit;
      const int mj = pj.measure_travel(Basis::Z, st).bit;
      const int ct = tp_code(mi, mj);
      ok &= ci == bi && cj == bj && ((ci ^ cj ^ ct) == 0);
      ++cases;
    }
  }
  return {"code-identity", ok, std::to_string(cases) + "/4 joint branches cancel"};
}

CheckResult check_per_bit_comparison() {
  // All key/secret-bit combinations, all four joint code branches: the
  // recovered bit is g_i xor g_j, so the verdict matches plain equality.
  int cases = 0;
  bool ok = true;
  for (int gi = 0; gi <= 1; ++gi) {
    for (int gj = 0; gj <= 1; ++gj) {
      for (int key = 0; key <= 1; ++key) {
        for (int bi = 0; bi <= 1; ++bi) {
          for (int bj = 0; bj <= 1; ++bj) {
            ParticlePair pi(1, make_bell(BellState::PhiPlus));
            ParticlePair pj(1, make_bell(BellState::PhiPlus));
            ScriptedStream si({force(bi)});
            ScriptedStream sj({force(bj)});
            const int ci = pi.measure_home(si);
            const int cj = pj.measure_home(sj);
            ScriptedStream st({0.5});
            const int ct = tp_code(pi.measure_travel(Basis::Z, st).bit,
                                   pj.measure_travel(Basis::Z, st).bit);
            const Report rij{0, 1, {encode_report(gi, ci, key)}};
            const Report rji{1, 0, {encode_report(gj, cj, key)}};
            const int codes[1] = {ct};
            const PairOutcome out = tp_compare_pair(rij, rji, codes);
            ok &= ((rij.bits[0] ^ rji.bits[0] ^ ct) == (gi ^ gj));
            ok &= out.equal == (gi == gj);
            ok &= out.first_unequal_k == (gi == gj ? 0 : 1);
            ++cases;
          }
        }
      }
    }
  }
  return {"per-bit-comparison", ok, std::to_string(cases) + "/32 cases exact"};
}

CheckResult check_decoy_roundtrip() {
  bool ok = true;
  for (SingleState s : {SingleState::Zero, SingleState::One, SingleState::Plus,
                        SingleState::Minus}) {
    FlyingParticle photon{make_single(s)};
    ScriptedStream rng({0.5});
    const MeasurementOutcome out = photon.measure(preparation_basis(s), rng);
    ok &= out.bit == eigen_bit(s);
  }
  return {"decoy-roundtrip", ok, "4/4 states return their prepared bit"};
}

CheckResult check_strip_order() {
  bool ok = true;
  SeededStream rng(12021);
  for (int round = 0; round < 16; ++round) {
    const int length = 1 + static_cast<int>(rng.pick(8));
    const int decoys = static_cast<int>(rng.pick(9));
    auto [combined, manifest] = insert_decoys(prepare_sequence(length), decoys, rng);
    ChannelCheckResult check;  // clean by construction
    auto travel = strip_decoys(std::move(combined), manifest, check);
    ok &= static_cast<int>(travel.size()) == length;
    for (int k = 0; k < length; ++k) ok &= travel[k].pair_index() == k + 1;
  }
  return {"strip-order", ok, "16 random layouts come back in order"};
}

CheckResult check_key_symmetry() {
  bool ok = true;
  SeededStream rng(77);
  const KeyTable keys = KeyTable::uniform(4, 16, rng);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) ok &= keys.key(i, j) == keys.key(j, i);
  return {"key-symmetry", ok, "key(i,j) == key(j,i) for all pairs"};
}

CheckResult check_efficiency_formula() {
  bool ok = true;
  for (int k = 2; k <= 10; ++k) {
    const Ratio r = qubit_efficiency(k, 8);
    ok &= r.num == 1 && r.den == 2ll * k;
    const Ratio r1 = qubit_efficiency(k, 1);
    ok &= r1 == r;
  }
  return {"efficiency-formula", ok, "1/(2K) for K=2..10, independent of L"};
}

CheckResult check_mode_classification() {
  bool ok = true;
  const RoleGraph convergent{false, {0, 1, 2}, {{0, kTp}, {1, kTp}, {2, kTp}}};
  ok &= classify_mode(convergent).id == ModeId::E;
  const RoleGraph divergent{true, {}, {{kTp, 0}, {kTp, 1}}};
  ok &= classify_mode(divergent).id == ModeId::B;
  const RoleGraph one_way{false, {0}, {{0, 1}}};
  ok &= classify_mode(one_way).id == ModeId::H;
  return {"mode-classification", ok, "convergent/divergent/one-way graphs map to e, b, h"};
}

}  // namespace

std::vector<CheckResult> run_invariant_checks() {
  return {
      check_state_amplitudes(), check_bell_z_correlation(), check_code_identity(),
      check_per_bit_comparison(), check_decoy_roundtrip(), check_strip_order(),
      check_key_symmetry(), check_efficiency_formula(), check_mode_classification(),
  };
}

}  // namespace qpc

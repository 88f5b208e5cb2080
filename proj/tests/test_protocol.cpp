#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "qpc/protocol.hpp"
#include "qpc/qstate.hpp"
#include "qpc/rng.hpp"
#include "qpc/stats.hpp"

using namespace qpc;

namespace {
double force(int bit) { return bit == 0 ? 0.25 : 0.75; }
}  // namespace

TEST_CASE("secret value round-trips msb-first") {
  Secret s = Secret::from_value(5, 4);
  CHECK(s.bits == std::vector<int>{0, 1, 0, 1});
  CHECK(s.value() == 5);
  CHECK(s.to_binary_literal() == "0b0101");
  CHECK(Secret::from_value(0, 1).bits == std::vector<int>{0});
  CHECK_THROWS_AS(Secret::from_value(4, 2), std::invalid_argument);  // needs 3 bits
  CHECK_THROWS_AS(Secret::from_value(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Secret::from_value(1, 65), std::invalid_argument);
}

TEST_CASE("secret literals parse in binary and hex") {
  CHECK(parse_secret_literal("0b101", 4).bits == std::vector<int>{0, 1, 0, 1});
  CHECK(parse_secret_literal("0b00000101", 4).bits == std::vector<int>{0, 1, 0, 1});
  CHECK(parse_secret_literal("0x0a", 4).bits == std::vector<int>{1, 0, 1, 0});
  CHECK(parse_secret_literal("0xF", 4).value() == 15);
  CHECK_THROWS_AS(parse_secret_literal("0x0a", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_secret_literal("abc", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_secret_literal("0b", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_secret_literal("0b102", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_secret_literal("", 4), std::invalid_argument);
}

TEST_CASE("random secrets have the requested length and plausible balance") {
  SeededStream rng(41);
  long long ones = 0;
  const int n = 500, len = 16;
  for (int i = 0; i < n; ++i) {
    Secret s = Secret::random(len, rng);
    REQUIRE(s.length() == len);
    for (int b : s.bits) {
      REQUIRE((b == 0 || b == 1));
      ones += b;
    }
  }
  CHECK(stats::within_sigmas(ones, n * len, 0.5, 3.0));
}

TEST_CASE("key table is symmetric and validates its arguments") {
  SeededStream rng(77);
  KeyTable keys = KeyTable::uniform(4, 8, rng);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      CHECK(keys.key(i, j) == keys.key(j, i));
      CHECK(keys.key(i, j).size() == 8);
    }
  }
  CHECK_THROWS_AS(keys.key(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(keys.key(0, 4), std::out_of_range);
  SeededStream rng2(1);
  CHECK_THROWS_AS(KeyTable::uniform(1, 8, rng2), std::invalid_argument);
  CHECK_THROWS_AS(KeyTable::uniform(2, 0, rng2), std::invalid_argument);
}

TEST_CASE("prepared sequences are fresh correlated pairs indexed from 1") {
  std::vector<ParticlePair> pairs = prepare_sequence(5);
  REQUIRE(pairs.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(pairs[k].index() == k + 1);
    CHECK(fidelity(pairs[k].state(), make_bell(BellState::PhiPlus)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(prepare_sequence(0), std::invalid_argument);
}

TEST_CASE("report encoding and tp code are plain xor") {
  for (int g : {0, 1})
    for (int c : {0, 1})
      for (int k : {0, 1}) CHECK(encode_report(g, c, k) == (g ^ c ^ k));
  for (int a : {0, 1})
    for (int b : {0, 1}) CHECK(tp_code(a, b) == (a ^ b));
}

TEST_CASE("home and travel z outcomes of one pair always agree") {
  // all four joint branches, forced through the shared measurement stream
  for (int bi : {0, 1}) {
    for (int bj : {0, 1}) {
      std::vector<ParticlePair> pi = prepare_sequence(1);
      std::vector<ParticlePair> pj = prepare_sequence(1);
      ScriptedStream si({force(bi)});
      ScriptedStream sj({force(bj)});
      int ci = pi[0].measure_home(si);
      int cj = pj[0].measure_home(sj);
      int mi = pi[0].measure_travel(Basis::Z, si).bit;
      int mj = pj[0].measure_travel(Basis::Z, sj).bit;
      CHECK(ci == bi);
      CHECK(mi == bi);
      CHECK(cj == bj);
      CHECK(mj == bj);
      CHECK((ci ^ cj ^ tp_code(mi, mj)) == 0);
    }
  }
}

TEST_CASE("per-bit recovery equals the xor of the secret bits in all 32 cases") {
  for (int gi : {0, 1}) {
    for (int gj : {0, 1}) {
      for (int key : {0, 1}) {
        for (int bi : {0, 1}) {
          for (int bj : {0, 1}) {
            int ci = bi, mi = bi, cj = bj, mj = bj;  // correlated halves
            int rij = encode_report(gi, ci, key);
            int rji = encode_report(gj, cj, key);
            int ct = tp_code(mi, mj);
            CHECK((rij ^ rji ^ ct) == (gi ^ gj));
          }
        }
      }
    }
  }
}

TEST_CASE("pair comparison finds the first differing bit") {
  auto compare = [](std::uint64_t a, std::uint64_t b, int len) {
    Secret sa = Secret::from_value(a, len);
    Secret sb = Secret::from_value(b, len);
    // zero codes and keys: reports reduce to the plain secret bits
    Report rij{0, 1, sa.bits};
    Report rji{1, 0, sb.bits};
    std::vector<int> codes(len, 0);
    return tp_compare_pair(rij, rji, codes);
  };

  PairOutcome same = compare(0b101, 0b101, 3);
  CHECK(same.equal);
  CHECK(same.first_unequal_k == 0);

  PairOutcome mid = compare(0b100, 0b110, 3);
  CHECK_FALSE(mid.equal);
  CHECK(mid.first_unequal_k == 2);

  PairOutcome head = compare(0b0000, 0b1111, 4);
  CHECK_FALSE(head.equal);
  CHECK(head.first_unequal_k == 1);

  PairOutcome tail = compare(0b1110, 0b1111, 4);
  CHECK_FALSE(tail.equal);
  CHECK(tail.first_unequal_k == 4);
}

TEST_CASE("pair comparison validates report shapes") {
  Report rij{0, 1, {0, 1}};
  Report rji{1, 0, {0, 1}};
  std::vector<int> codes{0, 0};
  CHECK_NOTHROW(tp_compare_pair(rij, rji, codes));

  Report short_rji{1, 0, {0}};
  CHECK_THROWS_AS(tp_compare_pair(rij, short_rji, codes), std::invalid_argument);

  std::vector<int> short_codes{0};
  CHECK_THROWS_AS(tp_compare_pair(rij, rji, short_codes), std::invalid_argument);

  Report stranger{2, 0, {0, 1}};
  CHECK_THROWS_AS(tp_compare_pair(rij, stranger, codes), std::invalid_argument);
}

TEST_CASE("user enforces prepare, dispatch, measure order") {
  SeededStream rng(13);
  User u(0, Secret::from_value(0b1010, 4));
  CHECK_THROWS_AS(u.release_travel(), std::logic_error);
  CHECK_THROWS_AS(u.measure_home(rng), std::logic_error);
  CHECK_THROWS_AS(u.codes(), std::logic_error);

  u.prepare();
  CHECK_THROWS_AS(u.prepare(), std::logic_error);
  CHECK_THROWS_AS(u.measure_home(rng), std::logic_error);

  std::vector<ParticlePair> travel = u.release_travel();
  CHECK(travel.size() == 4);
  CHECK_THROWS_AS(u.release_travel(), std::logic_error);

  const std::vector<int>& codes = u.measure_home(rng);
  CHECK(codes.size() == 4);
  CHECK_THROWS_AS(u.measure_home(rng), std::logic_error);
}

TEST_CASE("a pair refuses a second home measurement") {
  std::vector<ParticlePair> pairs = prepare_sequence(1);
  SeededStream rng(2);
  pairs[0].measure_home(rng);
  CHECK(pairs[0].home_measured());
  CHECK_THROWS_AS(pairs[0].measure_home(rng), std::logic_error);
}

TEST_CASE("third party enforces per-channel order and report bookkeeping") {
  SeededStream rng(3);
  ThirdParty tp(2);
  CHECK_THROWS_AS(tp.accept_travel(0, {}), std::logic_error);
  CHECK_THROWS_AS(tp.measure_travel(0, rng), std::logic_error);
  CHECK_THROWS_AS(tp.confirm_receipt(2, 1), std::out_of_range);
  CHECK_THROWS_AS(tp.confirm_receipt(0, 0), std::invalid_argument);

  tp.confirm_receipt(0, 2);
  CHECK_THROWS_AS(tp.measure_travel(0, rng), std::logic_error);

  std::vector<ParticlePair> pairs = prepare_sequence(2);
  std::vector<FlyingParticle> travel;
  for (ParticlePair& p : pairs) travel.emplace_back(p);
  tp.accept_travel(0, std::move(travel));
  tp.measure_travel(0, rng);
  CHECK(tp.travel_bits(0).size() == 2);
  CHECK_THROWS_AS(tp.measure_travel(0, rng), std::logic_error);

  CHECK_FALSE(tp.has_report(0, 1));
  tp.receive_report({0, 1, {0, 1}});
  CHECK(tp.has_report(0, 1));
  CHECK_FALSE(tp.has_report(1, 0));
  CHECK(tp.report(0, 1).bits == std::vector<int>{0, 1});
  CHECK_THROWS_AS(tp.report(1, 0), std::logic_error);
}

TEST_CASE("manual two-user protocol round agrees with direct comparison") {
  SeededStream root(4242);
  for (int trial = 0; trial < 64; ++trial) {
    SeededStream rng = root.child("trial/" + std::to_string(trial));
    Secret a = Secret::random(6, rng);
    Secret b = trial % 2 == 0 ? a : Secret::random(6, rng);
    KeyTable keys = KeyTable::uniform(2, 6, rng);

    User u0(0, a), u1(1, b);
    u0.prepare();
    u1.prepare();

    ThirdParty tp(2);
    for (int i = 0; i < 2; ++i) {
      User& u = i == 0 ? u0 : u1;
      std::vector<FlyingParticle> travel;
      for (ParticlePair& p : u.release_travel()) travel.emplace_back(p);
      tp.confirm_receipt(i, travel.size());
      tp.accept_travel(i, std::move(travel));
    }

    u0.measure_home(rng);
    u1.measure_home(rng);
    tp.receive_report(u0.report_for(1, keys));
    tp.receive_report(u1.report_for(0, keys));
    tp.measure_travel(0, rng);
    tp.measure_travel(1, rng);

    PairOutcome out = tp.compare_pair(0, 1);
    CHECK(out.equal == (a == b));
    if (!out.equal) {
      int expected_k = 0;
      for (int k = 1; k <= 6; ++k) {
        if (a.bits[k - 1] != b.bits[k - 1]) {
          expected_k = k;
          break;
        }
      }
      CHECK(out.first_unequal_k == expected_k);
    }
  }
}

TEST_CASE("published reports look uniform when codes and keys are live") {
  SeededStream root(909);
  const int trials = 2000, len = 4;
  long long ones = 0;
  for (int t = 0; t < trials; ++t) {
    SeededStream rng = root.child("t/" + std::to_string(t));
    KeyTable keys = KeyTable::uniform(2, len, rng);
    User u(0, Secret::from_value(0, len));  // fixed all-zero secret
    u.prepare();
    std::vector<ParticlePair> travel = u.release_travel();
    u.measure_home(rng);
    Report r = u.report_for(1, keys);
    for (int b : r.bits) ones += b;
  }
  CHECK(stats::uniform_bit_pvalue(ones, trials * len) > 0.001);
}

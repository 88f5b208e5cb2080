#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpc/particles.hpp"

namespace qpc {

// A compared secret: L bits, most significant first. bits[k-1] is bit k.
struct Secret {
  std::vector<int> bits;

  static Secret from_value(std::uint64_t value, int bit_length);
  static Secret random(int bit_length, RandomStream& rng);

  int length() const { return static_cast<int>(bits.size()); }
  std::uint64_t value() const;  // bits.size() <= 64 only
  std::string to_binary_literal() const;

  bool operator==(const Secret&) const = default;
};

// "0b1011" or "0x2f", amount must fit in exactly bit_length bits.
Secret parse_secret_literal(std::string_view text, int bit_length);

// Pairwise keys from the trusted key oracle (the modeled QKD layer). One key
// per unordered user pair: key(i, j) and key(j, i) are the same sequence.
class KeyTable {
 public:
  static KeyTable uniform(int user_count, int bit_length, RandomStream& rng);

  const std::vector<int>& key(int i, int j) const;
  int user_count() const { return user_count_; }
  int bit_length() const { return bit_length_; }

 private:
  KeyTable(int user_count, int bit_length) : user_count_(user_count), bit_length_(bit_length) {}
  int user_count_;
  int bit_length_;
  std::map<std::pair<int, int>, std::vector<int>> entries_;
};

// Step 1: L fresh |phi+> pairs, indexed 1..L.
std::vector<ParticlePair> prepare_sequence(int pair_count);

// Step 3 helper: sigma_z on every home particle, codes in pair order.
std::vector<int> measure_home(std::span<ParticlePair> pairs, RandomStream& rng);

// R = G xor C xor K, everything a single bit.
int encode_report(int secret_bit, int code_bit, int key_bit);

// Step 5: 0 when TP's travel outcomes for the two users agree, else 1.
int tp_code(int travel_bit_i, int travel_bit_j);

struct Report {
  int from_user;
  int about_user;
  std::vector<int> bits;
};

struct PairOutcome {
  bool equal;
  int first_unequal_k;  // 1-based; 0 when equal
};

// Step 5 comparison for one user pair: walks k = 1..L and stops at the first
// bit where R_ij xor R_ji xor C_T is 1. Report and code lengths must agree.
PairOutcome tp_compare_pair(const Report& report_ij, const Report& report_ji,
                            std::span<const int> tp_codes);

// One user's protocol-facing state. The step order prepare -> release travel
// -> measure home is enforced; violations are programming errors and throw.
class User {
 public:
  User(int id, Secret secret);

  void prepare();                               // Step 1, L = secret length
  std::vector<ParticlePair> release_travel();   // Step 2 dispatch
  const std::vector<int>& measure_home(RandomStream& rng);  // Step 3
  Report report_for(int counterpart, const KeyTable& keys) const;

  int id() const { return id_; }
  const Secret& secret() const { return secret_; }
  const std::vector<int>& codes() const;

 private:
  enum class Stage { Fresh, Prepared, Dispatched, Measured };
  void require(Stage expected, const char* operation) const;

  int id_;
  Secret secret_;
  Stage stage_ = Stage::Fresh;
  std::vector<ParticlePair> pairs_;
  std::vector<int> codes_;
};

// The semi-honest third party: holds received sequences, travel outcomes and
// published reports. Per-channel order receive -> accept -> measure is
// enforced.
class ThirdParty {
 public:
  explicit ThirdParty(int user_count);

  void confirm_receipt(int user, std::size_t sequence_length);
  void accept_travel(int user, std::vector<FlyingParticle> travel);  // post-check
  const std::vector<int>& measure_travel(int user, RandomStream& rng);  // Step 4

  void receive_report(const Report& report);
  const std::vector<int>& travel_bits(int user) const;
  bool has_report(int from, int about) const;
  const Report& report(int from, int about) const;

  PairOutcome compare_pair(int i, int j) const;  // Step 5

 private:
  enum class ChannelStage { Idle, Received, Accepted, Measured };
  void check_user(int user) const;

  int user_count_;
  std::vector<ChannelStage> stages_;
  std::vector<std::vector<FlyingParticle>> travel_;
  std::vector<std::vector<int>> bits_;
  std::map<std::pair<int, int>, Report> reports_;
};

}  // namespace qpc

#include "qpc/protocol.hpp"

#include <stdexcept>

namespace qpc {
namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Secret Secret::from_value(std::uint64_t value, int bit_length) {
  if (bit_length < 1 || bit_length > 64)
    throw std::invalid_argument("from_value supports 1..64 bits");
  if (bit_length < 64 && (value >> bit_length) != 0)
    throw std::invalid_argument("value does not fit in the requested bit length");
  Secret s;
  s.bits.resize(bit_length);
  for (int k = 0; k < bit_length; ++k)
    s.bits[k] = static_cast<int>((value >> (bit_length - 1 - k)) & 1);
  return s;
}

Secret Secret::random(int bit_length, RandomStream& rng) {
  if (bit_length < 1) throw std::invalid_argument("secrets need at least one bit");
  Secret s;
  s.bits.resize(bit_length);
  for (int& b : s.bits) b = rng.bit();
  return s;
}

std::uint64_t Secret::value() const {
  if (bits.size() > 64) throw std::logic_error("secret too long for a 64-bit value");
  std::uint64_t v = 0;
  for (int b : bits) v = (v << 1) | static_cast<std::uint64_t>(b & 1);
  return v;
}

std::string Secret::to_binary_literal() const {
  std::string out = "0b";
  for (int b : bits) out += static_cast<char>('0' + (b & 1));
  return out;
}

Secret parse_secret_literal(std::string_view text, int bit_length) {
  if (bit_length < 1) throw std::invalid_argument("secrets need at least one bit");
  if (text.size() < 3 || text[0] != '0')
    throw std::invalid_argument("secret literals start with 0b or 0x");

  std::vector<int> bits;
  if (text[1] == 'b' || text[1] == 'B') {
    for (char c : text.substr(2)) {
      if (c != '0' && c != '1') throw std::invalid_argument("binary literal has non-binary digit");
      bits.push_back(c - '0');
    }
  } else if (text[1] == 'x' || text[1] == 'X') {
    for (char c : text.substr(2)) {
      int d = hex_digit(c);
      if (d < 0) throw std::invalid_argument("hex literal has non-hex digit");
      for (int shift = 3; shift >= 0; --shift) bits.push_back((d >> shift) & 1);
    }
  } else {
    throw std::invalid_argument("secret literals start with 0b or 0x");
  }

  // Trim leading zeros down to bit_length, or left-pad with zeros.
  while (static_cast<int>(bits.size()) > bit_length) {
    if (bits.front() != 0)
      throw std::invalid_argument("secret literal does not fit in the configured bit length");
    bits.erase(bits.begin());
  }
  while (static_cast<int>(bits.size()) < bit_length) bits.insert(bits.begin(), 0);

  Secret s;
  s.bits = std::move(bits);
  return s;
}

KeyTable KeyTable::uniform(int user_count, int bit_length, RandomStream& rng) {
  if (user_count < 2) throw std::invalid_argument("key table needs at least two users");
  if (bit_length < 1) throw std::invalid_argument("keys need at least one bit");
  KeyTable table(user_count, bit_length);
  for (int i = 0; i < user_count; ++i) {
    for (int j = i + 1; j < user_count; ++j) {
      std::vector<int> key(bit_length);
      for (int& b : key) b = rng.bit();
      table.entries_[{i, j}] = std::move(key);
    }
  }
  return table;
}

const std::vector<int>& KeyTable::key(int i, int j) const {
  if (i == j) throw std::invalid_argument("no key between a user and itself");
  if (i < 0 || j < 0 || i >= user_count_ || j >= user_count_)
    throw std::out_of_range("key table: user index out of range");
  return entries_.at({std::min(i, j), std::max(i, j)});
}

std::vector<ParticlePair> prepare_sequence(int pair_count) {
  if (pair_count < 1) throw std::invalid_argument("a sequence needs at least one pair");
  std::vector<ParticlePair> pairs;
  pairs.reserve(pair_count);
  for (int k = 1; k <= pair_count; ++k)
    pairs.emplace_back(k, make_bell(BellState::PhiPlus));
  return pairs;
}

std::vector<int> measure_home(std::span<ParticlePair> pairs, RandomStream& rng) {
  std::vector<int> codes;
  codes.reserve(pairs.size());
  for (ParticlePair& pair : pairs) codes.push_back(pair.measure_home(rng));
  return codes;
}

int encode_report(int secret_bit, int code_bit, int key_bit) {
  return (secret_bit ^ code_bit ^ key_bit) & 1;
}

int tp_code(int travel_bit_i, int travel_bit_j) {
  return (travel_bit_i ^ travel_bit_j) & 1;
}

PairOutcome tp_compare_pair(const Report& report_ij, const Report& report_ji,
                            std::span<const int> tp_codes) {
  if (report_ij.bits.size() != report_ji.bits.size() ||
      report_ij.bits.size() != tp_codes.size())
    throw std::invalid_argument("compare: report/code length mismatch");
  if (report_ij.from_user != report_ji.about_user ||
      report_ji.from_user != report_ij.about_user)
    throw std::invalid_argument("compare: reports are not about each other");
  for (std::size_t k = 0; k < tp_codes.size(); ++k) {
    if ((report_ij.bits[k] ^ report_ji.bits[k] ^ tp_codes[k]) & 1)
      return {false, static_cast<int>(k) + 1};
  }
  return {true, 0};
}

User::User(int id, Secret secret) : id_(id), secret_(std::move(secret)) {
  if (id < 0) throw std::invalid_argument("user ids are non-negative");
  if (secret_.length() < 1) throw std::invalid_argument("secrets need at least one bit");
}

void User::require(Stage expected, const char* operation) const {
  if (stage_ != expected)
    throw std::logic_error(std::string(operation) + ": called out of step order");
}

void User::prepare() {
  require(Stage::Fresh, "prepare");
  pairs_ = prepare_sequence(secret_.length());
  stage_ = Stage::Prepared;
}

std::vector<ParticlePair> User::release_travel() {
  require(Stage::Prepared, "release_travel");
  stage_ = Stage::Dispatched;
  return pairs_;  // handle copies sharing the pair states
}

const std::vector<int>& User::measure_home(RandomStream& rng) {
  require(Stage::Dispatched, "measure_home");
  codes_ = qpc::measure_home(pairs_, rng);
  stage_ = Stage::Measured;
  return codes_;
}

Report User::report_for(int counterpart, const KeyTable& keys) const {
  if (stage_ != Stage::Measured)
    throw std::logic_error("report_for: home particles not measured yet");
  const std::vector<int>& key = keys.key(id_, counterpart);
  if (static_cast<int>(key.size()) != secret_.length())
    throw std::invalid_argument("report_for: key length does not match the secret");
  Report r{id_, counterpart, {}};
  r.bits.reserve(secret_.length());
  for (int k = 0; k < secret_.length(); ++k)
    r.bits.push_back(encode_report(secret_.bits[k], codes_[k], key[k]));
  return r;
}

const std::vector<int>& User::codes() const {
  if (stage_ != Stage::Measured)
    throw std::logic_error("codes: home particles not measured yet");
  return codes_;
}

ThirdParty::ThirdParty(int user_count)
    : user_count_(user_count),
      stages_(user_count, ChannelStage::Idle),
      travel_(user_count),
      bits_(user_count) {
  if (user_count < 2) throw std::invalid_argument("comparison needs at least two users");
}

void ThirdParty::check_user(int user) const {
  if (user < 0 || user >= user_count_) throw std::out_of_range("user index out of range");
}

void ThirdParty::confirm_receipt(int user, std::size_t sequence_length) {
  check_user(user);
  if (stages_[user] != ChannelStage::Idle)
    throw std::logic_error("confirm_receipt: channel already received");
  if (sequence_length == 0) throw std::invalid_argument("empty quantum block");
  stages_[user] = ChannelStage::Received;
}

void ThirdParty::accept_travel(int user, std::vector<FlyingParticle> travel) {
  check_user(user);
  if (stages_[user] != ChannelStage::Received)
    throw std::logic_error("accept_travel: decoys not verified on this channel yet");
  travel_[user] = std::move(travel);
  stages_[user] = ChannelStage::Accepted;
}

const std::vector<int>& ThirdParty::measure_travel(int user, RandomStream& rng) {
  check_user(user);
  if (stages_[user] != ChannelStage::Accepted)
    throw std::logic_error("measure_travel: channel not ready (decoys still in place?)");
  bits_[user].clear();
  bits_[user].reserve(travel_[user].size());
  for (FlyingParticle& p : travel_[user])
    bits_[user].push_back(p.measure(Basis::Z, rng).bit);
  stages_[user] = ChannelStage::Measured;
  return bits_[user];
}

void ThirdParty::receive_report(const Report& report) {
  check_user(report.from_user);
  check_user(report.about_user);
  if (report.from_user == report.about_user)
    throw std::invalid_argument("a report is about a counterpart");
  reports_[{report.from_user, report.about_user}] = report;
}

const std::vector<int>& ThirdParty::travel_bits(int user) const {
  check_user(user);
  if (stages_[user] != ChannelStage::Measured)
    throw std::logic_error("travel_bits: channel not measured yet");
  return bits_[user];
}

bool ThirdParty::has_report(int from, int about) const {
  return reports_.contains({from, about});
}

const Report& ThirdParty::report(int from, int about) const {
  auto it = reports_.find({from, about});
  if (it == reports_.end()) throw std::logic_error("report not received");
  return it->second;
}

PairOutcome ThirdParty::compare_pair(int i, int j) const {
  check_user(i);
  check_user(j);
  if (i == j) throw std::invalid_argument("cannot compare a user with itself");
  if (stages_[i] != ChannelStage::Measured || stages_[j] != ChannelStage::Measured)
    throw std::logic_error("compare_pair: travel outcomes missing");
  const Report& rij = report(i, j);
  const Report& rji = report(j, i);
  const std::vector<int>& mi = bits_[i];
  const std::vector<int>& mj = bits_[j];
  if (mi.size() != mj.size())
    throw std::invalid_argument("compare_pair: travel sequences differ in length");
  std::vector<int> codes;
  codes.reserve(mi.size());
  for (std::size_t k = 0; k < mi.size(); ++k) codes.push_back(tp_code(mi[k], mj[k]));
  return tp_compare_pair(rij, rji, codes);
}

}  // namespace qpc

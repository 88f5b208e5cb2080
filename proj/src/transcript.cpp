#include "qpc/transcript.hpp"

#include <algorithm>

#include "qpc/rng.hpp"

namespace qpc {

std::string party_name(PartyId id) {
  if (id == kTp) return "TP";
  if (id == kOutside) return "OUT";
  if (id == kEavesdropper) return "EVE";
  return "P" + std::to_string(id + 1);
}

std::string_view message_kind_name(MessageKind kind) {
  switch (kind) {
    case MessageKind::KeyShare: return "key_share";
    case MessageKind::ReceiptConfirm: return "receipt_confirm";
    case MessageKind::DecoyDisclosure: return "decoy_disclosure";
    case MessageKind::DecoyResults: return "decoy_results";
    case MessageKind::ChannelVerdict: return "channel_verdict";
    case MessageKind::Report: return "report";
    case MessageKind::ComparisonResult: return "comparison_result";
    case MessageKind::AdversaryNote: return "adversary_note";
  }
  return "unknown";
}

std::string_view quantum_op_name(QuantumOp op) {
  switch (op) {
    case QuantumOp::Prepare: return "prepare";
    case QuantumOp::PrepareDecoys: return "prepare_decoys";
    case QuantumOp::Transmit: return "transmit";
    case QuantumOp::HomeMeasure: return "home_measure";
    case QuantumOp::TravelMeasure: return "travel_measure";
    case QuantumOp::DecoyMeasure: return "decoy_measure";
  }
  return "unknown";
}

bool Visibility::readable_by(PartyId observer) const {
  if (is_public) return true;
  if (observer == kOutside) return false;
  return std::find(parties.begin(), parties.end(), observer) != parties.end();
}

void Transcript::record(Message message) { messages_.push_back(std::move(message)); }

void Transcript::count_op(QuantumOp op, PartyId who, std::size_t particles) {
  op_counts_[{static_cast<int>(op), who}] += 1;
  op_particles_[static_cast<int>(op)] += particles;
}

void Transcript::record_edge(PartyId from, PartyId to) { edges_.push_back({from, to}); }

std::size_t Transcript::op_count(QuantumOp op, PartyId who) const {
  auto it = op_counts_.find({static_cast<int>(op), who});
  return it == op_counts_.end() ? 0 : it->second;
}

std::size_t Transcript::op_count(QuantumOp op) const {
  std::size_t total = 0;
  for (const auto& [key, passes] : op_counts_)
    if (key.first == static_cast<int>(op)) total += passes;
  return total;
}

std::size_t Transcript::particles(QuantumOp op) const {
  auto it = op_particles_.find(static_cast<int>(op));
  return it == op_particles_.end() ? 0 : it->second;
}

std::vector<PartyId> Transcript::parties_with(QuantumOp op) const {
  std::vector<PartyId> out;
  for (const auto& [key, count] : op_counts_)
    if (key.first == static_cast<int>(op) && count > 0) out.push_back(key.second);
  return out;
}

std::vector<const Message*> Transcript::view(PartyId observer) const {
  std::vector<const Message*> out;
  for (const Message& m : messages_)
    if (m.visibility.readable_by(observer)) out.push_back(&m);
  return out;
}

std::uint64_t Transcript::digest() const {
  std::string feed;
  feed.reserve(messages_.size() * 32);
  for (const Message& m : messages_) {
    feed += message_kind_name(m.kind);
    feed += '|';
    feed += std::to_string(m.from);
    feed += '>';
    feed += std::to_string(m.to);
    feed += m.visibility.is_public ? "|pub|" : "|prv";
    if (!m.visibility.is_public) {
      for (PartyId p : m.visibility.parties) feed += ',' + std::to_string(p);
      feed += '|';
    }
    for (int b : m.bits) feed += static_cast<char>('0' + (b & 1));
    feed += '|';
    for (std::size_t pos : m.positions) feed += std::to_string(pos) + ',';
    feed += '|';
    feed += m.note;
    feed += '\n';
  }
  for (const auto& [key, count] : op_counts_)
    feed += std::to_string(key.first) + ':' + std::to_string(key.second) + '=' +
            std::to_string(count) + ';';
  for (const auto& [op, total] : op_particles_)
    feed += std::to_string(op) + '#' + std::to_string(total) + ';';
  for (const QuantumEdge& e : edges_)
    feed += std::to_string(e.from) + "->" + std::to_string(e.to) + ';';
  return fnv1a64(feed);
}

std::string Transcript::digest_hex() const {
  static const char* hex = "0123456789abcdef";
  std::uint64_t d = digest();
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) out += hex[(d >> shift) & 0xf];
  return out;
}

}  // namespace qpc

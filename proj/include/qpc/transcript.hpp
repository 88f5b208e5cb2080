#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qpc {

// Classical parties. Users are 0-based indices; negative ids are the fixed
// roles.
using PartyId = int;
inline constexpr PartyId kTp = -1;
inline constexpr PartyId kOutside = -2;       // passive outside observer
inline constexpr PartyId kEavesdropper = -3;  // outside attacker

std::string party_name(PartyId id);  // "P1".., "TP", "EVE", "OUT"

enum class MessageKind {
  KeyShare,         // pairwise key material, visible to the two holders only
  ReceiptConfirm,   // TP: quantum block arrived
  DecoyDisclosure,  // sender: decoy positions and bases
  DecoyResults,     // TP: measured decoy bits
  ChannelVerdict,   // sender: clean or abort
  Report,           // published R bits
  ComparisonResult, // TP to the compared pair
  AdversaryNote,    // attacker's private record of intercepted outcomes
};

std::string_view message_kind_name(MessageKind kind);

struct Visibility {
  bool is_public = false;
  std::vector<PartyId> parties;  // readers when not public

  static Visibility public_channel() { return {true, {}}; }
  static Visibility restricted(std::vector<PartyId> parties) {
    return {false, std::move(parties)};
  }
  bool readable_by(PartyId observer) const;
};

struct Message {
  MessageKind kind;
  PartyId from;
  PartyId to;
  Visibility visibility;
  std::vector<int> bits;               // payload bits, if any
  std::vector<std::size_t> positions;  // slot positions, if any
  std::string note;                    // short tag ("about P2", "clean", ...)
};

enum class QuantumOp { Prepare, PrepareDecoys, Transmit, HomeMeasure, TravelMeasure, DecoyMeasure };

std::string_view quantum_op_name(QuantumOp op);

struct QuantumEdge {
  PartyId from;
  PartyId to;
};

// Ordered record of one protocol session: classical messages plus
// quantum-side bookkeeping (operation counts, particle counts, transmission
// edges). The privacy checks project it per observer.
class Transcript {
 public:
  void record(Message message);
  void count_op(QuantumOp op, PartyId who, std::size_t particles = 0);
  void record_edge(PartyId from, PartyId to);

  const std::vector<Message>& messages() const { return messages_; }
  std::size_t op_count(QuantumOp op, PartyId who) const;
  std::size_t op_count(QuantumOp op) const;   // summed over parties
  std::size_t particles(QuantumOp op) const;  // summed over parties
  std::vector<PartyId> parties_with(QuantumOp op) const;
  const std::vector<QuantumEdge>& edges() const { return edges_; }

  // Messages the observer can read: its own plus public ones. kOutside sees
  // only the public channel.
  std::vector<const Message*> view(PartyId observer) const;

  std::uint64_t digest() const;
  std::string digest_hex() const;  // "fnv1a64:<16 hex digits>"

 private:
  std::vector<Message> messages_;
  std::map<std::pair<int, int>, std::size_t> op_counts_;  // (op, party) -> passes
  std::map<int, std::size_t> op_particles_;               // op -> particle total
  std::vector<QuantumEdge> edges_;
};

}  // namespace qpc

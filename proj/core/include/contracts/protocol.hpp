#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contracts/commlab.hpp"
#include "contracts/oracle.hpp"

namespace contracts {

enum class Party { Alice, Bob };

std::string to_string(Party p);

struct Message {
  Party sender;
  std::uint64_t bits = 0;
  std::string tag;
};

// Alternating message log plus shared best-response calls.
class Transcript {
 public:
  explicit Transcript(std::uint64_t br_budget = 0) : br_budget_(br_budget) {}

  void send(Party sender, std::uint64_t bits, std::string tag);
  // Charges one shared best-response call; throws BudgetError past the budget.
  void charge_best_response();

  const std::vector<Message>& messages() const { return messages_; }
  std::uint64_t total_bits() const { return total_bits_; }
  std::uint64_t bits_from(Party p) const;
  std::uint64_t best_response_calls() const { return br_calls_; }
  std::uint64_t best_response_budget() const { return br_budget_; }
  // Totals equal the sums over messages.
  bool consistent() const;

 private:
  std::vector<Message> messages_;
  std::uint64_t total_bits_ = 0;
  std::uint64_t br_calls_ = 0;
  std::uint64_t br_budget_ = 0;
};

// Numbers travel at a fixed declared width.
struct NumberChannel {
  int width_bits = kDefaultPrecision;

  // Serializes values from `sender`; each number costs width_bits.
  std::vector<Real> send(Transcript& tr, Party sender, const std::vector<Real>& values,
                         const std::string& tag) const;
  // Throws ProtocolError unless the payload holds exactly `expected` numbers.
  static void expect(const std::vector<Real>& payload, std::size_t expected, const std::string& tag);
};

enum class ProtocolKind {
  TrivialAdditive,  // Bob ships the n additive cost weights
  Exhaustive,       // Bob ships all 2^n costs
  SharedOracle,     // best responses straight from the shared oracle
  AugmentedBestResponse,  // best responses from shared base knowledge plus Bob's values
};

std::string to_string(ProtocolKind k);
ProtocolKind protocol_kind_from_string(const std::string& s);

struct ProtocolAnswer {
  Real alpha;                       // optimal contract (solving protocols)
  ActionSet set;
  std::vector<ActionSet> best_responses;  // per queried contract (best-response protocols)
};

struct ProtocolRun {
  ProtocolAnswer answer;
  Transcript transcript;
  std::vector<std::uint64_t> bits_per_query;
};

struct ProtocolInput {
  // Alice holds f, Bob holds c.
  const ContractInstance* instance = nullptr;
  // Required for AugmentedBestResponse.
  const AugmentedCCInstance* augmented = nullptr;
  // Contracts to answer best responses for (best-response protocols).
  std::vector<Real> queries;
  int width_bits = 0;  // 0: the instance's precision
  std::uint64_t br_budget = 0;
};

ProtocolRun run_protocol(ProtocolKind kind, const ProtocolInput& input);

}  // namespace contracts

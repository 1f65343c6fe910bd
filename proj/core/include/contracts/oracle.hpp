#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contracts/set_function.hpp"

namespace contracts {

enum class QueryKind { Value, Demand, Supply, BestResponse };

struct QueryRecord {
  QueryKind kind;
  Mask answer;
  std::string argument;
};

// Per-caller query counters. Not synchronized: keep one per thread.
struct QueryLedger {
  std::uint64_t value_queries = 0;
  std::uint64_t demand_queries = 0;
  std::uint64_t supply_queries = 0;
  std::uint64_t best_response_queries = 0;
  bool keep_log = false;
  std::vector<QueryRecord> log;

  std::uint64_t total() const {
    return value_queries + demand_queries + supply_queries + best_response_queries;
  }
  void reset() {
    bool keep = keep_log;
    *this = QueryLedger{};
    keep_log = keep;
  }
  void merge(const QueryLedger& o);
};

enum class TieBreak { HigherFThenLowerIndex };

struct ContractInstance {
  int n = 0;
  SetFunction f;
  SetFunction c;
  int precision_bits = kDefaultPrecision;
  TieBreak tie_break = TieBreak::HigherFThenLowerIndex;
  std::string name;

  ContractInstance() = default;
  ContractInstance(SetFunction f, SetFunction c, int precision_bits = kDefaultPrecision,
                   std::string name = "");
  // Throws unless f >= 0 and c >= 0 with c(empty) = 0.
  void check_basic() const;
};

Real value(const SetFunction& v, const ActionSet& s, QueryLedger* ledger = nullptr);

// argmax f(S) - p(S); ties to higher f, then lower index.
ActionSet demand(const SetFunction& f, const PriceVector& p, QueryLedger* ledger = nullptr);
// argmax p(S) - c(S); ties to higher c, then lower index.
ActionSet supply(const SetFunction& c, const PriceVector& p, QueryLedger* ledger = nullptr);
// argmax alpha f(S) - c(S); ties to higher f, then lower index.
ActionSet best_response(const ContractInstance& inst, const Real& alpha,
                        QueryLedger* ledger = nullptr);

// Bits at which alpha f(S) - c(S) is exact for table values of ordinary
// magnitude, so near-ties are decided by the true utilities.
int utility_precision(const Real& alpha, const SetFunction& f, const SetFunction& c);

// Unaccounted best response over explicit tables (used by solvers that are
// allowed full knowledge).
Mask best_response_mask(const SetFunction& f, const SetFunction& c, const Real& alpha);

PriceVector demand_prices_for_contract(const SetFunction& c, const Real& alpha);
PriceVector supply_prices_for_contract(const SetFunction& f, const Real& alpha);

}  // namespace contracts

#pragma once

#include <vector>

#include "contracts/oracle.hpp"

namespace contracts {

Real agent_utility(const ContractInstance& inst, const Real& alpha, const ActionSet& s);
Real principal_utility(const ContractInstance& inst, const Real& alpha, const ActionSet& s);

struct Breakpoint {
  Real alpha;
  ActionSet set;
  Real f;
  Real c;
  Real agent_utility;
  Real principal_utility;
};

struct BreakpointTable {
  std::vector<Breakpoint> rows;

  std::size_t size() const { return rows.size(); }
  const Breakpoint& operator[](std::size_t k) const { return rows[k]; }
  // Best response for alpha, read off the table.
  const Breakpoint& segment(const Real& alpha) const;
};

enum class EnumerationMethod {
  Envelope,  // upper envelope of the 2^n utility lines, O(2^n log 2^n)
  Scan,      // next breakpoint by a full scan of all sets per step, O(4^n)
};

// Critical values from alpha = 0 up to 1. A candidate reached exactly at
// alpha = 1 is kept.
BreakpointTable enumerate_breakpoints(const ContractInstance& inst,
                                      EnumerationMethod method = EnumerationMethod::Envelope);

struct ContractSolution {
  Real alpha_star;
  ActionSet set_star;
  Real principal_utility;
  std::vector<Breakpoint> all_maximizers;
  Real tolerance;
  bool unique() const { return all_maximizers.size() == 1; }
};

Real maximizer_tolerance(int precision_bits);

ContractSolution optimal_contract(const ContractInstance& inst);
ContractSolution optimal_contract(const ContractInstance& inst, const BreakpointTable& table);

struct FptasResult {
  Real alpha;
  ActionSet set;
  Real principal_utility;
  Real welfare_opt;
  long grid_steps = 0;  // k ranges over 0..grid_steps
  QueryLedger queries;
};

// Geometric contract grid below 1 using value and best-response queries only.
FptasResult fptas(const ContractInstance& inst, const Real& epsilon);

struct AlphaBracket {
  Real alpha_min;
  Real alpha_max;
};

AlphaBracket alpha_bracket(int n, const Real& opt, const Real& j_star_cost);

}  // namespace contracts

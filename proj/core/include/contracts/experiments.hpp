#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "contracts/commlab.hpp"
#include "contracts/protocol.hpp"
#include "contracts/sparse.hpp"

namespace contracts {

// Random normalized monotone function: each v(S) is the largest value over
// S minus one action plus a uniform [0, 1) increment.
SetFunction random_monotone_function(int n, std::mt19937_64& rng);
ContractInstance random_monotone_instance(int n, std::mt19937_64& rng);

// Oracle-equivalence sweep for the value-query simulation of demand (on the
// submodular equal-revenue family) or supply (on the supermodular-cost family).
struct SimulationConfig {
  ApproxKind side = ApproxKind::Demand;
  int n = 6;
  std::size_t random_prices = 1000;
  std::uint64_t seed = 1;
  bool breakpoint_prices = true;
};

struct SimulationStats {
  SimulationConfig config;
  Real sigma;
  Real epsilon;
  std::size_t members = 0;
  std::size_t cases = 0;
  std::size_t agree = 0;
  std::uint64_t max_queries = 0;
  std::uint64_t total_queries = 0;
  std::size_t max_candidates = 0;
  std::size_t query_bound = 0;  // 2(n+1)(n+2)
  std::vector<std::string> failures;  // first few

  bool ok() const { return agree == cases && max_queries <= query_bound; }
};

SimulationStats simulation_experiment(const SimulationConfig& cfg);

// Sparse demand (or supply) census over random prices.
struct SparseSweepStats {
  ApproxKind side = ApproxKind::Demand;
  int n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Real sigma;
  std::size_t max_size = 0;
  std::size_t size_bound = 0;
  std::size_t lemma_violations = 0;
  std::size_t census_violations = 0;
  std::size_t partition_failures = 0;
  std::vector<std::size_t> max_census;  // by minimal ambiguous action, 1..n+1
  std::vector<std::string> failures;

  bool ok() const {
    return max_size <= size_bound && lemma_violations == 0 && census_violations == 0 &&
           partition_failures == 0;
  }
};

// Demand side probes inst.f, supply side probes inst.c.
SparseSweepStats sparse_sweep(const ContractInstance& inst, ApproxKind side, const Real& sigma,
                              std::size_t trials, std::uint64_t seed);
// On the submodular-reward (demand) or supermodular-cost (supply) equal-revenue
// instance with the matching sparseness bound.
SparseSweepStats sparse_sweep(ApproxKind side, int n, std::size_t trials, std::uint64_t seed);

struct CCSweepConfig {
  CCVariant variant = CCVariant::SubSub;
  int n = 4;
  std::size_t random_pairs = 0;  // 0: every pair (only for small n)
  std::uint64_t seed = 1;
  bool invariants = true;
  bool protocol = false;
  int alpha_grid = 32;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CCPairRecord {
  std::size_t id = 0;
  std::string x_f;
  std::string x_c;
  bool disjoint = true;
  bool extra_in_optimum = false;
  bool matches = false;
  bool structure_ok = false;
  bool margin_applicable = false;
  bool margin_ok = true;
  bool projection_ok = true;
  bool sparse_ok = true;
  std::size_t max_br_size = 0;
  bool protocol_ok = true;
  std::size_t protocol_queries = 0;
  std::uint64_t protocol_bits = 0;
  std::uint64_t max_bits_per_query = 0;
  std::string error;
};

struct CCSweepStats {
  CCSweepConfig config;
  std::shared_ptr<const CCBase> base;
  CCInvariantReport sandwich;
  std::vector<CCPairRecord> records;
  std::size_t mismatches = 0;
  std::size_t mismatches_intersecting = 0;
  std::size_t mismatches_disjoint = 0;
  std::size_t disjoint_pairs = 0;
  std::size_t structure_failures = 0;
  std::size_t margin_failures = 0;
  std::size_t projection_failures = 0;
  std::size_t sparse_failures = 0;
  std::size_t protocol_failures = 0;
  std::uint64_t bits_per_query_bound = 0;  // 2 * 2(n+1)(n+2) * B

  bool reduction_ok() const { return mismatches == 0 && structure_failures == 0; }
  bool invariants_ok() const {
    return sandwich.sandwich_ok && margin_failures == 0 && projection_failures == 0 &&
           sparse_failures == 0;
  }
  bool protocol_ok() const { return protocol_failures == 0; }
};

// Pairs are drawn up front from the seed; odd-numbered random pairs are made
// disjoint so both answers are exercised.
std::vector<std::pair<SpecialSetVector, SpecialSetVector>> cc_pairs(int n, std::size_t random_pairs,
                                                                    std::uint64_t seed);
CCSweepStats cc_sweep(const CCSweepConfig& cfg);

}  // namespace contracts

#include "contracts/experiments.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "contracts/constructions.hpp"
#include "contracts/errors.hpp"
#include "contracts/perturb.hpp"

namespace contracts {

SetFunction random_monotone_function(int n, std::mt19937_64& rng) {
  check_ground_size(n);
  std::uniform_real_distribution<double> step(0.0, 1.0);
  std::vector<Real> t(universe_size(n));
  t[0] = Real(0);
  for (Mask s = 1; s < t.size(); ++s) {
    Real floor_val(0);
    for (Mask rest = s; rest; rest &= rest - 1) floor_val = max(floor_val, t[s & ~(rest & -rest)]);
    t[s] = floor_val + Real(step(rng));
  }
  return SetFunction(n, std::move(t), StructureClass::GeneralMonotone);
}

ContractInstance random_monotone_instance(int n, std::mt19937_64& rng) {
  SetFunction f = random_monotone_function(n, rng);
  SetFunction c = random_monotone_function(n, rng);
  return ContractInstance(std::move(f), std::move(c), working_precision(),
                          "random-monotone-" + std::to_string(n));
}

namespace {

struct SideSetup {
  ContractInstance base;
  Real sigma;
  PerturbDirection direction;
};

SideSetup side_setup(ApproxKind side, int n) {
  if (side == ApproxKind::Demand) {
    auto er = equal_revenue_submod_f(n);
    return {er.instance, sigma_bound_demand(er).value, PerturbDirection::RewardBonus};
  }
  if (side == ApproxKind::Supply) {
    auto er = equal_revenue_supmod_c(n);
    return {er.instance, sigma_bound_supply(er).value, PerturbDirection::CostDiscount};
  }
  throw ParameterError("sweep side must be demand or supply");
}

void note(std::vector<std::string>& out, std::string msg) {
  if (out.size() < 16) out.push_back(std::move(msg));
}

std::string price_str(const PriceVector& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.p.size(); ++i) s += (i ? "," : "") + p.p[i].str(6);
  return s + ")";
}

}  // namespace

SimulationStats simulation_experiment(const SimulationConfig& cfg) {
  SimulationStats st;
  st.config = cfg;
  const bool demand_side = cfg.side == ApproxKind::Demand;
  SideSetup setup = side_setup(cfg.side, cfg.n);
  PrecisionGuard guard(std::max(working_precision(), setup.base.precision_bits));
  PerturbedFamily family(setup.base, setup.direction, std::nullopt, setup.sigma);
  st.sigma = setup.sigma;
  st.epsilon = family.epsilon();
  st.query_bound = sparse_size_bound(cfg.n);
  st.members = family.size();

  std::vector<PriceVector> base_prices;
  if (cfg.breakpoint_prices) {
    auto table = enumerate_breakpoints(setup.base);
    for (const auto& row : table.rows) {
      if (row.alpha.is_zero()) continue;
      base_prices.push_back(demand_side ? demand_prices_for_contract(setup.base.c, row.alpha)
                                        : supply_prices_for_contract(setup.base.f, row.alpha));
    }
  }
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t k = 0; k < cfg.random_prices; ++k) base_prices.push_back(random_prices(cfg.n, rng));

  const SetFunction& known = demand_side ? setup.base.f : setup.base.c;
  for (const auto member : family) {
    const SetFunction& hidden = demand_side ? member.instance.f : member.instance.c;
    std::vector<PriceVector> prices = base_prices;
    if (cfg.breakpoint_prices) {
      // The hidden instance's own breakpoints sit right at its indifference points.
      auto table = enumerate_breakpoints(member.instance);
      for (const auto& row : table.rows) {
        if (row.alpha.is_zero()) continue;
        prices.push_back(demand_side ? demand_prices_for_contract(member.instance.c, row.alpha)
                                     : supply_prices_for_contract(member.instance.f, row.alpha));
      }
    }
    for (const PriceVector& p : prices) {
      SimulatedAnswer sim = demand_side ? simulate_demand_by_values(known, hidden, p, st.epsilon)
                                        : simulate_supply_by_values(known, hidden, p, st.epsilon);
      ActionSet truth = demand_side ? demand(hidden, p) : supply(hidden, p);
      ++st.cases;
      st.total_queries += sim.value_queries;
      st.max_queries = std::max(st.max_queries, sim.value_queries);
      st.max_candidates = std::max(st.max_candidates, sim.candidates);
      if (sim.answer == truth) {
        ++st.agree;
      } else {
        note(st.failures, "k=" + std::to_string(member.k) + " p=" + price_str(p) + ": simulated " +
                              sim.answer.str() + ", true " + truth.str());
      }
    }
  }
  return st;
}

SparseSweepStats sparse_sweep(ApproxKind side, int n, std::size_t trials, std::uint64_t seed) {
  SideSetup setup = side_setup(side, n);
  return sparse_sweep(setup.base, side, setup.sigma, trials, seed);
}

SparseSweepStats sparse_sweep(const ContractInstance& inst, ApproxKind side, const Real& sigma,
                              std::size_t trials, std::uint64_t seed) {
  if (side == ApproxKind::BestResponse) throw ParameterError("sweep side must be demand or supply");
  const int n = inst.n;
  SparseSweepStats st;
  st.side = side;
  st.n = n;
  st.trials = trials;
  st.seed = seed;
  PrecisionGuard guard(std::max(working_precision(), inst.precision_bits));
  st.sigma = sigma;
  st.size_bound = sparse_size_bound(n);
  st.max_census.assign(n + 2, 0);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    PriceVector p = random_prices(n, rng);
    ApproxArgmaxSet d = side == ApproxKind::Demand ? approx_demand(inst.f, p, st.sigma)
                                                   : approx_supply(inst.c, p, st.sigma);
    st.max_size = std::max(st.max_size, d.size());
    if (d.size() > st.size_bound) note(st.failures, "trial " + std::to_string(k) + ": size " + std::to_string(d.size()));
    std::vector<AmbiguityInterval> iv;
    try {
      iv = ambiguity_intervals(d);
    } catch (const InvariantError& e) {
      ++st.lemma_violations;
      note(st.failures, "trial " + std::to_string(k) + ": " + e.what());
      continue;
    }
    try {
      Census c = minimal_ambiguous_census(d, iv);
      std::size_t sum = 0;
      for (int i = 1; i <= n + 1; ++i) {
        st.max_census[i] = std::max(st.max_census[i], c.count[i]);
        sum += c.count[i];
      }
      if (sum != d.size()) ++st.partition_failures;
    } catch (const InvariantError& e) {
      ++st.census_violations;
      note(st.failures, "trial " + std::to_string(k) + ": " + e.what());
    }
  }
  return st;
}

std::vector<std::pair<SpecialSetVector, SpecialSetVector>> cc_pairs(int n, std::size_t random_pairs,
                                                                    std::uint64_t seed) {
  std::vector<std::pair<SpecialSetVector, SpecialSetVector>> pairs;
  const std::size_t positions = half_size_sets(n).size();
  if (random_pairs == 0) {
    if (positions > 8) throw ParameterError("exhaustive sweep needs n <= 4");
    const std::uint64_t words = std::uint64_t{1} << positions;
    for (std::uint64_t a = 0; a < words; ++a) {
      for (std::uint64_t b = 0; b < words; ++b) {
        pairs.emplace_back(SpecialSetVector::from_word(n, a), SpecialSetVector::from_word(n, b));
      }
    }
    return pairs;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < random_pairs; ++k) {
    auto a = SpecialSetVector::random(n, rng);
    auto b = SpecialSetVector::random(n, rng);
    if (k % 2 == 1) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (a[j]) b.set(j, false);
      }
    }
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

namespace {

CCPairRecord run_pair(const CCSweepConfig& cfg, const std::shared_ptr<const CCBase>& base, std::size_t id,
                      const SpecialSetVector& x_f, const SpecialSetVector& x_c) {
  CCPairRecord r;
  r.id = id;
  r.x_f = x_f.str();
  r.x_c = x_c.str();
  r.disjoint = disjointness(x_f, x_c);
  try {
    AugmentedCCInstance aug = build_augmented(base, x_f, x_c, false);
    r.structure_ok = verify_structure(aug.instance.f, aug.instance.f.declared_class()).ok() &&
                     verify_structure(aug.instance.c, aug.instance.c.declared_class()).ok();
    ReductionOutcome out = run_reduction(aug);
    r.extra_in_optimum = out.extra_in_optimum;
    r.matches = out.matches;
    if (cfg.invariants) {
      CCInvariantReport inv = check_cc_invariants(aug, out, cfg.alpha_grid);
      r.margin_applicable = inv.margin_applicable;
      r.margin_ok = inv.margin_ok;
      r.projection_ok = inv.projection_ok;
      r.sparse_ok = inv.sparse_ok;
      r.max_br_size = inv.max_br_size;
    }
    if (cfg.protocol) {
      ProtocolInput in;
      in.augmented = &aug;
      in.queries = probe_contracts(aug, cfg.alpha_grid);
      ProtocolRun run = run_protocol(ProtocolKind::AugmentedBestResponse, in);
      const std::uint64_t bound =
          2 * static_cast<std::uint64_t>(sparse_size_bound(base->n)) * aug.instance.precision_bits;
      r.protocol_queries = in.queries.size();
      r.protocol_bits = run.transcript.total_bits();
      for (std::size_t q = 0; q < in.queries.size(); ++q) {
        r.max_bits_per_query = std::max(r.max_bits_per_query, run.bits_per_query[q]);
        if (!(run.answer.best_responses[q] == best_response(aug.instance, in.queries[q]))) {
          r.protocol_ok = false;
        }
      }
      if (r.max_bits_per_query > bound) r.protocol_ok = false;
    }
  } catch (const ContractError& e) {
    r.error = e.what();
    r.structure_ok = false;
    r.protocol_ok = !cfg.protocol;
  }
  return r;
}

}  // namespace

CCSweepStats cc_sweep(const CCSweepConfig& cfg) {
  CCSweepStats st;
  st.config = cfg;
  st.base = build_cc_base(cfg.variant, cfg.n);
  st.sandwich = check_revenue_sandwich(*st.base);
  auto pairs = cc_pairs(cfg.n, cfg.random_pairs, cfg.seed);
  st.records.resize(pairs.size());

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, pairs.size())));
  const int prec = working_precision();
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < threads; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      PrecisionGuard guard(prec);
      for (std::size_t k = w; k < pairs.size(); k += threads) {
        st.records[k] = run_pair(cfg, st.base, k, pairs[k].first, pairs[k].second);
      }
    }));
  }
  for (auto& j : jobs) j.get();

  for (const auto& r : st.records) {
    st.disjoint_pairs += r.disjoint;
    if (!r.matches) {
      ++st.mismatches;
      ++(r.disjoint ? st.mismatches_disjoint : st.mismatches_intersecting);
    }
    st.structure_failures += !r.structure_ok;
    st.margin_failures += !r.margin_ok;
    st.projection_failures += !r.projection_ok;
    st.sparse_failures += !r.sparse_ok;
    st.protocol_failures += !r.protocol_ok;
  }
  if (!st.records.empty() && cfg.protocol) {
    st.bits_per_query_bound = 0;
    // Width follows the augmented instance's precision, identical across pairs.
    AugmentedCCInstance probe = build_augmented(st.base, pairs.front().first, pairs.front().second, false);
    st.bits_per_query_bound =
        2 * static_cast<std::uint64_t>(sparse_size_bound(cfg.n)) * probe.instance.precision_bits;
  }
  return st;
}

}  // namespace contracts

#include "commands.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "contracts/constructions.hpp"
#include "contracts/experiments.hpp"
#include "contracts/perturb.hpp"
#include "contracts/structure.hpp"
#include "instance_io.hpp"

namespace contracts::cli {

using io::ordered_json;

Params::Params(const std::vector<std::string>& items) {
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::replace(key.begin(), key.end(), '-', '_');
    if (!values_.emplace(key, item.substr(eq + 1)).second) throw UsageError("duplicate parameter " + key);
  }
}

std::string Params::str(const std::string& key, const std::string& fallback) {
  used_.insert(key);
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Params::required(const std::string& key) {
  used_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("missing parameter " + key);
  return it->second;
}

long Params::integer(const std::string& key, long fallback) {
  if (!has(key)) {
    used_.insert(key);
    return fallback;
  }
  std::string v = str(key, "");
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError("parameter " + key + " must be an integer, got '" + v + "'");
  }
}

bool Params::flag(const std::string& key, bool fallback) {
  if (!has(key)) {
    used_.insert(key);
    return fallback;
  }
  std::string v = str(key, "");
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw UsageError("parameter " + key + " must be a boolean, got '" + v + "'");
}

void Params::finish() const {
  for (const auto& [k, v] : values_) {
    if (!used_.count(k)) throw UsageError("unknown parameter " + k);
  }
}

namespace {

std::string normalize(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

int emit(const GlobalOptions& g, const ordered_json& j, const std::string& csv, bool ok) {
  if (g.format == "csv") {
    io::write_text(g.out, csv);
  } else {
    io::write_text(g.out, j.dump(2) + "\n");
  }
  return ok ? kOk : kCheckFailed;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ordered_json real_pair(const Real& r) { return {{"exact", r.exact()}, {"approx", r.to_double()}}; }

std::string dec(const Real& r) { return r.str(17); }

std::vector<Real> parse_list(const std::string& s) {
  std::vector<Real> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in list '" + s + "'");
    out.push_back(Real::parse_exact(item));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

SpecialSetVector special_vector(Params& p, const std::string& key, int n) {
  if (!p.has(key)) {
    p.str(key, "");
    return SpecialSetVector(n);
  }
  return io::special_set_vector_from_string(n, p.str(key, ""));
}

PerturbDirection direction_from(const std::string& s) {
  if (s == "reward") return PerturbDirection::RewardBonus;
  if (s == "cost") return PerturbDirection::CostDiscount;
  throw UsageError("direction must be reward or cost, got '" + s + "'");
}

ApproxKind side_from(const std::string& s) {
  if (s == "demand") return ApproxKind::Demand;
  if (s == "supply") return ApproxKind::Supply;
  throw UsageError("side must be demand or supply, got '" + s + "'");
}

ordered_json breakpoint_json(const Breakpoint& b) {
  return {{"alpha", real_pair(b.alpha)},
          {"set", b.set.str()},
          {"index", b.set.mask()},
          {"f", real_pair(b.f)},
          {"c", real_pair(b.c)},
          {"agent_utility", real_pair(b.agent_utility)},
          {"principal_utility", real_pair(b.principal_utility)}};
}

std::string breakpoint_csv(const BreakpointTable& table) {
  std::ostringstream os;
  os << "row,alpha,index,set,f,c,agent_utility,principal_utility,alpha_exact\n";
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& b = table[k];
    os << k << ',' << dec(b.alpha) << ',' << b.set.mask() << ',' << csv_escape(b.set.str()) << ','
       << dec(b.f) << ',' << dec(b.c) << ',' << dec(b.agent_utility) << ',' << dec(b.principal_utility)
       << ',' << b.alpha.exact() << '\n';
  }
  return os.str();
}

ordered_json structure_json(const StructureReport& r) {
  ordered_json v = ordered_json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"kind", to_string(x.kind)}, {"s", x.s}, {"t", x.t}, {"action", x.action},
                 {"amount", x.amount.str(8)}});
  }
  return {{"class", to_string(r.checked)},
          {"ok", r.ok()},
          {"checks", r.triples_checked},
          {"violation_count", r.violation_count},
          {"violations", v}};
}

}  // namespace

int cmd_construct(const GlobalOptions& g, const std::string& raw_name, Params p) {
  const std::string name = normalize(raw_name);
  const int prec = g.precision_bits;
  ContractInstance inst;
  std::optional<io::CCRecipe> recipe;
  ordered_json extra = ordered_json::object();

  if (name == "equal_revenue_submod_f") {
    inst = build_equal_revenue_submod_f(static_cast<int>(p.integer("n", 3)), prec);
  } else if (name == "equal_revenue_supmod_c") {
    inst = build_equal_revenue_supmod_c(static_cast<int>(p.integer("n", 3)), prec);
  } else if (name == "rounded") {
    const int n = static_cast<int>(p.integer("n", 2));
    auto r = build_rounded(n, static_cast<int>(p.integer("kappa", 0)));
    inst = r.instance;
    extra["kappa"] = r.kappa;
    extra["alpha_rounded"] = io::reals_json(r.alpha_rounded);
    extra["beta"] = io::reals_json(r.beta);
  } else if (name == "perturbed") {
    const std::string base_name = normalize(p.str("base", "equal_revenue_submod_f"));
    const int n = static_cast<int>(p.integer("n", 3));
    ContractInstance base;
    std::string dir_default;
    if (base_name == "equal_revenue_submod_f" || base_name == "submod_f") {
      base = build_equal_revenue_submod_f(n, prec);
      dir_default = "reward";
    } else if (base_name == "equal_revenue_supmod_c" || base_name == "supmod_c") {
      base = build_equal_revenue_supmod_c(n, prec);
      dir_default = "cost";
    } else {
      throw UsageError("perturbed base must be equal_revenue_submod_f or equal_revenue_supmod_c");
    }
    PrecisionGuard guard(std::max(working_precision(), base.precision_bits));
    const PerturbDirection dir = direction_from(p.str("direction", dir_default));
    const Mask k = static_cast<Mask>(p.integer("k", 1));
    auto budget = dir == PerturbDirection::RewardBonus ? epsilon_bound_reward(base) : epsilon_bound_cost(base);
    Real eps = p.has("epsilon") ? Real::parse_exact(p.str("epsilon", "")) : budget.default_epsilon();
    auto member = make_perturbed(base, k, eps, budget);
    inst = member.instance;
    extra["k"] = k;
    extra["epsilon"] = real_pair(member.epsilon);
    extra["epsilon_max"] = real_pair(budget.epsilon_max);
  } else if (name == "cc_augmented") {
    const CCVariant v = cc_variant_from_string(p.str("variant", "sub-sub"));
    const int n = static_cast<int>(p.integer("n", 4));
    auto x_f = special_vector(p, "x_f", n);
    auto x_c = special_vector(p, "x_c", n);
    CCOptions opts;
    if (prec > 0) opts.precision_bits = prec;
    auto aug = build_augmented(v, n, x_f, x_c, opts);
    inst = aug.instance;
    recipe = io::CCRecipe{v, x_f.str(), x_c.str(), aug.base->precision_bits};
    extra["z"] = real_pair(aug.base->z.z);
    extra["delta"] = real_pair(aug.base->delta);
    extra["sigma"] = real_pair(aug.base->sigma);
  } else if (name == "inapprox") {
    const CCVariant v = cc_variant_from_string(p.str("variant", "sub-sub"));
    const int n = static_cast<int>(p.integer("n", 4));
    inst = inapprox_table(v, n, special_vector(p, "x_f", n), special_vector(p, "x_c", n));
  } else if (name == "random_monotone") {
    std::mt19937_64 rng(g.seed);
    PrecisionGuard guard(prec > 0 ? prec : working_precision());
    inst = random_monotone_instance(static_cast<int>(p.integer("n", 4)), rng);
    extra["seed"] = g.seed;
  } else if (name == "additive") {
    PrecisionGuard guard(prec > 0 ? prec : working_precision());
    auto fw = parse_list(p.required("f"));
    auto cw = parse_list(p.required("c"));
    if (fw.size() != cw.size()) throw UsageError("f and c weights differ in length");
    inst = ContractInstance(SetFunction::additive(fw), SetFunction::additive(cw), working_precision(), "additive");
  } else {
    throw UsageError("unknown construction '" + raw_name + "'");
  }
  p.finish();

  ordered_json j = io::instance_json(inst, recipe);
  if (!extra.empty()) j["construction"] = extra;
  std::ostringstream csv;
  csv << "index,set,f,c,f_exact,c_exact\n";
  for (Mask t = 0; t < inst.f.size(); ++t) {
    csv << t << ',' << csv_escape(ActionSet(inst.n, t).str()) << ',' << dec(inst.f(t)) << ','
        << dec(inst.c(t)) << ',' << inst.f(t).exact() << ',' << inst.c(t).exact() << '\n';
  }
  return emit(g, j, csv.str(), true);
}

int cmd_solve(const GlobalOptions& g, const std::string& instance, const std::string& fptas_eps,
              const std::string& method, const std::string& table_path) {
  auto doc = io::load_json(instance);
  ContractInstance inst = io::instance_from_json(doc);
  PrecisionGuard guard(std::max({working_precision(), inst.precision_bits, g.precision_bits}));
  EnumerationMethod m;
  if (method == "envelope") m = EnumerationMethod::Envelope;
  else if (method == "scan") m = EnumerationMethod::Scan;
  else throw UsageError("method must be envelope or scan");

  auto table = enumerate_breakpoints(inst, m);
  auto sol = optimal_contract(inst, table);
  ordered_json j;
  j["instance"] = inst.name;
  j["n"] = inst.n;
  j["precision_bits"] = working_precision();
  j["alpha_star"] = real_pair(sol.alpha_star);
  j["set_star"] = sol.set_star.str();
  j["principal_utility"] = real_pair(sol.principal_utility);
  j["unique"] = sol.unique();
  j["tolerance"] = sol.tolerance.str(6);
  ordered_json maxi = ordered_json::array();
  for (const auto& b : sol.all_maximizers) maxi.push_back(breakpoint_json(b));
  j["maximizers"] = maxi;
  j["maximizers_nonzero_alpha"] =
      std::count_if(sol.all_maximizers.begin(), sol.all_maximizers.end(), [](const Breakpoint& b) { return b.alpha.sign() > 0; });
  j["breakpoint_count"] = table.size();
  if (!table_path.empty()) {
    io::write_text(table_path, breakpoint_csv(table));
    j["breakpoint_table"] = table_path;
  } else if (table.size() <= 4096) {
    ordered_json rows = ordered_json::array();
    for (const auto& b : table.rows) rows.push_back(breakpoint_json(b));
    j["breakpoints"] = rows;
  }
  bool ok = true;
  if (!fptas_eps.empty()) {
    Real eps(fptas_eps);
    auto fp = fptas(inst, eps);
    ordered_json q = {{"epsilon", fptas_eps},
                      {"alpha", real_pair(fp.alpha)},
                      {"set", fp.set.str()},
                      {"principal_utility", real_pair(fp.principal_utility)},
                      {"grid_steps", fp.grid_steps},
                      {"value_queries", fp.queries.value_queries},
                      {"best_response_queries", fp.queries.best_response_queries},
                      {"total_queries", fp.queries.total()},
                      {"queries_per_n2_over_eps",
                       static_cast<double>(fp.queries.total()) * eps.to_double() / (inst.n * inst.n)}};
    if (sol.principal_utility.sign() > 0) {
      Real ratio = fp.principal_utility / sol.principal_utility;
      q["ratio"] = ratio.to_double();
      Real slack = sol.tolerance * sol.principal_utility;
      ok = fp.principal_utility >= (Real(1) - eps) * sol.principal_utility - slack;
    }
    q["within_guarantee"] = ok;
    j["fptas"] = q;
  }
  return emit(g, j, breakpoint_csv(table), ok);
}

namespace {

Real default_equal_revenue_tolerance(int prec) {
  // 10^-9 at double precision, 2^-100 at 256 bits and beyond.
  if (prec <= kDefaultPrecision) return Real(1e-9);
  return pow2(-std::min(100, prec - 23));
}

ordered_json check_structure(const ContractInstance& inst, bool& ok) {
  auto rf = verify_structure(inst.f, inst.f.declared_class());
  auto rc = verify_structure(inst.c, inst.c.declared_class());
  ok = rf.ok() && rc.ok();
  return {{"name", "structure"}, {"ok", ok}, {"f", structure_json(rf)}, {"c", structure_json(rc)}};
}

ordered_json check_equal_revenue(const ContractInstance& inst, Params& p, bool& ok) {
  Real tol = p.has("tolerance") ? Real::parse_exact(p.str("tolerance", ""))
                                : default_equal_revenue_tolerance(inst.precision_bits);
  auto rep = verify_equal_revenue(inst, tol);
  ok = rep.ok;
  return {{"name", "equal-revenue"},
          {"ok", ok},
          {"nonzero_breakpoints", rep.nonzero_breakpoints},
          {"expected", rep.expected},
          {"max_deviation", rep.max_deviation.str(8)},
          {"tolerance", tol.str(8)},
          {"worst_row", rep.worst_row}};
}

ordered_json check_gaps(const ContractInstance& inst, bool& ok) {
  auto rep = check_gap_bounds(inst.n);
  ok = rep.ok;
  ordered_json fails = ordered_json::array();
  for (const auto& f : rep.failures) fails.push_back(f);
  return {{"name", "gap-bounds"},
          {"ok", ok},
          {"checked", rep.checked},
          {"min_one_minus_alpha", rep.min_one_minus_alpha.str(8)},
          {"min_gap", rep.min_gap.str(8)},
          {"failures", fails}};
}

ordered_json check_sparse(const GlobalOptions& g, const ContractInstance& inst, Params& p, bool& ok) {
  ApproxKind side;
  if (p.has("side")) side = side_from(p.str("side", ""));
  else if (inst.c.additive_weights()) side = ApproxKind::Demand;
  else if (inst.f.additive_weights()) side = ApproxKind::Supply;
  else throw UsageError("sparse-demand needs an additive cost (demand) or additive reward (supply)");
  Real sigma;
  if (p.has("sigma")) {
    sigma = Real::parse_exact(p.str("sigma", ""));
  } else {
    auto a = index_critical_values(inst);
    sigma = side == ApproxKind::Demand ? sigma_bound_demand(a).value : sigma_bound_supply(a).value;
  }
  const auto trials = static_cast<std::size_t>(p.integer("trials", 1000));
  auto st = sparse_sweep(inst, side, sigma, trials, g.seed);
  ok = st.ok();
  ordered_json census = ordered_json::array();
  for (int i = 1; i <= inst.n + 1; ++i) {
    census.push_back({{"action", i}, {"max_count", st.max_census[i]}, {"bound", Census::bound(inst.n, i)}});
  }
  ordered_json fails = ordered_json::array();
  for (const auto& f : st.failures) fails.push_back(f);
  return {{"name", "sparse-demand"},
          {"ok", ok},
          {"side", to_string(side)},
          {"sigma", real_pair(sigma)},
          {"trials", trials},
          {"seed", g.seed},
          {"max_size", st.max_size},
          {"size_bound", st.size_bound},
          {"lemma_violations", st.lemma_violations},
          {"census_violations", st.census_violations},
          {"census", census},
          {"failures", fails}};
}

ordered_json check_cc(const ordered_json& doc, const ContractInstance& inst, Params& p, bool& ok) {
  auto recipe = io::cc_recipe_from_json(doc);
  if (!recipe) throw UsageError("cc-invariants needs an instance built by 'construct cc_augmented'");
  const int n = inst.n - 1;
  auto x_f = io::special_set_vector_from_string(n, recipe->x_f);
  auto x_c = io::special_set_vector_from_string(n, recipe->x_c);
  CCOptions opts;
  opts.precision_bits = recipe->precision_bits;
  auto aug = build_augmented(build_cc_base(recipe->variant, n, opts), x_f, x_c, false);
  bool tables_match = aug.instance.f.size() == inst.f.size();
  for (Mask t = 0; tables_match && t < inst.f.size(); ++t) {
    tables_match = aug.instance.f(t) == inst.f(t) && aug.instance.c(t) == inst.c(t);
  }
  auto rf = verify_structure(aug.instance.f, aug.instance.f.declared_class());
  auto rc = verify_structure(aug.instance.c, aug.instance.c.declared_class());
  auto out = run_reduction(aug);
  auto inv = check_cc_invariants(aug, out, static_cast<int>(p.integer("grid", 32)));
  ok = tables_match && rf.ok() && rc.ok() && out.matches && inv.ok();
  ordered_json fails = ordered_json::array();
  for (const auto& f : inv.projection_failures) fails.push_back(f);
  return {{"name", "cc-invariants"},
          {"ok", ok},
          {"variant", to_string(recipe->variant)},
          {"tables_match_recipe", tables_match},
          {"structure_ok", rf.ok() && rc.ok()},
          {"disjoint", out.disjoint},
          {"extra_in_optimum", out.extra_in_optimum},
          {"reduction_matches", out.matches},
          {"sandwich_ok", inv.sandwich_ok},
          {"halfwidth", inv.halfwidth.str(8)},
          {"max_deviation", inv.max_deviation.str(8)},
          {"margin_applicable", inv.margin_applicable},
          {"margin_ok", inv.margin_ok},
          {"optimum_utility", inv.optimum_utility.str(17)},
          {"projection_ok", inv.projection_ok},
          {"projection_checked", inv.projection_checked},
          {"projection_failures", fails},
          {"sparse_ok", inv.sparse_ok},
          {"max_br_size", inv.max_br_size}};
}

}  // namespace

int cmd_verify(const GlobalOptions& g, const std::string& instance, const std::vector<std::string>& checks,
               Params p) {
  if (checks.empty()) throw UsageError("verify needs at least one check");
  auto doc = io::load_json(instance);
  ContractInstance inst = io::instance_from_json(doc);
  PrecisionGuard guard(std::max({working_precision(), inst.precision_bits, g.precision_bits}));
  ordered_json results = ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    bool ok = false;
    if (c == "structure") results.push_back(check_structure(inst, ok));
    else if (c == "equal-revenue") results.push_back(check_equal_revenue(inst, p, ok));
    else if (c == "gap-bounds") results.push_back(check_gaps(inst, ok));
    else if (c == "sparse-demand") results.push_back(check_sparse(g, inst, p, ok));
    else if (c == "cc-invariants") results.push_back(check_cc(doc, inst, p, ok));
    else throw UsageError("unknown check '" + c + "'");
    all = all && ok;
  }
  p.finish();
  ordered_json j = {{"instance", inst.name}, {"n", inst.n}, {"ok", all}, {"checks", results}};
  std::ostringstream csv;
  csv << "check,ok\n";
  for (const auto& r : results) csv << r["name"].get<std::string>() << ',' << (r["ok"].get<bool>() ? 1 : 0) << '\n';
  return emit(g, j, csv.str(), all);
}

namespace {

int experiment_value_query(const GlobalOptions& g, Params& p) {
  const int n = static_cast<int>(p.integer("n", 8));
  const auto trials = static_cast<std::size_t>(p.integer("trials", 10000));
  const std::string strategy_name = p.str("strategy", "scan");
  const std::string family_name = p.str("family", "reward");
  const bool exhaustive = p.flag("exhaustive", false);
  p.finish();
  QueryStrategy strategy;
  if (strategy_name == "scan") strategy = QueryStrategy::Scan;
  else if (strategy_name == "none" || strategy_name == "no-query") strategy = QueryStrategy::NoQuery;
  else throw UsageError("strategy must be scan or none");
  const PerturbDirection dir = direction_from(family_name);
  ContractInstance base = dir == PerturbDirection::RewardBonus ? build_equal_revenue_submod_f(n, g.precision_bits)
                                                               : build_equal_revenue_supmod_c(n, g.precision_bits);
  PrecisionGuard guard(std::max(working_precision(), base.precision_bits));
  PerturbedFamily family(base, dir);
  auto st = exhaustive ? value_query_exhaustive(family, strategy)
                       : value_query_experiment(family, strategy, trials, g.seed);
  ordered_json viol = ordered_json::array();
  for (const auto& v : st.violations) viol.push_back(v);
  ordered_json j = {{"experiment", "value-query"},
                    {"seed", g.seed},
                    {"params",
                     {{"n", n}, {"trials", st.trials}, {"strategy", to_string(strategy)},
                      {"family", family_name}, {"exhaustive", exhaustive}}},
                    {"summary",
                     {{"mean", st.mean}, {"std_error", st.std_error}, {"analytic_mean", st.analytic_mean},
                      {"lower_bound", st.lower_bound}, {"identified", st.identified},
                      {"within_tolerance", st.within_tolerance}, {"ok", st.ok}, {"violations", viol}}}};
  std::ostringstream csv;
  csv << "trial,hidden,queries\n";
  for (std::size_t k = 0; k < st.queries.size(); ++k) csv << k << ',' << st.hidden[k] << ',' << st.queries[k] << '\n';
  if (g.format != "csv") {
    ordered_json recs = ordered_json::array();
    for (std::size_t k = 0; k < st.queries.size(); ++k) recs.push_back({st.hidden[k], st.queries[k]});
    j["records_columns"] = {"hidden", "queries"};
    j["records"] = recs;
  }
  return emit(g, j, csv.str(), st.ok);
}

int experiment_simulation(const GlobalOptions& g, Params& p, ApproxKind side) {
  SimulationConfig cfg;
  cfg.side = side;
  cfg.n = static_cast<int>(p.integer("n", side == ApproxKind::Demand ? 6 : 4));
  cfg.random_prices = static_cast<std::size_t>(p.integer("random", 1000));
  cfg.breakpoint_prices = p.flag("breakpoints", true);
  cfg.seed = g.seed;
  p.finish();
  auto st = simulation_experiment(cfg);
  ordered_json fails = ordered_json::array();
  for (const auto& f : st.failures) fails.push_back(f);
  const std::string name = side == ApproxKind::Demand ? "demand-sim" : "supply-sim";
  ordered_json j = {{"experiment", name},
                    {"seed", g.seed},
                    {"params", {{"n", cfg.n}, {"random", cfg.random_prices}, {"breakpoints", cfg.breakpoint_prices}}},
                    {"summary",
                     {{"sigma", real_pair(st.sigma)}, {"epsilon", real_pair(st.epsilon)}, {"members", st.members},
                      {"cases", st.cases}, {"agree", st.agree},
                      {"agreement", st.cases ? static_cast<double>(st.agree) / st.cases : 1.0},
                      {"max_queries", st.max_queries}, {"total_queries", st.total_queries},
                      {"max_candidates", st.max_candidates}, {"query_bound", st.query_bound}, {"ok", st.ok()},
                      {"failures", fails}}}};
  std::ostringstream csv;
  csv << "experiment,n,cases,agree,max_queries,query_bound,ok\n"
      << name << ',' << cfg.n << ',' << st.cases << ',' << st.agree << ',' << st.max_queries << ','
      << st.query_bound << ',' << (st.ok() ? 1 : 0) << '\n';
  return emit(g, j, csv.str(), st.ok());
}

int experiment_cc(const GlobalOptions& g, Params& p, bool protocol) {
  CCSweepConfig cfg;
  cfg.variant = cc_variant_from_string(p.str("variant", "sub-sub"));
  cfg.n = static_cast<int>(p.integer("n", 4));
  cfg.random_pairs = static_cast<std::size_t>(p.integer("pairs", 0));
  cfg.alpha_grid = static_cast<int>(p.integer("grid", 32));
  cfg.invariants = p.flag("invariants", !protocol);
  cfg.threads = static_cast<unsigned>(p.integer("threads", 0));
  cfg.protocol = protocol;
  cfg.seed = g.seed;
  p.finish();
  auto st = cc_sweep(cfg);
  const CCBase& b = *st.base;
  bool ok = st.reduction_ok() && (!cfg.invariants || st.invariants_ok()) && (!protocol || st.protocol_ok());
  ordered_json z = ordered_json::object();
  for (const auto& [k, v] : b.z.parts) z[k] = v.str(8);
  ordered_json summary = {{"pairs", st.records.size()},
                          {"disjoint_pairs", st.disjoint_pairs},
                          {"mismatches", st.mismatches},
                          {"mismatches_intersecting", st.mismatches_intersecting},
                          {"mismatches_disjoint", st.mismatches_disjoint},
                          {"structure_failures", st.structure_failures},
                          {"delta", b.delta.str(8)},
                          {"sigma", b.sigma.str(8)},
                          {"z", b.z.z.str(8)},
                          {"z_binding", b.z.binding},
                          {"z_components", z},
                          {"revenue_halfwidth", b.revenue_halfwidth.str(8)},
                          {"sandwich_ok", st.sandwich.sandwich_ok},
                          {"sandwich_max_deviation", st.sandwich.max_deviation.str(8)}};
  if (cfg.invariants) {
    summary["margin_failures"] = st.margin_failures;
    summary["projection_failures"] = st.projection_failures;
    summary["sparse_failures"] = st.sparse_failures;
  }
  if (protocol) {
    summary["protocol_failures"] = st.protocol_failures;
    summary["bits_per_query_bound"] = st.bits_per_query_bound;
    std::uint64_t worst = 0;
    for (const auto& r : st.records) worst = std::max(worst, r.max_bits_per_query);
    summary["max_bits_per_query"] = worst;
  }
  summary["ok"] = ok;
  ordered_json j = {{"experiment", protocol ? "protocol-bench" : "cc-sweep"},
                    {"seed", g.seed},
                    {"params",
                     {{"variant", to_string(cfg.variant)}, {"n", cfg.n}, {"pairs", cfg.random_pairs},
                      {"grid", cfg.alpha_grid}, {"invariants", cfg.invariants}}},
                    {"summary", summary}};
  std::ostringstream csv;
  csv << "pair,x_f,x_c,disjoint,extra_in_optimum,match,structure_ok,margin_ok,projection_ok,sparse_ok,"
         "protocol_ok,bits,br_queries,max_bits_per_query\n";
  ordered_json recs = ordered_json::array();
  for (const auto& r : st.records) {
    csv << r.id << ',' << r.x_f << ',' << r.x_c << ',' << r.disjoint << ',' << r.extra_in_optimum << ','
        << r.matches << ',' << r.structure_ok << ',' << r.margin_ok << ',' << r.projection_ok << ','
        << r.sparse_ok << ',' << r.protocol_ok << ',' << r.protocol_bits << ',' << r.protocol_queries << ','
        << r.max_bits_per_query << '\n';
    ordered_json rj = {{"pair", r.id}, {"x_f", r.x_f}, {"x_c", r.x_c}, {"disjoint", r.disjoint},
                       {"extra_in_optimum", r.extra_in_optimum}, {"match", r.matches},
                       {"structure_ok", r.structure_ok}};
    if (cfg.invariants) {
      rj["margin_ok"] = r.margin_ok;
      rj["projection_ok"] = r.projection_ok;
      rj["max_br_size"] = r.max_br_size;
    }
    if (protocol) {
      rj["protocol_ok"] = r.protocol_ok;
      rj["bits"] = r.protocol_bits;
      rj["br_queries"] = r.protocol_queries;
      rj["max_bits_per_query"] = r.max_bits_per_query;
    }
    if (!r.error.empty()) rj["error"] = r.error;
    recs.push_back(rj);
  }
  j["records"] = recs;
  return emit(g, j, csv.str(), ok);
}

}  // namespace

int cmd_experiment(const GlobalOptions& g, const std::string& name, Params p) {
  if (name == "value-query") return experiment_value_query(g, p);
  if (name == "demand-sim") return experiment_simulation(g, p, ApproxKind::Demand);
  if (name == "supply-sim") return experiment_simulation(g, p, ApproxKind::Supply);
  if (name == "cc-sweep") return experiment_cc(g, p, false);
  if (name == "protocol-bench") return experiment_cc(g, p, true);
  throw UsageError("unknown experiment '" + name + "'");
}

}  // namespace contracts::cli

#include "permlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "permlab/combinatorics.hpp"
#include "permlab/errors.hpp"
#include "permlab/field_analysis.hpp"
#include "permlab/parallel.hpp"
#include "permlab/permutation.hpp"
#include "permlab/simulator.hpp"
#include "permlab/strategies.hpp"
#include "permlab/structure_stats.hpp"

namespace permlab::cli {

namespace {

using json = nlohmann::json;

json prob_json(const ExactProb& p) { return {{"exact", p.str()}, {"value", p.to_double()}}; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string card_name(std::size_t card) {
  static constexpr const char* kSuits[] = {"clubs", "diamonds", "hearts", "spades"};
  static constexpr const char* kRanks[] = {"2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K", "A"};
  if (card >= 52) return std::to_string(card);
  return std::string(kRanks[card % 13]) + " of " + kSuits[card / 13];
}

TargetMode parse_target_mode(const std::string& s) {
  if (s == "fixed") return TargetMode::Fixed;
  if (s == "sweep") return TargetMode::Sweep;
  return TargetMode::Uniform;
}

EstimateMode parse_estimate_mode(const std::string& s) {
  return s == "exact" ? EstimateMode::Exact : EstimateMode::Sampled;
}

// Records every flag of a leaf command so the emitted config can be replayed.
class Command {
 public:
  Command(CLI::App* app, std::vector<std::string> path) : app_(app), path_(std::move(path)) {}

  template <class T>
  CLI::Option* option(const std::string& name, T& var, const std::string& desc) {
    fields_.emplace_back(name, [&var] { return json(var); });
    return app_->add_option("--" + name, var, desc)->capture_default_str();
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& desc) {
    fields_.emplace_back(name, [&var] { return json(var); });
    return app_->add_flag("--" + name, var, desc);
  }

  json config() const {
    json c = json::object();
    for (const auto& [name, get] : fields_) c[name] = get();
    return c;
  }

  CLI::App* app() const { return app_; }
  const std::vector<std::string>& path() const { return path_; }

 private:
  CLI::App* app_;
  std::vector<std::string> path_;
  std::vector<std::pair<std::string, std::function<json()>>> fields_;
};

struct Shared {
  std::uint64_t seed = 1;
  unsigned workers = 0;
  bool csv = false;
};

struct SimulateOpts {
  std::size_t n = 10;
  std::uint64_t trials = 100000;
  std::string target = "uniform";
  std::size_t s = 0;
  std::string strategy = "shift";
  bool exhaustive = false;
  bool worst = false;
  std::size_t enum_guard = kDefaultStrategyGuard;
};

struct ExactOpts {
  std::size_t n = 5;
  std::string strategy = "shift";
  std::size_t enum_guard = kDefaultStrategyGuard;
};

struct DistOpts {
  std::size_t n = 64;
  std::uint64_t trials = 10000;
  bool exhaustive = false;
  std::size_t enum_guard = kDefaultStrategyGuard;
};

struct FieldOpts {
  std::size_t n = 3;
  std::size_t m = 3;
  bool brute = false;
  bool aic = false;
  std::string partition;
  std::string strategy;
  std::uint64_t budget = kDefaultBruteForceBudget;
  std::size_t enum_guard = kDefaultStrategyGuard;
};

struct StructureOpts {
  std::size_t n = 8;
  std::size_t s = 1;
  std::size_t t = 1;
  std::size_t k = 1;
  std::size_t i = 0;
  std::size_t j = 1;
  std::string iset;
  std::string jset;
  std::string kset;
  std::string mode = "sampled";
  std::uint64_t trials = 100000;
  std::uint64_t budget = kDefaultExactBudget;
  std::size_t enum_guard = kDefaultStructureGuard;
};

struct DedupOpts {
  std::size_t n = 3;
  std::string partition;
  std::string strategy;
  std::size_t enum_guard = kDefaultStrategyGuard;
};

// ---------------------------------------------------------------------------
// Command bodies. Each returns the "result" member, or writes CSV and returns null.

json csv_done() { return json(nullptr); }

json do_simulate(const std::string& game, const SimulateOpts& o, const Shared& sh, std::ostream& out) {
  GameConfig cfg;
  cfg.n = o.n;
  cfg.trials = o.trials;
  cfg.seed = sh.seed;
  cfg.target_mode = parse_target_mode(o.target);
  cfg.fixed_target = o.s;
  cfg.strategy = o.strategy;
  cfg.exhaustive = o.exhaustive;
  cfg.enum_guard = o.enum_guard;
  cfg.workers = sh.workers;
  SimulationReport report;
  json result;
  if (game == "locker") {
    report = simulate_locker(cfg);
    result = to_json(report);
  } else if (o.worst) {
    const auto w = worst_case_target(cfg);
    report = w.sweep;
    result = to_json(w);
  } else {
    report = simulate_needle(cfg);
    result = to_json(report);
  }
  if (sh.csv) {
    out << "target,trials,successes,estimate\n";
    for (std::size_t s = 0; s < report.per_target.size(); ++s) {
      const auto& t = report.per_target[s];
      out << s << ',' << t.trials << ',' << t.successes << ','
          << static_cast<double>(t.successes) / static_cast<double>(t.trials) << '\n';
    }
    if (report.per_target.empty())
      out << "all," << report.trials << ',' << report.successes << ',' << report.estimate << '\n';
    return csv_done();
  }
  return result;
}

json do_exact(const ExactOpts& o, const Shared& sh, std::ostream& out) {
  const Strategy strategy = strategy_by_name(o.strategy, o.n);
  const auto ev = evaluate_success_exact(strategy, o.enum_guard, sh.workers);
  if (sh.csv) {
    out << "target,successes,probability,value\n";
    for (std::size_t s = 0; s < ev.n; ++s)
      out << s << ',' << ev.successes_per_target[s] << ',' << ev.per_target[s].str() << ','
          << ev.per_target[s].to_double() << '\n';
    return csv_done();
  }
  json per_target = json::array();
  for (std::size_t s = 0; s < ev.n; ++s)
    per_target.push_back({{"target", s},
                          {"successes", ev.successes_per_target[s].str()},
                          {"probability", prob_json(ev.per_target[s])}});
  return {{"strategy", strategy.name}, {"n", ev.n},          {"m", strategy.m},
          {"overall", prob_json(ev.overall)}, {"min", prob_json(ev.worst)}, {"worst_target", ev.worst_target},
          {"per_target", per_target}};
}

json do_pmf(std::size_t n, const Shared& sh, std::ostream& out) {
  require(n >= 1, Errc::ParameterOutOfRange, "--n must be positive");
  if (sh.csv) out << "k,count,probability,value\n";
  json rows = json::array();
  BigCount total = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const BigCount count = rencontres(n, k);
    const ExactProb p = shift_count_pmf(n, k);
    total += count;
    if (sh.csv)
      out << k << ',' << count << ',' << p.str() << ',' << p.to_double() << '\n';
    else
      rows.push_back({{"k", k}, {"count", count.str()}, {"probability", prob_json(p)}});
  }
  if (sh.csv) return csv_done();
  return {{"n", n}, {"factorial", factorial(n).str()}, {"total", total.str()}, {"table", rows}};
}

json do_dist(const DistOpts& o, const Shared& sh, std::ostream& out) {
  GameConfig cfg;
  cfg.n = o.n;
  cfg.trials = o.trials;
  cfg.seed = sh.seed;
  cfg.exhaustive = o.exhaustive;
  cfg.enum_guard = o.enum_guard;
  cfg.workers = sh.workers;
  const auto d = max_shift_distribution(cfg);
  if (sh.csv) {
    out << "max_shift,count\n";
    for (std::size_t v = 0; v < d.counts.size(); ++v)
      if (d.counts[v] != 0) out << v << ',' << d.counts[v] << '\n';
    return csv_done();
  }
  return to_json(d);
}

json partition_summary(const PartitionStrategy& p, std::size_t guard) {
  return {{"n", p.n()},
          {"m", p.m()},
          {"field", field_of_partition(p, guard).str()},
          {"success_upper_bound", prob_json(success_upper_bound(p, guard))},
          {"aic", aic_check(p, guard)},
          {"class_sizes", p.class_sizes()}};
}

json do_field(const FieldOpts& o) {
  const int sources = int(o.brute) + int(!o.partition.empty()) + int(!o.strategy.empty());
  require(sources == 1, Errc::InvalidInput, "field needs exactly one of --brute, --partition, --strategy");
  if (o.brute) {
    const auto r = brute_force_field(o.n, o.m, o.aic ? Restriction::AliceInChains : Restriction::None, o.budget);
    json summary = partition_summary(r.witness, std::max(o.enum_guard, o.n));
    return {{"restriction", o.aic ? "aic" : "none"},
            {"field", r.field.str()},
            {"nodes", r.nodes},
            {"success_upper_bound", summary["success_upper_bound"]},
            {"witness", partition_to_json(r.witness)},
            {"witness_aic", summary["aic"]}};
  }
  const PartitionStrategy p = o.partition.empty()
                                  ? partition_of_strategy(strategy_by_name(o.strategy, o.n), o.enum_guard)
                                  : load_partition_file(o.partition, o.enum_guard);
  return partition_summary(p, o.enum_guard);
}

json do_structure(const std::string& what, const StructureOpts& o, const Shared& sh, std::ostream& out) {
  if (what == "phi" || what == "phistar" || what == "pset") {
    const IndexSet I = parse_index_set(o.n, o.iset);
    const IndexSet J = parse_index_set(o.n, o.jset);
    json r{{"n", o.n}, {"s", o.s}, {"iset", I.elements()}, {"jset", J.elements()},
           {"compatible", is_compatible(I, J, o.s)}};
    if (what == "phi") {
      r["count"] = enumerate_phi(I, J, o.s, o.enum_guard).str();
    } else if (what == "phistar") {
      r["count"] = count_phi_star(I, J, o.s).str();
    } else {
      const IndexSet K = parse_index_set(o.n, o.kset);
      const bool feasible = is_feasible(K, I, J, o.s);
      r["kset"] = K.elements();
      r["feasible"] = feasible;
      r["count"] = count_P_set(K, I, J, o.s, o.enum_guard).str();
      if (feasible) r["closed_form"] = p_set_closed_form(K, I, J).str();
    }
    return r;
  }
  if (what == "compatible")
    return to_json(
        compatible_pair_stats(o.n, o.t, o.s, parse_estimate_mode(o.mode), o.trials, sh.seed, sh.workers, o.budget));
  if (what == "feasible")
    return to_json(feasible_set_stats(o.n, o.t, o.k, o.s, parse_estimate_mode(o.mode), o.trials, sh.seed,
                                      sh.workers, o.budget));
  if (what == "joint") {
    const auto table = joint_shift_table(o.n, o.i, o.j, o.enum_guard, sh.workers);
    if (sh.csv) {
      out << "a,b,probability,value\n";
      for (std::size_t a = 0; a < table.size(); ++a)
        for (std::size_t b = 0; b < table[a].size(); ++b)
          out << a << ',' << b << ',' << table[a][b].str() << ',' << table[a][b].to_double() << '\n';
      return csv_done();
    }
    json rows = json::array();
    json diagonal = json::array();
    for (std::size_t a = 0; a < table.size(); ++a) {
      json row = json::array();
      for (const auto& p : table[a]) row.push_back(p.str());
      rows.push_back(std::move(row));
      // Leading-order value 1/(e t!)^2 and the measured ratio against it.
      json cell = prob_json(table[a][a]);
      const double reference = std::pow(std::exp(-1.0) / std::tgamma(static_cast<double>(a) + 1.0), 2);
      cell["reference"] = reference;
      cell["ratio"] = table[a][a].to_double() / reference;
      diagonal.push_back(std::move(cell));
    }
    return {{"n", o.n}, {"i", o.i}, {"j", o.j}, {"table", rows}, {"diagonal", diagonal}};
  }
  // cov
  const IndicatorStat st = o.mode == "exact" ? covariance_exact(o.n, o.t, o.i, o.j, o.enum_guard, sh.workers)
                                             : covariance_estimate(o.n, o.t, o.i, o.j, o.trials, sh.seed, sh.workers);
  return to_json(st);
}

json do_dedup(const DedupOpts& o) {
  require(o.partition.empty() != o.strategy.empty(), Errc::InvalidInput,
          "dedup needs exactly one of --partition, --strategy");
  const PartitionStrategy p = o.partition.empty()
                                  ? partition_of_strategy(strategy_by_name(o.strategy, o.n), o.enum_guard)
                                  : load_partition_file(o.partition, o.enum_guard);
  const auto r = magnet_dedup(classes_of_partition(p), o.enum_guard);
  json j = dedup_to_json(r);
  j["steps"] = r.log.size();
  return j;
}

json do_example52(const std::string& file) {
  const Permutation sigma = file.empty() ? example_deck() : load_permutation_file(file);
  const std::size_t n = sigma.size();
  const Strategy shift = shift_strategy(n);
  const ShiftHistogram hist = shift_histogram(sigma);
  const std::size_t hint = argmax_shift(hist);
  std::size_t needle_hits = 0;
  std::size_t locker_hits = 0;
  json locker_targets = json::array();
  for (std::size_t s = 0; s < n; ++s) {
    needle_hits += shift.succeeds(sigma, s);
    const LockerRound round = play_locker(sigma, s);
    locker_hits += round.success;
    if (round.success) locker_targets.push_back(s);
  }
  const std::size_t held = sigma.position_of(hint);
  const auto counts = hist.counts();
  return {{"n", n},
          {"sigma", sigma},
          {"shift_vector", shift_vector(sigma)},
          {"shift_counts", std::vector<std::size_t>(counts.begin(), counts.end())},
          {"hint", hint},
          {"hint_count", hist.max_count()},
          {"success", prob_json(ExactProb(needle_hits, n))},
          {"swap",
           {{"positions", {0, held}},
            {"cards", {sigma[0], hint}},
            {"card_names", {card_name(sigma[0]), card_name(hint)}}}},
          {"locker", {{"success", prob_json(ExactProb(locker_hits, n))}, {"winning_targets", locker_targets}}}};
}

std::uint64_t default_seed() {
  const char* env = std::getenv("PERMLAB_SEED");
  if (env == nullptr || *env == '\0') return 1;
  std::size_t used = 0;
  try {
    const auto v = std::stoull(env, &used, 0);
    if (used == std::string(env).size() && env[0] != '-') return v;
  } catch (const std::logic_error&) {
  }
  fail(Errc::InvalidInput, std::string("PERMLAB_SEED is not an unsigned integer: ") + env);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Shared shared;
  try {
    shared.seed = default_seed();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Permutation advice games: exact counts, strategy evaluation and simulation", "permlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::vector<std::unique_ptr<Command>> commands;
  auto leaf = [&](CLI::App* sub, std::vector<std::string> path, bool seeded, bool csv) -> Command& {
    auto& c = *commands.emplace_back(std::make_unique<Command>(sub, std::move(path)));
    if (seeded) c.option("seed", shared.seed, "Master seed (default: $PERMLAB_SEED or 1)");
    sub->add_option("--workers", shared.workers, "Worker threads (0 = all cores)")->capture_default_str();
    if (csv) sub->add_flag("--csv", shared.csv, "Emit CSV rows instead of JSON");
    return c;
  };

  const std::vector<std::string> kTargets{"uniform", "fixed", "sweep"};
  const std::vector<std::string> kModes{"exact", "sampled"};

  // simulate needle | locker
  SimulateOpts sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo (or exhaustive) play of a game");
  simulate->require_subcommand(1);
  for (const std::string game : {"needle", "locker"}) {
    auto* sub = simulate->add_subcommand(game, game == "needle" ? "Needle-in-a-haystack game with advice"
                                                                : "Two-locker game with the shift adaptation");
    auto& c = leaf(sub, {"simulate", game}, true, true);
    c.option("n", sim.n, "Order of the permutation")->required();
    c.option("trials", sim.trials, "Number of sampled permutations");
    c.option("target", sim.target, "Target mode")->check(CLI::IsMember(kTargets));
    c.option("s", sim.s, "Target for --target fixed");
    if (game == "needle") {
      c.option("strategy", sim.strategy, "shift | naive | baseline | latin:cyclic | latin:<file>");
      c.flag("worst", sim.worst, "Report the worst target (needs --target sweep)");
    }
    c.flag("exhaustive", sim.exhaustive, "Sweep all of S_n instead of sampling");
    c.option("enum-guard", sim.enum_guard, "Largest n allowed with --exhaustive");
  }

  ExactOpts ex;
  {
    auto* sub = app.add_subcommand("exact", "Exact success probabilities of a strategy by full enumeration");
    auto& c = leaf(sub, {"exact"}, false, true);
    c.option("n", ex.n, "Order")->required();
    c.option("strategy", ex.strategy, "shift | naive | baseline | latin:cyclic | latin:<file>");
    c.option("enum-guard", ex.enum_guard, "Largest n allowed");
  }

  std::size_t pmf_n = 5;
  {
    auto* sub = app.add_subcommand("pmf", "Exact distribution of a shift count (rencontres numbers)");
    auto& c = leaf(sub, {"pmf"}, false, true);
    c.option("n", pmf_n, "Order")->required();
  }

  DistOpts dist;
  {
    auto* sub = app.add_subcommand("dist", "Distribution of the largest shift count");
    auto& c = leaf(sub, {"dist"}, true, true);
    c.option("n", dist.n, "Order")->required();
    c.option("trials", dist.trials, "Number of sampled permutations");
    c.flag("exhaustive", dist.exhaustive, "Sweep all of S_n instead of sampling");
    c.option("enum-guard", dist.enum_guard, "Largest n allowed with --exhaustive");
  }

  FieldOpts fo;
  {
    auto* sub = app.add_subcommand("field", "Field of a partition, or the optimal field by brute force");
    auto& c = leaf(sub, {"field"}, false, false);
    c.option("n", fo.n, "Order");
    c.option("m", fo.m, "Number of classes for --brute");
    c.flag("brute", fo.brute, "Search every assignment of S_n into m classes");
    c.flag("aic", fo.aic, "Restrict the search to Alice-In-Chains admissible partitions");
    c.option("partition", fo.partition, "Partition file (JSON)");
    c.option("strategy", fo.strategy, "Partition induced by a named strategy");
    c.option("budget", fo.budget, "Search node budget for --brute");
    c.option("enum-guard", fo.enum_guard, "Largest n allowed for partition files and strategies");
  }

  StructureOpts so;
  auto* structure = app.add_subcommand("structure", "Shift-set structure counts and statistics");
  structure->require_subcommand(1);
  {
    auto sets = [&](Command& c, bool with_k) {
      c.option("n", so.n, "Order")->required();
      c.option("s", so.s, "Shift s (nonzero mod n)");
      c.option("iset", so.iset, "Fixed-point index set, e.g. 0,3");
      c.option("jset", so.jset, "Shift index set, e.g. 2,5");
      if (with_k) c.option("kset", so.kset, "Index set K");
      c.option("enum-guard", so.enum_guard, "Largest n allowed for enumeration");
    };
    auto& phi = leaf(structure->add_subcommand("phi", "Exact-match count by enumeration"), {"structure", "phi"},
                     false, false);
    sets(phi, false);
    auto& phistar = leaf(structure->add_subcommand("phistar", "At-least-match count, closed form"),
                         {"structure", "phistar"}, false, false);
    sets(phistar, false);
    auto& pset = leaf(structure->add_subcommand("pset", "P-set count"), {"structure", "pset"}, false, false);
    sets(pset, true);

    auto& comp = leaf(structure->add_subcommand("compatible", "Probability a random pair of t-sets is compatible"),
                      {"structure", "compatible"}, true, false);
    comp.option("n", so.n, "Order")->required();
    comp.option("t", so.t, "Set size");
    comp.option("s", so.s, "Shift s");
    comp.option("mode", so.mode, "exact | sampled")->check(CLI::IsMember(kModes));
    comp.option("trials", so.trials, "Samples in sampled mode");
    comp.option("budget", so.budget, "Largest number of pairs enumerated in exact mode");

    auto& feas = leaf(structure->add_subcommand("feasible", "Probability a random k-set is feasible"),
                      {"structure", "feasible"}, true, false);
    feas.option("n", so.n, "Order")->required();
    feas.option("t", so.t, "Size of I and J");
    feas.option("k", so.k, "Size of K");
    feas.option("s", so.s, "Shift s");
    feas.option("mode", so.mode, "exact | sampled")->check(CLI::IsMember(kModes));
    feas.option("trials", so.trials, "Samples in sampled mode");
    feas.option("budget", so.budget, "Largest number of sets enumerated in exact mode");

    auto& joint = leaf(structure->add_subcommand("joint", "Exact joint law of two shift counts"),
                       {"structure", "joint"}, false, true);
    joint.option("n", so.n, "Order")->required();
    joint.option("i", so.i, "First shift index");
    joint.option("j", so.j, "Second shift index");
    joint.option("enum-guard", so.enum_guard, "Largest n allowed");

    auto& cov = leaf(structure->add_subcommand("cov", "Covariance of two shift-count indicators"),
                     {"structure", "cov"}, true, false);
    cov.option("n", so.n, "Order")->required();
    cov.option("t", so.t, "Level t in Z = [S = t]");
    cov.option("i", so.i, "First shift index");
    cov.option("j", so.j, "Second shift index");
    cov.option("mode", so.mode, "exact | sampled")->check(CLI::IsMember(kModes));
    cov.option("trials", so.trials, "Samples in sampled mode");
    cov.option("enum-guard", so.enum_guard, "Largest n allowed in exact mode");
  }

  DedupOpts dd;
  {
    auto* sub = app.add_subcommand("dedup", "Rewrite a partition until every class has distinct magnets");
    auto& c = leaf(sub, {"dedup"}, false, false);
    c.option("n", dd.n, "Order (with --strategy)");
    c.option("partition", dd.partition, "Partition file (JSON)");
    c.option("strategy", dd.strategy, "Partition induced by a named strategy");
    c.option("enum-guard", dd.enum_guard, "Largest n allowed");
  }

  std::string deck_file;
  {
    auto* sub = app.add_subcommand("example52", "Replay the 52-card worked example");
    auto& c = leaf(sub, {"example52"}, false, false);
    c.option("file", deck_file, "Permutation file (default: built-in deck)");
  }

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands)
    if (c->app()->parsed()) chosen = c.get();
  if (chosen == nullptr) {
    err << "error: no command selected\n" << app.help();
    return kExitUsage;
  }

  const auto& path = chosen->path();
  json result;
  try {
    const std::string& head = path[0];
    if (head == "simulate") result = do_simulate(path[1], sim, shared, out);
    else if (head == "exact") result = do_exact(ex, shared, out);
    else if (head == "pmf") result = do_pmf(pmf_n, shared, out);
    else if (head == "dist") result = do_dist(dist, shared, out);
    else if (head == "field") result = do_field(fo);
    else if (head == "structure") result = do_structure(path[1], so, shared, out);
    else if (head == "dedup") result = do_dedup(dd);
    else result = do_example52(deck_file);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool names_flag = std::string_view(e.what()).find("--") != std::string_view::npos;
    if (!names_flag && e.code() == Errc::TooLargeForEnumeration)
      err << "hint: raise the enumeration guard with --enum-guard\n";
    if (!names_flag && e.code() == Errc::BudgetExceeded) err << "hint: raise the budget with --budget\n";
    return e.is_refusal() ? kExitRefused : kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }

  if (result.is_null()) return kExitOk;  // CSV already written
  json doc{{"version", kVersion},
           {"command", path},
           {"config", chosen->config()},
           {"seed", shared.seed},
           {"timestamp", utc_timestamp()},
           {"result", std::move(result)}};
  out << doc.dump() << '\n';
  return kExitOk;
}

std::vector<std::string> replay_args(const nlohmann::json& doc) {
  std::vector<std::string> args = doc.at("command").get<std::vector<std::string>>();
  for (const auto& [name, value] : doc.at("config").items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + name);
      continue;
    }
    args.push_back("--" + name);
    args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  return args;
}

nlohmann::json without_timestamp(nlohmann::json doc) {
  doc.erase("timestamp");
  return doc;
}

}  // namespace permlab::cli

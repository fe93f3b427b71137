#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "permlab/cli.hpp"
#include "permlab/combinatorics.hpp"
#include "permlab/errors.hpp"
#include "permlab/field_analysis.hpp"
#include "permlab/permutation.hpp"
#include "permlab/simulator.hpp"
#include "permlab/strategies.hpp"
#include "permlab/structure_stats.hpp"

namespace py = pybind11;
using namespace permlab;

namespace {

py::object big_int(const BigCount& v) { return py::module_::import("builtins").attr("int")(v.str()); }

py::object fraction(const ExactProb& p) {
  return py::module_::import("fractions").attr("Fraction")(big_int(p.numerator()), big_int(p.denominator()));
}

py::object fraction(const Rational& r) {
  return py::module_::import("fractions")
      .attr("Fraction")(big_int(boost::multiprecision::numerator(r)), big_int(boost::multiprecision::denominator(r)));
}

py::object from_json(const nlohmann::json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

Permutation perm(const std::vector<std::size_t>& image) { return make_permutation(std::span<const std::size_t>(image)); }

std::vector<std::size_t> image_of(const Permutation& p) { return {p.image().begin(), p.image().end()}; }

TargetMode target_mode(const std::string& name) {
  if (name == "uniform") return TargetMode::Uniform;
  if (name == "fixed") return TargetMode::Fixed;
  if (name == "sweep") return TargetMode::Sweep;
  throw Error(Errc::InvalidInput, "target must be uniform, fixed or sweep, got '" + name + "'");
}

GameConfig game(std::size_t n, std::uint64_t trials, std::uint64_t seed, const std::string& strategy,
                const std::string& target, std::size_t fixed_target, bool exhaustive, unsigned workers,
                std::optional<std::vector<std::size_t>> sigma) {
  GameConfig cfg;
  cfg.n = n;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.strategy = strategy;
  cfg.target_mode = target_mode(target);
  cfg.fixed_target = fixed_target;
  cfg.exhaustive = exhaustive;
  cfg.workers = workers;
  if (sigma) cfg.fixed_permutation = perm(*sigma);
  return cfg;
}

IndexSet index_set(std::size_t n, const std::vector<std::size_t>& v) { return IndexSet(n, v); }

#define GAME_ARGS                                                                                            \
  py::arg("n"), py::arg("trials") = 100'000, py::arg("seed") = 1, py::arg("strategy") = "shift",            \
      py::arg("target") = "uniform", py::arg("fixed_target") = 0, py::arg("exhaustive") = false,             \
      py::arg("workers") = 1, py::arg("sigma") = py::none()

}  // namespace

PYBIND11_MODULE(_permlab, m) {
  m.doc() = "Permutation advice games: exact counts, strategy evaluation and simulation.";

  static py::exception<Error> error(m, "PermlabError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(py::str(e.what()));
      exc.attr("code") = std::string(to_string(e.code()));
      exc.attr("refusal") = e.is_refusal();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  // Permutations and shifts.
  m.def("example_deck", [] { return image_of(example_deck()); }, "The 52-card worked example as an image list.");
  m.def("load_permutation", [](const std::string& path) { return image_of(load_permutation_file(path)); });
  m.def("shift_vector", [](const std::vector<std::size_t>& s) { return shift_vector(perm(s)); });
  m.def("shift_counts", [](const std::vector<std::size_t>& s) {
    const auto h = shift_histogram(perm(s));
    const auto c = h.counts();
    return std::vector<std::size_t>(c.begin(), c.end());
  });
  m.def("shift_hint", [](const std::vector<std::size_t>& s) { return shift_strategy(s.size()).hint(perm(s)); },
        "Most populous shift class, lowest index on ties.");

  // Exact combinatorics.
  m.def("factorial", [](std::size_t n) { return big_int(factorial(n)); });
  m.def("derangements", [](std::size_t n) { return big_int(derangements(n)); });
  m.def("rencontres", [](std::size_t n, std::size_t r) { return big_int(rencontres(n, r)); });
  m.def("shift_count_pmf", [](std::size_t n, std::size_t k) { return fraction(shift_count_pmf(n, k)); });
  m.def("k_of_n", &k_of_n);

  // Strategies.
  m.def(
      "evaluate_exact",
      [](const std::string& strategy, std::size_t n, std::size_t enum_guard) {
        const auto ev = evaluate_success_exact(strategy_by_name(strategy, n), enum_guard);
        py::list per_target;
        for (const auto& p : ev.per_target) per_target.append(fraction(p));
        py::dict out;
        out["overall"] = fraction(ev.overall);
        out["worst"] = fraction(ev.worst);
        out["per_target"] = per_target;
        return out;
      },
      py::arg("strategy"), py::arg("n"), py::arg("enum_guard") = kDefaultStrategyGuard,
      "Exact success probabilities over all of S_n.");

  // Field analysis.
  m.def(
      "field_of_partition",
      [](std::size_t n, std::size_t classes, const std::vector<std::size_t>& assignment) {
        return big_int(field_of_partition(PartitionStrategy(n, classes, assignment)));
      },
      py::arg("n"), py::arg("m"), py::arg("assignment"));
  m.def(
      "aic_check",
      [](std::size_t n, std::size_t classes, const std::vector<std::size_t>& assignment) {
        return aic_check(PartitionStrategy(n, classes, assignment));
      },
      py::arg("n"), py::arg("m"), py::arg("assignment"));
  m.def(
      "brute_force_field",
      [](std::size_t n, std::size_t classes, bool aic, std::uint64_t budget) {
        const auto r =
            brute_force_field(n, classes, aic ? Restriction::AliceInChains : Restriction::None, budget);
        py::dict out;
        out["field"] = big_int(r.field);
        out["witness"] = r.witness.assignment();
        out["nodes"] = r.nodes;
        return out;
      },
      py::arg("n"), py::arg("m"), py::arg("aic") = false, py::arg("budget") = kDefaultBruteForceBudget);

  // Structure statistics.
  m.def(
      "is_compatible",
      [](std::size_t n, const std::vector<std::size_t>& I, const std::vector<std::size_t>& J, std::size_t s) {
        return is_compatible(index_set(n, I), index_set(n, J), s);
      },
      py::arg("n"), py::arg("I"), py::arg("J"), py::arg("s"));
  m.def(
      "count_phi_star",
      [](std::size_t n, const std::vector<std::size_t>& I, const std::vector<std::size_t>& J, std::size_t s) {
        return big_int(count_phi_star(index_set(n, I), index_set(n, J), s));
      },
      py::arg("n"), py::arg("I"), py::arg("J"), py::arg("s"));
  m.def(
      "enumerate_phi",
      [](std::size_t n, const std::vector<std::size_t>& I, const std::vector<std::size_t>& J, std::size_t s) {
        return big_int(enumerate_phi(index_set(n, I), index_set(n, J), s));
      },
      py::arg("n"), py::arg("I"), py::arg("J"), py::arg("s"));
  m.def(
      "count_p_set",
      [](std::size_t n, const std::vector<std::size_t>& K, const std::vector<std::size_t>& I,
         const std::vector<std::size_t>& J, std::size_t s) {
        return big_int(count_P_set(index_set(n, K), index_set(n, I), index_set(n, J), s));
      },
      py::arg("n"), py::arg("K"), py::arg("I"), py::arg("J"), py::arg("s"));
  m.def(
      "joint_shift_pmf",
      [](std::size_t n, std::size_t i, std::size_t j, std::size_t t) { return fraction(joint_shift_pmf(n, i, j, t)); },
      py::arg("n"), py::arg("i"), py::arg("j"), py::arg("t"));
  m.def(
      "covariance",
      [](std::size_t n, std::size_t t, std::size_t i, std::size_t j, bool exact, std::uint64_t trials,
         std::uint64_t seed, unsigned workers) {
        const auto s = exact ? covariance_exact(n, t, i, j, kDefaultStructureGuard, workers)
                             : covariance_estimate(n, t, i, j, trials, seed, workers);
        py::object out = from_json(to_json(s));
        if (s.cov_exact) out["cov_exact"] = fraction(*s.cov_exact);
        return out;
      },
      py::arg("n"), py::arg("t"), py::arg("i") = 0, py::arg("j") = 1, py::arg("exact") = false,
      py::arg("trials") = 100'000, py::arg("seed") = 1, py::arg("workers") = 1);

  // Simulation.
  m.def(
      "simulate_needle",
      [](std::size_t n, std::uint64_t trials, std::uint64_t seed, const std::string& strategy,
         const std::string& target, std::size_t fixed_target, bool exhaustive, unsigned workers,
         std::optional<std::vector<std::size_t>> sigma) {
        return from_json(to_json(
            simulate_needle(game(n, trials, seed, strategy, target, fixed_target, exhaustive, workers, sigma))));
      },
      GAME_ARGS);
  m.def(
      "simulate_locker",
      [](std::size_t n, std::uint64_t trials, std::uint64_t seed, const std::string& strategy,
         const std::string& target, std::size_t fixed_target, bool exhaustive, unsigned workers,
         std::optional<std::vector<std::size_t>> sigma) {
        return from_json(to_json(
            simulate_locker(game(n, trials, seed, strategy, target, fixed_target, exhaustive, workers, sigma))));
      },
      GAME_ARGS);
  m.def(
      "max_shift_distribution",
      [](std::size_t n, std::uint64_t trials, std::uint64_t seed, const std::string& strategy,
         const std::string& target, std::size_t fixed_target, bool exhaustive, unsigned workers,
         std::optional<std::vector<std::size_t>> sigma) {
        return from_json(to_json(max_shift_distribution(
            game(n, trials, seed, strategy, target, fixed_target, exhaustive, workers, sigma))));
      },
      GAME_ARGS);
  m.def(
      "play_locker",
      [](const std::vector<std::size_t>& sigma, std::size_t target) {
        const auto r = play_locker(perm(sigma), target);
        py::dict out;
        out["hint"] = r.hint;
        out["swap"] = py::make_tuple(r.swap_a, r.swap_b);
        out["first_card"] = r.first_card;
        out["second_locker"] = r.second_locker ? py::object(py::int_(*r.second_locker)) : py::object(py::none());
        out["success"] = r.success;
        return out;
      },
      py::arg("sigma"), py::arg("target"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a permlab command line; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = std::string(cli::kVersion);
}

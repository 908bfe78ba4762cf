#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "treasure/errors.hpp"
#include "treasure/montecarlo.hpp"
#include "treasure/solver.hpp"
#include "treasure/strategies.hpp"
#include "treasure/young.hpp"

namespace py = pybind11;
using namespace treasure;

namespace {

py::object fraction(const Rational& r) {
  py::object cls = py::module_::import("fractions").attr("Fraction");
  py::object builtins_int = py::module_::import("builtins").attr("int");
  return cls(builtins_int(py::str(numerator_of(r).str())),
             builtins_int(py::str(denominator_of(r).str())));
}

py::object big(const BigInt& v) {
  return py::module_::import("builtins").attr("int")(py::str(v.str()));
}

// Accepts Fraction, int, or "a/b" strings. Floats are refused: tables and
// hider weights must be exact.
Rational rational(const py::handle& h) {
  if (py::isinstance<py::float_>(h))
    throw InvalidArgument("floating-point probabilities are not accepted; use fractions.Fraction");
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator"))
    return Rational(BigInt(py::str(h.attr("numerator")).cast<std::string>()),
                    BigInt(py::str(h.attr("denominator")).cast<std::string>()));
  throw InvalidArgument("expected an exact fraction");
}

GameConfig make_config(int n, int d, int k, const std::string& variant, const std::string& reveal) {
  GameConfig c{n, d, k, parse_occupancy(variant), parse_reveal(reveal)};
  c.validate();
  return c;
}

PTable table_from(int n, int d, int k, const py::dict& entries) {
  PTable t{n, d, k, {}};
  for (const auto& [key, value] : entries)
    t.entries.emplace(Partition(key.cast<std::vector<int>>()), rational(value));
  return t;
}

py::dict table_dict(const PTable& t) {
  py::dict out;
  for (const auto& [diagram, p] : t.entries) out[py::tuple(py::cast(diagram.parts()))] = fraction(p);
  return out;
}

SearcherPtr make_searcher(const GameConfig& c, const std::string& kind,
                          const std::optional<py::dict>& table) {
  if (table) {
    if (kind != "ptable")
      throw InvalidArgument("a table is only used with searcher='ptable'");
    return make_searcher_ptable(c, table_from(c.n, c.d, c.k, *table));
  }
  if (kind == "fresh-k") return make_searcher_fresh_k(c);
  if (kind == "ptable-scaled") return make_searcher_ptable(c, scaled_table(c.n, c.d, c.k));
  if (kind == "mu-mimic") return make_searcher_mu_mimic(c);
  throw InvalidArgument("unknown searcher '" + kind + "'");
}

HiderStrategy make_hider(const GameConfig& c, const py::object& hider) {
  if (py::isinstance<py::str>(hider)) {
    const auto kind = hider.cast<std::string>();
    if (kind == "uniform") return make_hider_uniform(c);
    if (kind == "all-in-one") return make_hider_all_in_one(c);
    throw InvalidArgument("unknown hider '" + kind + "'");
  }
  std::vector<WeightedAllocation> dist;
  for (const auto& item : hider) {
    auto pair = item.cast<py::sequence>();
    dist.push_back({Allocation{pair[0].cast<std::vector<int>>()}, rational(pair[1])});
  }
  return HiderStrategy(c, std::move(dist), "custom");
}

py::dict config_dict(const GameConfig& c) {
  py::dict out;
  out["n"] = c.n;
  out["d"] = c.d;
  out["k"] = c.k;
  out["variant"] = to_string(c.occupancy);
  out["reveal"] = to_string(c.reveal);
  return out;
}

py::dict report_dict(const ValueReport& r) {
  py::dict out;
  out["config"] = config_dict(r.config);
  out["method"] = to_string(r.method);
  out["value"] = fraction(r.value);
  out["counting_bound"] = fraction(r.counting_bound);
  out["one_door_cap"] = r.one_door_cap ? fraction(*r.one_door_cap) : py::none();
  out["tight"] = r.tight;
  out["applicability"] = r.applicability;
  out["strategy"] = r.strategy;
  out["notes"] = r.notes;
  py::list values;
  for (const auto& [a, v] : r.allocation_values)
    values.append(py::make_tuple(py::tuple(py::cast(a.counts)), fraction(v)));
  out["allocation_values"] = values;
  if (r.certificate) {
    py::list plan;
    for (const auto& e : r.certificate->plan) {
      py::list history;
      for (const auto& ev : e.history.events)
        history.append(py::make_tuple(py::tuple(py::cast(ev.guess.doors())),
                                      ev.revealed == kLoss ? py::none() : py::cast(ev.revealed)));
      plan.append(py::make_tuple(history, py::tuple(py::cast(e.guess.doors())),
                                 fraction(e.probability)));
    }
    py::list hider;
    for (const auto& e : r.certificate->hider)
      hider.append(py::make_tuple(py::tuple(py::cast(e.allocation.counts)), fraction(e.probability)));
    out["plan"] = plan;
    out["hider"] = hider;
    out["dual_objective"] = fraction(r.certificate->dual_objective);
    out["rows"] = r.certificate->rows;
    out["columns"] = r.certificate->columns;
  }
  return out;
}

SolverOptions options(std::uint64_t node_budget) {
  SolverOptions o;
  o.node_budget = node_budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact treasure-search game solver";

  auto base = py::register_exception<Error>(m, "TreasureError");
  py::register_exception<InvalidArgument>(m, "InvalidArgumentError", base.ptr());
  auto invalid_table = py::register_exception<InvalidTable>(m, "InvalidTableError", base.ptr());
  py::register_exception<ExceedsUnit>(m, "ExceedsUnitError", invalid_table.ptr());
  py::register_exception<DoorBudget>(m, "DoorBudgetError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceededError", base.ptr());
  py::register_exception<AdversarialRevealUnsupported>(m, "AdversarialRevealUnsupportedError",
                                                       base.ptr());
  py::register_exception<NonMonotone>(m, "NonMonotoneError", base.ptr());

  const std::uint64_t default_budget = SolverOptions{}.node_budget;

  m.def("binomial", [](int n, int r) { return big(binomial(n, r)); }, py::arg("n"), py::arg("r"));

  m.def("count_allocations",
        [](int n, int d, const std::string& variant) {
          return big(count_allocations(n, d, parse_occupancy(variant)));
        },
        py::arg("n"), py::arg("d"), py::arg("variant") = "multi");

  m.def("enumerate_allocations",
        [](int n, int d, const std::string& variant) {
          py::list out;
          for (const auto& a : enumerate_allocations(n, d, parse_occupancy(variant)))
            out.append(py::tuple(py::cast(a.counts)));
          return out;
        },
        py::arg("n"), py::arg("d"), py::arg("variant") = "multi");

  m.def("enumerate_partitions",
        [](int d, int max_parts) {
          py::list out;
          for (const auto& p : enumerate_partitions(d, max_parts)) out.append(py::tuple(py::cast(p.parts())));
          return out;
        },
        py::arg("d"), py::arg("max_parts"));

  m.def("partition_weight",
        [](const std::vector<int>& parts, int n) { return big(partition_weight(Partition(parts), n)); },
        py::arg("parts"), py::arg("n"));

  m.def("p_lambda",
        [](int n, int d, const std::vector<int>& parts) {
          return fraction(p_lambda_base(n, d, Partition(parts)));
        },
        py::arg("n"), py::arg("d"), py::arg("diagram"),
        "Continuation probability of the k = 1 allocation-following searcher.");

  m.def("base_table", [](int n, int d) { return table_dict(base_table(n, d)); }, py::arg("n"),
        py::arg("d"));
  m.def("scaled_table", [](int n, int d, int k) { return table_dict(scaled_table(n, d, k)); },
        py::arg("n"), py::arg("d"), py::arg("k"));
  m.def("min_valid_n", &min_valid_n, py::arg("d"), py::arg("k"));

  m.def("closed_form_value",
        [](int n, int d, int k, const std::string& variant) {
          return report_dict(closed_form_value(make_config(n, d, k, variant, "adversarial")));
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("variant") = "multi");

  m.def("evaluate",
        [](int n, int d, int k, const std::vector<int>& allocation, const std::string& searcher,
           std::optional<py::dict> table, const std::string& variant, const std::string& reveal,
           std::uint64_t node_budget) {
          const auto c = make_config(n, d, k, variant, reveal);
          const auto s = make_searcher(c, searcher, table);
          return fraction(evaluate_exact(c, *s, Allocation{allocation}, options(node_budget)));
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("allocation"),
        py::arg("searcher") = "ptable-scaled", py::arg("table") = py::none(),
        py::arg("variant") = "multi", py::arg("reveal") = "adversarial",
        py::arg("node_budget") = default_budget);

  m.def("certify",
        [](int n, int d, int k, const std::string& searcher, std::optional<py::dict> table,
           const std::string& variant, const std::string& reveal, std::uint64_t node_budget) {
          const auto c = make_config(n, d, k, variant, reveal);
          const auto s = make_searcher(c, searcher, table);
          return report_dict(hider_best_response_value(c, *s, options(node_budget)));
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("searcher") = "ptable-scaled",
        py::arg("table") = py::none(), py::arg("variant") = "multi",
        py::arg("reveal") = "adversarial", py::arg("node_budget") = default_budget);

  m.def("searcher_best_response",
        [](int n, int d, int k, py::object hider, const std::string& variant,
           const std::string& reveal, std::uint64_t node_budget) {
          const auto c = make_config(n, d, k, variant, reveal);
          return report_dict(searcher_best_response_value(c, make_hider(c, hider), options(node_budget)));
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("hider") = "uniform",
        py::arg("variant") = "multi", py::arg("reveal") = "lowest",
        py::arg("node_budget") = default_budget);

  m.def("lp_value",
        [](int n, int d, int k, const std::string& variant, const std::string& reveal,
           std::uint64_t node_budget, std::size_t column_budget) {
          auto o = options(node_budget);
          o.lp_column_budget = column_budget;
          return report_dict(sequence_form_value(make_config(n, d, k, variant, reveal), o));
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("variant") = "multi",
        py::arg("reveal") = "adversarial", py::arg("node_budget") = default_budget,
        py::arg("column_budget") = SolverOptions{}.lp_column_budget);

  m.def("verify_equalizing",
        [](int n, int d, int k, py::dict table) {
          const auto c = make_config(n, d, k, "multi", "adversarial");
          const auto r = verify_equalizing(c, table_from(n, d, k, table));
          py::dict out;
          out["equal"] = r.equal;
          out["value"] = fraction(r.value);
          out["counterexample"] =
              r.counterexample ? py::object(py::tuple(py::cast(r.counterexample->counts))) : py::none();
          return out;
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("table"));

  m.def("simulate",
        [](int n, int d, int k, const std::string& searcher, std::optional<py::dict> table,
           py::object hider, std::uint64_t trials, std::uint64_t seed, const std::string& variant,
           const std::string& reveal) {
          const auto c = make_config(n, d, k, variant, reveal);
          const auto s = make_searcher(c, searcher, table);
          const auto h = make_hider(c, hider);
          McReport r;
          {
            py::gil_scoped_release release;
            r = run_mc(c, *s, h, trials, seed);
          }
          py::dict out;
          out["config"] = config_dict(c);
          out["searcher"] = r.searcher;
          out["hider"] = r.hider;
          out["trials"] = r.trials;
          out["wins"] = r.wins;
          out["seed"] = r.seed;
          out["estimate"] = fraction(r.estimate());
          out["stderr"] = r.stderr_estimate();
          return out;
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("searcher") = "ptable-scaled",
        py::arg("table") = py::none(), py::arg("hider") = "uniform", py::arg("trials") = 100000,
        py::arg("seed") = 1, py::arg("variant") = "multi", py::arg("reveal") = "lowest");
}

// treasure: command-line front end for the treasure-search game library.
//
// Exit codes: 0 ok / tight, 2 usage, 3 invalid table, 4 not tight (or a
// failed --check-exact), 5 budget exceeded, 1 anything else.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treasure/errors.hpp"
#include "treasure/io.hpp"
#include "treasure/montecarlo.hpp"
#include "treasure/solver.hpp"
#include "treasure/strategies.hpp"
#include "treasure/young.hpp"

using namespace treasure;
using io::json;

namespace {

enum Exit { kOk = 0, kOther = 1, kUsage = 2, kBadTable = 3, kNotTight = 4, kBudget = 5 };

struct UsageError : Error {
  using Error::Error;
};

struct Common {
  std::string variant = "multi";
  int n = 0;
  int d = 0;
  int k = 1;
  std::string reveal;
  std::uint64_t node_budget = SolverOptions{}.node_budget;
  std::size_t column_budget = SolverOptions{}.lp_column_budget;
  std::string format = "json";
  std::string out;
  std::vector<std::string> searcher{"ptable-scaled"};
  std::vector<std::string> hider{"uniform"};
  std::string ptable_file;
  std::string hider_file;

  GameConfig config(Reveal fallback) const {
    GameConfig c{n, d, k, parse_occupancy(variant), reveal.empty() ? fallback : parse_reveal(reveal)};
    c.validate();
    return c;
  }

  SolverOptions options() const {
    SolverOptions o;
    o.node_budget = node_budget;
    o.lp_column_budget = column_budget;
    return o;
  }
};

void add_game_options(CLI::App* cmd, Common& c, bool with_budget = true) {
  cmd->add_option("--variant", c.variant, "single or multi occupancy")
      ->check(CLI::IsMember({"single", "multi"}))
      ->capture_default_str();
  cmd->add_option("-n", c.n, "number of doors");
  cmd->add_option("-d", c.d, "number of treasures");
  cmd->add_option("-k", c.k, "maximum guess size")->capture_default_str();
  cmd->add_option("--reveal", c.reveal, "adversarial, uniform-doors, uniform-treasures or lowest")
      ->check(CLI::IsMember({"adversarial", "uniform-doors", "uniform-treasures", "lowest",
                             "lowest-index"}));
  if (with_budget) {
    cmd->add_option("--node-budget", c.node_budget, "game-tree node budget")->capture_default_str();
    cmd->add_option("--lp-column-budget", c.column_budget, "lp column budget")->capture_default_str();
  }
  cmd->add_option("--format", c.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "write output to a file instead of stdout");
}

void add_searcher_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--searcher", c.searcher,
                  "fresh-k, ptable-scaled, ptable-file [PATH] or mu-mimic")
      ->expected(1, 2)
      ->capture_default_str();
  cmd->add_option("--ptable-file", c.ptable_file, "p-table JSON for --searcher ptable-file");
}

void add_hider_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--hider", c.hider, "uniform, all-in-one or file [PATH]")
      ->expected(1, 2)
      ->capture_default_str();
  cmd->add_option("--hider-file", c.hider_file, "hider distribution JSON for --hider file");
}

void require_game(const Common& c) {
  if (c.n < 1 || c.d < 1) throw UsageError("-n and -d are required and must be positive");
}

// Resolves a "kind [PATH]" selector plus its dedicated path flag.
std::string selector_path(const std::vector<std::string>& selector, const std::string& flag_path,
                          const std::string& file_kind, const char* flag) {
  const std::string& kind = selector.front();
  std::string path = selector.size() > 1 ? selector[1] : "";
  if (kind != file_kind) {
    if (selector.size() > 1) throw UsageError("'" + kind + "' takes no path");
    if (!flag_path.empty())
      throw UsageError(std::string(flag) + " conflicts with '" + kind + "'");
    return "";
  }
  if (!path.empty() && !flag_path.empty() && path != flag_path)
    throw UsageError(std::string("two different paths given for '") + file_kind + "'");
  if (path.empty()) path = flag_path;
  if (path.empty()) throw UsageError("'" + file_kind + "' needs a path");
  return path;
}

SearcherPtr make_searcher(const Common& c, const GameConfig& config) {
  const std::string& kind = c.searcher.front();
  const std::string path = selector_path(c.searcher, c.ptable_file, "ptable-file", "--ptable-file");
  if (kind == "fresh-k") return make_searcher_fresh_k(config);
  if (kind == "ptable-scaled")
    return make_searcher_ptable(config, scaled_table(config.n, config.d, config.k));
  if (kind == "ptable-file") return make_searcher_ptable(config, io::load_ptable(path));
  if (kind == "mu-mimic") return make_searcher_mu_mimic(config);
  throw UsageError("unknown searcher '" + kind + "'");
}

HiderStrategy make_hider(const Common& c, const GameConfig& config) {
  const std::string& kind = c.hider.front();
  const std::string path = selector_path(c.hider, c.hider_file, "file", "--hider-file");
  if (kind == "uniform") return make_hider_uniform(config);
  if (kind == "all-in-one") return make_hider_all_in_one(config);
  if (kind == "file") return io::load_hider(path, config);
  throw UsageError("unknown hider '" + kind + "'");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string value_csv_header() { return "n,d,k,variant,reveal,method,value_num,value_den,tight,error"; }

std::string value_csv_row(const GameConfig& c, const std::string& method,
                          const std::optional<Rational>& value, bool tight,
                          const std::string& error) {
  std::ostringstream out;
  out << c.n << ',' << c.d << ',' << c.k << ',' << to_string(c.occupancy) << ','
      << to_string(c.reveal) << ',' << method << ',';
  if (value) out << numerator_of(*value) << ',' << denominator_of(*value);
  else out << ',';
  std::string clean = error;
  for (char& ch : clean)
    if (ch == ',' || ch == '\n') ch = ';';
  out << ',' << (value ? (tight ? "true" : "false") : "") << ',' << clean;
  return out.str();
}

void emit_report(const Common& c, const ValueReport& r, const json& extra = json::object()) {
  Output out(c.out);
  if (c.format == "text") {
    out.stream() << io::text_summary(r);
    for (const auto& [key, v] : extra.items()) {
      const std::string label = key + ":";
      out.stream() << "  " << label << std::string(label.size() < 16 ? 16 - label.size() : 1, ' ')
                   << v.dump() << '\n';
    }
  } else if (c.format == "csv") {
    out.stream() << value_csv_header() << '\n'
                 << value_csv_row(r.config, to_string(r.method), r.value, r.tight, "") << '\n';
  } else {
    json j = io::to_json(r);
    for (const auto& [key, v] : extra.items()) j[key] = v;
    out.stream() << j.dump(2) << '\n';
  }
}

int cmd_value(const Common& c) {
  require_game(c);
  const auto report = closed_form_value(c.config(Reveal::adversarial));
  emit_report(c, report);
  return kOk;
}

int cmd_ptable(const Common& c, bool min_n) {
  Output out(c.out);
  if (min_n) {
    if (c.d < 1 || c.k < 1) throw UsageError("--min-valid-n needs -d and -k");
    const int n = min_valid_n(c.d, c.k);
    if (c.format == "json") out.stream() << json{{"d", c.d}, {"k", c.k}, {"min_valid_n", n}}.dump(2) << '\n';
    else if (c.format == "csv") out.stream() << "d,k,min_valid_n\n" << c.d << ',' << c.k << ',' << n << '\n';
    else out.stream() << n << '\n';
    return kOk;
  }
  require_game(c);
  if (parse_occupancy(c.variant) != Occupancy::multi)
    throw UsageError("p-tables belong to the multi-occupancy game");
  try {
    const PTable t = scaled_table(c.n, c.d, c.k);
    if (c.format == "text") {
      out.stream() << io::text_summary(t);
    } else if (c.format == "csv") {
      out.stream() << "diagram,p_num,p_den\n";
      for (const auto& [diagram, p] : t.entries)
        out.stream() << '"' << diagram.str() << "\"," << numerator_of(p) << ',' << denominator_of(p) << '\n';
    } else {
      out.stream() << io::to_json(t).dump(2) << '\n';
    }
    return kOk;
  } catch (const ExceedsUnit& e) {
    const Rational value = parse_rational(e.value());
    if (c.format == "json") {
      out.stream() << json{{"n", c.n},
                           {"d", c.d},
                           {"k", c.k},
                           {"error", "exceeds-unit"},
                           {"diagram", e.diagram()},
                           {"value", io::to_json(value)},
                           {"message", e.what()}}
                          .dump(2)
                   << '\n';
    } else {
      out.stream() << "p" << Partition(e.diagram()).str() << " = " << e.value() << " > 1\n";
    }
    std::cerr << "error: " << e.what() << '\n';
    return kBadTable;
  }
}

json bounds_json(const ValueReport& r) {
  json j = {{"equalizing", true}};
  for (const auto& [a, v] : r.allocation_values)
    if (v != r.allocation_values.front().second) j["equalizing"] = false;
  return j;
}

int cmd_certify(const Common& c) {
  require_game(c);
  const GameConfig config = c.config(Reveal::adversarial);
  const auto searcher = make_searcher(c, config);
  const auto report = hider_best_response_value(config, *searcher, c.options());
  emit_report(c, report, bounds_json(report));
  return report.tight ? kOk : kNotTight;
}

int cmd_lp(const Common& c, const std::string& certificate_path) {
  require_game(c);
  const auto report = sequence_form_value(c.config(Reveal::adversarial), c.options());
  if (!certificate_path.empty()) {
    std::ofstream file(certificate_path);
    if (!file) throw UsageError("cannot write '" + certificate_path + "'");
    file << io::certificate_document(report).dump(2) << '\n';
  }
  emit_report(c, report);
  return kOk;
}

int cmd_simulate(const Common& c, std::uint64_t trials, std::uint64_t seed, bool check_exact) {
  require_game(c);
  if (trials == 0) throw UsageError("--trials must be positive");
  const GameConfig config = c.config(Reveal::lowest_index);
  if (config.reveal == Reveal::adversarial)
    throw UsageError("simulation needs a chance reveal rule; adversarial reveal is solver-only");
  const auto searcher = make_searcher(c, config);
  const auto hider = make_hider(c, config);
  const auto report = run_mc(config, *searcher, hider, trials, seed);

  std::optional<Rational> exact;
  std::optional<ExactComparison> verdict;
  if (check_exact) {
    Rational total = 0;
    for (const auto& e : hider.distribution())
      total += e.probability * evaluate_exact(config, *searcher, e.allocation, c.options());
    exact = total;
    if (trials >= 100) verdict = compare_to_exact(report, total);
  }

  Output out(c.out);
  if (c.format == "csv") {
    out.stream() << io::kMcCsvHeader << '\n' << io::mc_csv_row(report) << '\n';
  } else if (c.format == "text") {
    out.stream() << io::text_summary(report);
    if (exact) out.stream() << "  exact: " << to_string(*exact) << '\n';
    if (verdict)
      out.stream() << "  z = " << verdict->z_score << (verdict->pass ? "  pass" : "  FAIL") << '\n';
  } else {
    json j = io::to_json(report);
    if (exact) j["exact"] = io::to_json(*exact);
    if (verdict) {
      j["z_score"] = verdict->z_score;
      j["pass"] = verdict->pass;
    }
    out.stream() << j.dump(2) << '\n';
  }
  return verdict && !verdict->pass ? kNotTight : kOk;
}

struct SweepSpec {
  std::string over = "n";
  int from = 1;
  int to = 0;
  std::string method = "lp";
};

int cmd_sweep(const Common& c, const SweepSpec& s) {
  Output out(c.out);
  json rows = json::array();
  if (c.format == "csv" || c.format == "text") out.stream() << value_csv_header() << '\n';
  for (int x = s.from; x <= s.to; ++x) {
    Common point = c;
    (s.over == "n" ? point.n : s.over == "d" ? point.d : point.k) = x;
    GameConfig config{point.n, point.d, point.k, parse_occupancy(point.variant),
                      point.reveal.empty() ? Reveal::adversarial : parse_reveal(point.reveal)};
    std::optional<Rational> value;
    bool tight = false;
    std::string error;
    try {
      require_game(point);
      config.validate();
      ValueReport r;
      if (s.method == "value") r = closed_form_value(config);
      else if (s.method == "certify") r = hider_best_response_value(config, *make_searcher(point, config), point.options());
      else r = sequence_form_value(config, point.options());
      value = r.value;
      tight = r.tight;
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (c.format == "json") {
      json row = {{"config", io::to_json(config)}, {"method", s.method}};
      if (value) {
        row["value"] = io::to_json(*value);
        row["tight"] = tight;
      }
      if (!error.empty()) row["error"] = error;
      rows.push_back(std::move(row));
    } else {
      out.stream() << value_csv_row(config, s.method, value, tight, error) << '\n';
    }
  }
  if (c.format == "json") out.stream() << rows.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact values, strategy tables, certificates and simulations for treasure-search games"};
  app.require_subcommand(1);

  Common common;
  auto* value = app.add_subcommand("value", "closed-form value with applicability notes");
  add_game_options(value, common, false);

  bool min_n = false;
  auto* ptable = app.add_subcommand("ptable", "scaled p-table for the multi game");
  add_game_options(ptable, common, false);
  ptable->add_flag("--min-valid-n", min_n, "print the smallest n where scaling works");

  auto* certify = app.add_subcommand("certify", "hider best response against a searcher strategy");
  add_game_options(certify, common);
  add_searcher_options(certify, common);

  std::string certificate_path;
  auto* lp = app.add_subcommand("lp", "exact game value by sequence-form linear programming");
  add_game_options(lp, common);
  lp->add_option("--emit-certificate", certificate_path, "write the plan and allocation values here");

  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  bool check_exact = false;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of a strategy pair");
  add_game_options(simulate, common);
  add_searcher_options(simulate, common);
  add_hider_options(simulate, common);
  simulate->add_option("--trials", trials, "number of games")->capture_default_str();
  simulate->add_option("--seed", seed, "random seed")->capture_default_str();
  simulate->add_flag("--check-exact", check_exact, "compare with the exact expectation");

  SweepSpec sweep_spec;
  auto* sweep = app.add_subcommand("sweep", "values over a range of n, d or k");
  add_game_options(sweep, common);
  add_searcher_options(sweep, common);
  sweep->add_option("--over", sweep_spec.over, "parameter to vary")
      ->check(CLI::IsMember({"n", "d", "k"}))
      ->capture_default_str();
  sweep->add_option("--from", sweep_spec.from, "first value")->required();
  sweep->add_option("--to", sweep_spec.to, "last value")->required();
  sweep->add_option("--method", sweep_spec.method, "value, certify or lp")
      ->check(CLI::IsMember({"value", "certify", "lp"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (sweep->parsed() && common.format == "json" && !sweep->count("--format")) common.format = "csv";

  try {
    if (value->parsed()) return cmd_value(common);
    if (ptable->parsed()) return cmd_ptable(common, min_n);
    if (certify->parsed()) return cmd_certify(common);
    if (lp->parsed()) return cmd_lp(common, certificate_path);
    if (simulate->parsed()) return cmd_simulate(common, trials, seed, check_exact);
    if (sweep->parsed()) return cmd_sweep(common, sweep_spec);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidTable& e) {
    std::cerr << "invalid table: " << e.what() << '\n';
    return kBadTable;
  } catch (const DoorBudget& e) {
    std::cerr << "door budget: " << e.what() << '\n';
    return kBadTable;
  } catch (const NonMonotone& e) {
    std::cerr << "non-monotone: " << e.what() << '\n';
    return kBadTable;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const AdversarialRevealUnsupported& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}

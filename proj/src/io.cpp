#include "treasure/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "treasure/errors.hpp"

namespace treasure::io {

namespace {

json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
      throw InvalidArgument("malformed integer '" + s + "'");
    return BigInt(s);
  }
  throw InvalidArgument("expected an integer, got " + j.dump());
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<int> int_array(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw InvalidArgument(std::string(what) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw InvalidArgument(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

json to_json(const Rational& r) {
  return {{"num", big_to_json(numerator_of(r))}, {"den", big_to_json(denominator_of(r))}};
}

Rational rational_from_json(const json& j) {
  if (j.is_number_float())
    throw InvalidArgument("decimal probability " + j.dump() + " rejected; use an exact fraction");
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_object()) {
    const BigInt num = big_from_json(field(j, "num"));
    const BigInt den = big_from_json(field(j, "den"));
    if (den == 0) throw InvalidArgument("zero denominator");
    return Rational(num, den);
  }
  throw InvalidArgument("expected an exact fraction, got " + j.dump());
}

json to_json(const Partition& p) { return p.parts(); }
json to_json(const Allocation& a) { return a.counts; }

json to_json(const GameConfig& c) {
  return {{"n", c.n},
          {"d", c.d},
          {"k", c.k},
          {"variant", to_string(c.occupancy)},
          {"reveal", to_string(c.reveal)}};
}

json to_json(const History& h) {
  json out = json::array();
  for (const auto& e : h.events) {
    json ev = {{"guess", e.guess.doors()}};
    ev["revealed"] = e.revealed == kLoss ? json(nullptr) : json(e.revealed);
    out.push_back(std::move(ev));
  }
  return out;
}

json to_json(const PTable& t) {
  json entries = json::array();
  for (const auto& [diagram, p] : t.entries)
    entries.push_back({{"diagram", to_json(diagram)}, {"p", to_json(p)}});
  return {{"n", t.n}, {"d", t.d}, {"k", t.k}, {"entries", std::move(entries)}};
}

json to_json(const ValueReport& r) {
  json out = {{"config", to_json(r.config)},
              {"method", to_string(r.method)},
              {"value", to_json(r.value)},
              {"counting_bound", to_json(r.counting_bound)},
              {"tight", r.tight}};
  if (r.one_door_cap) out["one_door_cap"] = to_json(*r.one_door_cap);
  if (!r.applicability.empty()) out["applicability"] = r.applicability;
  if (!r.strategy.empty()) out["strategy"] = r.strategy;
  if (r.worst_allocation) out["worst_allocation"] = to_json(*r.worst_allocation);
  if (!r.notes.empty()) out["notes"] = r.notes;
  if (r.certificate) {
    out["lp"] = {{"rows", r.certificate->rows},
                 {"columns", r.certificate->columns},
                 {"pivots", r.certificate->pivots},
                 {"dual_objective", to_json(r.certificate->dual_objective)},
                 {"plan_guarantee", to_json(r.certificate->plan_guarantee)}};
  }
  return out;
}

json to_json(const LpCertificate& c) {
  json plan = json::array();
  for (const auto& e : c.plan)
    plan.push_back({{"history", to_json(e.history)},
                    {"guess", e.guess.doors()},
                    {"probability", to_json(e.probability)},
                    {"realization", to_json(e.realization)}});
  json hider = json::array();
  for (const auto& e : c.hider)
    hider.push_back({{"allocation", to_json(e.allocation)}, {"p", to_json(e.probability)}});
  return {{"plan", std::move(plan)},
          {"hider", std::move(hider)},
          {"plan_guarantee", to_json(c.plan_guarantee)},
          {"dual_objective", to_json(c.dual_objective)},
          {"rows", c.rows},
          {"columns", c.columns},
          {"pivots", c.pivots}};
}

json to_json(const McReport& r) {
  const Rational est = r.estimate();
  return {{"config", to_json(r.config)},
          {"searcher", r.searcher},
          {"hider", r.hider},
          {"trials", r.trials},
          {"wins", r.wins},
          {"estimate", to_json(est)},
          {"estimate_decimal", to_double(est)},
          {"stderr", r.stderr_estimate()},
          {"seed", r.seed}};
}

json to_json(const EqualizingReport& r) {
  json values = json::array();
  for (const auto& [a, v] : r.per_allocation)
    values.push_back({{"allocation", to_json(a)}, {"value", to_json(v)}});
  json out = {{"equal", r.equal}, {"value", to_json(r.value)}, {"per_allocation", values}};
  if (r.counterexample) out["counterexample"] = to_json(*r.counterexample);
  return out;
}

PTable ptable_from_json(const json& j) {
  PTable t;
  t.n = field(j, "n").get<int>();
  t.d = field(j, "d").get<int>();
  t.k = field(j, "k").get<int>();
  for (const auto& entry : field(j, "entries")) {
    Partition diagram(int_array(field(entry, "diagram"), "diagram"));
    Rational p = rational_from_json(field(entry, "p"));
    if (!t.entries.emplace(diagram, std::move(p)).second)
      throw InvalidTable("duplicate entry for diagram " + diagram.str());
  }
  return t;
}

PTable load_ptable(const std::string& path) {
  return ptable_from_json(read_file(path));
}

HiderStrategy hider_from_json(const json& j, const GameConfig& config) {
  if (j.contains("n") && j.at("n").get<int>() != config.n)
    throw InvalidArgument("hider file is for a different n");
  if (j.contains("d") && j.at("d").get<int>() != config.d)
    throw InvalidArgument("hider file is for a different d");
  if (j.contains("variant") && parse_occupancy(j.at("variant").get<std::string>()) != config.occupancy)
    throw InvalidArgument("hider file is for a different variant");
  std::vector<WeightedAllocation> distribution;
  for (const auto& entry : field(j, "entries"))
    distribution.push_back({Allocation{int_array(field(entry, "allocation"), "allocation")},
                            rational_from_json(field(entry, "p"))});
  return HiderStrategy(config, std::move(distribution), "file");
}

HiderStrategy load_hider(const std::string& path, const GameConfig& config) {
  return hider_from_json(read_file(path), config);
}

json certificate_document(const ValueReport& report) {
  json out = {{"config", to_json(report.config)},
              {"method", to_string(report.method)},
              {"value", to_json(report.value)}};
  if (report.certificate) {
    const json c = to_json(*report.certificate);
    for (const auto& [key, v] : c.items()) out[key] = v;
  }
  json values = json::array();
  for (const auto& [a, v] : report.allocation_values)
    values.push_back({{"allocation", to_json(a)}, {"value", to_json(v)}});
  out["allocation_values"] = std::move(values);
  return out;
}

std::string mc_csv_row(const McReport& r) {
  const Rational est = r.estimate();
  std::ostringstream out;
  out << r.config.n << ',' << r.config.d << ',' << r.config.k << ','
      << to_string(r.config.occupancy) << ',' << to_string(r.config.reveal) << ','
      << r.searcher << ',' << r.hider << ',' << r.trials << ',' << r.wins << ','
      << numerator_of(est) << ',' << denominator_of(est) << ','
      << std::setprecision(10) << r.stderr_estimate() << ',' << r.seed;
  return out.str();
}

std::string text_summary(const ValueReport& r) {
  std::ostringstream out;
  out << r.config.str() << '\n'
      << "  method:         " << to_string(r.method) << '\n'
      << "  value:          " << to_string(r.value) << "  (" << std::setprecision(8)
      << to_double(r.value) << ")\n"
      << "  counting bound: " << to_string(r.counting_bound) << '\n';
  if (r.one_door_cap) out << "  k/n cap:        " << to_string(*r.one_door_cap) << '\n';
  out << "  tight:          " << (r.tight ? "yes" : "no") << '\n';
  if (!r.applicability.empty()) out << "  status:         " << r.applicability << '\n';
  if (!r.strategy.empty()) out << "  strategy:       " << r.strategy << '\n';
  if (r.worst_allocation) out << "  worst:          " << r.worst_allocation->str() << '\n';
  for (const auto& note : r.notes) out << "  note: " << note << '\n';
  return out.str();
}

std::string text_summary(const PTable& t) {
  std::ostringstream out;
  out << "p-table n=" << t.n << " d=" << t.d << " k=" << t.k << '\n';
  for (const auto& [diagram, p] : t.entries)
    out << "  p" << diagram.str() << " = " << to_string(p) << '\n';
  return out.str();
}

std::string text_summary(const McReport& r) {
  std::ostringstream out;
  out << r.config.str() << " searcher=" << r.searcher << " hider=" << r.hider << '\n'
      << "  wins " << r.wins << " / " << r.trials << " = " << std::setprecision(8)
      << to_double(r.estimate()) << " +- " << r.stderr_estimate() << " (seed " << r.seed
      << ")\n";
  return out.str();
}

}  // namespace treasure::io

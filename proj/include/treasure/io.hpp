#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "treasure/montecarlo.hpp"
#include "treasure/ptable.hpp"
#include "treasure/solver.hpp"
#include "treasure/strategies.hpp"
#include "treasure/young.hpp"

namespace treasure::io {

using nlohmann::json;

/// {"num": a, "den": b}. Integers beyond 64 bits are written as strings.
json to_json(const Rational& r);

/// Accepts {"num","den"} objects (integers or digit strings), "a/b" strings
/// and plain integers. Floating-point numbers are rejected.
Rational rational_from_json(const json& j);

json to_json(const Partition& p);
json to_json(const Allocation& a);
json to_json(const GameConfig& c);
json to_json(const History& h);
json to_json(const PTable& t);
json to_json(const ValueReport& r);
json to_json(const LpCertificate& c);
json to_json(const McReport& r);
json to_json(const EqualizingReport& r);

/// {"n","d","k","entries":[{"diagram":[2,1],"p":{"num":4,"den":7}}, ...]}
PTable ptable_from_json(const json& j);
PTable load_ptable(const std::string& path);

/// {"n","d","variant","entries":[{"allocation":[2,1,0],"p":{...}}, ...]}.
/// n, d and variant must agree with `config` when present.
HiderStrategy hider_from_json(const json& j, const GameConfig& config);
HiderStrategy load_hider(const std::string& path, const GameConfig& config);

/// Certificate document: realization plan entries plus per-allocation values.
json certificate_document(const ValueReport& report);

inline constexpr const char* kMcCsvHeader =
    "n,d,k,variant,reveal,searcher,hider,trials,wins,estimate_num,estimate_den,stderr,seed";
std::string mc_csv_row(const McReport& r);

/// Human-readable one-screen summaries.
std::string text_summary(const ValueReport& r);
std::string text_summary(const PTable& t);
std::string text_summary(const McReport& r);

}  // namespace treasure::io

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace treasure {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on arguments (config, allocation, guess) was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Discovery-order counts of a history are not a Young diagram.
class NonMonotone : public Error {
 public:
  explicit NonMonotone(std::vector<int> counts)
      : Error("discovery-order counts are not nonincreasing"),
        counts_(std::move(counts)) {}
  const std::vector<int>& counts() const { return counts_; }

 private:
  std::vector<int> counts_;
};

/// Problems with a p-table: missing diagram, entry outside [0,1], or an
/// entry that scaling pushed above one.
class InvalidTable : public Error {
 public:
  using Error::Error;
};

class ExceedsUnit : public InvalidTable {
 public:
  ExceedsUnit(std::vector<int> diagram, std::string value)
      : InvalidTable("scaled entry for diagram " + format(diagram) + " is " + value +
                     ", which exceeds 1"),
        diagram_(std::move(diagram)),
        value_(std::move(value)) {}
  const std::vector<int>& diagram() const { return diagram_; }
  /// Offending entry as "num/den".
  const std::string& value() const { return value_; }

 private:
  static std::string format(const std::vector<int>& parts) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i)
      out += (i ? "," : "") + std::to_string(parts[i]);
    return out + ")";
  }

  std::vector<int> diagram_;
  std::string value_;
};

/// Fewer than d*k doors: fresh doors may run out.
class DoorBudget : public Error {
 public:
  using Error::Error;
};

/// The node or LP-column budget was exhausted. Never converted into an
/// approximation.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Searcher best response needs chance (or forced) reveals.
class AdversarialRevealUnsupported : public Error {
 public:
  using Error::Error;
};

/// Something that cannot happen by construction did (e.g. an infeasible
/// sequence-form LP).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace treasure

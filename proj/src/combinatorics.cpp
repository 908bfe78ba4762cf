#include "treasure/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "treasure/errors.hpp"

namespace treasure {

Rational parse_rational(const std::string& text) {
  if (text.find_first_of(".eE") != std::string::npos)
    throw InvalidArgument("decimal probability '" + text +
                          "' rejected; use an exact fraction");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InvalidArgument("malformed fraction '" + text + "'");
  }
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1)
      throw InvalidArgument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw InvalidArgument("partition parts must be nonincreasing");
  }
  size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Partition::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out << ',';
    out << parts_[i];
  }
  out << ')';
  return out.str();
}

int Allocation::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

Partition Allocation::shape() const {
  std::vector<int> parts;
  for (int c : counts)
    if (c > 0) parts.push_back(c);
  std::sort(parts.rbegin(), parts.rend());
  return Partition(std::move(parts));
}

std::string Allocation::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out << ',';
    out << counts[i];
  }
  out << ')';
  return out.str();
}

BigInt binomial(int n, int r) {
  if (n < 0 || r < 0) throw InvalidArgument("binomial needs nonnegative args");
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (int i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

BigInt count_allocations(int n, int d, Occupancy variant) {
  if (n < 1 || d < 0) throw InvalidArgument("count_allocations needs n>=1, d>=0");
  return variant == Occupancy::single ? binomial(n, d) : binomial(n + d - 1, d);
}

namespace {

void fill_allocations(int door, int left, int cap, std::vector<int>& counts,
                      std::vector<Allocation>& out) {
  const int n = static_cast<int>(counts.size());
  if (door == n - 1) {
    if (left <= cap) {
      counts[door] = left;
      out.push_back(Allocation{counts});
    }
    return;
  }
  // Remaining doors after this one can absorb at most `room` treasures.
  const int room = (n - door - 1) * cap;
  for (int c = std::max(0, left - room); c <= std::min(left, cap); ++c) {
    counts[door] = c;
    fill_allocations(door + 1, left - c, cap, counts, out);
  }
}

void fill_partitions(int left, int max_part, int max_parts,
                     std::vector<int>& parts, std::vector<Partition>& out) {
  if (left == 0) {
    out.emplace_back(parts);
    return;
  }
  if (static_cast<int>(parts.size()) == max_parts) return;
  for (int c = std::min(left, max_part); c >= 1; --c) {
    parts.push_back(c);
    fill_partitions(left - c, c, max_parts, parts, out);
    parts.pop_back();
  }
}

}  // namespace

std::vector<Allocation> enumerate_allocations(int n, int d, Occupancy variant) {
  if (n < 1 || d < 0) throw InvalidArgument("enumerate_allocations needs n>=1");
  std::vector<Allocation> out;
  const int cap = variant == Occupancy::single ? 1 : d;
  std::vector<int> counts(n, 0);
  fill_allocations(0, d, cap, counts, out);
  return out;
}

std::vector<Partition> enumerate_partitions(int d, int max_parts) {
  if (d < 0 || max_parts < 0)
    throw InvalidArgument("enumerate_partitions needs d>=0, max_parts>=0");
  std::vector<Partition> out;
  std::vector<int> parts;
  fill_partitions(d, d, max_parts, parts, out);
  return out;
}

BigInt partition_weight(const Partition& pi, int n) {
  const int j = pi.num_parts();
  if (j > n)
    throw InvalidArgument("partition " + pi.str() + " has more parts than " +
                          std::to_string(n) + " doors");
  // n! / (n-j)! ordered placements, divided by permutations of equal parts.
  BigInt result = 1;
  for (int i = 0; i < j; ++i) result *= n - i;
  std::map<int, int> multiplicity;
  for (int c : pi.parts()) ++multiplicity[c];
  for (const auto& [value, m] : multiplicity)
    for (int i = 2; i <= m; ++i) result /= i;
  return result;
}

BigInt partition_count(int d) {
  return static_cast<int>(enumerate_partitions(d, d).size());
}

}  // namespace treasure

#include "doctest.h"
#include "oracles.hpp"
#include "treasure/errors.hpp"
#include "treasure/solver.hpp"
#include "treasure/young.hpp"

using namespace treasure;

namespace {

GameConfig multi(int n, int d, int k) { return {n, d, k, Occupancy::multi, Reveal::adversarial}; }

// Continuation frequency of the expanded allocation-following searcher at
// every prefix whose finds form `lambda`; nullopt if no prefix does.
std::optional<std::vector<Rational>> mimic_continuations(const oracle::MimicTree& tree,
                                                         const Partition& lambda) {
  std::vector<Rational> out;
  for (const auto& [prefix, node] : tree.nodes()) {
    if (prefix.empty() || oracle::MimicTree::diagram_of(prefix) != lambda.parts()) continue;
    const auto next = tree.conditional(prefix);
    auto it = next.find(prefix.back());
    out.push_back(it == next.end() ? Rational(0) : it->second);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace

TEST_CASE("p_lambda_base examples") {
  CHECK(p_lambda_base(2, 2, Partition({1})) == Rational(2, 3));
  CHECK(p_lambda_base(6, 3, Partition({1})) == Rational(36, 56));
  CHECK(p_lambda_base(5, 3, Partition({2})) == Rational(1, 5));
  for (int n = 2; n <= 8; ++n) CHECK(p_lambda_base(n, 3, Partition({1, 1})) == 0);
  CHECK_THROWS_AS(p_lambda_base(5, 3, Partition({3})), InvalidArgument);
  CHECK_THROWS_AS(p_lambda_base(2, 5, Partition({1, 1, 1})), InvalidArgument);
}

TEST_CASE("p_lambda_base agrees with the exhaustive expansion") {
  for (int n = 1; n <= 6; ++n)
    for (int d = 2; d <= 4; ++d) {
      const oracle::MimicTree tree(n, d);
      for (const auto& lambda : decision_diagrams(n, d)) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(lambda.str());
        const Rational p = p_lambda_base(n, d, lambda);
        CHECK(p >= 0);
        CHECK(p <= 1);
        const auto seen = mimic_continuations(tree, lambda);
        if (!seen) {
          CHECK(p == 0);
          continue;
        }
        for (const auto& q : *seen) CHECK(q == p);
      }
    }
}

TEST_CASE("switching probability after one find has a closed form") {
  for (int n = 1; n <= 10; ++n)
    for (int d = 2; d <= 5; ++d) {
      const Rational q = 1 - p_lambda_base(n, d, Partition({1}));
      CHECK(q == Rational(oracle::pascal(n, d), oracle::pascal(n + d - 1, d)));
    }
}

TEST_CASE("zero exactly when continuing is impossible") {
  for (int n = 1; n <= 7; ++n)
    for (int d = 2; d <= 6; ++d)
      for (const auto& lambda : decision_diagrams(n, d)) {
        const auto& parts = lambda.parts();
        const bool blocked = parts.size() >= 2 && parts[parts.size() - 1] == parts[parts.size() - 2];
        if (blocked) CHECK(p_lambda_base(n, d, lambda) == 0);
        if (!blocked && n >= d) CHECK(p_lambda_base(n, d, lambda) > 0);
      }
}

TEST_CASE("scaled tables") {
  const auto t = scaled_table(9, 3, 2);
  CHECK(t.entries.size() == 3);
  CHECK(t.at(Partition({1})) == Rational(54, 55));
  CHECK(t.at(Partition({2})) == Rational(2, 9));
  CHECK(t.at(Partition({1, 1})) == 0);
  CHECK(t.at(Partition({1})) == 2 * (1 - Rational(oracle::pascal(9, 3), oracle::pascal(11, 3))));

  const auto small = scaled_table(4, 2, 2);
  CHECK(small.entries.size() == 1);
  CHECK(small.at(Partition({1})) == Rational(4, 5));

  try {
    scaled_table(6, 3, 2);
    FAIL("expected ExceedsUnit");
  } catch (const ExceedsUnit& e) {
    CHECK(e.diagram() == std::vector<int>{1});
    CHECK(e.value() == "9/7");
  }
  CHECK_THROWS_AS(scaled_table(5, 3, 2), DoorBudget);
  CHECK_THROWS_AS(t.at(Partition({3})), InvalidTable);
}

TEST_CASE("min_valid_n") {
  CHECK(min_valid_n(2, 2) == 4);
  CHECK(min_valid_n(3, 2) == 9);
  for (int k = 1; k <= 5; ++k) CHECK(min_valid_n(1, k) == k);
  // The scan agrees with a direct search.
  for (int d = 2; d <= 4; ++d)
    for (int k = 1; k <= 3; ++k) {
      const int found = min_valid_n(d, k);
      for (int n = d * k; n < found; ++n) {
        bool over = false;
        for (const auto& lambda : decision_diagrams(n, d))
          if (k * p_lambda_base(n, d, lambda) > 1) over = true;
        CHECK(over);
      }
      for (const auto& lambda : decision_diagrams(found, d))
        CHECK(k * p_lambda_base(found, d, lambda) <= 1);
    }
}

TEST_CASE("free diagrams count p(d) - 1") {
  const int partitions[] = {0, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int d = 1; d <= 8; ++d) CHECK(static_cast<int>(free_diagrams(d).size()) == partitions[d] - 1);
}

TEST_CASE("verify_equalizing on hand-built tables") {
  const auto five = verify_equalizing(
      multi(5, 3, 2), PTable{5, 3, 2,
                             {{Partition({1}), Rational(1)},
                              {Partition({2}), Rational(4, 7)},
                              {Partition({1, 1}), Rational(6, 7)}}});
  CHECK(five.equal);
  CHECK(five.value == Rational(8, 35));
  CHECK(five.per_allocation.size() == 35);

  const auto six = verify_equalizing(
      multi(6, 3, 2), PTable{6, 3, 2,
                             {{Partition({1}), Rational(1)},
                              {Partition({2}), Rational(3, 7)},
                              {Partition({1, 1}), Rational(4, 7)}}});
  CHECK(six.equal);
  CHECK(six.value == Rational(1, 7));

  const auto halves = verify_equalizing(
      multi(6, 3, 2), PTable{6, 3, 2,
                             {{Partition({1}), Rational(1, 2)},
                              {Partition({2}), Rational(1, 2)},
                              {Partition({1, 1}), Rational(1, 2)}}});
  CHECK_FALSE(halves.equal);
  REQUIRE(halves.counterexample);
  Rational lowest = 1;
  for (const auto& [a, v] : halves.per_allocation) lowest = std::min(lowest, v);
  CHECK(halves.value == lowest);
}

TEST_CASE("d = 3 family with n = 3k - 1") {
  for (int k = 2; k <= 4; ++k) {
    const int n = 3 * k - 1;
    CAPTURE(n);
    const Rational second = Rational(n * k * k) / Rational(oracle::pascal(n + 2, 3));
    auto table_with = [&](const Rational& x) {
      return PTable{n, 3, k,
                    {{Partition({1}), Rational(1)},
                     {Partition({2}), second},
                     {Partition({1, 1}), x}}};
    };
    // Every win probability is affine in the (1,1) entry, which is consulted
    // at most once per play. Solve for the entry that equalizes.
    const auto at0 = verify_equalizing(multi(n, 3, k), table_with(0)).per_allocation;
    const auto at1 = verify_equalizing(multi(n, 3, k), table_with(1)).per_allocation;
    const Rational target = Rational(k * k * k) / Rational(oracle::pascal(n + 2, 3));
    std::optional<Rational> x;
    for (std::size_t i = 0; i < at0.size(); ++i) {
      const Rational slope = at1[i].second - at0[i].second;
      if (slope == 0) continue;
      const Rational candidate = (target - at0[i].second) / slope;
      if (!x) x = candidate;
      CHECK(*x == candidate);
    }
    REQUIRE(x);
    CHECK(*x >= 0);
    CHECK(*x <= 1);
    const auto report = verify_equalizing(multi(n, 3, k), table_with(*x));
    CHECK(report.equal);
    CHECK(report.value == target);
  }
}

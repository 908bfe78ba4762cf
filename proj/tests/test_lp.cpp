#include <random>

#include "doctest.h"
#include "treasure/errors.hpp"
#include "treasure/lp.hpp"

using namespace treasure;
using lp::Constraint;
using lp::Problem;

namespace {

Problem make(std::vector<Rational> objective, std::vector<std::vector<Rational>> a,
             std::vector<Rational> b) {
  Problem p;
  for (std::size_t j = 0; j < objective.size(); ++j) p.add_var();
  p.objective = std::move(objective);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Constraint row;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != 0) row.terms.push_back({j, a[i][j]});
    row.rhs = b[i];
    p.rows.push_back(std::move(row));
  }
  return p;
}

// Best objective over all feasible intersections of two tight constraints
// (axes included), for two-variable problems.
Rational vertex_optimum(const std::vector<Rational>& c,
                        const std::vector<std::vector<Rational>>& a,
                        const std::vector<Rational>& b) {
  std::vector<std::vector<Rational>> lines = a;
  std::vector<Rational> rhs = b;
  lines.push_back({-1, 0});
  rhs.push_back(0);
  lines.push_back({0, -1});
  rhs.push_back(0);
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Rational det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
      if (det == 0) continue;
      const Rational x = (rhs[i] * lines[j][1] - lines[i][1] * rhs[j]) / det;
      const Rational y = (lines[i][0] * rhs[j] - rhs[i] * lines[j][0]) / det;
      bool feasible = true;
      for (std::size_t r = 0; r < lines.size(); ++r)
        if (lines[r][0] * x + lines[r][1] * y > rhs[r]) feasible = false;
      if (!feasible) continue;
      const Rational value = c[0] * x + c[1] * y;
      if (!best || value > *best) best = value;
    }
  return *best;
}

}  // namespace

TEST_CASE("two-variable example") {
  const auto p = make({1, 1}, {{2, 1}, {1, 3}}, {4, 6});
  const auto s = lp::maximize(p);
  CHECK(s.objective == Rational(14, 5));
  CHECK(s.primal[0] == Rational(6, 5));
  CHECK(s.primal[1] == Rational(8, 5));
  CHECK(lp::certifies_optimum(p, s));
  CHECK(s.dual[0] == Rational(2, 5));
  CHECK(s.dual[1] == Rational(1, 5));
}

TEST_CASE("classic cycling example terminates") {
  const auto p = make({Rational(3, 4), -20, Rational(1, 2), -6},
                      {{Rational(1, 4), -8, -1, 9}, {Rational(1, 2), -12, Rational(-1, 2), 3},
                       {0, 0, 1, 0}},
                      {0, 0, 1});
  const auto s = lp::maximize(p);
  CHECK(s.objective == Rational(5, 4));
  CHECK(lp::certifies_optimum(p, s));
}

TEST_CASE("matrix game: shifted rock-paper-scissors") {
  // Row player mixes x over three rows; v <= payoff against each column.
  const std::vector<std::vector<int>> payoff = {{1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
  Problem p;
  for (int i = 0; i < 4; ++i) p.add_var();
  p.objective[3] = 1;
  for (int col = 0; col < 3; ++col) {
    Constraint row;
    row.terms.push_back({3, 1});
    for (int r = 0; r < 3; ++r) row.terms.push_back({static_cast<std::size_t>(r), -payoff[r][col]});
    p.rows.push_back(row);
  }
  p.rows.push_back({{{0, 1}, {1, 1}, {2, 1}}, 1});
  const auto s = lp::maximize(p);
  CHECK(s.objective == 1);
  for (int r = 0; r < 3; ++r) CHECK(s.primal[r] == Rational(1, 3));
  for (int col = 0; col < 3; ++col) CHECK(s.dual[col] == Rational(1, 3));
  CHECK(lp::certifies_optimum(p, s));
}

TEST_CASE("random two-variable problems match vertex enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-5, 6);
  std::uniform_int_distribution<int> bound(0, 9);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Rational> c = {coef(rng), coef(rng)};
    std::vector<std::vector<Rational>> a = {{1, 0}, {0, 1}};
    std::vector<Rational> b = {bound(rng) + 1, bound(rng) + 1};
    const int extra = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < extra; ++i) {
      a.push_back({coef(rng), coef(rng)});
      b.push_back(bound(rng));
    }
    const auto p = make(c, a, b);
    const auto s = lp::maximize(p);
    CHECK(s.objective == vertex_optimum(c, a, b));
    CHECK(lp::certifies_optimum(p, s));
  }
}

TEST_CASE("random degenerate problems certify") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coef(-3, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const int vars = 3 + static_cast<int>(rng() % 4);
    const int rows = 3 + static_cast<int>(rng() % 5);
    std::vector<Rational> c(vars);
    for (auto& v : c) v = coef(rng);
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int i = 0; i < rows; ++i) {
      std::vector<Rational> row(vars);
      for (auto& v : row) v = coef(rng);
      a.push_back(row);
      b.push_back(rng() % 3 == 0 ? 0 : 1 + static_cast<int>(rng() % 3));
    }
    for (int j = 0; j < vars; ++j) {
      std::vector<Rational> row(vars, 0);
      row[j] = 1;
      a.push_back(row);
      b.push_back(5);
    }
    const auto p = make(c, a, b);
    const auto s = lp::maximize(p);
    CHECK(lp::certifies_optimum(p, s));
  }
}

TEST_CASE("invalid and unbounded problems") {
  CHECK_THROWS_AS(lp::maximize(make({1}, {{1}}, {-1})), InvalidArgument);
  CHECK_THROWS_AS(lp::maximize(make({1, 1}, {{1, -1}}, {1})), InternalError);
  const auto s = lp::maximize(make({-1, -1}, {{1, 1}}, {3}));
  CHECK(s.objective == 0);
}

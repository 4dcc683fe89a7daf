#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "evoapsp/rng.hpp"

using evoapsp::RngStream;

TEST_CASE("identical seed lineage reproduces the sequence") {
  RngStream a(42, 3), b(42, 3);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids diverge") {
  RngStream a(42, 0), b(42, 1);
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  REQUIRE(same == 0);
}

TEST_CASE("poisson lambda 0 is degenerate at 0") {
  RngStream r(1, 0);
  for (int i = 0; i < 100; ++i) REQUIRE(r.poisson(0.0) == 0);
}

TEST_CASE("poisson rejects lambda outside [0, 30]") {
  RngStream r(1, 0);
  REQUIRE_THROWS_AS(r.poisson(-0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(r.poisson(31.0), std::invalid_argument);
}

TEST_CASE("poisson(1) matches the analytic pmf") {
  RngStream r(7, 0);
  const int draws = 100000;
  double sum = 0;
  std::vector<int> cells(8, 0);
  for (int i = 0; i < draws; ++i) {
    const int s = r.poisson(1.0);
    sum += s;
    if (s < 8) ++cells[s];
  }
  // CLT bound on the mean: Var[Pois(1)] = 1.
  REQUIRE(std::abs(sum / draws - 1.0) < 3.0 / std::sqrt(draws));
  // Cells 0..3 against e^-1 / s!, 3 sigma binomial bounds.
  double fact = 1.0;
  for (int s = 0; s <= 3; ++s) {
    if (s > 0) fact *= s;
    const double p = std::exp(-1.0) / fact;
    const double sigma = std::sqrt(draws * p * (1 - p));
    REQUIRE(std::abs(cells[s] - draws * p) < 3.0 * sigma);
  }
}

TEST_CASE("bernoulli endpoints are deterministic") {
  RngStream r(3, 0);
  for (int i = 0; i < 100; ++i) {
    REQUIRE(r.bernoulli(0.0) == false);
    REQUIRE(r.bernoulli(1.0) == true);
  }
  REQUIRE_THROWS_AS(r.bernoulli(-0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(r.bernoulli(1.1), std::invalid_argument);
}

TEST_CASE("uniform_index bounds") {
  RngStream r(9, 0);
  for (int i = 0; i < 100; ++i) REQUIRE(r.uniform_index(1) == 0);
  REQUIRE_THROWS_AS(r.uniform_index(0), std::invalid_argument);
}

TEST_CASE("uniform_index(7) cell frequencies within 3 sigma") {
  RngStream r(11, 0);
  const int draws = 70000;
  std::vector<int> cells(7, 0);
  for (int i = 0; i < draws; ++i) ++cells[r.uniform_index(7)];
  const double expect = draws / 7.0;
  const double sigma = std::sqrt(draws * (1.0 / 7.0) * (6.0 / 7.0));
  for (int c : cells) REQUIRE(std::abs(c - expect) < 3.0 * sigma);
}

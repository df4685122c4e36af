#include "oracles.hpp"
#include "psel/error.hpp"
#include "psel/random.hpp"
#include "psel/topsis.hpp"

#include <doctest.h>

#include <numeric>

using namespace psel;
using namespace psel::topsis;

namespace {

const std::vector<Direction> kBenefit2 = {Direction::kBenefit, Direction::kBenefit};

}  // namespace

TEST_CASE("normalize_matrix") {
  const auto r = normalize_matrix(DecisionMatrix::from_rows({{3, 1}, {4, 0}}));
  CHECK(r(0, 0) == doctest::Approx(0.6));
  CHECK(r(1, 0) == doctest::Approx(0.8));
  CHECK(r(0, 1) == 1.0);
  CHECK(r(1, 1) == 0.0);

  try {
    DecisionMatrix d(Matrix::from_rows({{1, 0}, {2, 0}}), {"skills", "about"}, {"a", "b"});
    normalize_matrix(d);
    FAIL("expected degenerate column");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerate);
    CHECK(std::string(e.what()).find("about") != std::string::npos);
  }
}

TEST_CASE("decision matrix invariants") {
  CHECK_THROWS_AS(DecisionMatrix::from_rows({{1, 2}}), Error);
  CHECK_THROWS_AS(DecisionMatrix::from_rows({{1, 2}, {3}}), Error);
  CHECK_THROWS_AS(DecisionMatrix::from_rows({{1, std::nan("")}, {3, 4}}), Error);
  CHECK_THROWS_AS(DecisionMatrix(Matrix(2, 1, 1.0), {"x"}, {"a", "a"}), Error);
}

TEST_CASE("apply_weights") {
  const Matrix r = Matrix::from_rows({{0.6, 1.0}, {0.8, 0.0}});
  auto v = apply_weights(r, WeightVector({1, 1}));
  CHECK(v(0, 0) == doctest::Approx(0.3));
  CHECK(v(1, 0) == doctest::Approx(0.4));
  CHECK(v(0, 1) == doctest::Approx(0.5));

  v = apply_weights(r, WeightVector({1, 0}));
  CHECK(v(0, 1) == 0.0);
  CHECK(v(0, 0) == doctest::Approx(0.6));

  v = apply_weights(r, WeightVector({3, 1}));
  CHECK(v(0, 0) == doctest::Approx(0.75 * 0.6));
  CHECK(v(0, 1) == doctest::Approx(0.25));

  CHECK_THROWS_AS(apply_weights(r, WeightVector({1, 1, 1})), Error);
  CHECK_THROWS_AS(WeightVector({0, 0}), Error);
  CHECK_THROWS_AS(WeightVector({1, -1}), Error);
}

TEST_CASE("ideal_points") {
  const Matrix v = Matrix::from_rows({{0.1, 0.2}, {0.3, 0.2}});
  const auto benefit = ideal_points(v, kBenefit2);
  CHECK(benefit.best == std::vector<double>{0.3, 0.2});
  CHECK(benefit.worst == std::vector<double>{0.1, 0.2});
  const auto cost = ideal_points(v, {Direction::kCost, Direction::kBenefit});
  CHECK(cost.best[0] == 0.1);
  CHECK(cost.worst[0] == 0.3);
  CHECK_THROWS_AS(ideal_points(v, {Direction::kCost}), Error);
}

TEST_CASE("separation_distances") {
  const Matrix v = Matrix::from_rows({{0.3, 0.4}, {0.6, 0.8}});
  const auto s = separation_distances(v, {{0.6, 0.8}, {0.3, 0.4}});
  CHECK(s.s_plus[0] == doctest::Approx(0.5));
  CHECK(s.s_plus[1] == 0.0);
  CHECK(s.s_minus[0] == 0.0);
  CHECK(s.s_minus[1] == doctest::Approx(0.5));
}

TEST_CASE("closeness_and_rank") {
  const auto r = closeness_and_rank({0.0, 0.5, 0.3}, {0.4, 0.5, 0.0}, {"a", "b", "c"});
  CHECK(r.closeness == std::vector<double>{1.0, 0.5, 0.0});
  CHECK(r.ranking == std::vector<std::size_t>{0, 1, 2});
  CHECK_THROWS_AS(closeness_and_rank({0.0}, {0.0}, {"a"}), Error);
  CHECK_THROWS_AS(closeness_and_rank({0.0, 1.0}, {0.0}, {"a", "b"}), Error);
}

TEST_CASE("topsis end to end") {
  SUBCASE("dominance") {
    const auto r = topsis::topsis(DecisionMatrix::from_rows({{2, 2}, {1, 1}}), WeightVector::equal(2), kBenefit2);
    CHECK(r.closeness == std::vector<double>{1.0, 0.0});
    CHECK(r.ranking == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("three candidates against the spreadsheet oracle") {
    const std::vector<std::vector<double>> d = {{7, 9}, {8, 7}, {9, 6}};
    const auto expect = oracle::topsis(d, {0.6, 0.4}, {true, true});
    // Frozen from an independent numpy recompute of the same stages.
    const std::vector<double> frozen = {0.5194739404499615, 0.4126743149648757, 0.48052605955003846};
    const auto r = topsis::topsis(DecisionMatrix::from_rows(d), WeightVector({0.6, 0.4}), kBenefit2);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(r.closeness[i] == doctest::Approx(frozen[i]).epsilon(1e-12));
      CHECK(r.closeness[i] == doctest::Approx(expect.closeness[i]).epsilon(1e-12));
    }
    CHECK(r.ranking == std::vector<std::size_t>{0, 2, 1});
    CHECK(r.ranking == expect.ranking);
  }
  SUBCASE("identical rows tie, lower index first") {
    const auto r = topsis::topsis(DecisionMatrix::from_rows({{1, 5}, {3, 2}, {1, 5}}), WeightVector::equal(2), kBenefit2);
    CHECK(r.closeness[0] == r.closeness[2]);
    const auto pos0 = std::find(r.ranking.begin(), r.ranking.end(), 0);
    const auto pos2 = std::find(r.ranking.begin(), r.ranking.end(), 2);
    CHECK(pos0 < pos2);
  }
  SUBCASE("all candidates identical") {
    CHECK_THROWS_AS(topsis::topsis(DecisionMatrix::from_rows({{2, 3}, {2, 3}}), WeightVector::equal(2), kBenefit2), Error);
  }
}

TEST_CASE("topsis properties") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + uniform_index(rng, 19), n = 1 + uniform_index(rng, 6);
    std::vector<std::vector<double>> d(m, std::vector<double>(n));
    for (auto& row : d) {
      for (auto& x : row) x = 0.1 + 99.9 * uniform_unit(rng);
    }
    std::vector<double> w(n);
    for (auto& x : w) x = uniform_unit(rng) + 0.01;
    std::vector<Direction> dirs(n);
    for (auto& x : dirs) x = uniform_index(rng, 2) ? Direction::kBenefit : Direction::kCost;

    const auto r = topsis::topsis(DecisionMatrix::from_rows(d), WeightVector(w), dirs);
    for (double c : r.closeness) {
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
    }

    // A row that weakly dominates every other on all (benefit) criteria wins.
    auto dom = d;
    std::vector<double> top(n, 0.0);
    for (const auto& row : d) {
      for (std::size_t j = 0; j < n; ++j) top[j] = std::max(top[j], row[j]);
    }
    dom[uniform_index(rng, m)] = top;
    const auto rd = topsis::topsis(DecisionMatrix::from_rows(dom), WeightVector(w), std::vector<Direction>(n, Direction::kBenefit));
    const double best = *std::max_element(rd.closeness.begin(), rd.closeness.end());
    for (std::size_t i = 0; i < m; ++i) {
      if (dom[i] == top) CHECK(rd.closeness[i] == best);
    }
  }
}

#include "oracles.hpp"
#include "psel/error.hpp"
#include "psel/random.hpp"
#include "psel/ranking_validation.hpp"

#include <doctest.h>

#include <cmath>

using namespace psel;
using namespace psel::validation;

TEST_CASE("worked examples") {
  CHECK(rmse({{0, 0}, {3, 4}}) == doctest::Approx(std::sqrt(12.5)));
  CHECK(rmse({{0, 0}, {3, 4}}) == doctest::Approx(3.53553).epsilon(1e-6));
  CHECK(rmse({{5}, {2}}) == 3.0);
  CHECK(mae({{1, 3}, {2, 1}}) == 1.5);
  CHECK(mape({{100}, {97}}) == doctest::Approx(300.0 / 97.0));
  CHECK(mape({{100}, {97}}) == doctest::Approx(3.0928).epsilon(1e-5));
  CHECK(manhattan_distance({{1, 2}, {4, 6}}) == 7.0);
  CHECK(cosine_similarity({{1, 2}, {2, 1}}) == doctest::Approx(0.8));
  CHECK(cosine_similarity({{1, 0}, {0, 1}}) == 0.0);
  CHECK(cosine_similarity({{3, 4}, {3, 4}}) == doctest::Approx(1.0));
}

TEST_CASE("normalized rmse is rmse over the reference range") {
  // 7.503 / 49.79 rounds to 0.1507.
  CHECK(7.503 / 49.79 == doctest::Approx(0.1507).epsilon(5e-4));
  const ScorePair pair({1, 4, 2}, {0, 5, 10});
  CHECK(normalized_rmse(pair) == doctest::Approx(rmse(pair) / 10.0).epsilon(1e-15));
  CHECK(normalized_rmse({{1, 2}, {1, 2}}) == 0.0);
  CHECK_THROWS_AS(normalized_rmse({{1, 2}, {3, 3}}), Error);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(ScorePair({}, {}), Error);
  CHECK_THROWS_AS(ScorePair({1}, {1, 2}), Error);
  CHECK_THROWS_AS(ScorePair({INFINITY}, {1}), Error);
  try {
    mape({{1, 2, 3}, {1, 0, 3}});
    FAIL("expected division error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDivision);
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
  CHECK_THROWS_AS(cosine_similarity({{0, 0}, {1, 2}}), Error);
}

TEST_CASE("validation report") {
  SUBCASE("identical vectors") {
    const auto r = validation_report({{1, 2, 3}, {1, 2, 3}});
    CHECK(*r.at("rmse").value == 0.0);
    CHECK(*r.at("mae").value == 0.0);
    CHECK(*r.at("mape").value == 0.0);
    CHECK(*r.at("manhattan").value == 0.0);
    CHECK(*r.at("cosine").value == doctest::Approx(1.0));
    CHECK(*r.at("nrmse").value == 0.0);
  }
  SUBCASE("zero reference entry leaves the rest") {
    const auto r = validation_report({{1, 2, 3}, {0, 2, 4}});
    CHECK_FALSE(r.at("mape").value.has_value());
    CHECK(r.at("mape").unavailable_reason.find("index 0") != std::string::npos);
    CHECK(r.at("rmse").value.has_value());
    CHECK(r.at("nrmse").value.has_value());
    CHECK(r.metrics.size() == 6);
  }
  SUBCASE("fields equal standalone operations") {
    const ScorePair p({1.5, 2, 7}, {1, 3, 5});
    const auto r = validation_report(p);
    CHECK(*r.at("rmse").value == rmse(p));
    CHECK(*r.at("mae").value == mae(p));
    CHECK(*r.at("mape").value == mape(p));
    CHECK(*r.at("manhattan").value == manhattan_distance(p));
    CHECK(*r.at("cosine").value == cosine_similarity(p));
    CHECK(*r.at("nrmse").value == normalized_rmse(p));
  }
}

TEST_CASE("metric properties") {
  Rng rng(99);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + uniform_index(rng, 30);
    std::vector<double> p(m), r(m);
    for (std::size_t i = 0; i < m; ++i) {
      p[i] = 10.0 * uniform_unit(rng) + 0.5;
      r[i] = 10.0 * uniform_unit(rng) + 0.5;
    }
    const ScorePair pr(p, r), rp(r, p);
    CHECK(mae(pr) <= rmse(pr) * (1 + 1e-15));
    CHECK(rmse(pr) <= std::sqrt(static_cast<double>(m)) * mae(pr) * (1 + 1e-12));
    CHECK(rmse(pr) == doctest::Approx(rmse(rp)).epsilon(1e-15));
    CHECK(mae(pr) == doctest::Approx(mae(rp)).epsilon(1e-15));
    CHECK(manhattan_distance(pr) == doctest::Approx(manhattan_distance(rp)).epsilon(1e-15));
    const double k = 0.1 + 5 * uniform_unit(rng);
    std::vector<double> scaled = p;
    for (auto& x : scaled) x *= k;
    CHECK(cosine_similarity({scaled, r}) == doctest::Approx(cosine_similarity(pr)).epsilon(1e-12));
    CHECK(rmse({p, p}) == 0.0);
    CHECK(mae({p, p}) == 0.0);
    CHECK(manhattan_distance({p, p}) == 0.0);
  }
  // Asymmetric pair: reference-anchored metrics change when swapped.
  const ScorePair a({1, 10}, {2, 4}), b({2, 4}, {1, 10});
  CHECK(mape(a) != doctest::Approx(mape(b)));
  CHECK(normalized_rmse(a) != doctest::Approx(normalized_rmse(b)));
}

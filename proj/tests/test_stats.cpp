#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "srswor/stats.hpp"
#include "srswor/verify.hpp"

using namespace srswor;

TEST_CASE("chi-square survival function at reference quantiles") {
  // Reference values from scipy.stats.chi2.sf.
  CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.050013683763956804).epsilon(1e-9));
  CHECK(chi_square_sf(16.0, 1) == doctest::Approx(6.334248366623988e-05).epsilon(1e-9));
  CHECK(chi_square_sf(10.0, 5) == doctest::Approx(0.07523524614651217).epsilon(1e-9));
  CHECK(chi_square_sf(30.0, 19) == doctest::Approx(0.05179845889302389).epsilon(1e-9));
  CHECK(chi_square_sf(0.0, 3) == 1.0);
  // Q(1, x) = exp(-x).
  CHECK(regularized_gamma_q(1.0, 2.5) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
  CHECK_THROWS_AS(regularized_gamma_q(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("chi_square_gof") {
  SUBCASE("proportional observations") {
    const std::vector<std::uint64_t> obs{25, 25, 50};
    const std::vector<double> p{0.25, 0.25, 0.5};
    const auto r = chi_square_gof(obs, p, 0.001);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.dof == 2);
    CHECK(r.pass);
  }
  SUBCASE("(30, 70) against a fair coin") {
    const std::vector<std::uint64_t> obs{30, 70};
    const std::vector<double> p{0.5, 0.5};
    const auto r = chi_square_gof(obs, p, 0.001);
    CHECK(r.statistic == doctest::Approx(16.0));
    CHECK(r.dof == 1);
    CHECK_FALSE(r.pass);
  }
  SUBCASE("small cells are pooled") {
    const std::vector<std::uint64_t> obs{1, 2, 48, 49};
    const std::vector<double> p{0.01, 0.02, 0.47, 0.50};
    const auto r = chi_square_gof(obs, p, 0.001);
    CHECK(r.dof == 1);  // {1,2,48} pooled, then {49}
  }
  SUBCASE("alpha = 1 rejects anything short of a perfect fit") {
    const std::vector<std::uint64_t> obs{49, 51};
    const std::vector<double> p{0.5, 0.5};
    CHECK_FALSE(chi_square_gof(obs, p, 1.0).pass);
  }
  SUBCASE("errors") {
    const std::vector<std::uint64_t> obs{5, 5};
    CHECK_THROWS_AS(chi_square_gof(obs, std::vector<double>{1.0}, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_gof(obs, std::vector<double>{0.5, 0.4}, 0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(chi_square_gof(std::vector<std::uint64_t>{0, 0},
                                   std::vector<double>{0.5, 0.5}, 0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(chi_square_gof(std::vector<std::uint64_t>{2, 2},
                                   std::vector<double>{0.5, 0.5}, 0.01),
                    std::invalid_argument);
  }
}

TEST_CASE("chi-square rejection rate is calibrated under the null") {
  RandomSource src(1);
  const std::vector<double> p(20, 0.05);
  const int tests = 2000;
  for (double alpha : {0.05, 0.01}) {
    int rejections = 0;
    for (int t = 0; t < tests; ++t) {
      std::vector<std::uint64_t> counts(20, 0);
      for (int i = 0; i < 10000; ++i) ++counts[src.next_uniform_int(20) - 1];
      rejections += chi_square_gof(counts, p, alpha).pass ? 0 : 1;
    }
    const double rate = static_cast<double>(rejections) / tests;
    const double sigma = std::sqrt(alpha * (1.0 - alpha) / tests);
    CHECK_MESSAGE(std::fabs(rate - alpha) <= 3.0 * sigma, "alpha=", alpha, " rate=", rate);
  }
}

TEST_CASE("two-sample chi-square") {
  const std::vector<std::uint64_t> a{100, 200, 300};
  const std::vector<std::uint64_t> b{50, 100, 150};
  auto r = chi_square_two_sample(a, b, 0.001);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.dof == 2);
  const std::vector<std::uint64_t> c{300, 200, 100};
  r = chi_square_two_sample(a, c, 0.001);
  CHECK_FALSE(r.pass);
  CHECK_THROWS_AS(chi_square_two_sample(a, std::vector<std::uint64_t>{1}, 0.1),
                  std::invalid_argument);
}

TEST_CASE("Kolmogorov-Smirnov") {
  RandomSource src(2);
  std::vector<double> u(20000);
  for (auto& x : u) x = src.next_uniform_real();
  const auto ok = ks_test(u, [](double x) { return x; }, 0.001);
  CHECK(ok.pass);
  const auto bad = ks_test(u, [](double x) { return x * x; }, 0.001);
  CHECK_FALSE(bad.pass);
  // Evenly spaced points: D = 1/(2n).
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100.0);
  CHECK(ks_test(grid, [](double x) { return x; }, 0.001).statistic == doctest::Approx(0.005));
}

TEST_CASE("first_position_pmf") {
  CHECK(first_position_pmf(5, 2, 1) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(first_position_pmf(5, 2, 2) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(first_position_pmf(5, 2, 3) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(first_position_pmf(5, 2, 4) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(first_position_pmf(5, 2, 5) == 0.0);
  CHECK(first_position_pmf(5, 2, 0) == 0.0);
  CHECK(first_position_pmf(7, 7, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(first_position_pmf(5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(first_position_pmf(5, 6, 1), std::invalid_argument);

  SUBCASE("matches enumeration of all 10 two-subsets of [5]") {
    std::vector<int> first(6, 0);
    for (int a = 1; a <= 5; ++a) {
      for (int b = a + 1; b <= 5; ++b) ++first[a];
    }
    for (int x = 1; x <= 4; ++x) CHECK(first_position_pmf(5, 2, x) == doctest::Approx(first[x] / 10.0));
  }
  SUBCASE("normalized for all n <= 50") {
    for (Index n = 1; n <= 50; ++n) {
      for (Index k = 1; k <= n; ++k) {
        double mass = 0.0;
        for (Index x = 1; x <= n; ++x) mass += first_position_pmf(n, k, static_cast<std::int64_t>(x));
        REQUIRE(std::fabs(mass - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("expected_membership_draws") {
  CHECK(expected_membership_draws(10, 0) == 0.0);
  CHECK(expected_membership_draws(1234, 1) == 1.0);
  // Exact rational harmonic sums (Python fractions).
  CHECK(std::fabs(expected_membership_draws(100, 50) - 68.81721793101951) < 1e-10);
  CHECK(std::fabs(expected_membership_draws(1000, 100) - 105.30497964959149) < 1e-10);
  // k = n gives n * H_n.
  double h = 0.0;
  for (int i = 1; i <= 20; ++i) h += 1.0 / i;
  CHECK(expected_membership_draws(20, 20) == doctest::Approx(20.0 * h).epsilon(1e-12));
  CHECK_THROWS_AS(expected_membership_draws(3, 4), std::invalid_argument);
}

TEST_CASE("expected_hash_occupancy") {
  CHECK(expected_hash_occupancy(1000, 0) == 0.0);
  CHECK(expected_hash_occupancy(1000, 1000) == 0.0);
  CHECK(expected_hash_occupancy(1000, 500) == 250.0);
  CHECK(expected_hash_occupancy(1000, 100) == 90.0);
  SUBCASE("maximized at floor(n/2) for every n <= 10^4") {
    for (Index n = 1; n <= 10000; ++n) {
      const double at_half = expected_hash_occupancy(n, n / 2);
      for (Index i = 0; i <= n; ++i) REQUIRE(expected_hash_occupancy(n, i) <= at_half);
    }
  }
}

TEST_CASE("cost model") {
  CHECK(cost_model(Algorithm::Membership, 100, 50).expected_draws ==
        expected_membership_draws(100, 50));
  CHECK(cost_model(Algorithm::Sparse, 1000, 200).expected_draws == 200.0);
  CHECK(cost_model(Algorithm::Sparse, 1000, 200).expected_space == doctest::Approx(160.0));
  CHECK(cost_model(Algorithm::Sparse, 1000, 900).expected_space == doctest::Approx(250.0));
  CHECK(cost_model(Algorithm::ClassicalFy, 1000, 10).expected_space == 1000.0);
  CHECK(cost_model(Algorithm::InOrder, 1000, 10).expected_draws == 10.0);
  CHECK(cost_model(Algorithm::Selection, 10, 10).expected_draws == doctest::Approx(10.0));
  CHECK(cost_model(Algorithm::Reservoir, 10, 3).expected_draws == 7.0);
}

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : all_algorithms()) CHECK(algorithm_from_name(algorithm_name(a)) == a);
  CHECK_THROWS_AS(algorithm_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("subset ranks") {
  std::set<std::uint64_t> ranks;
  for (Index a = 1; a <= 6; ++a)
    for (Index b = a + 1; b <= 6; ++b)
      for (Index c = b + 1; c <= 6; ++c) {
        const Index s[] = {c, a, b};
        ranks.insert(subset_rank(s));
      }
  CHECK(ranks.size() == 20);
  CHECK(*ranks.rbegin() == 19);
  CHECK(choose_exact(60, 30) == 118264581564861424ull);
  CHECK_THROWS_AS(choose_exact(200, 100), std::overflow_error);
}

TEST_CASE("enumerate_subset_distribution") {
  RandomSource src(3);
  const SubsetSampler select = [](UniformSource& s, Index n, Index k) {
    return selection_sample(s, n, k).indices;
  };
  const SubsetSampler inorder = [](UniformSource& s, Index n, Index k) {
    return inorder_sample(s, n, k).indices;
  };
  CHECK(enumerate_subset_distribution(select, 6, 3, 20000, src, 0.001).pass);
  CHECK(enumerate_subset_distribution(inorder, 6, 3, 20000, src, 0.001).pass);
  CHECK_FALSE(enumerate_subset_distribution(checks::biased_sampler, 6, 3, 20000, src, 0.001).pass);
  CHECK_THROWS_AS(enumerate_subset_distribution(select, 10, 5, 100000, src, 0.001),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_subset_distribution(select, 6, 3, 1999, src, 0.001),
                  std::invalid_argument);
  const SubsetSampler repeats = [](UniformSource&, Index, Index) {
    return std::vector<Index>{1, 1, 2};
  };
  CHECK_THROWS_AS(enumerate_subset_distribution(repeats, 6, 3, 2000, src, 0.001),
                  std::logic_error);
}

TEST_CASE("verification suite") {
  SUBCASE("quick suite passes") {
    const auto results = run_verification({VerifySuite::Quick, 1, 0.001, false});
    CHECK(results.size() > 40);
    for (const auto& r : results) CHECK_MESSAGE(r.pass, r.name, " p=", r.p_value, " ", r.detail);
  }
  SUBCASE("injected bias is caught") {
    const auto results = run_verification({VerifySuite::Quick, 1, 0.001, true});
    bool caught = false;
    for (const auto& r : results) {
      if (r.name.find("biased") != std::string::npos) caught = !r.pass;
    }
    CHECK(caught);
  }
  SUBCASE("alpha = 1 fails every stochastic check") {
    const auto results = run_verification({VerifySuite::Quick, 1, 1.0, false});
    for (const auto& r : results) {
      if (r.stochastic) CHECK_MESSAGE(!r.pass, r.name);
    }
  }
}

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "srswor/rng.hpp"
#include "srswor/samplers.hpp"

namespace srswor {

struct GofReport {
  double statistic = 0.0;
  std::uint64_t dof = 0;
  double p_value = 1.0;
  bool pass = true;
};

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_q(double a, double x);

/// P(X >= statistic) for X ~ chi-square(dof).
double chi_square_sf(double statistic, double dof);

/// Pearson goodness of fit. Adjacent cells are pooled until each pooled cell
/// has expected count >= 5; dof = pooled cells - 1; pass iff p_value >= alpha.
/// Throws std::invalid_argument on mismatched lengths, probabilities that do
/// not sum to 1 within 1e-9, no observations, or fewer than two pooled cells.
GofReport chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> expected_probs, double alpha);

/// Two-sample chi-square homogeneity test on a 2 x m table. Columns with
/// fewer than 5 combined observations are pooled with their neighbour.
GofReport chi_square_two_sample(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b, double alpha);

struct KsReport {
  double statistic = 0.0;
  std::uint64_t n = 0;
  double p_value = 1.0;
  bool pass = true;
};

/// One-sample Kolmogorov-Smirnov against a continuous CDF; p-value from the
/// asymptotic Kolmogorov law with Stephens' small-sample correction.
KsReport ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf, double alpha);

/// P(X_1 = x): probability that the smallest element of a uniform k-subset
/// of [1, n] is x, i.e. C(n-x, k-1) / C(n, k). Zero outside [1, n-k+1].
double first_position_pmf(Index n, Index k, std::int64_t x);

/// Expected with-replacement draws of membership checking:
/// sum_{t=0}^{k-1} n / (n - t) = n (H_n - H_{n-k}).
double expected_membership_draws(Index n, Index k);

/// Expected number of displaced hash entries after i sparse swaps: i(n-i)/n.
double expected_hash_occupancy(Index n, Index i);

/// Samplers that share the SampleResult contract.
enum class Algorithm {
  ClassicalFy,
  Sparse,
  Membership,
  Preinit,
  Selection,
  InOrder,
  Reservoir,
};

/// CLI names: fy, sparse, member, preinit, select, inorder, reservoir.
std::string_view algorithm_name(Algorithm a);
/// Throws std::invalid_argument for an unknown name.
Algorithm algorithm_from_name(std::string_view name);
std::span<const Algorithm> all_algorithms();

SampleResult run_algorithm(Algorithm a, UniformSource& src, Index n, Index k);

/// Expected cost of drawing k of n with a given algorithm, as implemented
/// here: logical draws and peak bookkeeping entries.
struct CostModel {
  Algorithm algorithm = Algorithm::Sparse;
  double expected_draws = 0.0;
  double expected_space = 0.0;
};

CostModel cost_model(Algorithm a, Index n, Index k);

/// Rank of a k-subset of [1, n] in colexicographic order, in [0, C(n, k)).
/// `subset` need not be sorted.
std::uint64_t subset_rank(std::span<const Index> subset);

/// Exact C(n, k) for small arguments; throws std::overflow_error on overflow.
std::uint64_t choose_exact(std::uint64_t n, std::uint64_t k);

using SubsetSampler = std::function<std::vector<Index>(UniformSource&, Index n, Index k)>;

/// Runs `sampler` reps times and tests the drawn subsets against the uniform
/// law over all C(n, k) subsets. Requires C(n, k) <= 200 and
/// reps >= 100 C(n, k); violations throw std::invalid_argument.
GofReport enumerate_subset_distribution(const SubsetSampler& sampler, Index n,
                                        Index k, std::uint64_t reps,
                                        UniformSource& src, double alpha);

}  // namespace srswor

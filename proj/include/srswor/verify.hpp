#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "srswor/distributions.hpp"
#include "srswor/rng.hpp"
#include "srswor/stats.hpp"

namespace srswor {

/// Outcome of one verification check. For tolerance checks `statistic` is
/// the measured deviation and `p_value` is NaN.
struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
  bool pass = false;
  bool stochastic = false;  ///< decided by a p-value against alpha
  std::string detail;
};

/// Distinct per-check seed derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

namespace checks {

CheckResult uniform_int(std::uint64_t seed, Index m, std::uint64_t draws, double alpha);
CheckResult bernoulli_mean(std::uint64_t seed, double p, std::uint64_t draws);
CheckResult binomial_pmf(std::uint64_t seed, Index n, double p, std::uint64_t draws,
                         double alpha);
CheckResult beta_mean(std::uint64_t seed, double alpha_param, double beta_param,
                      std::uint64_t draws);
/// KS test of the closed-form Beta(1, b) against P(T >= z) = (1 - z)^b.
CheckResult beta_one_ks(std::uint64_t seed, double b, std::uint64_t draws, double alpha);
CheckResult beta_binomial_pmf(std::uint64_t seed, Index a, Index b, Index n,
                              std::uint64_t draws, double alpha);
CheckResult hypergeometric_pmf(std::uint64_t seed, HypergeomParams params,
                               std::uint64_t draws, double alpha);
/// Up to `count` distinct non-degenerate triples with n <= max_n, drawn
/// with `seed`; always includes (2, 4, 2).
std::vector<HypergeomParams> hypergeometric_triples(std::uint64_t seed, Index max_n,
                                                    std::size_t count);

/// Sparse and classical Fisher-Yates agree elementwise for seeds
/// [first_seed, first_seed + seeds).
CheckResult sparse_equivalence(std::uint64_t first_seed, std::uint64_t seeds, Index n,
                               Index k);
CheckResult iterator_prefix(std::uint64_t first_seed, std::uint64_t seeds, Index n);

CheckResult subset_uniform(Algorithm a, std::uint64_t seed, Index n, Index k,
                           std::uint64_t reps, double alpha);
/// Same as subset_uniform for an arbitrary sampler handle.
CheckResult subset_uniform(const std::string& name, const SubsetSampler& sampler,
                           std::uint64_t seed, Index n, Index k, std::uint64_t reps,
                           double alpha);
/// Every index of [1, n] appears with frequency k/n.
CheckResult inclusion_uniform(Algorithm a, std::uint64_t seed, Index n, Index k,
                              std::uint64_t reps, double alpha);

/// Smallest sampled position follows first_position_pmf. For algorithms
/// that do not emit sorted output the minimum of the sample is used.
CheckResult first_position(Algorithm a, std::uint64_t seed, Index n, Index k,
                           std::uint64_t reps, double alpha);

/// Exactly k logical draws per run for `a` over `runs` random (n, k).
CheckResult exact_draw_budget(Algorithm a, std::uint64_t seed, std::uint64_t runs);
/// Mean membership-checking draws within `rel_tol` of the harmonic formula.
CheckResult membership_draws(std::uint64_t seed, Index n, Index k, std::uint64_t reps,
                             double rel_tol);

struct OccupancyProfile {
  std::vector<Index> checkpoints;
  std::vector<double> mean;
  std::vector<double> stderr_of_mean;
};
OccupancyProfile occupancy_profile(std::uint64_t seed, Index n,
                                   std::span<const Index> checkpoints,
                                   std::uint64_t runs);
/// Mean iterator state size within 3 standard errors of i(n-i)/n at every
/// checkpoint, and the i = n/2 checkpoint has the largest mean.
CheckResult hash_occupancy(std::uint64_t seed, Index n, std::span<const Index> checkpoints,
                           std::uint64_t runs);

/// Random arrays of length <= max_n are unchanged by the undo sampler.
CheckResult restoration(std::uint64_t seed, std::uint64_t arrays, Index max_n);

/// split_sample_counts followed by per-block sparse Fisher-Yates is uniform
/// over subsets of the concatenated population.
CheckResult split_duality(std::uint64_t seed, std::span<const Index> blocks, Index k,
                          std::uint64_t reps_per_subset, double alpha);

/// Merge of two shards (n1, k1), (n2, k2) against the auxiliary-uniform
/// brute force. For equal shards the results are: equal per-item inclusion,
/// per-item inclusion given merged size, agreement with brute force on the
/// merged set law, and winner-keeps-all. For unequal shards the first two are
/// replaced by a two-sample comparison of inclusion counts with the oracle.
std::vector<CheckResult> merge_correctness(std::uint64_t seed, Index n1, Index k1,
                                           Index n2, Index k2, std::uint64_t reps,
                                           double alpha);
/// Swapping the two inputs leaves the merged-set law unchanged.
CheckResult merge_symmetry(std::uint64_t seed, Index n1, Index k1, Index n2, Index k2,
                           std::uint64_t reps, double alpha);

/// Sampler that always includes index 1; must fail subset_uniform.
std::vector<Index> biased_sampler(UniformSource& src, Index n, Index k);

}  // namespace checks

enum class VerifySuite { Quick, Full };

struct VerifyOptions {
  VerifySuite suite = VerifySuite::Quick;
  std::uint64_t seed = 1;
  double alpha = 0.001;
  /// Adds a subset check over checks::biased_sampler (test hook).
  bool inject_biased = false;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);

/// One line per check: `PASS|FAIL <name> statistic=<x> p_value=<p> [detail]`.
void write_text_report(std::ostream& out, std::span<const CheckResult> results);

}  // namespace srswor

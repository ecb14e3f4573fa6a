#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "srswor/rng.hpp"
#include "srswor/samplers.hpp"

namespace srswor {

/// Per-block sample sizes (k_1, ..., k_m), jointly multivariate
/// hypergeometric: block j receives Hypergeometric(n_j, n_j + ... + n_m,
/// k_remaining). Sums to k and never exceeds a block's size.
std::vector<Index> split_sample_counts(UniformSource& src,
                                       std::span<const Index> block_sizes, Index k,
                                       DrawStats* stats = nullptr);

/// One shard's simple random sample together with the size of the population
/// it was drawn from. Identifiers are opaque to this module.
template <typename Id>
struct MergeInput {
  std::vector<Id> sample;
  Index population_size = 0;
};

/// Thresholds and survivor counts for one merge round.
struct MergeState {
  /// T_c ~ Beta(k_c + 1, n_c - k_c): the (k_c+1)-th smallest auxiliary uniform
  /// in shard c. Items of shard c are in its sample iff their uniform < T_c.
  std::vector<double> thresholds;
  /// kappa_c ~ Binomial(k_c, T' / T_c) with T' = min_c T_c.
  std::vector<Index> kappas;
  double global_threshold = 1.0;
};

template <typename Id>
struct MergeResult {
  std::vector<Id> merged;
  Index effective_size = 0;
  MergeState state;
};

/// Draws thresholds and survivor counts for shards given as (k_c, n_c).
/// The shard attaining the minimum threshold keeps all of its k_c items.
MergeState draw_merge_state(UniformSource& src,
                            std::span<const std::pair<Index, Index>> shard_sizes);

/// Simple random sample of `target` elements of `sample`, chosen by sparse
/// Fisher-Yates over positions; returned in selection order.
template <typename Id>
std::vector<Id> downsample(UniformSource& src, std::span<const Id> sample,
                           Index target) {
  if (target > sample.size()) {
    throw std::invalid_argument("downsample: target exceeds sample size");
  }
  std::vector<Id> out;
  out.reserve(target);
  if (target == 0) return out;
  SparseFisherYatesIterator it(sample.size(), src);
  for (Index i = 0; i < target; ++i) out.push_back(sample[it.next() - 1]);
  return out;
}

/// Merges shard samples into one simple random sample of the union of the
/// shard populations. All thresholds are drawn jointly (no pairwise folding),
/// so any number of shards is supported.
template <typename Id>
MergeResult<Id> merge_samples(UniformSource& src,
                              std::span<const MergeInput<Id>> shards) {
  std::vector<std::pair<Index, Index>> sizes;
  sizes.reserve(shards.size());
  for (const auto& s : shards) sizes.emplace_back(s.sample.size(), s.population_size);

  MergeResult<Id> out;
  out.state = draw_merge_state(src, sizes);
  for (std::size_t c = 0; c < shards.size(); ++c) {
    auto part = downsample(src, std::span<const Id>(shards[c].sample),
                           out.state.kappas[c]);
    out.merged.insert(out.merged.end(), part.begin(), part.end());
    out.effective_size += out.state.kappas[c];
  }
  return out;
}

template <typename Id>
MergeResult<Id> merge_samples(UniformSource& src, const MergeInput<Id>& a,
                              const MergeInput<Id>& b) {
  const std::vector<MergeInput<Id>> both{a, b};
  return merge_samples(src, std::span<const MergeInput<Id>>(both));
}

}  // namespace srswor

#include "srswor/distributed.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "srswor/distributions.hpp"

namespace srswor {

std::vector<Index> split_sample_counts(UniformSource& src,
                                       std::span<const Index> block_sizes, Index k,
                                       DrawStats* stats) {
  if (block_sizes.empty()) {
    throw std::invalid_argument("split_sample_counts: no blocks");
  }
  Index total = 0;
  for (Index b : block_sizes) {
    if (b == 0) throw std::invalid_argument("split_sample_counts: empty block");
    total += b;
  }
  if (k > total) {
    throw std::invalid_argument("split_sample_counts: k = " + std::to_string(k) +
                                " exceeds total population " + std::to_string(total));
  }

  std::vector<Index> counts(block_sizes.size(), 0);
  Index remaining_n = total;
  Index remaining_k = k;
  for (std::size_t j = 0; j + 1 < block_sizes.size() && remaining_k > 0; ++j) {
    counts[j] = hypergeometric(src, {block_sizes[j], remaining_n, remaining_k}, stats);
    remaining_n -= block_sizes[j];
    remaining_k -= counts[j];
  }
  counts.back() += remaining_k;
  return counts;
}

MergeState draw_merge_state(UniformSource& src,
                            std::span<const std::pair<Index, Index>> shard_sizes) {
  MergeState state;
  if (shard_sizes.empty()) return state;
  state.thresholds.reserve(shard_sizes.size());
  for (const auto& [k, n] : shard_sizes) {
    if (n == 0) throw std::invalid_argument("merge_samples: empty population");
    if (k > n) {
      throw std::invalid_argument("merge_samples: sample size " + std::to_string(k) +
                                  " exceeds population " + std::to_string(n));
    }
    state.thresholds.push_back(beta(
        src, {static_cast<double>(k) + 1.0, static_cast<double>(n - k)}));
  }
  state.global_threshold =
      *std::min_element(state.thresholds.begin(), state.thresholds.end());

  state.kappas.reserve(shard_sizes.size());
  for (std::size_t c = 0; c < shard_sizes.size(); ++c) {
    const Index k = shard_sizes[c].first;
    const double t = state.thresholds[c];
    // Given T_c, the shard's sampled uniforms are iid Uniform(0, T_c); those
    // below the global threshold survive.
    const double survive = t <= state.global_threshold
                               ? 1.0
                               : std::min(1.0, state.global_threshold / t);
    state.kappas.push_back(binomial(src, k, survive));
  }
  return state;
}

}  // namespace srswor

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "srswor/rng.hpp"

namespace srswor {

enum class SampleOrder {
  SelectionOrder,  ///< i-th element is the i-th item selected
  Sorted,          ///< strictly increasing positions
  Unordered,       ///< reservoir slots; no order contract
};

/// Distinct 1-based indices drawn from [1, n].
struct SampleResult {
  std::vector<Index> indices;
  SampleOrder order = SampleOrder::SelectionOrder;
  Index n = 0;
  DrawStats draw_stats;
  /// Largest number of bookkeeping entries held at once (hash entries for the
  /// sparse and membership samplers, array slots for classical swapping).
  std::uint64_t peak_aux_entries = 0;
};

/// Thrown by SparseFisherYatesIterator::next() once all n items are drawn.
class SamplerExhausted : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Sparse view of a partially permuted array: every position p not present
/// in `displaced` still holds item p.
struct SparseSwapState {
  Index n = 0;
  Index iterations = 0;
  std::unordered_map<Index, Index> displaced;

  /// Item currently stored at 1-based position `pos`.
  Index at(Index pos) const {
    auto it = displaced.find(pos);
    return it == displaced.end() ? pos : it->second;
  }
};

/// (position, partner) transpositions applied by a swapping sampler, in
/// application order. Replaying them in reverse restores the array.
struct UndoLog {
  std::vector<std::pair<Index, Index>> swaps;
};

/// Classical swapping over an explicit array of n items.
SampleResult fisher_yates_sample(UniformSource& src, Index n, Index k);

struct SparseOptions {
  /// Drop the entry for each consumed tail position. When false the map keeps
  /// every entry ever written, matching the unoptimized hash-table variant.
  bool erase_consumed = true;
};

/// Same selections as fisher_yates_sample for the same source, using a hash
/// map of displaced entries: O(k) time and space.
SampleResult sparse_fisher_yates(UniformSource& src, Index n, Index k,
                                 SparseOptions options = {});

/// Draws without replacement from [1, n] one item at a time, for callers that
/// do not know k up front. Holds a reference to `src`, which must outlive it.
class SparseFisherYatesIterator {
 public:
  SparseFisherYatesIterator(Index n, UniformSource& src,
                            SparseOptions options = {});

  bool has_next() const noexcept { return state_.iterations < state_.n; }
  /// Next item in selection order; throws SamplerExhausted after n items.
  Index next();

  const SparseSwapState& state() const noexcept { return state_; }
  std::uint64_t peak_entries() const noexcept { return peak_; }

 private:
  UniformSource* src_;
  SparseOptions options_;
  SparseSwapState state_;
  std::uint64_t peak_ = 0;
};

/// Draw with replacement and reject repeats. Every attempt, rejected or not,
/// is recorded in draw_stats.uniform_int.
SampleResult membership_checking_sample(UniformSource& src, Index n, Index k);

/// Classical swapping on a caller-provided array, followed by undoing every
/// swap. Step i = 1..k draws r in [1, n-i+1] and swaps positions n-i+1 and r,
/// exactly as fisher_yates_sample does, so selections coincide for the same
/// source. `x` is restored before returning.
template <typename T>
std::pair<std::vector<T>, UndoLog> preinit_fy_sample_with_undo(
    UniformSource& src, std::span<T> x, Index k, DrawStats* stats = nullptr) {
  const Index n = x.size();
  if (k > n) throw std::invalid_argument("preinit_fy_sample_with_undo: k > n");
  std::vector<T> sample;
  sample.reserve(k);
  UndoLog log;
  log.swaps.reserve(k);
  for (Index i = 1; i <= k; ++i) {
    const Index last = n - i + 1;
    const Index r = src.next_uniform_int(last);
    if (stats != nullptr) ++stats->uniform_int;
    using std::swap;
    swap(x[last - 1], x[r - 1]);
    log.swaps.emplace_back(last, r);
    sample.push_back(x[last - 1]);
  }
  for (auto it = log.swaps.rbegin(); it != log.swaps.rend(); ++it) {
    using std::swap;
    swap(x[it->first - 1], x[it->second - 1]);
  }
  return {std::move(sample), std::move(log)};
}

/// Index form of the above over the identity array [1..n].
SampleResult preinit_fy_sample(UniformSource& src, Index n, Index k);

/// Left-to-right scan accepting each position with probability
/// k_left / n_left. Stops once k items are accepted.
SampleResult selection_sample(UniformSource& src, Index n, Index k);

/// Produces sorted sample positions one at a time by drawing the gap to the
/// next selected position: gap ~ Beta-Binomial(1, k_left, n_left - k_left).
/// Each position costs one Beta-Binomial draw. Holds a reference to `src`.
class InOrderStream {
 public:
  InOrderStream(Index n, Index k, UniformSource& src, DrawStats* stats = nullptr);

  bool has_next() const noexcept { return k_left_ > 0; }
  /// Next selected position (strictly increasing); std::nullopt when done.
  std::optional<Index> next();

 private:
  UniformSource* src_;
  DrawStats* stats_;
  Index n_left_;
  Index k_left_;
  Index pos_ = 0;
};

SampleResult inorder_sample(UniformSource& src, Index n, Index k);

/// Uniform sample of k items from a stream of unknown length. Item t > k is
/// drawn r ~ Uniform([t]) and replaces slot r when r <= k, i.e. the right
/// action of (t r) on the first k slots. Holds a reference to `src`.
template <typename T>
class ReservoirSampler {
 public:
  ReservoirSampler(Index k, UniformSource& src) : src_(&src), k_(k) {
    if (k == 0) throw std::invalid_argument("ReservoirSampler: k must be >= 1");
  }

  void offer(T item) {
    ++seen_;
    if (seen_ <= k_) {
      items_.push_back(std::move(item));
      return;
    }
    const Index r = src_->next_uniform_int(seen_);
    ++draws_;
    if (r <= k_) items_[r - 1] = std::move(item);
  }

  Index seen() const noexcept { return seen_; }
  std::uint64_t draws() const noexcept { return draws_; }
  const std::vector<T>& items() const& noexcept { return items_; }
  std::vector<T> take() && { return std::move(items_); }

 private:
  UniformSource* src_;
  Index k_;
  Index seen_ = 0;
  std::uint64_t draws_ = 0;
  std::vector<T> items_;
};

/// Reservoir over the stream 1..m (m is only used to generate the stream).
SampleResult reservoir_sample(UniformSource& src, Index m, Index k);

/// Applies (1 r_1)(2 r_2)...(n r_n), r_i ~ Uniform([i]), as a left action on
/// the identity array: transpositions are applied right to left, starting
/// with (n r_n). Returns the permuted array (1-based values).
std::vector<Index> permutation_from_transpositions(UniformSource& src, Index n);

}  // namespace srswor

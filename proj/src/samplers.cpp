#include "srswor/samplers.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "srswor/distributions.hpp"

namespace srswor {

namespace {

void check_nk(const char* who, Index n, Index k) {
  if (n == 0) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  if (k > n) {
    throw std::invalid_argument(std::string(who) + ": k = " + std::to_string(k) +
                                " exceeds n = " + std::to_string(n));
  }
}

SampleResult make_result(Index n, SampleOrder order, Index k) {
  SampleResult out;
  out.n = n;
  out.order = order;
  out.indices.reserve(k);
  return out;
}

}  // namespace

SampleResult fisher_yates_sample(UniformSource& src, Index n, Index k) {
  check_nk("fisher_yates_sample", n, k);
  auto out = make_result(n, SampleOrder::SelectionOrder, k);
  std::vector<Index> x(n);
  std::iota(x.begin(), x.end(), Index{1});
  for (Index i = 0; i < k; ++i) {
    const Index last = n - i;
    const Index r = src.next_uniform_int(last);
    std::swap(x[last - 1], x[r - 1]);
    out.indices.push_back(x[last - 1]);
  }
  out.draw_stats.uniform_int = k;
  out.peak_aux_entries = n;
  return out;
}

SparseFisherYatesIterator::SparseFisherYatesIterator(Index n, UniformSource& src,
                                                     SparseOptions options)
    : src_(&src), options_(options) {
  if (n == 0) throw std::invalid_argument("SparseFisherYatesIterator: n must be >= 1");
  state_.n = n;
}

Index SparseFisherYatesIterator::next() {
  if (!has_next()) {
    throw SamplerExhausted("sparse Fisher-Yates iterator exhausted after " +
                           std::to_string(state_.n) + " draws");
  }
  auto& h = state_.displaced;
  const Index last = state_.n - state_.iterations;
  const Index r = src_->next_uniform_int(last);

  const Index selected = state_.at(r);
  const Index tail = state_.at(last);
  if (options_.erase_consumed) {
    // Position `last` is never read again.
    h.erase(last);
    if (r != last) h[r] = tail;
  } else {
    h[r] = tail;
  }
  ++state_.iterations;
  peak_ = std::max<std::uint64_t>(peak_, h.size());
  return selected;
}

SampleResult sparse_fisher_yates(UniformSource& src, Index n, Index k,
                                 SparseOptions options) {
  check_nk("sparse_fisher_yates", n, k);
  auto out = make_result(n, SampleOrder::SelectionOrder, k);
  SparseFisherYatesIterator it(n, src, options);
  for (Index i = 0; i < k; ++i) out.indices.push_back(it.next());
  out.draw_stats.uniform_int = k;
  out.peak_aux_entries = it.peak_entries();
  return out;
}

SampleResult membership_checking_sample(UniformSource& src, Index n, Index k) {
  check_nk("membership_checking_sample", n, k);
  auto out = make_result(n, SampleOrder::SelectionOrder, k);
  std::unordered_set<Index> seen;
  seen.reserve(k);
  for (Index i = 0; i < k; ++i) {
    Index r;
    do {
      r = src.next_uniform_int(n);
      ++out.draw_stats.uniform_int;
    } while (seen.contains(r));
    seen.insert(r);
    out.indices.push_back(r);
  }
  out.peak_aux_entries = seen.size();
  return out;
}

SampleResult preinit_fy_sample(UniformSource& src, Index n, Index k) {
  check_nk("preinit_fy_sample", n, k);
  auto out = make_result(n, SampleOrder::SelectionOrder, k);
  std::vector<Index> x(n);
  std::iota(x.begin(), x.end(), Index{1});
  auto [sample, log] =
      preinit_fy_sample_with_undo(src, std::span<Index>(x), k, &out.draw_stats);
  out.indices = std::move(sample);
  return out;
}

SampleResult selection_sample(UniformSource& src, Index n, Index k) {
  check_nk("selection_sample", n, k);
  auto out = make_result(n, SampleOrder::Sorted, k);
  Index k_left = k;
  for (Index i = 1; i <= n && k_left > 0; ++i) {
    const Index n_left = n - i + 1;
    const double p = static_cast<double>(k_left) / static_cast<double>(n_left);
    if (bernoulli(src, p, &out.draw_stats)) {
      out.indices.push_back(i);
      --k_left;
    }
  }
  return out;
}

InOrderStream::InOrderStream(Index n, Index k, UniformSource& src, DrawStats* stats)
    : src_(&src), stats_(stats), n_left_(n), k_left_(k) {
  check_nk("InOrderStream", n, k);
}

std::optional<Index> InOrderStream::next() {
  if (k_left_ == 0) return std::nullopt;
  const Index gap = beta_binomial(*src_, 1, k_left_, n_left_ - k_left_, stats_);
  pos_ += gap + 1;
  n_left_ -= gap + 1;
  --k_left_;
  return pos_;
}

SampleResult inorder_sample(UniformSource& src, Index n, Index k) {
  check_nk("inorder_sample", n, k);
  auto out = make_result(n, SampleOrder::Sorted, k);
  InOrderStream stream(n, k, src, &out.draw_stats);
  while (auto pos = stream.next()) out.indices.push_back(*pos);
  return out;
}

SampleResult reservoir_sample(UniformSource& src, Index m, Index k) {
  ReservoirSampler<Index> reservoir(k, src);
  for (Index t = 1; t <= m; ++t) reservoir.offer(t);
  SampleResult out;
  out.n = m;
  out.order = SampleOrder::Unordered;
  out.draw_stats.uniform_int = reservoir.draws();
  out.peak_aux_entries = reservoir.items().size();
  out.indices = std::move(reservoir).take();
  return out;
}

std::vector<Index> permutation_from_transpositions(UniformSource& src, Index n) {
  if (n == 0) {
    throw std::invalid_argument("permutation_from_transpositions: n must be >= 1");
  }
  std::vector<Index> x(n);
  std::iota(x.begin(), x.end(), Index{1});
  for (Index i = n; i >= 1; --i) {
    const Index r = src.next_uniform_int(i);
    std::swap(x[i - 1], x[r - 1]);
  }
  return x;
}

}  // namespace srswor

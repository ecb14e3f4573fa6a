#include "srswor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "srswor/distributed.hpp"
#include "srswor/distributions.hpp"
#include "srswor/samplers.hpp"

namespace srswor {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  SplitMix64 sm(base ^ (salt * 0xD1B54A32D192ED03ull));
  return sm.next();
}

namespace checks {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

CheckResult from_gof(std::string name, const GofReport& r, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.statistic = r.statistic;
  c.p_value = r.p_value;
  c.pass = r.pass;
  c.stochastic = true;
  std::ostringstream os;
  os << "dof=" << r.dof;
  if (!detail.empty()) os << ' ' << detail;
  c.detail = os.str();
  return c;
}

CheckResult tolerance(std::string name, double deviation, bool pass, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.statistic = deviation;
  c.p_value = kNaN;
  c.pass = pass;
  c.stochastic = false;
  c.detail = std::move(detail);
  return c;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

std::string triple_name(HypergeomParams p) {
  return "(" + std::to_string(p.v) + "," + std::to_string(p.n) + "," +
         std::to_string(p.k) + ")";
}

std::uint64_t mask_of(std::span<const Index> ids) {
  std::uint64_t m = 0;
  for (Index id : ids) m |= std::uint64_t{1} << (id - 1);
  return m;
}

}  // namespace

CheckResult uniform_int(std::uint64_t seed, Index m, std::uint64_t draws, double alpha) {
  RandomSource src(seed);
  std::vector<std::uint64_t> counts(m, 0);
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[src.next_uniform_int(m) - 1];
  const std::vector<double> probs(m, 1.0 / static_cast<double>(m));
  return from_gof("uniform_int m=" + std::to_string(m), chi_square_gof(counts, probs, alpha));
}

CheckResult bernoulli_mean(std::uint64_t seed, double p, std::uint64_t draws) {
  RandomSource src(seed);
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < draws; ++i) ones += bernoulli(src, p) ? 1 : 0;
  const double mean = static_cast<double>(ones) / static_cast<double>(draws);
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
  const double z = sigma > 0.0 ? std::fabs(mean - p) / sigma : std::fabs(mean - p);
  return tolerance("bernoulli p=" + fmt(p), z, sigma > 0.0 ? z <= 4.0 : mean == p,
                   "mean=" + fmt(mean) + " z<=4");
}

CheckResult binomial_pmf(std::uint64_t seed, Index n, double p, std::uint64_t draws,
                         double alpha) {
  RandomSource src(seed);
  std::vector<std::uint64_t> counts(n + 1, 0);
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[binomial(src, n, p)];
  std::vector<double> probs(n + 1);
  for (Index c = 0; c <= n; ++c) {
    probs[c] = std::exp(log_choose(n, c) + static_cast<double>(c) * std::log(p) +
                        static_cast<double>(n - c) * std::log1p(-p));
  }
  const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto& q : probs) q /= mass;
  return from_gof("binomial n=" + std::to_string(n) + " p=" + fmt(p),
                  chi_square_gof(counts, probs, alpha));
}

CheckResult beta_mean(std::uint64_t seed, double a, double b, std::uint64_t draws) {
  RandomSource src(seed);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < draws; ++i) sum += beta(src, {a, b});
  const double mean = sum / static_cast<double>(draws);
  const double expect = a / (a + b);
  const double var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
  const double z = std::fabs(mean - expect) / std::sqrt(var / static_cast<double>(draws));
  return tolerance("beta mean (" + fmt(a) + "," + fmt(b) + ")", z, z <= 4.0,
                   "mean=" + fmt(mean) + " expected=" + fmt(expect) + " z<=4");
}

CheckResult beta_one_ks(std::uint64_t seed, double b, std::uint64_t draws, double alpha) {
  RandomSource src(seed);
  std::vector<double> xs(draws);
  for (auto& x : xs) x = beta(src, {1.0, b});
  const auto r = ks_test(std::move(xs),
                         [b](double z) { return 1.0 - std::pow(1.0 - z, b); }, alpha);
  CheckResult c;
  c.name = "beta(1," + fmt(b) + ") ks";
  c.statistic = r.statistic;
  c.p_value = r.p_value;
  c.pass = r.pass;
  c.stochastic = true;
  c.detail = "n=" + std::to_string(r.n);
  return c;
}

CheckResult beta_binomial_pmf(std::uint64_t seed, Index a, Index b, Index n,
                              std::uint64_t draws, double alpha) {
  RandomSource src(seed);
  std::vector<std::uint64_t> counts(n + 1, 0);
  for (std::uint64_t i = 0; i < draws; ++i) ++counts[beta_binomial(src, a, b, n)];
  auto log_beta = [](double x, double y) {
    return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
  };
  const auto da = static_cast<double>(a);
  const auto db = static_cast<double>(b);
  std::vector<double> probs(n + 1);
  for (Index c = 0; c <= n; ++c) {
    const auto dc = static_cast<double>(c);
    probs[c] = std::exp(log_choose(n, c) +
                        log_beta(dc + da, static_cast<double>(n - c) + db) -
                        log_beta(da, db));
  }
  const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto& q : probs) q /= mass;
  return from_gof("beta_binomial (" + std::to_string(a) + "," + std::to_string(b) + "," +
                      std::to_string(n) + ")",
                  chi_square_gof(counts, probs, alpha));
}

CheckResult hypergeometric_pmf(std::uint64_t seed, HypergeomParams params,
                               std::uint64_t draws, double alpha) {
  RandomSource src(seed);
  const Index hi = std::min(params.k, params.v);
  std::vector<std::uint64_t> counts(hi + 1, 0);
  for (std::uint64_t i = 0; i < draws; ++i) {
    const Index c = hypergeometric(src, params);
    if (c > hi) return tolerance("hypergeometric " + triple_name(params), 1.0, false,
                                 "value outside support");
    ++counts[c];
  }
  std::vector<double> probs(hi + 1);
  for (Index c = 0; c <= hi; ++c) probs[c] = hypergeom_pmf(params, static_cast<std::int64_t>(c));
  const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto& q : probs) q /= mass;
  return from_gof("hypergeometric " + triple_name(params),
                  chi_square_gof(counts, probs, alpha));
}

std::vector<HypergeomParams> hypergeometric_triples(std::uint64_t seed, Index max_n,
                                                    std::size_t count) {
  std::vector<HypergeomParams> pool;
  for (Index n = 1; n <= max_n; ++n) {
    for (Index v = 0; v <= n; ++v) {
      for (Index k = 0; k <= n; ++k) {
        const Index lo = k > n - v ? k - (n - v) : 0;
        const Index hi = std::min(k, v);
        if (lo < hi && !(v == 2 && n == 4 && k == 2)) pool.push_back({v, n, k});
      }
    }
  }
  std::vector<HypergeomParams> out{{2, 4, 2}};
  RandomSource src(seed);
  const Index take = std::min<Index>(count > 0 ? count - 1 : 0, pool.size());
  for (Index pos : sparse_fisher_yates(src, pool.size(), take).indices) {
    out.push_back(pool[pos - 1]);
  }
  return out;
}

CheckResult sparse_equivalence(std::uint64_t first_seed, std::uint64_t seeds, Index n,
                               Index k) {
  std::uint64_t mismatches = 0;
  for (std::uint64_t s = first_seed; s < first_seed + seeds; ++s) {
    RandomSource a(s);
    RandomSource b(s);
    const auto classical = fisher_yates_sample(a, n, k);
    const auto sparse = sparse_fisher_yates(b, n, k);
    if (classical.indices != sparse.indices || a.draw_count() != b.draw_count()) ++mismatches;
  }
  return tolerance("sparse==classical (n=" + std::to_string(n) + ",k=" + std::to_string(k) +
                       ")",
                   static_cast<double>(mismatches), mismatches == 0,
                   "seeds=" + std::to_string(seeds) + " mismatches=" +
                       std::to_string(mismatches));
}

CheckResult iterator_prefix(std::uint64_t first_seed, std::uint64_t seeds, Index n) {
  std::uint64_t mismatches = 0;
  for (std::uint64_t s = first_seed; s < first_seed + seeds; ++s) {
    const Index k = s % (n + 1);
    RandomSource a(s);
    RandomSource b(s);
    SparseFisherYatesIterator it(n, a);
    std::vector<Index> prefix;
    for (Index i = 0; i < k; ++i) prefix.push_back(it.next());
    if (prefix != sparse_fisher_yates(b, n, k).indices) ++mismatches;
  }
  return tolerance("iterator prefix n=" + std::to_string(n),
                   static_cast<double>(mismatches), mismatches == 0,
                   "mismatches=" + std::to_string(mismatches));
}

CheckResult subset_uniform(const std::string& name, const SubsetSampler& sampler,
                           std::uint64_t seed, Index n, Index k, std::uint64_t reps,
                           double alpha) {
  RandomSource src(seed);
  return from_gof("subsets " + name + " (n=" + std::to_string(n) + ",k=" +
                      std::to_string(k) + ")",
                  enumerate_subset_distribution(sampler, n, k, reps, src, alpha),
                  "reps=" + std::to_string(reps));
}

CheckResult subset_uniform(Algorithm a, std::uint64_t seed, Index n, Index k,
                           std::uint64_t reps, double alpha) {
  const SubsetSampler sampler = [a](UniformSource& src, Index nn, Index kk) {
    return run_algorithm(a, src, nn, kk).indices;
  };
  return subset_uniform(std::string(algorithm_name(a)), sampler, seed, n, k, reps, alpha);
}

CheckResult inclusion_uniform(Algorithm a, std::uint64_t seed, Index n, Index k,
                              std::uint64_t reps, double alpha) {
  RandomSource src(seed);
  std::vector<std::uint64_t> counts(n, 0);
  for (std::uint64_t r = 0; r < reps; ++r) {
    for (Index i : run_algorithm(a, src, n, k).indices) ++counts[i - 1];
  }
  const std::vector<double> probs(n, 1.0 / static_cast<double>(n));
  return from_gof("inclusion " + std::string(algorithm_name(a)) + " (n=" +
                      std::to_string(n) + ",k=" + std::to_string(k) + ")",
                  chi_square_gof(counts, probs, alpha));
}

CheckResult first_position(Algorithm a, std::uint64_t seed, Index n, Index k,
                           std::uint64_t reps, double alpha) {
  RandomSource src(seed);
  const Index support = n - k + 1;
  std::vector<std::uint64_t> counts(support, 0);
  for (std::uint64_t r = 0; r < reps; ++r) {
    const auto s = run_algorithm(a, src, n, k);
    const Index x1 = *std::min_element(s.indices.begin(), s.indices.end());
    if (s.order == SampleOrder::Sorted && s.indices.front() != x1) {
      return tolerance("first position " + std::string(algorithm_name(a)), 1.0, false,
                       "sorted output does not start with its minimum");
    }
    ++counts[x1 - 1];
  }
  std::vector<double> probs(support);
  for (Index x = 1; x <= support; ++x) {
    probs[x - 1] = first_position_pmf(n, k, static_cast<std::int64_t>(x));
  }
  return from_gof("first position " + std::string(algorithm_name(a)) + " (n=" +
                      std::to_string(n) + ",k=" + std::to_string(k) + ")",
                  chi_square_gof(counts, probs, alpha));
}

CheckResult exact_draw_budget(Algorithm a, std::uint64_t seed, std::uint64_t runs) {
  RandomSource params(seed);
  std::uint64_t violations = 0;
  for (std::uint64_t r = 0; r < runs; ++r) {
    const Index n = params.next_uniform_int(2000);
    const Index k = params.next_uniform_int(n + 1) - 1;
    RandomSource src(derive_seed(seed, r));
    const auto s = run_algorithm(a, src, n, k);
    bool ok = s.draw_stats.total() == k && s.indices.size() == k;
    if (a == Algorithm::InOrder) {
      ok = ok && s.draw_stats.beta_binomial == k;
    } else {
      // One uniform integer per selection, nothing else.
      ok = ok && s.draw_stats.uniform_int == k && src.draw_count() == k;
    }
    if (!ok) ++violations;
  }
  return tolerance("draw budget " + std::string(algorithm_name(a)),
                   static_cast<double>(violations), violations == 0,
                   "runs=" + std::to_string(runs) + " violations=" +
                       std::to_string(violations));
}

CheckResult membership_draws(std::uint64_t seed, Index n, Index k, std::uint64_t reps,
                             double rel_tol) {
  RandomSource src(seed);
  double total = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    total += static_cast<double>(membership_checking_sample(src, n, k).draw_stats.uniform_int);
  }
  const double mean = total / static_cast<double>(reps);
  const double expect = expected_membership_draws(n, k);
  const double rel = std::fabs(mean - expect) / expect;
  return tolerance("membership draws (n=" + std::to_string(n) + ",k=" + std::to_string(k) +
                       ")",
                   rel, rel <= rel_tol,
                   "mean=" + fmt(mean) + " expected=" + fmt(expect) + " rel_tol=" +
                       fmt(rel_tol));
}

OccupancyProfile occupancy_profile(std::uint64_t seed, Index n,
                                   std::span<const Index> checkpoints,
                                   std::uint64_t runs) {
  OccupancyProfile prof;
  prof.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  std::sort(prof.checkpoints.begin(), prof.checkpoints.end());
  const std::size_t m = prof.checkpoints.size();
  std::vector<double> sum(m, 0.0);
  std::vector<double> sum_sq(m, 0.0);
  const Index last = m > 0 ? prof.checkpoints.back() : 0;
  RandomSource src(seed);
  for (std::uint64_t r = 0; r < runs; ++r) {
    SparseFisherYatesIterator it(n, src);
    std::size_t next_cp = 0;
    for (Index i = 1; i <= last; ++i) {
      it.next();
      while (next_cp < m && prof.checkpoints[next_cp] == i) {
        const auto size = static_cast<double>(it.state().displaced.size());
        sum[next_cp] += size;
        sum_sq[next_cp] += size * size;
        ++next_cp;
      }
    }
  }
  const auto dr = static_cast<double>(runs);
  for (std::size_t j = 0; j < m; ++j) {
    const double mean = sum[j] / dr;
    const double var = std::max(0.0, (sum_sq[j] - dr * mean * mean) / (dr - 1.0));
    prof.mean.push_back(mean);
    prof.stderr_of_mean.push_back(std::sqrt(var / dr));
  }
  return prof;
}

CheckResult hash_occupancy(std::uint64_t seed, Index n, std::span<const Index> checkpoints,
                           std::uint64_t runs) {
  const auto prof = occupancy_profile(seed, n, checkpoints, runs);
  bool pass = true;
  double worst = 0.0;
  std::ostringstream detail;
  std::size_t half = prof.checkpoints.size();
  for (std::size_t j = 0; j < prof.checkpoints.size(); ++j) {
    const Index i = prof.checkpoints[j];
    const double expect = expected_hash_occupancy(n, i);
    const double se = prof.stderr_of_mean[j];
    const double z = se > 0.0 ? std::fabs(prof.mean[j] - expect) / se
                               : (prof.mean[j] == expect ? 0.0 : INFINITY);
    worst = std::max(worst, z);
    pass = pass && z <= 3.0;
    if (i == n / 2) half = j;
    detail << "i=" << i << ":" << fmt(prof.mean[j]) << "/" << fmt(expect) << " ";
  }
  if (half < prof.checkpoints.size()) {
    for (std::size_t j = 0; j < prof.mean.size(); ++j) {
      if (prof.mean[j] > prof.mean[half]) pass = false;
    }
    detail << "max_at_n/2=" << (pass ? "yes" : "check");
  }
  return tolerance("hash occupancy n=" + std::to_string(n), worst, pass,
                   detail.str() + " z<=3");
}

CheckResult restoration(std::uint64_t seed, std::uint64_t arrays, Index max_n) {
  RandomSource src(seed);
  std::uint64_t failures = 0;
  for (std::uint64_t a = 0; a < arrays; ++a) {
    const Index n = src.next_uniform_int(max_n);
    const Index k = src.next_uniform_int(n + 1) - 1;
    std::vector<std::uint64_t> x(n);
    for (auto& v : x) v = static_cast<std::uint64_t>(src.next_uniform_real() * 0x1.0p53);
    const auto before = x;
    const auto [sample, log] =
        preinit_fy_sample_with_undo(src, std::span<std::uint64_t>(x), k);
    if (x != before || sample.size() != k || log.swaps.size() != k) ++failures;
  }
  return tolerance("undo restoration", static_cast<double>(failures), failures == 0,
                   "arrays=" + std::to_string(arrays) + " failures=" +
                       std::to_string(failures));
}

CheckResult split_duality(std::uint64_t seed, std::span<const Index> blocks, Index k,
                          std::uint64_t reps_per_subset, double alpha) {
  const Index total = std::accumulate(blocks.begin(), blocks.end(), Index{0});
  std::string name = "split duality blocks=(";
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    name += (j ? "," : "") + std::to_string(blocks[j]);
  }
  name += ") k=" + std::to_string(k);
  const SubsetSampler sampler = [blocks](UniformSource& src, Index, Index kk) {
    const auto counts = split_sample_counts(src, blocks, kk);
    std::vector<Index> out;
    Index offset = 0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      for (Index i : sparse_fisher_yates(src, blocks[j], counts[j]).indices) {
        out.push_back(offset + i);
      }
      offset += blocks[j];
    }
    return out;
  };
  const std::uint64_t cells = choose_exact(total, k);
  RandomSource src(seed);
  return from_gof(name,
                  enumerate_subset_distribution(sampler, total, k, reps_per_subset * cells,
                                                src, alpha),
                  "reps=" + std::to_string(reps_per_subset * cells));
}

namespace {

struct MergeTally {
  std::vector<std::uint64_t> masks;
  std::vector<std::uint64_t> inclusion;
  // inclusion_by_size[s][item]
  std::vector<std::vector<std::uint64_t>> inclusion_by_size;
  std::uint64_t winner_violations = 0;

  explicit MergeTally(Index total)
      : masks(std::uint64_t{1} << total, 0),
        inclusion(total, 0),
        inclusion_by_size(total + 1, std::vector<std::uint64_t>(total, 0)) {}

  void add(std::span<const Index> merged) {
    ++masks[mask_of(merged)];
    for (Index id : merged) {
      ++inclusion[id - 1];
      ++inclusion_by_size[merged.size()][id - 1];
    }
  }
};

MergeTally run_merges(std::uint64_t seed, Index n1, Index k1, Index n2, Index k2,
                      std::uint64_t reps, bool swapped) {
  MergeTally tally(n1 + n2);
  RandomSource src(seed);
  for (std::uint64_t r = 0; r < reps; ++r) {
    MergeInput<Index> a{sparse_fisher_yates(src, n1, k1).indices, n1};
    MergeInput<Index> b{sparse_fisher_yates(src, n2, k2).indices, n2};
    for (auto& id : b.sample) id += n1;
    const auto res = swapped ? merge_samples(src, b, a) : merge_samples(src, a, b);
    const auto& st = res.state;
    const Index ks[2] = {swapped ? k2 : k1, swapped ? k1 : k2};
    for (std::size_t c = 0; c < 2; ++c) {
      if (st.thresholds[c] == st.global_threshold && st.kappas[c] != ks[c]) {
        ++tally.winner_violations;
      }
    }
    if (res.effective_size != res.merged.size()) ++tally.winner_violations;
    tally.add(res.merged);
  }
  return tally;
}

// Auxiliary-uniform construction: every item gets a uniform; a shard's sample
// is its k_c smallest, T_c its (k_c+1)-th smallest (1 if none), and the merge
// keeps every item below min T_c.
MergeTally brute_force_merges(std::uint64_t seed, Index n1, Index k1, Index n2, Index k2,
                              std::uint64_t reps) {
  MergeTally tally(n1 + n2);
  RandomSource src(seed);
  const Index n[2] = {n1, n2};
  const Index k[2] = {k1, k2};
  std::vector<double> u(n1 + n2);
  for (std::uint64_t r = 0; r < reps; ++r) {
    for (auto& x : u) x = src.next_uniform_real();
    double threshold = 1.0;
    Index offset = 0;
    for (int c = 0; c < 2; ++c) {
      std::vector<double> sorted(u.begin() + static_cast<std::ptrdiff_t>(offset),
                                 u.begin() + static_cast<std::ptrdiff_t>(offset + n[c]));
      std::sort(sorted.begin(), sorted.end());
      const double t = k[c] < n[c] ? sorted[k[c]] : 1.0;
      threshold = std::min(threshold, t);
      offset += n[c];
    }
    std::vector<Index> merged;
    for (Index i = 0; i < n1 + n2; ++i) {
      if (u[i] < threshold) merged.push_back(i + 1);
    }
    tally.add(merged);
  }
  return tally;
}

}  // namespace

std::vector<CheckResult> merge_correctness(std::uint64_t seed, Index n1, Index k1,
                                           Index n2, Index k2, std::uint64_t reps,
                                           double alpha) {
  const Index total = n1 + n2;
  const std::string tag = "(" + std::to_string(n1) + "," + std::to_string(k1) + ")+(" +
                          std::to_string(n2) + "," + std::to_string(k2) + ")";
  const auto impl = run_merges(derive_seed(seed, 1), n1, k1, n2, k2, reps, false);
  const auto oracle = brute_force_merges(derive_seed(seed, 2), n1, k1, n2, k2, reps);

  std::vector<CheckResult> out;
  if (n1 != n2 || k1 != k2) {
    // Unequal shards: the winning shard always contributes its full sample,
    // so inclusion is not exchangeable across shards. Compare with the oracle.
    out.push_back(from_gof("merge inclusion vs oracle " + tag,
                           chi_square_two_sample(impl.inclusion, oracle.inclusion, alpha)));
  } else {
    const std::vector<double> flat(total, 1.0 / static_cast<double>(total));
    out.push_back(
        from_gof("merge inclusion " + tag, chi_square_gof(impl.inclusion, flat, alpha)));

    // Given the merged size s, every item is included with probability s/total.
    double stat = 0.0;
    std::uint64_t dof = 0;
    for (std::size_t s = 1; s < impl.inclusion_by_size.size(); ++s) {
      const auto& row = impl.inclusion_by_size[s];
      const auto hits = std::accumulate(row.begin(), row.end(), std::uint64_t{0});
      if (static_cast<double>(hits) / static_cast<double>(total) < 5.0 || s == total) continue;
      const auto r = chi_square_gof(row, flat, alpha);
      stat += r.statistic;
      dof += r.dof;
    }
    GofReport by_size;
    by_size.statistic = stat;
    by_size.dof = dof;
    by_size.p_value = dof > 0 ? chi_square_sf(stat, static_cast<double>(dof)) : 1.0;
    by_size.pass = by_size.p_value >= alpha;
    out.push_back(from_gof("merge inclusion | size " + tag, by_size));
  }

  out.push_back(from_gof("merge vs auxiliary-uniform oracle " + tag,
                         chi_square_two_sample(impl.masks, oracle.masks, alpha)));
  out.push_back(tolerance("merge winner keeps all " + tag,
                          static_cast<double>(impl.winner_violations),
                          impl.winner_violations == 0,
                          "runs=" + std::to_string(reps) + " violations=" +
                              std::to_string(impl.winner_violations)));
  return out;
}

CheckResult merge_symmetry(std::uint64_t seed, Index n1, Index k1, Index n2, Index k2,
                           std::uint64_t reps, double alpha) {
  const auto ab = run_merges(derive_seed(seed, 3), n1, k1, n2, k2, reps, false);
  const auto ba = run_merges(derive_seed(seed, 4), n1, k1, n2, k2, reps, true);
  return from_gof("merge symmetry (" + std::to_string(n1) + "," + std::to_string(k1) +
                      ")+(" + std::to_string(n2) + "," + std::to_string(k2) + ")",
                  chi_square_two_sample(ab.masks, ba.masks, alpha));
}

std::vector<Index> biased_sampler(UniformSource& src, Index n, Index k) {
  std::vector<Index> out;
  if (k == 0) return out;
  out.push_back(1);
  for (Index i : sparse_fisher_yates(src, n - 1, k - 1).indices) out.push_back(i + 1);
  return out;
}

}  // namespace checks

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const bool full = options.suite == VerifySuite::Full;
  const double alpha = options.alpha;
  const auto scale = [full](std::uint64_t full_reps, std::uint64_t quick_reps) {
    return full ? full_reps : quick_reps;
  };
  std::uint64_t salt = 0;
  const auto seed = [&] { return derive_seed(options.seed, ++salt); };

  std::vector<CheckResult> out;
  using namespace checks;

  // rng-core
  for (Index m : {Index{2}, Index{6}, Index{7}, Index{64}}) {
    out.push_back(uniform_int(seed(), m, scale(10000 * m, 1000 * m), alpha));
  }

  // distributions
  out.push_back(bernoulli_mean(seed(), 0.3, scale(100000, 20000)));
  out.push_back(binomial_pmf(seed(), 10, 0.5, scale(100000, 20000), alpha));
  out.push_back(binomial_pmf(seed(), 200, 0.3, scale(100000, 20000), alpha));
  out.push_back(binomial_pmf(seed(), 1000, 0.8, scale(100000, 20000), alpha));
  out.push_back(beta_mean(seed(), 2.0, 3.0, scale(100000, 20000)));
  out.push_back(beta_one_ks(seed(), 2.0, scale(100000, 20000), alpha));
  out.push_back(beta_one_ks(seed(), 17.0, scale(100000, 20000), alpha));
  out.push_back(beta_binomial_pmf(seed(), 1, 1, 5, scale(100000, 20000), alpha));
  out.push_back(beta_binomial_pmf(seed(), 1, 2, 3, scale(100000, 20000), alpha));
  out.push_back(beta_binomial_pmf(seed(), 3, 4, 12, scale(100000, 20000), alpha));
  for (const auto& t : hypergeometric_triples(seed(), 12, scale(24, 6))) {
    out.push_back(hypergeometric_pmf(seed(), t, scale(100000, 20000), alpha));
  }

  // samplers
  out.push_back(sparse_equivalence(1, scale(1000, 100), 10, 3));
  out.push_back(sparse_equivalence(1, scale(1000, 100), 100, 37));
  out.push_back(sparse_equivalence(1, scale(1000, 20), 1000, 1000));
  out.push_back(iterator_prefix(1, scale(1000, 100), 50));
  for (Algorithm a : all_algorithms()) {
    out.push_back(subset_uniform(a, seed(), 6, 3, scale(200000, 20000), alpha));
  }
  for (Algorithm a : all_algorithms()) {
    out.push_back(inclusion_uniform(a, seed(), 10, 3, scale(100000, 10000), alpha));
  }
  if (options.inject_biased) {
    out.push_back(subset_uniform("biased", biased_sampler, seed(), 6, 3,
                                 scale(200000, 20000), alpha));
  }
  out.push_back(first_position(Algorithm::InOrder, seed(), 5, 2, scale(100000, 20000), alpha));
  out.push_back(first_position(Algorithm::InOrder, seed(), 10, 3, scale(100000, 20000), alpha));
  out.push_back(first_position(Algorithm::Sparse, seed(), 5, 2, scale(100000, 20000), alpha));
  out.push_back(first_position(Algorithm::Sparse, seed(), 10, 3, scale(100000, 20000), alpha));
  for (Algorithm a : {Algorithm::ClassicalFy, Algorithm::Sparse, Algorithm::Preinit,
                      Algorithm::InOrder}) {
    out.push_back(exact_draw_budget(a, seed(), scale(1000, 100)));
  }
  out.push_back(membership_draws(seed(), 100, 50, scale(100000, 20000), 0.01));
  out.push_back(membership_draws(seed(), 1000, 100, scale(100000, 2000), 0.01));
  {
    const Index cps[] = {100, 250, 500, 750, 900};
    out.push_back(hash_occupancy(seed(), 1000, cps, scale(10000, 1000)));
  }
  out.push_back(restoration(seed(), scale(1000, 100), 10000));

  // distributed
  {
    const Index blocks[] = {4, 4};
    for (Index k = 1; k <= 4; ++k) {
      out.push_back(split_duality(seed(), blocks, k, scale(200, 100), alpha));
    }
  }
  for (auto& r : merge_correctness(seed(), 4, 2, 4, 2, scale(200000, 20000), alpha)) {
    out.push_back(std::move(r));
  }
  for (auto& r : merge_correctness(seed(), 3, 1, 5, 3, scale(200000, 20000), alpha)) {
    out.push_back(std::move(r));
  }
  out.push_back(merge_symmetry(seed(), 3, 1, 5, 3, scale(200000, 20000), alpha));
  return out;
}

void write_text_report(std::ostream& out, std::span<const CheckResult> results) {
  for (const auto& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << " statistic=" << r.statistic
        << " p_value=";
    if (std::isnan(r.p_value)) {
      out << "n/a";
    } else {
      out << r.p_value;
    }
    if (!r.detail.empty()) out << " [" << r.detail << "]";
    out << '\n';
  }
}

}  // namespace srswor

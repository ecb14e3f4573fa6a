#include "srswor/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "srswor/distributions.hpp"

namespace srswor {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 10000;

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_q: need a > 0, x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi_square_sf(double statistic, double dof) {
  if (statistic <= 0.0) return 1.0;
  return regularized_gamma_q(dof / 2.0, statistic / 2.0);
}

GofReport chi_square_gof(std::span<const std::uint64_t> observed,
                         std::span<const double> expected_probs, double alpha) {
  if (observed.size() != expected_probs.size()) {
    throw std::invalid_argument("chi_square_gof: length mismatch");
  }
  const double mass = std::accumulate(expected_probs.begin(), expected_probs.end(), 0.0);
  if (std::fabs(mass - 1.0) > 1e-9) {
    throw std::invalid_argument("chi_square_gof: expected probabilities sum to " +
                                std::to_string(mass));
  }
  const auto total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  if (total == 0.0) throw std::invalid_argument("chi_square_gof: no observations");

  // Pool adjacent cells until each pooled expected count reaches 5.
  std::vector<std::pair<double, double>> cells;  // (observed, expected)
  double obs_acc = 0.0;
  double exp_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    obs_acc += static_cast<double>(observed[i]);
    exp_acc += expected_probs[i] * total;
    if (exp_acc >= 5.0) {
      cells.emplace_back(obs_acc, exp_acc);
      obs_acc = exp_acc = 0.0;
    }
  }
  if (obs_acc > 0.0 || exp_acc > 0.0) {
    if (cells.empty()) {
      cells.emplace_back(obs_acc, exp_acc);
    } else {
      cells.back().first += obs_acc;
      cells.back().second += exp_acc;
    }
  }
  if (cells.size() < 2) {
    throw std::invalid_argument(
        "chi_square_gof: fewer than two cells with expected count >= 5");
  }

  GofReport report;
  for (const auto& [o, e] : cells) report.statistic += (o - e) * (o - e) / e;
  report.dof = cells.size() - 1;
  report.p_value = chi_square_sf(report.statistic, static_cast<double>(report.dof));
  report.pass = report.p_value >= alpha;
  return report;
}

GofReport chi_square_two_sample(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b, double alpha) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("chi_square_two_sample: length mismatch");
  }
  std::vector<std::pair<double, double>> cols;
  double acc_a = 0.0;
  double acc_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc_a += static_cast<double>(a[i]);
    acc_b += static_cast<double>(b[i]);
    if (acc_a + acc_b >= 5.0) {
      cols.emplace_back(acc_a, acc_b);
      acc_a = acc_b = 0.0;
    }
  }
  if (acc_a + acc_b > 0.0 && !cols.empty()) {
    cols.back().first += acc_a;
    cols.back().second += acc_b;
  }
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [x, y] : cols) {
    na += x;
    nb += y;
  }
  if (cols.size() < 2 || na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("chi_square_two_sample: not enough data");
  }
  const double total = na + nb;
  GofReport report;
  for (const auto& [x, y] : cols) {
    const double col = x + y;
    const double ea = col * na / total;
    const double eb = col * nb / total;
    report.statistic += (x - ea) * (x - ea) / ea + (y - eb) * (y - eb) / eb;
  }
  report.dof = cols.size() - 1;
  report.p_value = chi_square_sf(report.statistic, static_cast<double>(report.dof));
  report.pass = report.p_value >= alpha;
  return report;
}

KsReport ks_test(std::vector<double> samples, const std::function<double(double)>& cdf,
                 double alpha) {
  if (samples.empty()) throw std::invalid_argument("ks_test: no samples");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n,
                  static_cast<double>(i + 1) / n - f});
  }
  const double sqrt_n = std::sqrt(n);
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  double p = 0.0;
  if (lambda < 1e-3) {
    p = 1.0;
  } else {
    double sign = 1.0;
    for (int j = 1; j <= 200; ++j) {
      const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
      p += term;
      if (std::fabs(term) < 1e-16) break;
      sign = -sign;
    }
    p = std::clamp(2.0 * p, 0.0, 1.0);
  }
  KsReport report;
  report.statistic = d;
  report.n = samples.size();
  report.p_value = p;
  report.pass = p >= alpha;
  return report;
}

double first_position_pmf(Index n, Index k, std::int64_t x) {
  if (n == 0 || k == 0 || k > n) {
    throw std::invalid_argument("first_position_pmf: need 1 <= k <= n");
  }
  if (x < 1 || x > static_cast<std::int64_t>(n - k + 1)) return 0.0;
  const auto ux = static_cast<Index>(x);
  return std::exp(log_choose(n - ux, k - 1) - log_choose(n, k));
}

double expected_membership_draws(Index n, Index k) {
  if (k > n) throw std::invalid_argument("expected_membership_draws: k > n");
  // Terms n/(n-t) increase with t, so ascending t adds smallest first.
  double sum = 0.0;
  const auto dn = static_cast<double>(n);
  for (Index t = 0; t < k; ++t) sum += dn / static_cast<double>(n - t);
  return sum;
}

double expected_hash_occupancy(Index n, Index i) {
  if (n == 0 || i > n) throw std::invalid_argument("expected_hash_occupancy: need 0 <= i <= n");
  const auto dn = static_cast<double>(n);
  const auto di = static_cast<double>(i);
  return di * (dn - di) / dn;
}

namespace {
constexpr Algorithm kAlgorithms[] = {
    Algorithm::ClassicalFy, Algorithm::Sparse,  Algorithm::Membership,
    Algorithm::Preinit,     Algorithm::Selection, Algorithm::InOrder,
    Algorithm::Reservoir,
};
}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ClassicalFy: return "fy";
    case Algorithm::Sparse: return "sparse";
    case Algorithm::Membership: return "member";
    case Algorithm::Preinit: return "preinit";
    case Algorithm::Selection: return "select";
    case Algorithm::InOrder: return "inorder";
    case Algorithm::Reservoir: return "reservoir";
  }
  return "?";
}

Algorithm algorithm_from_name(std::string_view name) {
  for (Algorithm a : kAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::span<const Algorithm> all_algorithms() { return kAlgorithms; }

SampleResult run_algorithm(Algorithm a, UniformSource& src, Index n, Index k) {
  switch (a) {
    case Algorithm::ClassicalFy: return fisher_yates_sample(src, n, k);
    case Algorithm::Sparse: return sparse_fisher_yates(src, n, k);
    case Algorithm::Membership: return membership_checking_sample(src, n, k);
    case Algorithm::Preinit: return preinit_fy_sample(src, n, k);
    case Algorithm::Selection: return selection_sample(src, n, k);
    case Algorithm::InOrder: return inorder_sample(src, n, k);
    case Algorithm::Reservoir:
      if (k > n) throw std::invalid_argument("reservoir: k exceeds n");
      if (k == 0) {
        SampleResult empty;
        empty.n = n;
        empty.order = SampleOrder::Unordered;
        return empty;
      }
      return reservoir_sample(src, n, k);
  }
  throw std::invalid_argument("run_algorithm: bad algorithm");
}

CostModel cost_model(Algorithm a, Index n, Index k) {
  if (k > n) throw std::invalid_argument("cost_model: k > n");
  const auto dn = static_cast<double>(n);
  const auto dk = static_cast<double>(k);
  CostModel m;
  m.algorithm = a;
  switch (a) {
    case Algorithm::ClassicalFy:
      m.expected_draws = dk;
      m.expected_space = dn;
      break;
    case Algorithm::Sparse:
      m.expected_draws = dk;
      // Occupancy i(n-i)/n peaks at i = n/2.
      m.expected_space = expected_hash_occupancy(n, std::min<Index>(k, n / 2));
      break;
    case Algorithm::Membership:
      m.expected_draws = expected_membership_draws(n, k);
      m.expected_space = dk;
      break;
    case Algorithm::Preinit:
    case Algorithm::InOrder:
      m.expected_draws = dk;
      m.expected_space = 0.0;
      break;
    case Algorithm::Selection:
      // The scan stops at the k-th selected position, E[X_k] = k(n+1)/(k+1).
      m.expected_draws = dk * (dn + 1.0) / (dk + 1.0);
      m.expected_space = 0.0;
      break;
    case Algorithm::Reservoir:
      m.expected_draws = dn - dk;
      m.expected_space = dk;
      break;
  }
  return m;
}

std::uint64_t choose_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    // r * num / i is exact since r * num = C(n-k+i, i) * i.
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      throw std::overflow_error("choose_exact: overflow");
    }
    r = r * num / i;
  }
  return r;
}

std::uint64_t subset_rank(std::span<const Index> subset) {
  std::vector<Index> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < s.size(); ++i) rank += choose_exact(s[i] - 1, i + 1);
  return rank;
}

GofReport enumerate_subset_distribution(const SubsetSampler& sampler, Index n,
                                        Index k, std::uint64_t reps,
                                        UniformSource& src, double alpha) {
  if (k > n) throw std::invalid_argument("enumerate_subset_distribution: k > n");
  const std::uint64_t cells = choose_exact(n, k);
  if (cells > 200) {
    throw std::invalid_argument("enumerate_subset_distribution: C(n,k) = " +
                                std::to_string(cells) + " exceeds 200");
  }
  if (reps < 100 * cells) {
    throw std::invalid_argument("enumerate_subset_distribution: need reps >= 100 C(n,k)");
  }
  std::vector<std::uint64_t> counts(cells, 0);
  for (std::uint64_t r = 0; r < reps; ++r) {
    const auto subset = sampler(src, n, k);
    if (subset.size() != k) {
      throw std::logic_error("enumerate_subset_distribution: sampler returned " +
                             std::to_string(subset.size()) + " items");
    }
    std::vector<Index> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::logic_error("enumerate_subset_distribution: repeated index");
    }
    const std::uint64_t rank = subset_rank(sorted);
    if ((!sorted.empty() && (sorted.front() < 1 || sorted.back() > n)) || rank >= cells) {
      throw std::logic_error("enumerate_subset_distribution: sampler output out of range");
    }
    ++counts[rank];
  }
  const std::vector<double> probs(cells, 1.0 / static_cast<double>(cells));
  return chi_square_gof(counts, probs, alpha);
}

}  // namespace srswor

#pragma once

#include <cstdint>

#include "srswor/rng.hpp"

namespace srswor {

struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Count of sampled items landing in the first `v` of `n` positions when `k`
/// items are sampled without replacement.
struct HypergeomParams {
  Index v = 0;
  Index n = 0;
  Index k = 0;
};

// Each sampler below records one draw in its own DrawStats family when
// `stats` is non-null.

/// 1 with probability p via a single uniform comparison.
bool bernoulli(UniformSource& src, double p, DrawStats* stats = nullptr);

/// Exact Binomial(n, p). Inversion when n*min(p,1-p) <= 30, BTPE otherwise.
Index binomial(UniformSource& src, Index n, double p, DrawStats* stats = nullptr);

/// Beta(alpha, beta) for alpha >= 1, beta >= 0. beta == 0 yields exactly 1.
/// alpha == 1 uses the closed form 1 - U^{1/beta} with one uniform.
double beta(UniformSource& src, BetaParams params, DrawStats* stats = nullptr);

/// Binomial(n, p) with p ~ Beta(alpha, beta).
Index beta_binomial(UniformSource& src, Index alpha, Index beta, Index n,
                    DrawStats* stats = nullptr);

/// C(v,c) C(n-v,k-c) / C(n,k), evaluated in log space; 0 outside the support.
double hypergeom_pmf(HypergeomParams params, std::int64_t c);

/// Exact Hypergeometric(v, n, k) by bisection on the positions of sampled
/// items. Each step locates the ceil(k/2)-th sampled item with a
/// Beta-Binomial draw and recurses into the side containing position v, so
/// the expected number of steps is O(log k).
Index hypergeometric(UniformSource& src, HypergeomParams params,
                     DrawStats* stats = nullptr);

/// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 uses the U^{1/shape} boost.
double gamma_variate(UniformSource& src, double shape);

/// Standard normal by the Marsaglia polar method.
double standard_normal(UniformSource& src);

/// log C(n, k) via lgamma.
double log_choose(Index n, Index k);

}  // namespace srswor

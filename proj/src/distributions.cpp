#include "srswor/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace srswor {

namespace {

void record(DrawStats* stats, std::uint64_t DrawStats::*field) {
  if (stats != nullptr) ++(stats->*field);
}

void check_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": p must lie in [0, 1]");
  }
}

// Sequential pmf summation from zero; requires p <= 0.5.
Index binomial_inversion(UniformSource& src, Index n, double p) {
  const double q = 1.0 - p;
  const double ratio = p / q;
  double pmf = std::pow(q, static_cast<double>(n));
  double cdf = pmf;
  const double u = src.next_uniform_real();
  Index c = 0;
  while (u >= cdf && c < n) {
    pmf *= ratio * static_cast<double>(n - c) / static_cast<double>(c + 1);
    ++c;
    cdf += pmf;
  }
  return c;
}

// Kachitvichyanukul & Schmeiser (1988) BTPE; requires p <= 0.5 and n*p > 30.
Index binomial_btpe(UniformSource& src, Index n_u, double p) {
  const auto n = static_cast<double>(n_u);
  const double r = p;
  const double q = 1.0 - r;
  const double fm = n * r + r;
  const double m = std::floor(fm);
  const double p1 = std::floor(2.195 * std::sqrt(n * r * q) - 4.6 * q) + 0.5;
  const double xm = m + 0.5;
  const double xl = xm - p1;
  const double xr = xm + p1;
  const double c = 0.134 + 20.5 / (15.3 + m);
  double a = (fm - xl) / (fm - xl * r);
  const double laml = a * (1.0 + a / 2.0);
  a = (xr - fm) / (xr * q);
  const double lamr = a * (1.0 + a / 2.0);
  const double p2 = p1 * (1.0 + 2.0 * c);
  const double p3 = p2 + c / laml;
  const double p4 = p3 + c / lamr;
  const double nrq = n * r * q;

  auto stirling = [](double x) {
    const double x2 = x * x;
    return (13680. - (462. - (132. - (99. - 140. / x2) / x2) / x2) / x2) / x /
           166320.;
  };

  for (;;) {
    const double u = src.next_uniform_real() * p4;
    double v = src.next_uniform_real();
    double y;

    if (u <= p1) {
      // Triangular region: always accepted.
      y = std::floor(xm - p1 * v + u);
      return static_cast<Index>(y);
    }
    if (u <= p2) {
      const double x = xl + (u - p1) / c;
      v = v * c + 1.0 - std::fabs(m - x + 0.5) / p1;
      if (v > 1.0) continue;
      y = std::floor(x);
    } else if (u <= p3) {
      if (v == 0.0) continue;
      y = std::floor(xl + std::log(v) / laml);
      if (y < 0.0) continue;
      v = v * (u - p2) * laml;
    } else {
      if (v == 0.0) continue;
      y = std::floor(xr - std::log(v) / lamr);
      if (y > n) continue;
      v = v * (u - p3) * lamr;
    }

    const double k = std::fabs(y - m);
    if (k <= 20.0 || k >= nrq / 2.0 - 1.0) {
      // Explicit evaluation of f(y)/f(m).
      const double s = r / q;
      const double aa = s * (n + 1.0);
      double f = 1.0;
      if (m < y) {
        for (double i = m + 1.0; i <= y; i += 1.0) f *= (aa / i - s);
      } else if (m > y) {
        for (double i = y + 1.0; i <= m; i += 1.0) f /= (aa / i - s);
      }
      if (v <= f) return static_cast<Index>(y);
      continue;
    }

    // Squeeze using the normal approximation of log f(y)/f(m).
    const double rho =
        (k / nrq) * ((k * (k / 3.0 + 0.625) + 0.16666666666666666) / nrq + 0.5);
    const double t = -k * k / (2.0 * nrq);
    const double log_v = std::log(v);
    if (log_v < t - rho) return static_cast<Index>(y);
    if (log_v > t + rho) continue;

    const double x1 = y + 1.0;
    const double f1 = m + 1.0;
    const double z = n + 1.0 - m;
    const double w = n - y + 1.0;
    const double bound = xm * std::log(f1 / x1) + (n - m + 0.5) * std::log(z / w) +
                         (y - m) * std::log(w * r / (x1 * q)) + stirling(f1) +
                         stirling(z) + stirling(x1) + stirling(w);
    if (log_v <= bound) return static_cast<Index>(y);
  }
}

Index binomial_unrecorded(UniformSource& src, Index n, double p) {
  check_probability(p, "binomial");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial_unrecorded(src, n, 1.0 - p);
  if (static_cast<double>(n) * p <= 30.0) return binomial_inversion(src, n, p);
  return binomial_btpe(src, n, p);
}

double beta_unrecorded(UniformSource& src, BetaParams params) {
  if (!(params.alpha >= 1.0)) {
    throw std::invalid_argument("beta: alpha < 1 is not supported");
  }
  if (!(params.beta >= 0.0)) {
    throw std::invalid_argument("beta: beta must be non-negative");
  }
  if (params.beta == 0.0) return 1.0;
  if (params.alpha == 1.0) {
    // 1 - U^{1/beta}, written with expm1 so it stays > 0 for U near 1.
    return -std::expm1(std::log(src.next_uniform_real()) / params.beta);
  }
  const double x = gamma_variate(src, params.alpha);
  const double y = gamma_variate(src, params.beta);
  return x / (x + y);
}

Index beta_binomial_unrecorded(UniformSource& src, Index alpha, Index beta_,
                               Index n) {
  if (alpha < 1 || beta_ < 1) {
    throw std::invalid_argument("beta_binomial: alpha and beta must be >= 1");
  }
  const double p = beta_unrecorded(
      src, {static_cast<double>(alpha), static_cast<double>(beta_)});
  return binomial_unrecorded(src, n, p);
}

}  // namespace

double standard_normal(UniformSource& src) {
  for (;;) {
    const double u = 2.0 * src.next_uniform_real() - 1.0;
    const double v = 2.0 * src.next_uniform_real() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double gamma_variate(UniformSource& src, double shape) {
  if (!(shape > 0.0)) {
    throw std::invalid_argument("gamma_variate: shape must be positive");
  }
  if (shape < 1.0) {
    double u;
    do {
      u = src.next_uniform_real();
    } while (u == 0.0);
    return gamma_variate(src, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = standard_normal(src);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = src.next_uniform_real();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

bool bernoulli(UniformSource& src, double p, DrawStats* stats) {
  check_probability(p, "bernoulli");
  record(stats, &DrawStats::bernoulli);
  return src.next_uniform_real() < p;
}

Index binomial(UniformSource& src, Index n, double p, DrawStats* stats) {
  const Index c = binomial_unrecorded(src, n, p);
  record(stats, &DrawStats::binomial);
  return c;
}

double beta(UniformSource& src, BetaParams params, DrawStats* stats) {
  const double t = beta_unrecorded(src, params);
  record(stats, &DrawStats::beta);
  return t;
}

Index beta_binomial(UniformSource& src, Index alpha, Index beta_, Index n,
                    DrawStats* stats) {
  const Index c = beta_binomial_unrecorded(src, alpha, beta_, n);
  record(stats, &DrawStats::beta_binomial);
  return c;
}

double log_choose(Index n, Index k) {
  if (k > n) return -INFINITY;
  const auto dn = static_cast<double>(n);
  const auto dk = static_cast<double>(k);
  return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
}

double hypergeom_pmf(HypergeomParams p, std::int64_t c) {
  if (p.v > p.n || p.k > p.n) {
    throw std::invalid_argument("hypergeom_pmf: require v <= n and k <= n");
  }
  const auto lo = static_cast<std::int64_t>(p.k > p.n - p.v ? p.k - (p.n - p.v) : 0);
  const auto hi = static_cast<std::int64_t>(std::min(p.k, p.v));
  if (c < lo || c > hi) return 0.0;
  const auto uc = static_cast<Index>(c);
  return std::exp(log_choose(p.v, uc) + log_choose(p.n - p.v, p.k - uc) -
                  log_choose(p.n, p.k));
}

Index hypergeometric(UniformSource& src, HypergeomParams p, DrawStats* stats) {
  if (p.v > p.n || p.k > p.n) {
    throw std::invalid_argument("hypergeometric: require v <= n and k <= n");
  }
  Index v = p.v;
  Index n = p.n;
  Index k = p.k;
  Index found = 0;
  // Invariant: the answer is `found` plus the number of the k sampled items
  // of an SRS over positions [1, n] that fall within [1, v].
  while (k > 0 && v > 0) {
    if (v == n) {
      found += k;
      break;
    }
    const Index j = (k + 1) / 2;
    const Index pos = j + beta_binomial_unrecorded(src, j, k - j + 1, n - k);
    if (pos <= v) {
      // Items 1..j are inside the prefix; items j+1..k are an SRS of the
      // positions after `pos`.
      found += j;
      v -= pos;
      n -= pos;
      k -= j;
    } else {
      // Items j..k lie beyond v; items 1..j-1 are an SRS of [1, pos-1].
      n = pos - 1;
      k = j - 1;
    }
  }
  record(stats, &DrawStats::hypergeometric);
  return found;
}

}  // namespace srswor

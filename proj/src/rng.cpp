#include "srswor/rng.hpp"

#include <string>

namespace srswor {

DrawStats& DrawStats::operator+=(const DrawStats& o) noexcept {
  uniform_int += o.uniform_int;
  uniform_real += o.uniform_real;
  bernoulli += o.bernoulli;
  binomial += o.binomial;
  beta += o.beta;
  beta_binomial += o.beta_binomial;
  hypergeometric += o.hypergeometric;
  return *this;
}

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) noexcept {
  SplitMix64 sm(seed);
  for (auto& w : s_) w = sm.next();
}

std::uint64_t Xoshiro256StarStar::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomSource::real_impl() {
  return static_cast<double>(word() >> 11) * 0x1.0p-53;
}

Index RandomSource::int_impl(Index m) {
  // Lemire, "Fast random integer generation in an interval" (2019).
  __extension__ typedef unsigned __int128 u128;
  u128 product = static_cast<u128>(word()) * m;
  auto low = static_cast<std::uint64_t>(product);
  if (low < m) {
    const std::uint64_t threshold = (0 - m) % m;
    while (low < threshold) {
      product = static_cast<u128>(word()) * m;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<Index>(product >> 64) + 1;
}

ScriptedSource ScriptedSource::ints(std::initializer_list<Index> values) {
  return ScriptedSource(std::vector<Entry>(values.begin(), values.end()));
}

ScriptedSource ScriptedSource::reals(std::initializer_list<double> values) {
  return ScriptedSource(std::vector<Entry>(values.begin(), values.end()));
}

const ScriptedSource::Entry& ScriptedSource::take() {
  if (pos_ >= script_.size()) {
    throw ScriptError("scripted source exhausted after " +
                      std::to_string(script_.size()) + " values");
  }
  return script_[pos_++];
}

double ScriptedSource::real_impl() {
  const auto& e = take();
  const double* v = std::get_if<double>(&e);
  if (v == nullptr) {
    throw ScriptError("script entry " + std::to_string(pos_) +
                      " is an integer, but a real was requested");
  }
  if (!(*v >= 0.0 && *v < 1.0)) {
    throw ScriptError("scripted real outside [0, 1)");
  }
  return *v;
}

Index ScriptedSource::int_impl(Index m) {
  const auto& e = take();
  const Index* v = std::get_if<Index>(&e);
  if (v == nullptr) {
    throw ScriptError("script entry " + std::to_string(pos_) +
                      " is a real, but an integer was requested");
  }
  if (*v < 1 || *v > m) {
    throw ScriptError("scripted integer " + std::to_string(*v) +
                      " outside [1, " + std::to_string(m) + "]");
  }
  return *v;
}

}  // namespace srswor

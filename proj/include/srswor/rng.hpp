#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <variant>
#include <vector>

namespace srswor {

/// Population positions are 1-based throughout the public API.
using Index = std::uint64_t;

/// Thrown when a ScriptedSource runs out of values or is asked for the wrong
/// kind of value.
class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Logical draws per distribution family. A compound draw (Beta-Binomial,
/// Hypergeometric) is recorded once under its own family; the variates it
/// consumes internally are not recorded again.
struct DrawStats {
  std::uint64_t uniform_int = 0;
  std::uint64_t uniform_real = 0;
  std::uint64_t bernoulli = 0;
  std::uint64_t binomial = 0;
  std::uint64_t beta = 0;
  std::uint64_t beta_binomial = 0;
  std::uint64_t hypergeometric = 0;

  std::uint64_t total() const noexcept {
    return uniform_int + uniform_real + bernoulli + binomial + beta +
           beta_binomial + hypergeometric;
  }

  DrawStats& operator+=(const DrawStats& o) noexcept;
  friend bool operator==(const DrawStats&, const DrawStats&) = default;
};

/// Abstract stream of uniform variates consumed by every sampler.
///
/// draw_count() counts logical requests: one per next_uniform_real() or
/// next_uniform_int() call, however many raw words rejection consumed.
/// Instances are single-threaded; give each thread its own source.
class UniformSource {
 public:
  virtual ~UniformSource() = default;

  /// Uniform real in [0, 1).
  double next_uniform_real() {
    ++draw_count_;
    return real_impl();
  }

  /// Uniform integer in [1, m]. Throws std::invalid_argument for m == 0.
  Index next_uniform_int(Index m) {
    if (m == 0) throw std::invalid_argument("next_uniform_int: m must be >= 1");
    ++draw_count_;
    return int_impl(m);
  }

  std::uint64_t draw_count() const noexcept { return draw_count_; }

 protected:
  virtual double real_impl() = 0;
  virtual Index int_impl(Index m) = 0;

 private:
  std::uint64_t draw_count_ = 0;
};

/// SplitMix64, used to expand a 64-bit seed into generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;

 private:
  std::uint64_t state_;
};

/// xoshiro256** (Blackman & Vigna).
class Xoshiro256StarStar {
 public:
  using State = std::array<std::uint64_t, 4>;

  explicit Xoshiro256StarStar(std::uint64_t seed) noexcept;
  explicit Xoshiro256StarStar(const State& state) noexcept : s_(state) {}

  std::uint64_t next() noexcept;
  const State& state() const noexcept { return s_; }

 private:
  State s_;
};

/// Seeded deterministic source backed by xoshiro256**. Bounded integers use
/// Lemire's multiply-and-reject method, so there is no modulo bias.
class RandomSource final : public UniformSource {
 public:
  explicit RandomSource(std::uint64_t seed) noexcept : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  /// Raw 64-bit generator words consumed so far (includes rejected words).
  std::uint64_t raw_words() const noexcept { return raw_words_; }

 protected:
  double real_impl() override;
  Index int_impl(Index m) override;

 private:
  std::uint64_t word() noexcept {
    ++raw_words_;
    return gen_.next();
  }

  std::uint64_t seed_;
  Xoshiro256StarStar gen_;
  std::uint64_t raw_words_ = 0;
};

/// Replays a fixed script. Integer entries answer next_uniform_int() and must
/// lie in [1, m]; real entries answer next_uniform_real() and must lie in
/// [0, 1). Any mismatch or exhaustion throws ScriptError.
class ScriptedSource final : public UniformSource {
 public:
  using Entry = std::variant<Index, double>;

  explicit ScriptedSource(std::vector<Entry> script) : script_(std::move(script)) {}

  static ScriptedSource ints(std::initializer_list<Index> values);
  static ScriptedSource reals(std::initializer_list<double> values);

  std::size_t remaining() const noexcept { return script_.size() - pos_; }

 protected:
  double real_impl() override;
  Index int_impl(Index m) override;

 private:
  const Entry& take();

  std::vector<Entry> script_;
  std::size_t pos_ = 0;
};

}  // namespace srswor

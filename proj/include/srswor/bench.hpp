#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srswor/stats.hpp"

namespace srswor {

struct BenchRecord {
  std::string algorithm;
  Index n = 0;
  Index k = 0;
  std::uint64_t rep = 0;
  std::uint64_t wall_time_ns = 0;
  std::uint64_t logical_draws = 0;
  /// Peak hash entries (sparse, member), array slots (fy), reservoir slots
  /// (reservoir); 0 for the O(1)-space samplers.
  std::uint64_t peak_aux_entries = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

inline constexpr std::string_view kBenchHeader =
    "algorithm,n,k,rep,wall_time_ns,logical_draws,peak_aux_entries,seed";

struct BenchConfig {
  std::vector<std::pair<Index, Index>> grid;
  std::vector<Algorithm> algorithms;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
};

/// Parses `n1:k1,n2:k2,...`. Throws std::invalid_argument.
std::vector<std::pair<Index, Index>> parse_grid(std::string_view text);

/// Times one run per (algorithm, n, k, rep); rep r uses seed + r.
void run_bench(const BenchConfig& config,
               const std::function<void(const BenchRecord&)>& sink);
std::vector<BenchRecord> run_bench(const BenchConfig& config);

void write_bench_row(std::ostream& out, const BenchRecord& r);
/// Inverse of write_bench_row. Throws std::invalid_argument.
BenchRecord parse_bench_row(std::string_view line);

}  // namespace srswor

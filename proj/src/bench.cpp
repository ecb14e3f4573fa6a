#include "srswor/bench.hpp"

#include <charconv>
#include <chrono>
#include <ostream>
#include <stdexcept>

namespace srswor {

namespace {

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw std::invalid_argument(std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::vector<std::pair<Index, Index>> parse_grid(std::string_view text) {
  std::vector<std::pair<Index, Index>> grid;
  for (auto cell : split(text, ',')) {
    const auto nk = split(cell, ':');
    if (nk.size() != 2) {
      throw std::invalid_argument("grid entry '" + std::string(cell) + "' is not n:k");
    }
    const Index n = parse_u64(nk[0], "grid n");
    const Index k = parse_u64(nk[1], "grid k");
    if (n == 0 || k > n) {
      throw std::invalid_argument("grid entry '" + std::string(cell) + "' needs 0 <= k <= n, n >= 1");
    }
    grid.emplace_back(n, k);
  }
  return grid;
}

void run_bench(const BenchConfig& config,
               const std::function<void(const BenchRecord&)>& sink) {
  using clock = std::chrono::steady_clock;
  for (Algorithm a : config.algorithms) {
    for (const auto& [n, k] : config.grid) {
      for (std::uint64_t rep = 0; rep < config.reps; ++rep) {
        const std::uint64_t seed = config.seed + rep;
        RandomSource src(seed);
        const auto start = clock::now();
        const SampleResult result = run_algorithm(a, src, n, k);
        const auto stop = clock::now();

        BenchRecord r;
        r.algorithm = std::string(algorithm_name(a));
        r.n = n;
        r.k = k;
        r.rep = rep;
        r.wall_time_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
        r.logical_draws = result.draw_stats.total();
        r.peak_aux_entries = result.peak_aux_entries;
        r.seed = seed;
        sink(r);
      }
    }
  }
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::vector<BenchRecord> out;
  run_bench(config, [&out](const BenchRecord& r) { out.push_back(r); });
  return out;
}

void write_bench_row(std::ostream& out, const BenchRecord& r) {
  out << r.algorithm << ',' << r.n << ',' << r.k << ',' << r.rep << ',' << r.wall_time_ns << ','
      << r.logical_draws << ',' << r.peak_aux_entries << ',' << r.seed << '\n';
}

BenchRecord parse_bench_row(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  const auto f = split(line, ',');
  if (f.size() != 8) throw std::invalid_argument("bench row needs 8 fields");
  BenchRecord r;
  r.algorithm = std::string(f[0]);
  r.n = parse_u64(f[1], "n");
  r.k = parse_u64(f[2], "k");
  r.rep = parse_u64(f[3], "rep");
  r.wall_time_ns = parse_u64(f[4], "wall_time_ns");
  r.logical_draws = parse_u64(f[5], "logical_draws");
  r.peak_aux_entries = parse_u64(f[6], "peak_aux_entries");
  r.seed = parse_u64(f[7], "seed");
  return r;
}

}  // namespace srswor

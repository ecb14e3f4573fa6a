#include "srswor/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "srswor/bench.hpp"
#include "srswor/samplers.hpp"
#include "srswor/stats.hpp"
#include "srswor/verify.hpp"

namespace srswor::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Opens `path` ("-" or empty = `fallback`).
class InputHandle {
 public:
  InputHandle(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw IoError("cannot open input '" + path + "'");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(std::move(line));
  if (in.bad()) throw IoError("error reading input");
  return lines;
}

struct SampleArgs {
  std::optional<Index> n;
  Index k = 0;
  std::uint64_t seed = 0;
  std::optional<Algorithm> algo;
  bool indices_only = false;
  std::string input;
};

void print_indices(std::ostream& out, const std::vector<Index>& indices) {
  for (Index i : indices) out << i << '\n';
}

int cmd_sample(const SampleArgs& a, std::istream& in, std::ostream& out) {
  if (a.n && *a.n == 0) throw UsageError("--n must be >= 1");
  if (a.n && a.k > *a.n) {
    throw UsageError("k = " + std::to_string(a.k) + " exceeds n = " + std::to_string(*a.n));
  }
  const Algorithm algo = a.algo.value_or(a.n ? Algorithm::InOrder : Algorithm::Reservoir);
  RandomSource src(a.seed);

  if (a.indices_only) {
    Index n = 0;
    if (a.n) {
      n = *a.n;
    } else {
      InputHandle h(a.input, in);
      n = read_lines(h.get()).size();
      if (a.k > n) {
        throw UsageError("k = " + std::to_string(a.k) + " exceeds input line count " +
                         std::to_string(n));
      }
      if (n == 0) return kOk;
    }
    if (a.k == 0) return kOk;
    print_indices(out, run_algorithm(algo, src, n, a.k).indices);
    return kOk;
  }

  InputHandle h(a.input, in);
  std::istream& input = h.get();

  if (algo == Algorithm::Reservoir) {
    if (a.k == 0) return kOk;
    ReservoirSampler<std::string> reservoir(a.k, src);
    std::string line;
    while (std::getline(input, line)) reservoir.offer(std::move(line));
    if (input.bad()) throw IoError("error reading input");
    if (a.n && reservoir.seen() != *a.n) {
      throw IoError("input has " + std::to_string(reservoir.seen()) + " lines, expected " +
                    std::to_string(*a.n));
    }
    if (reservoir.seen() < a.k) {
      throw UsageError("k = " + std::to_string(a.k) + " exceeds input line count " +
                       std::to_string(reservoir.seen()));
    }
    for (const auto& item : reservoir.items()) out << item << '\n';
    return kOk;
  }

  if (a.n && (algo == Algorithm::InOrder || algo == Algorithm::Selection)) {
    // Single forward pass; only the next wanted position is held.
    std::optional<InOrderStream> stream;
    std::vector<Index> positions;
    std::size_t next_idx = 0;
    if (a.k > 0) {
      if (algo == Algorithm::InOrder) {
        stream.emplace(*a.n, a.k, src);
      } else {
        positions = selection_sample(src, *a.n, a.k).indices;
      }
    }
    auto next_wanted = [&]() -> std::optional<Index> {
      if (stream) return stream->next();
      if (next_idx < positions.size()) return positions[next_idx++];
      return std::nullopt;
    };
    std::optional<Index> wanted = a.k > 0 ? next_wanted() : std::nullopt;
    std::string line;
    Index pos = 0;
    while (wanted && std::getline(input, line)) {
      ++pos;
      if (pos == *wanted) {
        out << line << '\n';
        wanted = next_wanted();
      }
    }
    if (input.bad()) throw IoError("error reading input");
    if (wanted) {
      throw IoError("input ended after " + std::to_string(pos) + " lines, expected " +
                    std::to_string(*a.n));
    }
    return kOk;
  }

  const auto lines = read_lines(input);
  const Index n = lines.size();
  if (a.n && *a.n != n) {
    throw IoError("input has " + std::to_string(n) + " lines, expected " +
                  std::to_string(*a.n));
  }
  if (a.k > n) {
    throw UsageError("k = " + std::to_string(a.k) + " exceeds input line count " +
                     std::to_string(n));
  }
  if (a.k == 0) return kOk;
  for (Index i : run_algorithm(algo, src, n, a.k).indices) out << lines[i - 1] << '\n';
  return kOk;
}

struct BenchArgs {
  std::string grid;
  std::string algos;
  std::uint64_t reps = 1;
  std::uint64_t seed = 0;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig config;
  try {
    config.grid = parse_grid(a.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.algos.empty()) {
    const auto all = all_algorithms();
    config.algorithms.assign(all.begin(), all.end());
  } else {
    std::stringstream ss(a.algos);
    std::string name;
    while (std::getline(ss, name, ',')) {
      try {
        config.algorithms.push_back(algorithm_from_name(name));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  }
  config.reps = a.reps;
  config.seed = a.seed;
  out << kBenchHeader << '\n';
  run_bench(config, [&out](const BenchRecord& r) { write_bench_row(out, r); });
  return kOk;
}

struct VerifyArgs {
  std::string suite = "quick";
  std::uint64_t seed = 1;
  double alpha = 0.001;
  std::string json_path;
  bool inject_biased = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions opt;
  opt.suite = a.suite == "full" ? VerifySuite::Full : VerifySuite::Quick;
  opt.seed = a.seed;
  opt.alpha = a.alpha;
  opt.inject_biased = a.inject_biased;
  const auto results = run_verification(opt);
  write_text_report(out, results);

  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  out << "# checks=" << results.size() << " failed=" << failed << '\n';
  for (const auto& r : results) {
    if (!r.pass) out << "# failed: " << r.name << '\n';
  }

  if (!a.json_path.empty()) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : results) {
      records.push_back({{"name", r.name},
                         {"statistic", r.statistic},
                         {"p_value", std::isnan(r.p_value) ? nlohmann::json(nullptr)
                                                           : nlohmann::json(r.p_value)},
                         {"pass", r.pass}});
    }
    std::ofstream f(a.json_path);
    if (!f) throw IoError("cannot write '" + a.json_path + "'");
    f << records.dump(2) << '\n';
  }
  return failed == 0 ? kOk : kVerifyFailed;
}

struct MergeArgs {
  std::string manifest;
  std::uint64_t seed = 0;
  std::optional<Index> target;
};

int cmd_merge(const MergeArgs& a, std::ostream& out) {
  std::ifstream f(a.manifest);
  if (!f) throw IoError("cannot open manifest '" + a.manifest + "'");
  const auto shards = read_shard_manifest(f);
  RandomSource src(a.seed);
  auto result = merge_samples(src, std::span<const MergeInput<std::string>>(shards));
  std::vector<std::string> merged = std::move(result.merged);
  if (a.target && *a.target < merged.size()) {
    merged = downsample(src, std::span<const std::string>(merged), *a.target);
  }
  for (const auto& id : merged) out << id << '\n';
  out << "# effective_size=" << merged.size() << '\n';
  return kOk;
}

Index parse_field(std::string_view s, std::size_t line, const char* what) {
  Index v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ManifestError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<MergeInput<std::string>> read_shard_manifest(std::istream& in) {
  std::vector<MergeInput<std::string>> shards;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw ManifestError(lineno, "expected population_size<TAB>sample_size<TAB>ids");
    }
    MergeInput<std::string> shard;
    shard.population_size = parse_field(fields[0], lineno, "population_size");
    const Index k = parse_field(fields[1], lineno, "sample_size");
    if (shard.population_size == 0) throw ManifestError(lineno, "population_size must be >= 1");
    if (k > shard.population_size) {
      throw ManifestError(lineno, "sample_size " + std::to_string(k) +
                                      " exceeds population_size " +
                                      std::to_string(shard.population_size));
    }
    if (fields.size() == 3 && !fields[2].empty()) {
      std::string_view ids = fields[2];
      for (;;) {
        const auto comma = ids.find(',');
        const auto id = ids.substr(0, comma);
        if (id.empty()) throw ManifestError(lineno, "empty identifier");
        shard.sample.emplace_back(id);
        if (comma == std::string_view::npos) break;
        ids.remove_prefix(comma + 1);
      }
    }
    if (shard.sample.size() != k) {
      throw ManifestError(lineno, "sample_size " + std::to_string(k) + " but " +
                                      std::to_string(shard.sample.size()) + " identifiers");
    }
    std::unordered_set<std::string> unique(shard.sample.begin(), shard.sample.end());
    if (unique.size() != shard.sample.size()) {
      throw ManifestError(lineno, "duplicate identifier");
    }
    shards.push_back(std::move(shard));
  }
  if (in.bad()) throw IoError("error reading manifest");
  return shards;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Simple random sampling without replacement"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  Index sample_n = 0;
  std::string sample_algo;
  auto* sample = app.add_subcommand("sample", "Draw a sample of indices or input lines");
  auto* n_opt = sample->add_option("--n", sample_n, "Population size (default: input line count)");
  sample->add_option("--k", sample_args.k, "Sample size")->required();
  sample->add_option("--seed", sample_args.seed, "64-bit seed");
  auto* algo_opt =
      sample->add_option("--algo", sample_algo, "fy|sparse|member|preinit|select|inorder|reservoir");
  sample->add_flag("--indices-only", sample_args.indices_only, "Print indices instead of lines");
  sample->add_option("input", sample_args.input, "Input file (default: standard input)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time samplers over an (n, k) grid; CSV output");
  bench->add_option("--grid", bench_args.grid, "n1:k1,n2:k2,...")->required();
  bench->add_option("--algos", bench_args.algos, "Comma-separated algorithms (default: all)");
  bench->add_option("--reps", bench_args.reps, "Repetitions per cell");
  bench->add_option("--seed", bench_args.seed, "Base seed; rep r uses seed + r");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the statistical verification suite");
  verify->add_option("--suite", verify_args.suite, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--seed", verify_args.seed, "64-bit seed");
  verify->add_option("--alpha", verify_args.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0));
  verify->add_option("--json", verify_args.json_path, "Also write a JSON summary to this path");
  verify->add_flag("--inject-biased", verify_args.inject_biased)->group("");

  MergeArgs merge_args;
  Index merge_target = 0;
  auto* merge = app.add_subcommand("merge", "Merge per-shard samples from a manifest");
  merge->add_option("--manifest", merge_args.manifest, "Shard manifest path")->required();
  merge->add_option("--seed", merge_args.seed, "64-bit seed");
  auto* target_opt = merge->add_option("--target", merge_target, "Downsample to this size");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*sample) {
      if (n_opt->count() > 0) sample_args.n = sample_n;
      if (algo_opt->count() > 0) sample_args.algo = algorithm_from_name(sample_algo);
      return cmd_sample(sample_args, in, out);
    }
    if (*bench) return cmd_bench(bench_args, out);
    if (*verify) return cmd_verify(verify_args, out);
    if (*merge) {
      if (target_opt->count() > 0) merge_args.target = merge_target;
      return cmd_merge(merge_args, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ManifestError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace srswor::cli

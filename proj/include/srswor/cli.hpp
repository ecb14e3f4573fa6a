#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "srswor/distributed.hpp"

namespace srswor::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsageError = 2,
  kVerifyFailed = 3,
};

class ManifestError : public std::runtime_error {
 public:
  ManifestError(std::size_t line, const std::string& what)
      : std::runtime_error("manifest line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads `population_size<TAB>sample_size<TAB>id,id,...` lines. Blank lines
/// and lines starting with '#' are skipped.
std::vector<MergeInput<std::string>> read_shard_manifest(std::istream& in);

/// Entry point shared by the `srs` binary and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace srswor::cli

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "srswor/bench.hpp"
#include "srswor/cli.hpp"

using namespace srswor;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream s(text);
  std::string line;
  while (std::getline(s, line)) lines.push_back(line);
  return lines;
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& contents)
      : path_(std::filesystem::temp_directory_path() / ("srs_test_" + name)) {
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("sample indices") {
  auto r = run_cli({"sample", "--n", "5", "--k", "5", "--algo", "inorder", "--indices-only"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n2\n3\n4\n5\n");

  r = run_cli({"sample", "--n", "5", "--k", "0", "--indices-only"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());

  const std::vector<std::string> args{"sample", "--n",  "5", "--k", "2", "--algo",
                                      "inorder", "--seed", "7", "--indices-only"};
  const auto first = run_cli(args);
  const auto second = run_cli(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(lines_of(first.out).size() == 2);
}

TEST_CASE("every algorithm emits k distinct indices in range") {
  for (const char* algo : {"fy", "sparse", "member", "preinit", "select", "inorder", "reservoir"}) {
    const auto r = run_cli({"sample", "--n", "50", "--k", "10", "--algo", algo, "--seed", "3",
                            "--indices-only"});
    REQUIRE(r.code == 0);
    std::set<int> ids;
    for (const auto& l : lines_of(r.out)) ids.insert(std::stoi(l));
    CHECK_MESSAGE(ids.size() == 10, algo);
    CHECK(*ids.begin() >= 1);
    CHECK(*ids.rbegin() <= 50);
  }
}

TEST_CASE("sample usage and input errors") {
  CHECK(run_cli({"sample", "--n", "3", "--k", "4", "--indices-only"}).code == 2);
  CHECK(run_cli({"sample", "--n", "3", "--k", "1", "--algo", "bogus", "--indices-only"}).code == 2);
  CHECK(run_cli({"sample", "--n", "3"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"sample", "--k", "1", "/nonexistent/definitely/missing.txt"}).code == 1);
}

TEST_CASE("sample lines from input") {
  const std::string input = "alpha\nbeta\ngamma\ndelta\nepsilon\n";
  SUBCASE("inorder keeps input order") {
    const auto r = run_cli({"sample", "--n", "5", "--k", "3", "--seed", "11"}, input);
    REQUIRE(r.code == 0);
    const auto got = lines_of(r.out);
    const auto all = lines_of(input);
    REQUIRE(got.size() == 3);
    std::size_t pos = 0;
    for (const auto& g : got) {
      while (pos < all.size() && all[pos] != g) ++pos;
      CHECK(pos < all.size());
      ++pos;
    }
  }
  SUBCASE("k = n returns the whole input") {
    const auto r = run_cli({"sample", "--n", "5", "--k", "5"}, input);
    CHECK(r.out == input);
  }
  SUBCASE("reservoir when n is not given") {
    const auto r = run_cli({"sample", "--k", "2", "--seed", "5"}, input);
    REQUIRE(r.code == 0);
    const auto got = lines_of(r.out);
    REQUIRE(got.size() == 2);
    const auto all = lines_of(input);
    for (const auto& g : got) CHECK(std::find(all.begin(), all.end(), g) != all.end());
    CHECK(got[0] != got[1]);
  }
  SUBCASE("input shorter than k without --n") {
    CHECK(run_cli({"sample", "--k", "9"}, input).code == 2);
  }
  SUBCASE("line count disagrees with --n") {
    CHECK(run_cli({"sample", "--n", "7", "--k", "2", "--algo", "sparse"}, input).code == 1);
  }
  SUBCASE("file input") {
    TempFile f("lines.txt", input);
    const auto r = run_cli({"sample", "--n", "5", "--k", "5", f.path()});
    CHECK(r.code == 0);
    CHECK(r.out == input);
  }
}

TEST_CASE("bench CSV") {
  const auto r = run_cli(
      {"bench", "--grid", "100:10,1000:5", "--algos", "sparse,fy", "--reps", "2", "--seed", "4"});
  REQUIRE(r.code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 1 + 2 * 2 * 2);
  CHECK(rows[0] == kBenchHeader);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto rec = parse_bench_row(rows[i]);
    CHECK(rec.logical_draws == rec.k);
    std::ostringstream back;
    write_bench_row(back, rec);
    CHECK(back.str() == rows[i] + "\n");
  }
  CHECK(parse_bench_row(rows[1]).seed == 4);
  CHECK(parse_bench_row(rows[2]).seed == 5);

  CHECK(run_cli({"bench", "--grid", "100:10", "--algos", "quicksort"}).code == 2);
  CHECK(run_cli({"bench", "--grid", "100:200"}).code == 2);
  CHECK(run_cli({"bench", "--grid", "garbage"}).code == 2);
}

TEST_CASE("verify") {
  auto r = run_cli({"verify", "--suite", "quick", "--seed", "1"});
  CHECK_MESSAGE(r.code == 0, r.out);
  CHECK(r.out.find("failed=0") != std::string::npos);

  r = run_cli({"verify", "--suite", "quick", "--seed", "1", "--inject-biased"});
  CHECK(r.code == 3);
  CHECK(r.out.find("# failed:") != std::string::npos);

  r = run_cli({"verify", "--suite", "quick", "--seed", "1", "--alpha", "1.0"});
  CHECK(r.code == 3);

  CHECK(run_cli({"verify", "--suite", "medium"}).code == 2);
}

TEST_CASE("merge") {
  SUBCASE("fully sampled shards give the union") {
    TempFile m("full.tsv", "3\t3\ta,b,c\n2\t2\tx,y\n");
    const auto r = run_cli({"merge", "--manifest", m.path(), "--seed", "1"});
    REQUIRE(r.code == 0);
    auto got = lines_of(r.out);
    REQUIRE(got.back() == "# effective_size=5");
    got.pop_back();
    CHECK(std::set<std::string>(got.begin(), got.end()) ==
          std::set<std::string>{"a", "b", "c", "x", "y"});
  }
  SUBCASE("an empty shard contributes nothing") {
    TempFile m("empty.tsv", "# comment\n4\t0\t\n3\t3\tp,q,r\n");
    for (int seed = 0; seed < 50; ++seed) {
      const auto r = run_cli({"merge", "--manifest", m.path(), "--seed", std::to_string(seed)});
      REQUIRE(r.code == 0);
      auto got = lines_of(r.out);
      got.pop_back();
      for (const auto& id : got) CHECK(std::set<std::string>{"p", "q", "r"}.count(id) == 1);
    }
  }
  SUBCASE("target downsamples") {
    TempFile m("target.tsv", "3\t3\ta,b,c\n2\t2\tx,y\n");
    const auto r = run_cli({"merge", "--manifest", m.path(), "--target", "2"});
    REQUIRE(r.code == 0);
    CHECK(lines_of(r.out).size() == 3);
    CHECK(lines_of(r.out).back() == "# effective_size=2");
  }
  SUBCASE("validation") {
    TempFile big("big.tsv", "2\t3\ta,b,c\n");
    auto r = run_cli({"merge", "--manifest", big.path()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 1") != std::string::npos);

    TempFile bad("bad.tsv", "3\t1\ta\n\nnot a line\n");
    r = run_cli({"merge", "--manifest", bad.path()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);

    TempFile dup("dup.tsv", "5\t2\ta,a\n");
    CHECK(run_cli({"merge", "--manifest", dup.path()}).code == 1);

    TempFile count("count.tsv", "5\t2\ta\n");
    CHECK(run_cli({"merge", "--manifest", count.path()}).code == 1);

    CHECK(run_cli({"merge", "--manifest", "/nonexistent/manifest.tsv"}).code == 1);
    CHECK(run_cli({"merge"}).code == 2);
  }
}

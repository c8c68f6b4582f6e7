#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nagao/error.hpp"
#include "nagao/ledger.hpp"
#include "nagao/runner.hpp"
#include "support.hpp"

using namespace nagao;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nagao");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("checkpoint and s-list parsing") {
  CHECK(parse_checkpoints("100,1000", 1000) == std::vector<std::uint64_t>{100, 1000});
  CHECK(parse_checkpoints("step:250", 1000) == std::vector<std::uint64_t>{250, 500, 750, 1000});
  CHECK(parse_checkpoints("step:300", 1000) == std::vector<std::uint64_t>{300, 600, 900, 1000});
  CHECK_THROWS_AS(parse_checkpoints("1000,100", 1000), ValidationError);
  CHECK_THROWS_AS(parse_checkpoints("100,2000", 1000), ValidationError);
  CHECK_THROWS_AS(parse_checkpoints("1,100", 1000), ValidationError);
  CHECK_THROWS_AS(parse_checkpoints("abc", 1000), ValidationError);
  CHECK(parse_s_list("1.5,1.25") == std::vector<double>{1.5, 1.25});
  CHECK_THROWS_AS(parse_s_list("1.5,x"), ValidationError);
  CHECK(output_stem("shioda g/1") == "shioda_g_1");
}

TEST_CASE("run on the constant family") {
  const auto dir = testing::scratch_dir("run_constant");
  const auto r = cli({"run", "--family", testing::family_file("constant_E").string(), "--tmax", "1000", "--out",
                      dir.string(), "--jobs", "2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("nearest integer 0") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "constant_E.ledger.csv"));
  CHECK(std::filesystem::exists(dir / "constant_E.series.csv"));
  CHECK(std::filesystem::exists(dir / "constant_E.summary.txt"));
  const auto summary = nlohmann::json::parse(slurp(dir / "constant_E.summary.json"));
  CHECK(std::abs(summary["S_T"].get<double>()) < 0.15);
  CHECK(summary["nearest_integer"] == 0);
  CHECK(summary["bad_primes"] == std::vector<int>{2});
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("run reports the form5 diagnostic when fibers are declared") {
  const auto dir = testing::scratch_dir("run_g1");
  const auto r = cli({"run", "--family", testing::family_file("shioda_g1").string(), "--tmax", "200", "--out",
                      dir.string(), "--jobs", "1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("form5 residual") != std::string::npos);
  const auto summary = nlohmann::json::parse(slurp(dir / "shioda_g1.summary.json"));
  CHECK(summary.contains("form5"));
}

TEST_CASE("exit codes") {
  const auto dir = testing::scratch_dir("exit_codes");
  const std::string fam = testing::family_file("constant_E").string();
  CHECK(cli({"run", "--family", fam, "--tmax", "2", "--out", dir.string()}).code == kExitInput);
  CHECK(cli({"run", "--family", (dir / "missing.fam").string(), "--tmax", "100", "--out", dir.string()}).code ==
        kExitInput);
  CHECK(cli({"run", "--family", fam}).code == kExitInput);
  CHECK(cli({"frobnicate"}).code == kExitInput);
  CHECK(cli({"run", "--family", fam, "--tmax", "100", "--jobs", "0", "--out", dir.string()}).code == kExitInput);
  CHECK(cli({"residue", "--family", fam, "--tmax", "100", "--s-list", "1.5,1.0", "--out", dir.string()}).code ==
        kExitInput);
  CHECK(cli({"series", "--family", fam, "--tmax", "100", "--checkpoints", "50,20", "--out", dir.string()}).code ==
        kExitInput);

  const auto bad_file = dir / "bad.fam";
  std::ofstream(bad_file) << "family \"b\"\nkind hyperelliptic\npoly x^^3\n";
  const auto parse = cli({"run", "--family", bad_file.string(), "--tmax", "100", "--out", dir.string()});
  CHECK(parse.code == kExitInput);
  CHECK(parse.err.find("line 3") != std::string::npos);
}

TEST_CASE("resume with a mismatched family hash exits 2") {
  const auto dir = testing::scratch_dir("mismatch");
  const std::string fam = testing::family_file("constant_E").string();
  REQUIRE(cli({"run", "--family", fam, "--tmax", "200", "--out", dir.string()}).code == kExitOk);
  // same output stem, different polynomial
  const auto other = dir / "other.fam";
  std::ofstream(other) << "family \"constant_E\"\nkind constant\npoly x^3 + x\ngenus 1\ntrace curve x^3 + x\n"
                          "infinity trace_zero\n";
  const auto r = cli({"run", "--family", other.string(), "--tmax", "400", "--out", dir.string(), "--resume"});
  CHECK(r.code == kExitLedgerMismatch);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("series, residue and verify") {
  const auto dir = testing::scratch_dir("subcommands");
  const std::string fam = testing::family_file("shioda_g1").string();
  const auto series = cli({"series", "--family", fam, "--tmax", "1000", "--checkpoints", "100,1000", "--out",
                           dir.string()});
  CHECK(series.code == kExitOk);
  CHECK(series.out.rfind("T,S_T,n_primes,n_skipped\n", 0) == 0);
  CHECK(count_lines(series.out) == 3);

  const auto residue = cli({"residue", "--family", fam, "--tmax", "1000", "--out", dir.string(), "--resume"});
  CHECK(residue.code == kExitOk);
  CHECK(residue.out.rfind("s,estimate,T\n", 0) == 0);
  CHECK(count_lines(residue.out) == 6);

  const auto verify = cli({"verify", "--family", fam});
  CHECK(verify.code == kExitOk);
  CHECK(verify.out.find("count_affine: PASS (all p \xE2\x89\xA4 23)") != std::string::npos);
  CHECK(verify.out.find("FAIL") == std::string::npos);
}

TEST_CASE("resumed run equals a fresh run") {
  const std::string fam = testing::family_file("multicover_ex2").string();
  const auto fresh = testing::scratch_dir("fresh");
  const auto resumed = testing::scratch_dir("resumed");
  REQUIRE(cli({"series", "--family", fam, "--tmax", "600", "--checkpoints", "step:100", "--out", fresh.string(),
               "--jobs", "2"})
              .code == kExitOk);
  REQUIRE(cli({"series", "--family", fam, "--tmax", "250", "--out", resumed.string(), "--jobs", "3"}).code ==
          kExitOk);
  REQUIRE(cli({"series", "--family", fam, "--tmax", "600", "--checkpoints", "step:100", "--out", resumed.string(),
               "--jobs", "2", "--resume"})
              .code == kExitOk);
  CHECK(slurp(fresh / "multicover_ex2.series.csv") == slurp(resumed / "multicover_ex2.series.csv"));
  CHECK(slurp(fresh / "multicover_ex2.ledger.csv") == slurp(resumed / "multicover_ex2.ledger.csv"));
}

// End-to-end checks of the command-line binary. The harness exports the
// binary path in GMSEP_CLI; without it these cases are skipped.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct CliResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

const char* cli_path() { return std::getenv("GMSEP_CLI"); }

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  return CliResult{WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("cli") {
  if (cli_path() == nullptr) {
    MESSAGE("GMSEP_CLI not set; skipping CLI cases");
    return;
  }

  SUBCASE("decide verdicts and exit codes") {
    const CliResult ok = run_cli("decide --a loss:0.6 --b loss:0.5");
    CHECK(ok.exit_code == 0);
    const auto j = nlohmann::json::parse(ok.output);
    CHECK(j["verdict"] == "all_separable");
    CHECK(j["threshold_sum"].get<double>() == doctest::Approx(1.1));

    const CliResult boundary =
        run_cli("decide --a loss:0.3,noise:0.2 --b loss:0.2,noise:0.3");
    CHECK(nlohmann::json::parse(boundary.output)["boundary"] == true);

    const CliResult b1 = run_cli("decide --a b1:0.4:x --b loss:0.9");
    const auto jb = nlohmann::json::parse(b1.output);
    CHECK(jb["verdict"] == "inseparable_exists");
    CHECK(jb["canonical_a"] == "b1_equivalent");

    CHECK(run_cli("decide --a loss:1.7 --b loss:0.1").exit_code == 2);
    CHECK(run_cli("decide --a loss:0.1").exit_code == 2);
  }

  SUBCASE("swap reports criteria") {
    const CliResult swap = run_cli("swap --r 3 --la 0.2 --lb 0.3");
    CHECK(swap.exit_code == 0);
    const auto j = nlohmann::json::parse(swap.output);
    CHECK(j["logneg"].get<double>() > 0.0);

    const auto sep = nlohmann::json::parse(
        run_cli("swap --r 3 --la 0.6 --lb 0.5").output);
    CHECK(sep["logneg"].get<double>() <= 1e-8);

    const auto zero =
        nlohmann::json::parse(run_cli("swap --r 0 --la 0 --lb 0").output);
    CHECK(zero["c"].get<double>() == 0.0);

    CHECK(run_cli("swap --r -1").exit_code == 2);
  }

  SUBCASE("sweep produces the grid in both formats") {
    const CliResult csv = run_cli("sweep --la 0:1:11 --lb 0:1:11 --r 4 --out -");
    CHECK(csv.exit_code == 0);
    int lines = 0;
    for (char c : csv.output) {
      if (c == '\n') ++lines;
    }
    CHECK(lines == 122);  // header + 121 rows

    const CliResult js = run_cli(
        "sweep --la 0:1:3 --lb 0.2 --aa 1,5,10 --r 3 --format json --out -");
    CHECK(js.exit_code == 0);
    const auto rows = nlohmann::json::parse(js.output);
    REQUIRE(rows.size() == 9);
    // Verdict constant across the amplification block for fixed losses.
    for (size_t i = 0; i < rows.size(); i += 3) {
      CHECK(rows[i]["verdict"] == rows[i + 1]["verdict"]);
      CHECK(rows[i]["verdict"] == rows[i + 2]["verdict"]);
    }
    CHECK(run_cli("sweep --out /nonexistent-dir/x.csv").exit_code == 3);
  }

  SUBCASE("sweep output is deterministic across job counts") {
    const std::string flags = "sweep --la 0:0.9:4 --lb 0:0.9:3 --aa 1,2 --r 2 --out -";
    const CliResult a = run_cli(flags + " --jobs 1");
    const CliResult b = run_cli(flags + " --jobs 4");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
  }

  SUBCASE("dual maps loss and amplification") {
    const auto dl = nlohmann::json::parse(run_cli("dual --a loss:0.5").output);
    CHECK(dl["dual"]["amp"].get<double>() == doctest::Approx(2.0));
    const auto da = nlohmann::json::parse(run_cli("dual --a amp:2").output);
    CHECK(da["dual"]["loss"].get<double>() == doctest::Approx(0.5));
    CHECK(run_cli("dual --a loss:1.0").exit_code == 2);
  }

  SUBCASE("verify passes and honors the fault hook") {
    const CliResult ok = run_cli("verify --samples 40 --jobs 4 --seed 7");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("verification passed") != std::string::npos);

    const CliResult again = run_cli("verify --samples 40 --jobs 2 --seed 7");
    CHECK(again.output == ok.output);

    const CliResult fault = run_cli("verify --samples 5 --inject-fault");
    CHECK(fault.exit_code == 1);
    CHECK(fault.output.find("FAIL injected_fault") != std::string::npos);
  }
}

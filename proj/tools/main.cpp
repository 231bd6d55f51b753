// Command-line front end: decide channel pairs, simulate swaps, sweep
// parameter grids, inspect dual channels, and run the verification sweeps.
// Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 I/O error.

#include "gmsep/decision.hpp"
#include "gmsep/errors.hpp"
#include "gmsep/serialize.hpp"
#include "gmsep/swapping.hpp"
#include "gmsep/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// "start:stop:count" (inclusive linspace), a comma list, or a single value.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' ||
        count < 1 || !in.eof()) {
      throw std::invalid_argument("bad grid '" + text +
                                  "' (want start:stop:count)");
    }
    for (int i = 0; i < count; ++i) {
      out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    }
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) {
      throw std::invalid_argument("bad grid value '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty grid '" + text + "'");
  return out;
}

struct SpecPair {
  gmsep::ChannelSpec a;
  gmsep::ChannelSpec b;
};

SpecPair load_specs(const std::string& inline_a, const std::string& inline_b,
                    const std::string& spec_file, bool need_b) {
  if (!spec_file.empty()) {
    if (!inline_a.empty() || !inline_b.empty()) {
      throw std::invalid_argument("give either --spec-file or inline specs");
    }
    std::ifstream in(spec_file);
    if (!in) throw IoError("cannot open spec file '" + spec_file + "'");
    json j;
    in >> j;
    if (!j.contains("a") || (need_b && !j.contains("b"))) {
      throw std::invalid_argument("spec file needs keys 'a'" +
                                  std::string(need_b ? " and 'b'" : ""));
    }
    SpecPair out;
    out.a = gmsep::spec_from_json(j["a"]);
    if (j.contains("b")) out.b = gmsep::spec_from_json(j["b"]);
    return out;
  }
  SpecPair out;
  out.a = gmsep::parse_inline_spec(inline_a);
  out.b = gmsep::parse_inline_spec(inline_b);
  return out;
}

int cmd_decide(const SpecPair& specs) {
  const gmsep::DecisionReport report =
      gmsep::all_measurements_separable(specs.a, specs.b);
  print_json(gmsep::decision_report_to_json(report));
  return kExitOk;
}

int cmd_swap(const gmsep::SwapParams& params) {
  const gmsep::SwapResult result = gmsep::simulate_swap(params);
  print_json(gmsep::swap_result_to_json(params, result));
  return kExitOk;
}

int cmd_sweep(const gmsep::ScanGrid& grid, const std::string& out_path,
              const std::string& format, int jobs) {
  const auto rows = gmsep::threshold_scan(grid, jobs);
  std::ostringstream body;
  if (format == "csv") {
    gmsep::write_scan_csv(body, rows);
  } else {
    body << gmsep::scan_rows_to_json(rows).dump(2) << "\n";
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << body.str();
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open output path '" + out_path + "'");
  out << body.str();
  if (!out.good()) throw IoError("write failed for '" + out_path + "'");
  return kExitOk;
}

int cmd_dual(const gmsep::ChannelSpec& spec, bool check_bell) {
  const gmsep::CanonicalForm cf = gmsep::to_amp_then_loss(spec);
  if (cf.kind == gmsep::CanonicalForm::Kind::entanglement_breaking) {
    throw gmsep::UnsupportedChannelError(
        "entanglement-breaking channel reaches full loss; no finite dual");
  }
  const double a = cf.kind == gmsep::CanonicalForm::Kind::amp_then_loss ? cf.amp : 1.0;
  const double l = cf.kind == gmsep::CanonicalForm::Kind::amp_then_loss ? cf.loss : 0.0;
  if (l >= 1.0) {
    throw gmsep::UnsupportedChannelError("full loss has no finite dual");
  }
  json j;
  j["canonical"] = {{"kind", gmsep::to_string(cf.kind)},
                    {"a_prime", gmsep::round_sig(a)},
                    {"l_prime", gmsep::round_sig(l)}};
  j["dual"] = {{"amp", gmsep::round_sig(1.0 / (1.0 - l))},
               {"loss", gmsep::round_sig(1.0 - 1.0 / a)}};
  if (check_bell) {
    json trend = json::array();
    for (double r_reg : {2.0, 3.0, 4.0, 5.0, 6.0}) {
      const gmsep::DualPovmResult res =
          gmsep::dual_povm_check(gmsep::cv_bell(), spec, spec, r_reg);
      json row = gmsep::dual_povm_result_to_json(res);
      row["r_reg"] = gmsep::round_sig(r_reg);
      trend.push_back(std::move(row));
    }
    j["bell_check"] = std::move(trend);
  }
  print_json(j);
  return kExitOk;
}

int cmd_verify(const gmsep::VerifyOptions& options) {
  const auto results = gmsep::run_verification(options);
  int failed = 0;
  for (const auto& suite : results) {
    std::cout << (suite.passed ? "PASS " : "FAIL ") << suite.name << " ("
              << suite.checks << " checks";
    if (suite.failures > 0) {
      std::cout << ", " << suite.failures << " failures";
    }
    std::cout << ")";
    if (!suite.passed && !suite.detail.empty()) {
      std::cout << " first: " << suite.detail;
    }
    std::cout << "\n";
    if (!suite.passed) ++failed;
  }
  std::cout << (failed == 0 ? "verification passed" : "verification FAILED")
            << " (" << results.size() - failed << "/" << results.size()
            << " suites)\n";
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Separability of two-mode Gaussian measurements behind single-mode "
      "Gaussian error channels: decision procedure, entanglement-swapping "
      "simulation, and dual-channel checks"};
  app.require_subcommand(1);

  std::string inline_a, inline_b, spec_file;
  auto* decide = app.add_subcommand(
      "decide", "Decide whether all effective measurements are separable");
  decide->add_option("--a", inline_a, "channel spec for side A, e.g. loss:0.3,noise:0.2");
  decide->add_option("--b", inline_b, "channel spec for side B");
  decide->add_option("--spec-file", spec_file, "JSON file with keys 'a' and 'b'");

  gmsep::SwapParams swap_params{3.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  auto* swap = app.add_subcommand("swap", "Simulate one entanglement swap");
  swap->add_option("--r", swap_params.r, "resource squeezing")->capture_default_str();
  swap->add_option("--la", swap_params.l_a, "loss on side A")->capture_default_str();
  swap->add_option("--lb", swap_params.l_b, "loss on side B")->capture_default_str();
  swap->add_option("--aa", swap_params.a_a, "amplification on side A")->capture_default_str();
  swap->add_option("--ab", swap_params.a_b, "amplification on side B")->capture_default_str();
  swap->add_option("--na", swap_params.noise_a, "added noise on side A")->capture_default_str();
  swap->add_option("--nb", swap_params.noise_b, "added noise on side B")->capture_default_str();

  std::string la_grid = "0:1:11", lb_grid = "0:1:11", aa_grid = "1",
              ab_grid = "1", na_grid = "0", nb_grid = "0";
  double sweep_r = 4.0;
  std::string out_path, format = "csv";
  int jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Scan a parameter grid");
  sweep->add_option("--la", la_grid, "l_A grid: start:stop:count or comma list")
      ->capture_default_str();
  sweep->add_option("--lb", lb_grid, "l_B grid")->capture_default_str();
  sweep->add_option("--aa", aa_grid, "a_A grid")->capture_default_str();
  sweep->add_option("--ab", ab_grid, "a_B grid")->capture_default_str();
  sweep->add_option("--na", na_grid, "noise_A grid")->capture_default_str();
  sweep->add_option("--nb", nb_grid, "noise_B grid")->capture_default_str();
  sweep->add_option("--r", sweep_r, "resource squeezing")->capture_default_str();
  sweep->add_option("--out", out_path, "output path ('-' for stdout)");
  sweep->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  bool check_bell = false;
  auto* dual_cmd = app.add_subcommand("dual", "Dual channel of a spec");
  dual_cmd->add_option("--a", inline_a, "channel spec");
  dual_cmd->add_option("--spec-file", spec_file, "JSON file with key 'a'");
  dual_cmd->add_flag("--check-bell", check_bell,
                     "PPT-check the dual-mapped CV Bell element over r_reg");

  gmsep::VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Run the verification sweeps");
  verify->add_option("--seed", verify_options.seed, "RNG seed")->capture_default_str();
  verify->add_option("--samples", verify_options.samples, "random draws per suite")
      ->capture_default_str();
  verify->add_option("--jobs", verify_options.jobs, "worker threads")
      ->capture_default_str();
  verify->add_flag("--inject-fault", verify_options.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (decide->parsed()) {
      if (spec_file.empty() &&
          (decide->count("--a") == 0 || decide->count("--b") == 0)) {
        throw std::invalid_argument("decide needs --a and --b (or --spec-file)");
      }
      return cmd_decide(load_specs(inline_a, inline_b, spec_file, true));
    }
    if (swap->parsed()) {
      return cmd_swap(swap_params);
    }
    if (sweep->parsed()) {
      gmsep::ScanGrid grid;
      grid.l_a = parse_grid(la_grid);
      grid.l_b = parse_grid(lb_grid);
      grid.a_a = parse_grid(aa_grid);
      grid.a_b = parse_grid(ab_grid);
      grid.noise_a = parse_grid(na_grid);
      grid.noise_b = parse_grid(nb_grid);
      grid.r = sweep_r;
      return cmd_sweep(grid, out_path, format, jobs);
    }
    if (dual_cmd->parsed()) {
      if (spec_file.empty() && dual_cmd->count("--a") == 0) {
        throw std::invalid_argument("dual needs --a (or --spec-file)");
      }
      return cmd_dual(load_specs(inline_a, "", spec_file, false).a, check_bell);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_options);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

#include "gmsep/verify.hpp"

#include "gmsep/channels.hpp"
#include "gmsep/criteria.hpp"
#include "gmsep/decision.hpp"
#include "gmsep/parallel.hpp"
#include "gmsep/serialize.hpp"
#include "gmsep/swapping.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>
#include <vector>

namespace gmsep {

namespace {

// Accumulates check/failure counts across workers; keeps the first failure
// message for the report.
class Tally {
 public:
  void check(bool ok, const std::string& detail) {
    ++checks_;
    if (ok) return;
    ++failures_;
    std::lock_guard<std::mutex> lock(mutex_);
    if (first_.empty()) first_ = detail;
  }

  SuiteResult finish(const std::string& name) const {
    return SuiteResult{name, failures_ == 0, checks_.load(), failures_.load(),
                       first_};
  }

 private:
  std::atomic<int> checks_{0};
  std::atomic<int> failures_{0};
  std::mutex mutex_;
  std::string first_;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

double frobenius_gap(const GaussianChannel& a, const GaussianChannel& b) {
  return std::max((a.X - b.X).norm(), (a.Y - b.Y).norm());
}

// Round-trip identities: every reduced (a', l') pair must rebuild the exact
// composite map, and the entanglement-breaking short-circuit must fire
// exactly on l + n >= 1 (resp. n >= 1). Also checks dual involution.
SuiteResult reparameterization_suite(const VerifyOptions& opt) {
  Tally tally;
  const auto roundtrip = [&tally](const ChannelSpec& spec, bool expect_eb,
                                  const std::string& label) {
    const CanonicalForm cf = to_amp_then_loss(spec);
    const bool got_eb = cf.kind == CanonicalForm::Kind::entanglement_breaking;
    tally.check(got_eb == expect_eb, label + ": EB flag mismatch");
    if (got_eb || cf.kind == CanonicalForm::Kind::identity) return;
    const GaussianChannel rebuilt = compose(loss(cf.loss), amp(cf.amp));
    const double gap = frobenius_gap(rebuilt, channel_from_spec(spec));
    tally.check(gap <= 1e-12,
                label + ": round-trip gap " + format_sig(gap));
  };

  const auto ls = linspace(0.0, 0.95, 20);
  const auto ns = linspace(0.0, 1.2, 20);
  for (double l : ls) {
    for (double n : ns) {
      ChannelSpec spec{{PrimitiveOp::loss(l), PrimitiveOp::noise(n)}};
      roundtrip(spec, l + n >= 1.0 - 1e-12,
                "loss(" + format_sig(l) + ")+noise(" + format_sig(n) + ")");
    }
  }
  const auto as = linspace(1.0, 10.0, 20);
  for (double a : as) {
    for (double n : ns) {
      ChannelSpec spec{{PrimitiveOp::amp(a), PrimitiveOp::noise(n)}};
      roundtrip(spec, n >= 1.0 - 1e-12,
                "amp(" + format_sig(a) + ")+noise(" + format_sig(n) + ")");
    }
  }
  for (double n : linspace(0.0, 1.5, 40)) {
    roundtrip(ChannelSpec{{PrimitiveOp::noise(n)}}, n >= 1.0 - 1e-12,
              "noise(" + format_sig(n) + ")");
  }
  // Dual involution on losses and amplifications.
  for (double l : linspace(0.0, 0.95, 20)) {
    const double gap = frobenius_gap(dual(dual(loss(l))), loss(l));
    tally.check(gap <= 1e-12, "dual(dual(loss)) gap " + format_sig(gap));
  }
  for (double a : linspace(1.0, 20.0, 20)) {
    const double gap = frobenius_gap(dual(dual(amp(a))), amp(a));
    tally.check(gap <= 1e-12, "dual(dual(amp)) gap " + format_sig(gap));
  }
  (void)opt;
  return tally.finish("reparameterization_round_trip");
}

// The annihilation condition on mapped (kappa, mu) pairs must coincide with
// 1/a_a + 1/a_b <= 1 on a dense grid, boundary products included.
SuiteResult annihilation_equivalence_suite(const VerifyOptions& opt) {
  Tally tally;
  const std::vector<double> amps{1.25, 4.0 / 3.0, 1.5, 2.0, 2.5,
                                 3.0,  4.0,       5.0, 6.0, 10.0};
  const auto losses = linspace(0.0, 0.9, 10);
  std::vector<std::pair<double, double>> sides;
  for (double a : amps) {
    for (double l : losses) sides.emplace_back(a, l);
  }
  parallel_for(sides.size() * sides.size(), opt.jobs, [&](std::size_t idx) {
    const auto& [aa, la] = sides[idx / sides.size()];
    const auto& [ab, lb] = sides[idx % sides.size()];
    const bool fz = fz_annihilates(amp_loss_to_kappa_mu(aa, la),
                                   amp_loss_to_kappa_mu(ab, lb));
    const bool direct = 1.0 / aa + 1.0 / ab <= 1.0 + 1e-12;
    tally.check(fz == direct, "disagreement at a=(" + format_sig(aa) + "," +
                                  format_sig(ab) + ") l=(" + format_sig(la) +
                                  "," + format_sig(lb) + ")");
  });
  return tally.finish("annihilation_condition_equivalence");
}

SuiteResult closed_form_agreement_suite(const VerifyOptions& opt) {
  Tally tally;
  std::vector<SwapParams> draws(static_cast<size_t>(opt.samples));
  std::mt19937_64 rng(opt.seed);
  const auto uni = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  for (auto& p : draws) {
    p.r = uni(0.1, 6.0);
    p.l_a = uni(0.0, 0.95);
    p.l_b = uni(0.0, 0.95);
    p.a_a = uni(1.0, 10.0);
    p.a_b = uni(1.0, 10.0);
  }
  parallel_for(draws.size(), opt.jobs, [&](std::size_t i) {
    const SwapParams& p = draws[i];
    try {
      const SwapResult sim = simulate_swap(p);
      const StandardFormParams cf = closed_form_params(p);
      const double gap = std::max({std::abs(sim.std_form.n_a - cf.n_a),
                                   std::abs(sim.std_form.n_b - cf.n_b),
                                   std::abs(sim.std_form.c - cf.c)});
      tally.check(gap <= 1e-10, "draw " + std::to_string(i) + ": gap " +
                                    format_sig(gap) + " at r=" + format_sig(p.r));
    } catch (const std::exception& e) {
      tally.check(false, std::string("draw ") + std::to_string(i) + ": " + e.what());
    }
  });
  return tally.finish("closed_form_agreement");
}

// Decision verdict, simulated swap and dual POVM route must agree on loss
// pairs away from the threshold.
SuiteResult decision_consistency_suite(const VerifyOptions& opt) {
  Tally tally;
  const auto ls = linspace(0.0, 0.9, 7);
  std::vector<std::pair<double, double>> cells;
  for (double la : ls) {
    for (double lb : ls) {
      if (std::abs(la + lb - 1.0) <= 0.05) continue;
      cells.emplace_back(la, lb);
    }
  }
  parallel_for(cells.size(), opt.jobs, [&](std::size_t i) {
    const auto& [la, lb] = cells[i];
    try {
      const ConsistencyReport report =
          decision_consistency(ChannelSpec{{PrimitiveOp::loss(la)}},
                               ChannelSpec{{PrimitiveOp::loss(lb)}}, 5.0, 5.0);
      tally.check(report.consistent, "routes disagree at l=(" + format_sig(la) +
                                         "," + format_sig(lb) + ")");
    } catch (const std::exception& e) {
      tally.check(false, std::string("l=(") + format_sig(la) + "," +
                             format_sig(lb) + "): " + e.what());
    }
  });
  return tally.finish("decision_consistency_grid");
}

SuiteResult no_swap_suite(const VerifyOptions& opt) {
  Tally tally;
  std::vector<SwapParams> draws(static_cast<size_t>(opt.samples));
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
  const auto uni = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  for (auto& p : draws) {
    p.r = uni(0.0, 6.0);
    p.l_a = uni(0.0, 1.0);
    p.l_b = uni(0.0, 1.0);
    p.a_a = uni(1.0, 10.0);
    p.a_b = uni(1.0, 10.0);
    p.noise_a = uni(0.0, 0.5);
    p.noise_b = uni(0.0, 0.5);
  }
  parallel_for(draws.size(), opt.jobs, [&](std::size_t i) {
    try {
      const SwapResult result = product_measurement_no_swap(draws[i]);
      tally.check(result.logneg <= 1e-9,
                  "draw " + std::to_string(i) + ": product measurement left "
                  "logneg " + format_sig(result.logneg));
    } catch (const std::exception& e) {
      tally.check(false, std::string("draw ") + std::to_string(i) + ": " + e.what());
    }
  });
  return tally.finish("product_measurement_no_swap");
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  std::vector<SuiteResult> results;
  results.push_back(reparameterization_suite(options));
  results.push_back(annihilation_equivalence_suite(options));
  results.push_back(closed_form_agreement_suite(options));
  results.push_back(decision_consistency_suite(options));
  results.push_back(no_swap_suite(options));
  if (options.inject_fault) {
    results.push_back(SuiteResult{"injected_fault", false, 1, 1,
                                  "fault injection requested"});
  }
  return results;
}

}  // namespace gmsep

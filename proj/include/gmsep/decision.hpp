#pragma once

#include "gmsep/channels.hpp"
#include "gmsep/measurements.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmsep {

enum class Verdict { all_separable, inseparable_exists };

const char* to_string(Verdict v);

/// Outcome of the channel-pair decision: whether every effective two-mode
/// Gaussian measurement preceded by the channel pair is separable.
struct DecisionReport {
  Verdict verdict;
  bool boundary = false;  // |l_a' + l_b' - 1| <= 1e-12; reported separable
  CanonicalForm canonical_a;
  CanonicalForm canonical_b;
  std::optional<double> threshold_sum;  // l_a' + l_b' when both sides reduce
  std::optional<double> margin;         // threshold_sum - 1
  std::vector<std::string> rule_trace;
};

/// Decision procedure: entanglement-breaking sides short-circuit to
/// separable; single-quadrature-noise sides count as identity (l' = 0);
/// otherwise compare l_a' + l_b' against 1 (inclusive). Amplification
/// parameters never enter the verdict.
DecisionReport all_measurements_separable(const ChannelSpec& spec_a,
                                          const ChannelSpec& spec_b);

/// Covariance map V -> kappa V + mu I.
struct KappaMu {
  double kappa;
  double mu;
};

/// Entanglement annihilation test for a channel pair:
/// kappa_a mu_b + kappa_b mu_a >= (kappa_a + kappa_b)/2, inclusive.
bool fz_annihilates(const KappaMu& a, const KappaMu& b);

/// kappa = a(1-l), mu = kappa/2 + l - 1/2 for amplification-then-loss.
KappaMu amp_loss_to_kappa_mu(double a, double l);

/// Single-mode channel realizing V -> kappa V + mu I (requires CP:
/// mu >= |1-kappa|/2).
GaussianChannel kappa_mu_channel(const KappaMu& km);

struct DualPovmResult {
  bool separable;
  double margin;  // min PT symplectic eigenvalue - 1/2
  double a_star_a, l_star_a;
  double a_star_b, l_star_b;
};

/// Second-opinion route: apply the dual channels (amp 1/(1-l') then loss
/// 1 - 1/a' per side) to the regularized POVM-element state of a two-mode
/// measurement and report its PPT verdict. Entanglement-breaking sides and
/// full loss have no finite dual and throw.
DualPovmResult dual_povm_check(const MeasurementSpec& measurement,
                               const ChannelSpec& spec_a,
                               const ChannelSpec& spec_b, double r_reg);

/// Three-route cross-validation: the decision verdict, an entanglement swap
/// simulated at squeezing r, and the dual-channel POVM check at r_reg.
/// `swap_agrees` / `dual_agrees` use the detection thresholds 1e-6 (witness)
/// and 1e-8 (null); near-boundary pairs can legitimately fail the swap
/// witness at finite r.
struct ConsistencyReport {
  DecisionReport decision;
  double logneg;
  std::optional<double> duan;
  DualPovmResult dual;
  bool swap_agrees;
  bool dual_agrees;
  bool consistent;
};

ConsistencyReport decision_consistency(const ChannelSpec& spec_a,
                                       const ChannelSpec& spec_b, double r,
                                       double r_reg);

}  // namespace gmsep

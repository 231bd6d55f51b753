#include "gmsep/decision.hpp"

#include "gmsep/criteria.hpp"
#include "gmsep/errors.hpp"
#include "gmsep/serialize.hpp"
#include "gmsep/swapping.hpp"

#include <cmath>
#include <stdexcept>

namespace gmsep {

const char* to_string(Verdict v) {
  return v == Verdict::all_separable ? "all_separable" : "inseparable_exists";
}

namespace {

std::string describe_side(const char* side, const CanonicalForm& cf) {
  switch (cf.kind) {
    case CanonicalForm::Kind::entanglement_breaking:
      return std::string(side) + ": entanglement-breaking (kappa=" +
             format_sig(cf.kappa) + ", mu=" + format_sig(cf.mu) + ")";
    case CanonicalForm::Kind::b1_equivalent:
      return std::string(side) +
             ": single-quadrature noise, treated as identity (l'=0)";
    case CanonicalForm::Kind::identity:
      return std::string(side) + ": identity (l'=0)";
    case CanonicalForm::Kind::amp_then_loss:
      return std::string(side) + ": amp_then_loss a'=" + format_sig(cf.amp) +
             " l'=" + format_sig(cf.loss);
  }
  return side;
}

double effective_loss(const CanonicalForm& cf) {
  return cf.kind == CanonicalForm::Kind::amp_then_loss ? cf.loss : 0.0;
}

}  // namespace

DecisionReport all_measurements_separable(const ChannelSpec& spec_a,
                                          const ChannelSpec& spec_b) {
  DecisionReport report{Verdict::all_separable, false, to_amp_then_loss(spec_a),
                        to_amp_then_loss(spec_b), std::nullopt, std::nullopt, {}};
  report.rule_trace.push_back(describe_side("A", report.canonical_a));
  report.rule_trace.push_back(describe_side("B", report.canonical_b));

  const bool eb_a =
      report.canonical_a.kind == CanonicalForm::Kind::entanglement_breaking;
  const bool eb_b =
      report.canonical_b.kind == CanonicalForm::Kind::entanglement_breaking;
  if (eb_a || eb_b) {
    report.verdict = Verdict::all_separable;
    report.rule_trace.push_back(
        "entanglement-breaking side short-circuits: all_separable");
    return report;
  }

  const double sum = effective_loss(report.canonical_a) +
                     effective_loss(report.canonical_b);
  report.threshold_sum = sum;
  report.margin = sum - 1.0;
  report.boundary = std::abs(sum - 1.0) <= 1e-12;
  report.verdict = (sum >= 1.0 - 1e-12) ? Verdict::all_separable
                                        : Verdict::inseparable_exists;
  report.rule_trace.push_back(
      "loss threshold l_A' + l_B' = " + format_sig(sum) +
      (report.verdict == Verdict::all_separable ? " >= 1: all_separable"
                                                : " < 1: inseparable_exists") +
      (report.boundary ? " (boundary)" : ""));
  return report;
}

namespace {

void validate_kappa_mu(const KappaMu& km, const char* what) {
  if (!(km.kappa >= 0.0) || !(km.mu >= 0.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": kappa and mu must be nonnegative");
  }
  if (km.mu < std::abs(1.0 - km.kappa) / 2.0 - 1e-12) {
    throw std::invalid_argument(std::string(what) +
                                ": (kappa, mu) is not completely positive");
  }
}

}  // namespace

bool fz_annihilates(const KappaMu& a, const KappaMu& b) {
  validate_kappa_mu(a, "fz_annihilates");
  validate_kappa_mu(b, "fz_annihilates");
  const double lhs = a.kappa * b.mu + b.kappa * a.mu;
  const double rhs = (a.kappa + b.kappa) / 2.0;
  return lhs >= rhs - 1e-12 * std::max(1.0, rhs);
}

KappaMu amp_loss_to_kappa_mu(double a, double l) {
  if (!(a >= 1.0)) {
    throw std::invalid_argument("amp_loss_to_kappa_mu: a must be >= 1");
  }
  if (!(l >= 0.0 && l < 1.0)) {
    throw std::invalid_argument("amp_loss_to_kappa_mu: l must be in [0, 1)");
  }
  const double kappa = a * (1.0 - l);
  double mu = kappa / 2.0 + l - 0.5;
  if (mu < -1e-12) {
    throw std::logic_error("amp_loss_to_kappa_mu: derived mu negative");
  }
  return KappaMu{kappa, std::max(mu, 0.0)};
}

GaussianChannel kappa_mu_channel(const KappaMu& km) {
  validate_kappa_mu(km, "kappa_mu_channel");
  return make_channel(1, std::sqrt(km.kappa) * Mat::Identity(2, 2),
                      km.mu * Mat::Identity(2, 2));
}

namespace {

struct DualParams {
  double a_star;
  double l_star;
};

DualParams dual_params_for(const CanonicalForm& cf, const char* side) {
  double a = 1.0, l = 0.0;
  switch (cf.kind) {
    case CanonicalForm::Kind::entanglement_breaking:
      throw UnsupportedChannelError(
          std::string("dual_povm_check: side ") + side +
          " is entanglement-breaking; its reduction reaches full loss, which "
          "has no finite dual");
    case CanonicalForm::Kind::amp_then_loss:
      a = cf.amp;
      l = cf.loss;
      break;
    case CanonicalForm::Kind::b1_equivalent:
    case CanonicalForm::Kind::identity:
      break;  // identity: a = 1, l = 0
  }
  if (l >= 1.0) {
    throw UnsupportedChannelError(
        std::string("dual_povm_check: side ") + side +
        " reduces to full loss, which has no finite dual");
  }
  return DualParams{1.0 / (1.0 - l), 1.0 - 1.0 / a};
}

}  // namespace

DualPovmResult dual_povm_check(const MeasurementSpec& measurement,
                               const ChannelSpec& spec_a,
                               const ChannelSpec& spec_b, double r_reg) {
  if (measurement.modes() != 2) {
    throw std::invalid_argument("dual_povm_check: two-mode measurements only");
  }
  const DualParams da = dual_params_for(to_amp_then_loss(spec_a), "A");
  const DualParams db = dual_params_for(to_amp_then_loss(spec_b), "B");

  GaussianState element = povm_element_state(measurement, r_reg).state;
  element = apply_channel(amp(da.a_star), element, 0);
  element = apply_channel(loss(da.l_star), element, 0);
  element = apply_channel(amp(db.a_star), element, 1);
  element = apply_channel(loss(db.l_star), element, 1);

  const double nu = ppt_min_symplectic(element.cov);
  return DualPovmResult{nu >= 0.5 - 1e-9, nu - 0.5, da.a_star, da.l_star,
                        db.a_star, db.l_star};
}

ConsistencyReport decision_consistency(const ChannelSpec& spec_a,
                                       const ChannelSpec& spec_b, double r,
                                       double r_reg) {
  DecisionReport decision = all_measurements_separable(spec_a, spec_b);

  const auto swap_side = [](const CanonicalForm& cf, double& a, double& l) {
    switch (cf.kind) {
      case CanonicalForm::Kind::amp_then_loss:
        a = cf.amp;
        l = cf.loss;
        return;
      case CanonicalForm::Kind::identity:
      case CanonicalForm::Kind::b1_equivalent:
        a = 1.0;
        l = 0.0;
        return;
      case CanonicalForm::Kind::entanglement_breaking:
        throw UnsupportedChannelError(
            "decision_consistency: entanglement-breaking sides are outside "
            "the amp-then-loss swap parameterization");
    }
  };
  SwapParams params{r, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  swap_side(decision.canonical_a, params.a_a, params.l_a);
  swap_side(decision.canonical_b, params.a_b, params.l_b);
  const SwapResult swap = simulate_swap(params);

  const DualPovmResult dual_result =
      dual_povm_check(cv_bell(), spec_a, spec_b, r_reg);

  ConsistencyReport report{std::move(decision), swap.logneg, swap.duan,
                           dual_result,         false,       false,
                           false};
  if (report.decision.verdict == Verdict::inseparable_exists) {
    report.swap_agrees = swap.logneg > 1e-6;
    report.dual_agrees = !dual_result.separable;
  } else {
    report.swap_agrees = swap.logneg <= 1e-8;
    report.dual_agrees = dual_result.separable;
  }
  report.consistent = report.swap_agrees && report.dual_agrees;
  return report;
}

}  // namespace gmsep

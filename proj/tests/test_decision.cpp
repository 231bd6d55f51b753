#include "gmsep/decision.hpp"

#include "gmsep/criteria.hpp"
#include "gmsep/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace gmsep;

namespace {

ChannelSpec spec_loss(double l) { return ChannelSpec{{PrimitiveOp::loss(l)}}; }

ChannelSpec spec_loss_noise(double l, double n) {
  return ChannelSpec{{PrimitiveOp::loss(l), PrimitiveOp::noise(n)}};
}

ChannelSpec spec_amp_loss(double a, double l) {
  return ChannelSpec{{PrimitiveOp::amp(a), PrimitiveOp::loss(l)}};
}

bool trace_mentions(const DecisionReport& report, const std::string& needle) {
  for (const auto& line : report.rule_trace) {
    if (line.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("all_measurements_separable") {
  SUBCASE("loss pair above threshold") {
    const DecisionReport r = all_measurements_separable(spec_loss(0.6), spec_loss(0.5));
    CHECK(r.verdict == Verdict::all_separable);
    CHECK(*r.threshold_sum == doctest::Approx(1.1).epsilon(1e-12));
    CHECK_FALSE(r.boundary);
  }

  SUBCASE("amplification never matters") {
    const DecisionReport r = all_measurements_separable(spec_amp_loss(3.0, 0.4),
                                                        spec_amp_loss(2.0, 0.5));
    CHECK(r.verdict == Verdict::inseparable_exists);
    CHECK(*r.threshold_sum == doctest::Approx(0.9).epsilon(1e-12));
    for (double aa : {1.0, 2.0, 5.0, 10.0}) {
      for (double ab : {1.0, 2.0, 5.0, 10.0}) {
        const DecisionReport rr = all_measurements_separable(
            spec_amp_loss(aa, 0.4), spec_amp_loss(ab, 0.5));
        CHECK(rr.verdict == r.verdict);
        CHECK(*rr.threshold_sum == doctest::Approx(*r.threshold_sum));
      }
    }
  }

  SUBCASE("loss plus noise hits the boundary") {
    const DecisionReport r = all_measurements_separable(spec_loss_noise(0.3, 0.2),
                                                        spec_loss_noise(0.2, 0.3));
    CHECK(r.verdict == Verdict::all_separable);
    CHECK(r.boundary);
    CHECK(*r.threshold_sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("single-quadrature noise counts as identity") {
    const DecisionReport r = all_measurements_separable(
        ChannelSpec{{PrimitiveOp::b1(0.4, Quadrature::x)}}, spec_loss(0.9));
    CHECK(r.verdict == Verdict::inseparable_exists);
    CHECK(*r.threshold_sum == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(trace_mentions(r, "identity"));
  }

  SUBCASE("entanglement breaking short-circuits") {
    const DecisionReport r = all_measurements_separable(
        ChannelSpec{{PrimitiveOp::noise(1.2)}}, spec_loss(0.1));
    CHECK(r.verdict == Verdict::all_separable);
    CHECK_FALSE(r.threshold_sum.has_value());
    CHECK(trace_mentions(r, "entanglement-breaking"));
  }

  SUBCASE("symmetric in its arguments") {
    const ChannelSpec specs[] = {spec_loss(0.3), spec_loss_noise(0.4, 0.1),
                                 spec_amp_loss(2.5, 0.55),
                                 ChannelSpec{{PrimitiveOp::b1(0.2, Quadrature::p)}}};
    for (const auto& a : specs) {
      for (const auto& b : specs) {
        const DecisionReport ab = all_measurements_separable(a, b);
        const DecisionReport ba = all_measurements_separable(b, a);
        CHECK(ab.verdict == ba.verdict);
        CHECK(ab.boundary == ba.boundary);
      }
    }
  }

  SUBCASE("monotone in loss and noise") {
    Verdict last = Verdict::inseparable_exists;
    bool flipped_back = false;
    for (int i = 0; i <= 20; ++i) {
      const double l = i / 20.0;
      const Verdict v =
          all_measurements_separable(spec_loss(l), spec_loss(0.4)).verdict;
      if (last == Verdict::all_separable && v == Verdict::inseparable_exists) {
        flipped_back = true;
      }
      last = v;
    }
    CHECK_FALSE(flipped_back);
  }
}

TEST_CASE("fz_annihilates") {
  CHECK(fz_annihilates(KappaMu{1.0, 0.5}, KappaMu{1.0, 0.5}));  // boundary
  CHECK_FALSE(fz_annihilates(KappaMu{1.0, 0.0}, KappaMu{1.0, 0.0}));

  SUBCASE("matches the amplification condition at the mapped parameters") {
    const KappaMu a = amp_loss_to_kappa_mu(2.0, 0.0);
    const KappaMu b = amp_loss_to_kappa_mu(2.0, 0.0);
    CHECK(a.kappa == doctest::Approx(2.0));
    CHECK(a.mu == doctest::Approx(0.5));
    CHECK(fz_annihilates(a, b));  // 1/2 + 1/2 <= 1 at the boundary
  }

  CHECK_THROWS_AS(fz_annihilates(KappaMu{2.0, 0.1}, KappaMu{1.0, 0.0}),
                  std::invalid_argument);  // CP needs mu >= 1/2 at kappa 2
}

TEST_CASE("amp_loss_to_kappa_mu") {
  const KappaMu id = amp_loss_to_kappa_mu(1.0, 0.0);
  CHECK(id.kappa == doctest::Approx(1.0));
  CHECK(id.mu == doctest::Approx(0.0));

  const KappaMu a = amp_loss_to_kappa_mu(2.0, 0.5);
  CHECK(a.kappa == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.mu == doctest::Approx(0.5).epsilon(1e-12));

  const KappaMu b = amp_loss_to_kappa_mu(1.0, 0.5);
  CHECK(b.kappa == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.mu == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(amp_loss_to_kappa_mu(0.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(amp_loss_to_kappa_mu(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("annihilation equivalence across the two parameterizations") {
  int boundary_points = 0;
  for (double aa : {1.25, 4.0 / 3.0, 1.5, 2.0, 3.0, 4.0, 6.0}) {
    for (double ab : {1.25, 4.0 / 3.0, 1.5, 2.0, 3.0, 4.0, 6.0}) {
      for (double la : {0.0, 0.3, 0.6}) {
        for (double lb : {0.0, 0.45, 0.7}) {
          const bool fz = fz_annihilates(amp_loss_to_kappa_mu(aa, la),
                                         amp_loss_to_kappa_mu(ab, lb));
          const bool direct = 1.0 / aa + 1.0 / ab <= 1.0 + 1e-12;
          CHECK(fz == direct);
          if (std::abs(1.0 / aa + 1.0 / ab - 1.0) < 1e-12) ++boundary_points;
        }
      }
    }
  }
  CHECK(boundary_points > 0);
}

TEST_CASE("dual_povm_check") {
  SUBCASE("separable pair stays separable through the dual route") {
    const DualPovmResult r =
        dual_povm_check(cv_bell(), spec_loss(0.6), spec_loss(0.5), 5.0);
    CHECK(r.separable);
    CHECK(r.a_star_a == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(r.a_star_b == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.l_star_a == doctest::Approx(0.0));
  }

  SUBCASE("sub-threshold pair keeps an entangled element") {
    const DualPovmResult r =
        dual_povm_check(cv_bell(), spec_loss(0.4), spec_loss(0.4), 5.0);
    CHECK_FALSE(r.separable);
    CHECK(r.margin < 0.0);
  }

  SUBCASE("identity channels leave the near-ideal element entangled") {
    const DualPovmResult r3 =
        dual_povm_check(cv_bell(), ChannelSpec{}, ChannelSpec{}, 3.0);
    const DualPovmResult r5 =
        dual_povm_check(cv_bell(), ChannelSpec{}, ChannelSpec{}, 5.0);
    CHECK_FALSE(r3.separable);
    CHECK_FALSE(r5.separable);
    CHECK(r5.margin < r3.margin);  // deeper violation as the regulator grows
  }

  SUBCASE("full loss and EB sides have no finite dual") {
    CHECK_THROWS_AS(
        dual_povm_check(cv_bell(), spec_loss(1.0), spec_loss(0.2), 5.0),
        UnsupportedChannelError);
    CHECK_THROWS_AS(
        dual_povm_check(cv_bell(), ChannelSpec{{PrimitiveOp::noise(1.5)}},
                        spec_loss(0.2), 5.0),
        UnsupportedChannelError);
  }
}

TEST_CASE("decision_consistency") {
  SUBCASE("inseparable pair agrees on all three routes") {
    const ConsistencyReport r =
        decision_consistency(spec_loss(0.45), spec_loss(0.45), 5.0, 5.0);
    CHECK(r.decision.verdict == Verdict::inseparable_exists);
    CHECK(r.logneg > 1e-6);
    CHECK_FALSE(r.dual.separable);
    CHECK(r.consistent);
  }

  SUBCASE("separable pair agrees on all three routes") {
    const ConsistencyReport r =
        decision_consistency(spec_loss(0.55), spec_loss(0.5), 5.0, 5.0);
    CHECK(r.decision.verdict == Verdict::all_separable);
    CHECK(r.logneg <= 1e-8);
    CHECK(r.dual.separable);
    CHECK(r.consistent);
  }

  SUBCASE("boundary pair is separable with vanishing simulated witness") {
    const ConsistencyReport r =
        decision_consistency(spec_loss(0.5), spec_loss(0.5), 6.0, 5.0);
    CHECK(r.decision.verdict == Verdict::all_separable);
    CHECK(r.decision.boundary);
    CHECK(r.logneg <= 1e-8);
  }

  SUBCASE("noise folds through the reparameterization") {
    const ConsistencyReport r = decision_consistency(
        spec_loss_noise(0.3, 0.2), spec_loss_noise(0.2, 0.3), 5.0, 5.0);
    CHECK(r.decision.verdict == Verdict::all_separable);
    CHECK(r.decision.boundary);
    CHECK(r.logneg <= 1e-8);
  }
}

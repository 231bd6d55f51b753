#include "gmsep/swapping.hpp"

#include "gmsep/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace gmsep;

namespace {

SwapParams make_params(double r, double aa, double ab, double la, double lb,
                       double na = 0.0, double nb = 0.0) {
  return SwapParams{r, aa, ab, la, lb, na, nb};
}

}  // namespace

TEST_CASE("closed_form_params") {
  SUBCASE("no squeezing leaves an uncorrelated pair") {
    const StandardFormParams p = closed_form_params(make_params(0.0, 2.0, 1.5, 0.2, 0.1));
    CHECK(p.c == doctest::Approx(0.0));
    CHECK(p.n_a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.n_b == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("ideal channels match conditioning") {
    const SwapParams p = make_params(1.0, 1.0, 1.0, 0.0, 0.0);
    const SwapResult sim = simulate_swap(p);
    const StandardFormParams cf = closed_form_params(p);
    CHECK(std::abs(sim.std_form.n_a - cf.n_a) < 1e-10);
    CHECK(std::abs(sim.std_form.n_b - cf.n_b) < 1e-10);
    CHECK(std::abs(sim.std_form.c - cf.c) < 1e-10);
  }

  SUBCASE("exchange symmetry swaps the marginals and fixes c") {
    const StandardFormParams ab = closed_form_params(make_params(2.0, 3.0, 1.5, 0.2, 0.4));
    const StandardFormParams ba = closed_form_params(make_params(2.0, 1.5, 3.0, 0.4, 0.2));
    CHECK(ab.n_a == doctest::Approx(ba.n_b).epsilon(1e-13));
    CHECK(ab.n_b == doctest::Approx(ba.n_a).epsilon(1e-13));
    CHECK(ab.c == doctest::Approx(ba.c).epsilon(1e-13));
  }
}

TEST_CASE("large_r_duan_limit") {
  CHECK(large_r_duan_limit(make_params(1.0, 1.0, 1.0, 0.0, 0.0)) ==
        doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(large_r_duan_limit(make_params(1.0, 1.0, 1.0, 0.5, 0.5)) ==
        doctest::Approx(0.0));
  CHECK(large_r_duan_limit(make_params(1.0, 1.0, 1.0, 0.2, 0.3)) ==
        doctest::Approx(-1.3363062).epsilon(1e-7));
  CHECK_THROWS_AS(large_r_duan_limit(make_params(1.0, 1.0, 1.0, 1.0, 0.3)),
                  std::invalid_argument);
}

TEST_CASE("simulate_swap") {
  SUBCASE("boundary loss pair leaves no entanglement") {
    const SwapResult res = simulate_swap(make_params(3.0, 1.0, 1.0, 0.5, 0.5));
    CHECK(res.logneg <= 1e-8);
  }

  SUBCASE("amplification cannot prevent swapping below threshold") {
    const SwapResult res = simulate_swap(make_params(3.0, 4.0, 7.0, 0.2, 0.3));
    CHECK(res.logneg > 0.0);
  }

  SUBCASE("above threshold the output is separable for any amplification") {
    for (double a : {1.0, 3.0, 10.0}) {
      const SwapResult res = simulate_swap(make_params(3.0, a, a, 0.6, 0.5));
      CHECK(res.logneg == 0.0);
    }
  }

  SUBCASE("closed forms agree across a random sample") {
    std::mt19937_64 rng(2024);
    const auto uni = [&rng](double lo, double hi) {
      return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    for (int i = 0; i < 50; ++i) {
      const SwapParams p = make_params(uni(0.1, 6.0), uni(1.0, 10.0),
                                       uni(1.0, 10.0), uni(0.0, 0.95),
                                       uni(0.0, 0.95));
      const SwapResult res = simulate_swap(p);  // asserts agreement internally
      REQUIRE(res.closed_form.has_value());
      CHECK(std::abs(res.std_form.n_a - res.closed_form->n_a) <= 1e-10);
      CHECK(std::abs(res.std_form.n_b - res.closed_form->n_b) <= 1e-10);
      CHECK(std::abs(res.std_form.c - res.closed_form->c) <= 1e-10);
    }
  }

  SUBCASE("noise folds into the loss budget") {
    const SwapResult res =
        simulate_swap(make_params(4.0, 1.0, 1.0, 0.3, 0.3, 0.2, 0.2));
    CHECK(res.eta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.logneg <= 1e-8);
    const SwapResult on = simulate_swap(make_params(4.0, 1.0, 1.0, 0.3, 0.3, 0.1, 0.1));
    CHECK(on.logneg > 1e-6);
  }

  SUBCASE("entanglement-breaking sides simulate through the raw composite") {
    const SwapResult res =
        simulate_swap(make_params(3.0, 2.0, 2.0, 0.4, 0.4, 0.7, 0.7));
    CHECK(res.logneg == 0.0);
    REQUIRE(res.closed_form.has_value());
    CHECK(std::abs(res.std_form.n_a - res.closed_form->n_a) <= 1e-10);
  }

  SUBCASE("full loss on one arm wipes the correlation") {
    const SwapResult res = simulate_swap(make_params(3.0, 1.0, 1.0, 0.3, 1.0));
    CHECK(res.std_form.c == doctest::Approx(0.0));
    CHECK(res.logneg == 0.0);
  }

  SUBCASE("monotone in the squeezing") {
    for (const auto& [la, lb, a] :
         {std::tuple{0.2, 0.3, 1.0}, std::tuple{0.45, 0.45, 5.0}}) {
      double last = -1.0;
      for (double r = 0.5; r <= 5.0; r += 0.5) {
        const double ln = simulate_swap(make_params(r, a, a, la, lb)).logneg;
        CHECK(ln >= last - 1e-12);
        last = ln;
      }
    }
  }

  SUBCASE("duan degenerate at r=0, defined otherwise") {
    CHECK_FALSE(simulate_swap(make_params(0.0, 1.0, 1.0, 0.2, 0.2)).duan.has_value());
    CHECK(simulate_swap(make_params(2.0, 1.0, 1.0, 0.2, 0.2)).duan.has_value());
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(simulate_swap(make_params(-0.1, 1, 1, 0, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_swap(make_params(12.5, 1, 1, 0, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_swap(make_params(1, 0.5, 1, 0, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_swap(make_params(1, 1, 1, 1.2, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_swap(make_params(1, 1, 1, 0, 0, -0.1, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("product_measurement_no_swap") {
  CHECK(product_measurement_no_swap(make_params(3.0, 1.0, 1.0, 0.0, 0.0)).logneg <=
        1e-9);
  CHECK(product_measurement_no_swap(make_params(5.0, 1.0, 1.0, 0.1, 0.1)).logneg <=
        1e-9);
  CHECK(product_measurement_no_swap(make_params(0.0, 1.0, 1.0, 0.0, 0.0)).logneg <=
        1e-9);
  CHECK_FALSE(
      product_measurement_no_swap(make_params(3.0, 1.0, 1.0, 0.0, 0.0))
          .closed_form.has_value());
}

TEST_CASE("threshold_scan") {
  SUBCASE("empty-dimension grid gives an empty table") {
    ScanGrid grid;
    grid.l_a.clear();
    CHECK(threshold_scan(grid).empty());
  }

  SUBCASE("loss grid separates exactly along the threshold band") {
    ScanGrid grid;
    grid.l_a.clear();
    grid.l_b.clear();
    for (int i = 0; i <= 10; ++i) {
      grid.l_a.push_back(i / 10.0);
      grid.l_b.push_back(i / 10.0);
    }
    grid.r = 4.0;
    const auto rows = threshold_scan(grid, 2);
    REQUIRE(rows.size() == 121);
    for (size_t idx = 0; idx < rows.size(); ++idx) {
      const int i = static_cast<int>(idx) / 11;
      const int j = static_cast<int>(idx) % 11;
      CHECK(rows[idx].params.l_a == doctest::Approx(i / 10.0));
      CHECK(rows[idx].params.l_b == doctest::Approx(j / 10.0));
      if (i + j <= 9) {
        CHECK(rows[idx].logneg > 1e-6);
        CHECK(rows[idx].verdict == Verdict::inseparable_exists);
      } else {
        CHECK(rows[idx].logneg <= 1e-8);
        CHECK(rows[idx].verdict == Verdict::all_separable);
      }
    }
  }

  SUBCASE("verdicts ignore amplification for fixed losses") {
    ScanGrid grid;
    grid.l_a = {0.2, 0.5};
    grid.l_b = {0.3};
    grid.a_a = {1.0, 5.0, 10.0};
    grid.r = 3.0;
    const auto rows = threshold_scan(grid);
    REQUIRE(rows.size() == 6);
    for (size_t i = 0; i < rows.size(); i += 3) {
      CHECK(rows[i].verdict == rows[i + 1].verdict);
      CHECK(rows[i].verdict == rows[i + 2].verdict);
    }
  }

  SUBCASE("jobs do not change the table") {
    ScanGrid grid;
    grid.l_a = {0.1, 0.4, 0.7};
    grid.l_b = {0.2, 0.6};
    grid.a_a = {1.0, 2.0};
    grid.r = 2.0;
    const auto one = threshold_scan(grid, 1);
    const auto many = threshold_scan(grid, 4);
    REQUIRE(one.size() == many.size());
    std::ostringstream s1, s2;
    write_scan_csv(s1, one);
    write_scan_csv(s2, many);
    CHECK(s1.str() == s2.str());
  }

  SUBCASE("csv has the fixed column header and row count") {
    ScanGrid grid;
    grid.l_a = {0.0, 1.0};
    grid.r = 1.0;
    std::ostringstream out;
    write_scan_csv(out, threshold_scan(grid));
    const std::string text = out.str();
    CHECK(text.rfind("l_A,l_B,a_A,a_B,n_A_noise,n_B_noise,r,verdict,"
                     "threshold_sum,duan,duan_limit,logneg\n", 0) == 0);
    int lines = 0;
    for (char c : text) {
      if (c == '\n') ++lines;
    }
    CHECK(lines == 3);  // header + 2 rows
  }
}

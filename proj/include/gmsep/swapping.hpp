#pragma once

#include "gmsep/criteria.hpp"
#include "gmsep/decision.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace gmsep {

/// Entanglement-swapping scenario: two identical two-mode squeezed resources
/// at squeezing r; the jointly measured mode of each pair passes through
/// amplification a, loss l and optional added noise (the noise is folded
/// into an equivalent amplification-then-loss pair before simulation).
struct SwapParams {
  double r;
  double a_a = 1.0;
  double a_b = 1.0;
  double l_a = 0.0;
  double l_b = 0.0;
  double noise_a = 0.0;
  double noise_b = 0.0;
};

struct SwapResult {
  Mat cov_out;  // 4x4 covariance of the retained pair
  StandardFormParams std_form;
  std::optional<double> duan;  // absent when a marginal is at the vacuum floor
  double logneg;
  std::optional<StandardFormParams> closed_form;  // absent for product measurements
  double kappa_a;
  double kappa_b;
  double eta;  // 1 - l_a_eff - l_b_eff with noise folded into the losses
};

/// Closed-form post-measurement standard-form parameters for the swap with a
/// CV Bell measurement, in terms of kappa_a = a_a(1-l_a), kappa_b, eta and r.
StandardFormParams closed_form_params(const SwapParams& p);

/// Limiting variance-criterion value -2 eta / sqrt(kappa_a kappa_b) as the
/// resource squeezing grows.
double large_r_duan_limit(const SwapParams& p);

/// Full covariance simulation: resource pair, channels, CV Bell conditioning,
/// standard-form extraction, criteria. Asserts agreement with the closed
/// forms entrywise.
SwapResult simulate_swap(const SwapParams& p);

/// Same pipeline with a heterodyne x heterodyne product measurement instead
/// of the CV Bell. The product measurement is separable, so the output can
/// never be entangled; asserts log-negativity <= 1e-9.
SwapResult product_measurement_no_swap(const SwapParams& p);

/// Grid of scan values; rows are produced in lexicographic order over
/// (l_a, l_b, a_a, a_b, noise_a, noise_b).
struct ScanGrid {
  std::vector<double> l_a{0.0};
  std::vector<double> l_b{0.0};
  std::vector<double> a_a{1.0};
  std::vector<double> a_b{1.0};
  std::vector<double> noise_a{0.0};
  std::vector<double> noise_b{0.0};
  double r = 5.0;
};

struct ScanRow {
  SwapParams params;
  Verdict verdict;
  bool boundary;
  double threshold_sum;  // (l_a + noise_a) + (l_b + noise_b)
  std::optional<double> duan;
  std::optional<double> duan_limit;  // absent when a kappa vanishes
  double logneg;
};

/// One row per grid point; points are independent and may be evaluated on
/// `jobs` worker threads, with the row order fixed by grid index.
std::vector<ScanRow> threshold_scan(const ScanGrid& grid, int jobs = 1);

/// CSV with the fixed column order
/// l_A,l_B,a_A,a_B,n_A_noise,n_B_noise,r,verdict,threshold_sum,duan,duan_limit,logneg.
/// Undefined duan/duan_limit cells are left empty.
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace gmsep

#include "gmsep/swapping.hpp"

#include "gmsep/errors.hpp"
#include "gmsep/parallel.hpp"
#include "gmsep/serialize.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gmsep {

namespace {

void validate_params(const SwapParams& p) {
  if (!(p.r >= 0.0)) throw std::invalid_argument("SwapParams: r must be >= 0");
  if (p.r > 12.0) {
    throw std::invalid_argument(
        "SwapParams: r > 12 rejected; cosh factors overflow double headroom");
  }
  if (!(p.a_a >= 1.0 && p.a_b >= 1.0)) {
    throw std::invalid_argument("SwapParams: amplification must be >= 1");
  }
  if (!(p.l_a >= 0.0 && p.l_a <= 1.0 && p.l_b >= 0.0 && p.l_b <= 1.0)) {
    throw std::invalid_argument("SwapParams: loss must be in [0, 1]");
  }
  if (!(p.noise_a >= 0.0 && p.noise_b >= 0.0)) {
    throw std::invalid_argument("SwapParams: noise must be >= 0");
  }
}

ChannelSpec side_spec(double a, double l, double n) {
  ChannelSpec spec;
  spec.ops.push_back(PrimitiveOp::amp(a));
  spec.ops.push_back(PrimitiveOp::loss(l));
  spec.ops.push_back(PrimitiveOp::noise(n));
  return spec;
}

// The per-side errors are reduced to amplification-then-loss before the
// simulation; entanglement-breaking sides (l + n >= 1) fall back to the raw
// composite map, which the reduction cannot represent.
GaussianState apply_side(const GaussianState& state, int mode, double a,
                         double l, double n) {
  const ChannelSpec spec = side_spec(a, l, n);
  const CanonicalForm cf = to_amp_then_loss(spec);
  switch (cf.kind) {
    case CanonicalForm::Kind::identity:
      return state;
    case CanonicalForm::Kind::amp_then_loss: {
      GaussianState out = apply_channel(amp(cf.amp), state, mode);
      return apply_channel(loss(cf.loss), out, mode);
    }
    case CanonicalForm::Kind::entanglement_breaking:
      return apply_channel(channel_from_spec(spec), state, mode);
    case CanonicalForm::Kind::b1_equivalent:
      break;  // unreachable from amp/loss/noise primitives
  }
  throw std::logic_error("apply_side: unexpected canonical form");
}

// Resource pair, per-side errors on the inner modes (1, 2), then the given
// two-mode measurement conditioning them away. Output modes are (A', B').
GaussianState swap_pipeline(const SwapParams& p, const MeasurementSpec& meas) {
  GaussianState state =
      tensor_product(two_mode_squeezed_vacuum(p.r), two_mode_squeezed_vacuum(p.r));
  state = apply_side(state, 1, p.a_a, p.l_a, p.noise_a);
  state = apply_side(state, 2, p.a_b, p.l_b, p.noise_b);
  return condition_on_measurement(state, meas, {1, 2});
}

std::optional<double> duan_or_degenerate(const StandardFormParams& std_form) {
  try {
    return duan_value(std_form);
  } catch (const DegenerateMarginalError&) {
    return std::nullopt;
  }
}

double effective_eta(const SwapParams& p) {
  return 1.0 - (p.l_a + p.noise_a) - (p.l_b + p.noise_b);
}

SwapResult finish_result(const SwapParams& p, const GaussianState& out,
                         bool with_closed_form) {
  const double scale = std::max(1.0, out.cov.cwiseAbs().maxCoeff());
  SwapResult result{
      out.cov,
      extract_standard_form(out.cov, std::max(1e-9, 1e-12 * scale)),
      std::nullopt,
      log_negativity(out.cov),
      std::nullopt,
      p.a_a * (1.0 - p.l_a),
      p.a_b * (1.0 - p.l_b),
      effective_eta(p)};
  result.duan = duan_or_degenerate(result.std_form);
  if (with_closed_form) {
    const StandardFormParams cf = closed_form_params(p);
    const double tol = 1e-10 + 1e-13 * scale;
    if (std::abs(result.std_form.n_a - cf.n_a) > tol ||
        std::abs(result.std_form.n_b - cf.n_b) > tol ||
        std::abs(result.std_form.c - cf.c) > tol) {
      throw std::logic_error(
          "simulate_swap: simulated output disagrees with the closed forms");
    }
    result.closed_form = cf;
  }
  return result;
}

}  // namespace

StandardFormParams closed_form_params(const SwapParams& p) {
  validate_params(p);
  const double ka = p.a_a * (1.0 - p.l_a);
  const double kb = p.a_b * (1.0 - p.l_b);
  const double eta = effective_eta(p);
  const double c2 = std::cosh(2.0 * p.r);
  const double c4 = std::cosh(4.0 * p.r);
  const double den = ka + kb - 2.0 * eta + (ka + kb) * c2;
  if (!(den > 0.0)) {
    throw std::invalid_argument("closed_form_params: vanishing denominator");
  }
  const double sc = std::cosh(p.r) * std::sinh(p.r);
  return StandardFormParams{
      (2.0 * ka + kb + 2.0 * (ka + kb - 2.0 * eta) * c2 + kb * c4) / (4.0 * den),
      (2.0 * kb + ka + 2.0 * (ka + kb - 2.0 * eta) * c2 + ka * c4) / (4.0 * den),
      2.0 * std::sqrt(ka * kb) * sc * sc / den};
}

double large_r_duan_limit(const SwapParams& p) {
  validate_params(p);
  const double ka = p.a_a * (1.0 - p.l_a);
  const double kb = p.a_b * (1.0 - p.l_b);
  if (!(ka > 0.0 && kb > 0.0)) {
    throw std::invalid_argument(
        "large_r_duan_limit: undefined when a kappa vanishes (full loss)");
  }
  return -2.0 * effective_eta(p) / std::sqrt(ka * kb);
}

SwapResult simulate_swap(const SwapParams& p) {
  validate_params(p);
  return finish_result(p, swap_pipeline(p, cv_bell()), true);
}

SwapResult product_measurement_no_swap(const SwapParams& p) {
  validate_params(p);
  SwapResult result = finish_result(p, swap_pipeline(p, heterodyne_all(2)), false);
  if (result.logneg > 1e-9) {
    throw std::logic_error(
        "product_measurement_no_swap: a separable measurement produced "
        "entanglement");
  }
  return result;
}

std::vector<ScanRow> threshold_scan(const ScanGrid& grid, int jobs) {
  const std::size_t count = grid.l_a.size() * grid.l_b.size() *
                            grid.a_a.size() * grid.a_b.size() *
                            grid.noise_a.size() * grid.noise_b.size();
  std::vector<ScanRow> rows(count);
  parallel_for(count, jobs, [&](std::size_t idx) {
    std::size_t rem = idx;
    const auto pick = [&rem](const std::vector<double>& v) {
      const double out = v[rem % v.size()];
      rem /= v.size();
      return out;
    };
    // Unflatten with noise_b fastest, l_a slowest.
    SwapParams p;
    p.r = grid.r;
    p.noise_b = pick(grid.noise_b);
    p.noise_a = pick(grid.noise_a);
    p.a_b = pick(grid.a_b);
    p.a_a = pick(grid.a_a);
    p.l_b = pick(grid.l_b);
    p.l_a = pick(grid.l_a);

    const DecisionReport decision = all_measurements_separable(
        side_spec(p.a_a, p.l_a, p.noise_a), side_spec(p.a_b, p.l_b, p.noise_b));
    const SwapResult sim = simulate_swap(p);

    ScanRow row{p,
                decision.verdict,
                decision.boundary,
                (p.l_a + p.noise_a) + (p.l_b + p.noise_b),
                sim.duan,
                std::nullopt,
                sim.logneg};
    if (sim.kappa_a > 0.0 && sim.kappa_b > 0.0) {
      row.duan_limit = large_r_duan_limit(p);
    }
    rows[idx] = row;
  });
  return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "l_A,l_B,a_A,a_B,n_A_noise,n_B_noise,r,verdict,threshold_sum,duan,"
         "duan_limit,logneg\n";
  for (const ScanRow& row : rows) {
    out << format_sig(row.params.l_a) << ',' << format_sig(row.params.l_b) << ','
        << format_sig(row.params.a_a) << ',' << format_sig(row.params.a_b) << ','
        << format_sig(row.params.noise_a) << ',' << format_sig(row.params.noise_b)
        << ',' << format_sig(row.params.r) << ',' << to_string(row.verdict) << ','
        << format_sig(row.threshold_sum) << ',';
    if (row.duan) out << format_sig(*row.duan);
    out << ',';
    if (row.duan_limit) out << format_sig(*row.duan_limit);
    out << ',' << format_sig(row.logneg) << '\n';
  }
}

}  // namespace gmsep

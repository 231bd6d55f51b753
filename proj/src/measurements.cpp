#include "gmsep/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gmsep {

MeasurementSpec::MeasurementSpec(SymplecticMatrix unitary_in,
                                 std::vector<ModeMeasurement> pattern_in)
    : unitary(std::move(unitary_in)), pattern(std::move(pattern_in)) {
  if (static_cast<int>(pattern.size()) != unitary.modes) {
    throw std::invalid_argument("MeasurementSpec: one pattern entry per mode");
  }
  if (measured_count() == 0) {
    throw std::invalid_argument("MeasurementSpec: at least one measured mode");
  }
}

int MeasurementSpec::measured_count() const {
  int n = 0;
  for (auto p : pattern) {
    if (p != ModeMeasurement::keep) ++n;
  }
  return n;
}

MeasurementSpec cv_bell() {
  const Mat s = phase_rotation(M_PI / 2.0, 2, 1).matrix *
                beamsplitter(0.5, 2, 0, 1).matrix;
  return MeasurementSpec(
      SymplecticMatrix(2, s),
      {ModeMeasurement::homodyne_x, ModeMeasurement::homodyne_x});
}

MeasurementSpec heterodyne_all(int modes) {
  return MeasurementSpec(
      SymplecticMatrix(modes, Mat::Identity(2 * modes, 2 * modes)),
      std::vector<ModeMeasurement>(modes, ModeMeasurement::heterodyne));
}

GaussianState condition_on_measurement(const GaussianState& state,
                                       const MeasurementSpec& spec,
                                       const std::vector<int>& target_modes) {
  if (static_cast<int>(target_modes.size()) != spec.modes()) {
    throw std::invalid_argument(
        "condition_on_measurement: one target mode per spec mode");
  }
  std::set<int> seen;
  for (int t : target_modes) {
    if (t < 0 || t >= state.modes || !seen.insert(t).second) {
      throw std::invalid_argument("condition_on_measurement: bad target modes");
    }
  }

  // Embed the spec's unitary on the targeted modes.
  const int n = 2 * state.modes;
  Mat s_emb = Mat::Identity(n, n);
  std::vector<int> q;
  for (int t : target_modes) {
    q.push_back(2 * t);
    q.push_back(2 * t + 1);
  }
  for (size_t i = 0; i < q.size(); ++i) {
    for (size_t j = 0; j < q.size(); ++j) {
      s_emb(q[i], q[j]) =
          spec.unitary.matrix(static_cast<int>(i), static_cast<int>(j));
    }
  }
  const Mat v = s_emb * state.cov * s_emb.transpose();

  // Quadrature index bookkeeping: measured modes vs everything retained.
  std::set<int> measured;
  std::vector<int> det_rows;  // detected quadratures, global indices
  for (int k = 0; k < spec.modes(); ++k) {
    const ModeMeasurement p = spec.pattern[static_cast<size_t>(k)];
    if (p == ModeMeasurement::keep) continue;
    measured.insert(target_modes[static_cast<size_t>(k)]);
    det_rows.push_back(2 * target_modes[static_cast<size_t>(k)]);
    if (p == ModeMeasurement::heterodyne) {
      det_rows.push_back(2 * target_modes[static_cast<size_t>(k)] + 1);
    }
  }
  std::vector<int> kept_rows;
  int kept_modes = 0;
  for (int m = 0; m < state.modes; ++m) {
    if (measured.count(m)) continue;
    ++kept_modes;
    kept_rows.push_back(2 * m);
    kept_rows.push_back(2 * m + 1);
  }
  if (kept_modes == 0) {
    throw std::invalid_argument(
        "condition_on_measurement: no modes left after measurement");
  }

  // Heterodyne adds a vacuum unit to the detected mode before projection.
  Mat v_noisy = v;
  for (int k = 0; k < spec.modes(); ++k) {
    if (spec.pattern[static_cast<size_t>(k)] != ModeMeasurement::heterodyne) continue;
    const int t = target_modes[static_cast<size_t>(k)];
    v_noisy(2 * t, 2 * t) += 0.5;
    v_noisy(2 * t + 1, 2 * t + 1) += 0.5;
  }

  const int nk = static_cast<int>(kept_rows.size());
  const int nd = static_cast<int>(det_rows.size());
  Mat a(nk, nk), b(nk, nd), m(nd, nd);
  for (int i = 0; i < nk; ++i) {
    for (int j = 0; j < nk; ++j) a(i, j) = v(kept_rows[i], kept_rows[j]);
    for (int j = 0; j < nd; ++j) b(i, j) = v(kept_rows[i], det_rows[j]);
  }
  for (int i = 0; i < nd; ++i) {
    for (int j = 0; j < nd; ++j) m(i, j) = v_noisy(det_rows[i], det_rows[j]);
  }

  // Schur complement with a pseudoinverse of the detected block.
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  const double cutoff = 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff());
  Mat inv_diag = Mat::Zero(nd, nd);
  for (int i = 0; i < nd; ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > cutoff) inv_diag(i, i) = 1.0 / lam;
  }
  const Mat pinv = es.eigenvectors() * inv_diag * es.eigenvectors().transpose();
  Mat out = a - b * pinv * b.transpose();
  out = ((out + out.transpose()) / 2.0).eval();
  return GaussianState(kept_modes, std::move(out));
}

PovmElementState povm_element_state(const MeasurementSpec& spec, double r_reg) {
  if (!(r_reg > 0.0)) {
    throw std::invalid_argument("povm_element_state: r_reg must be > 0");
  }
  const int m = spec.modes();
  Mat seed = Mat::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    switch (spec.pattern[static_cast<size_t>(k)]) {
      case ModeMeasurement::homodyne_x:
        seed(2 * k, 2 * k) = std::exp(-2.0 * r_reg) / 2.0;
        seed(2 * k + 1, 2 * k + 1) = std::exp(2.0 * r_reg) / 2.0;
        break;
      case ModeMeasurement::heterodyne:
        seed(2 * k, 2 * k) = 0.5;
        seed(2 * k + 1, 2 * k + 1) = 0.5;
        break;
      case ModeMeasurement::keep:
        throw std::invalid_argument(
            "povm_element_state: spec has unmeasured modes, so its elements "
            "are not states on all modes");
    }
  }
  const Mat s_inv = spec.unitary.inverse().matrix;
  return PovmElementState{GaussianState(m, s_inv * seed * s_inv.transpose()),
                          r_reg};
}

}  // namespace gmsep

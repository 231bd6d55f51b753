#pragma once

#include "gmsep/gaussian.hpp"

#include <vector>

namespace gmsep {

enum class ModeMeasurement { homodyne_x, heterodyne, keep };

/// A noiseless Gaussian measurement: a pre-measurement Gaussian unitary
/// followed by x-homodyne or heterodyne detection per mode (`keep` modes are
/// retained unmeasured). Noisy detection is modeled by composing channel
/// noise in front of an ideal spec.
struct MeasurementSpec {
  SymplecticMatrix unitary;
  std::vector<ModeMeasurement> pattern;

  MeasurementSpec(SymplecticMatrix unitary, std::vector<ModeMeasurement> pattern);

  int modes() const { return unitary.modes; }
  int measured_count() const;
};

/// Balanced beamsplitter followed by x-homodyne on mode 0 and p-homodyne on
/// mode 1 (the p readout realized as x-homodyne after a pi/2 rotation folded
/// into the unitary). Jointly reads (x_0 + x_1)/sqrt(2) and (p_1 - p_0)/sqrt(2).
MeasurementSpec cv_bell();

/// Heterodyne on every mode, no unitary.
MeasurementSpec heterodyne_all(int modes);

/// Post-measurement covariance of the unmeasured modes after applying the
/// spec's unitary on `target_modes` of `state` and detecting its non-keep
/// modes. The conditional covariance is outcome-independent: with the state
/// partitioned into kept block A, cross block B and measured block C, the
/// result is A - B_sel M^+ B_sel^T, where M collects the detected rows of C
/// (x rows for homodyne; both rows of C + I/2 for heterodyne) and ^+ is the
/// Moore-Penrose pseudoinverse (eigenvalues below 1e-12 of scale dropped).
/// Means are dropped.
GaussianState condition_on_measurement(const GaussianState& state,
                                       const MeasurementSpec& spec,
                                       const std::vector<int>& target_modes);

/// A (regularized) POVM element of the measurement represented as a pure
/// Gaussian state proportional to it: per-mode seeds (x-squeezed vacuum at
/// r_reg for homodyne, vacuum for heterodyne) transported through the
/// inverse of the spec's unitary.
struct PovmElementState {
  GaussianState state;
  double reg;  // squeezing regularizer used for the improper homodyne projectors
};

PovmElementState povm_element_state(const MeasurementSpec& spec, double r_reg);

}  // namespace gmsep

#pragma once

#include "gmsep/gaussian.hpp"

namespace gmsep {

/// Parameters of the two-mode standard form
///   [[n_a I, diag(c, -c)], [diag(c, -c), n_b I]]
/// with nonnegative n_a, n_b, c.
struct StandardFormParams {
  double n_a;
  double n_b;
  double c;
};

/// Reads (n_a, n_b, c) from a 4x4 covariance matching the standard form to
/// `tol` entrywise; throws NotStandardFormError otherwise. The sign of c is
/// normalized nonnegative (a local pi rotation on one mode, which cannot
/// change separability).
StandardFormParams extract_standard_form(const Mat& cov, double tol = 1e-9);

/// Assembles the standard-form covariance for the given parameters.
Mat standard_form_cov(const StandardFormParams& p);

/// Variance-criterion value 2 a^2 n_a + 2 n_b / a^2 - 4c - a^2 - 1/a^2 with
/// a^2 = sqrt((2 n_b - 1)/(2 n_a - 1)); negative iff entangled for states of
/// the standard form. Throws DegenerateMarginalError when a marginal sits at
/// the vacuum floor (2n <= 1), where the rescaling is singular.
double duan_value(const StandardFormParams& p);

/// Minimum symplectic eigenvalue of the partial transpose
/// diag(1,1,1,-1) cov diag(1,1,1,-1). Input must be a physical two-mode
/// covariance.
double ppt_min_symplectic(const Mat& cov);

/// True iff the partial transpose stays physical: min PT symplectic
/// eigenvalue >= 1/2 - tol. Necessary and sufficient for two one-mode parties.
bool ppt_separable(const Mat& cov, double tol = 1e-9);

/// max(0, -ln(2 nu)) for nu the minimum PT symplectic eigenvalue.
double log_negativity(const Mat& cov);

}  // namespace gmsep

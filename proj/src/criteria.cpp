#include "gmsep/criteria.hpp"

#include "gmsep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmsep {

namespace {

void check_two_mode(const Mat& cov, const char* what) {
  if (cov.rows() != 4 || cov.cols() != 4) {
    throw std::invalid_argument(std::string(what) + ": expected a 4x4 covariance");
  }
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument(std::string(what) + ": covariance not symmetric");
  }
}

}  // namespace

StandardFormParams extract_standard_form(const Mat& cov, double tol) {
  check_two_mode(cov, "extract_standard_form");
  const double n_a = (cov(0, 0) + cov(1, 1)) / 2.0;
  const double n_b = (cov(2, 2) + cov(3, 3)) / 2.0;
  double c = (cov(0, 2) - cov(1, 3)) / 2.0;
  Mat pattern = standard_form_cov(StandardFormParams{n_a, n_b, c});
  if ((cov - pattern).cwiseAbs().maxCoeff() > tol) {
    throw NotStandardFormError(
        "extract_standard_form: covariance does not match the standard-form "
        "pattern");
  }
  if (c < 0.0) c = -c;
  return StandardFormParams{n_a, n_b, c};
}

Mat standard_form_cov(const StandardFormParams& p) {
  Mat cov = Mat::Zero(4, 4);
  cov(0, 0) = cov(1, 1) = p.n_a;
  cov(2, 2) = cov(3, 3) = p.n_b;
  cov(0, 2) = cov(2, 0) = p.c;
  cov(1, 3) = cov(3, 1) = -p.c;
  return cov;
}

double duan_value(const StandardFormParams& p) {
  if (2.0 * p.n_a - 1.0 <= 1e-12 || 2.0 * p.n_b - 1.0 <= 1e-12) {
    throw DegenerateMarginalError(
        "duan_value: marginal at the vacuum floor; use the PPT test instead");
  }
  const double a2 = std::sqrt((2.0 * p.n_b - 1.0) / (2.0 * p.n_a - 1.0));
  return 2.0 * a2 * p.n_a + 2.0 * p.n_b / a2 - 4.0 * p.c - a2 - 1.0 / a2;
}

double ppt_min_symplectic(const Mat& cov) {
  check_two_mode(cov, "ppt_min_symplectic");
  detail::require_physical_cov(cov, "ppt_min_symplectic");
  Mat pt = cov;
  // Partial transpose flips the sign of p on the second mode.
  for (int i = 0; i < 4; ++i) {
    if (i == 3) continue;
    pt(i, 3) = -pt(i, 3);
    pt(3, i) = -pt(3, i);
  }
  return symplectic_eigenvalues(pt).front();
}

bool ppt_separable(const Mat& cov, double tol) {
  return ppt_min_symplectic(cov) >= 0.5 - tol;
}

double log_negativity(const Mat& cov) {
  const double nu = ppt_min_symplectic(cov);
  return std::max(0.0, -std::log(2.0 * nu));
}

}  // namespace gmsep

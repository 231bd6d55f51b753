#include "gmsep/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

namespace gmsep {

namespace {

void check_square_even(const Mat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(what) +
                                ": matrix must be square with even dimension");
  }
}

void check_symmetric(const Mat& m, const char* what) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument(std::string(what) + ": matrix not symmetric");
  }
}

}  // namespace

Mat symplectic_form(int modes) {
  if (modes < 1) throw std::invalid_argument("symplectic_form: modes must be >= 1");
  Mat omega = Mat::Zero(2 * modes, 2 * modes);
  for (int i = 0; i < modes; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  return omega;
}

SymplecticMatrix::SymplecticMatrix(int modes_in, Mat matrix_in)
    : modes(modes_in), matrix(std::move(matrix_in)) {
  if (modes < 1) throw std::invalid_argument("SymplecticMatrix: modes must be >= 1");
  if (matrix.rows() != 2 * modes || matrix.cols() != 2 * modes) {
    throw std::invalid_argument("SymplecticMatrix: dimension mismatch");
  }
  const Mat omega = symplectic_form(modes);
  const double defect = (matrix * omega * matrix.transpose() - omega).norm();
  if (defect > 1e-10) {
    throw std::invalid_argument("SymplecticMatrix: S Omega S^T != Omega, defect " +
                                std::to_string(defect));
  }
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Mat omega = symplectic_form(modes);
  return SymplecticMatrix(modes, -omega * matrix.transpose() * omega);
}

namespace detail {

void require_physical_cov(const Mat& cov, const char* context) {
  // Guard tolerance floors at 1e-8: conditioning pipelines shrink large
  // intermediate covariances, so the output's own norm understates the
  // accumulated rounding. Genuine physicality bugs overshoot this by orders
  // of magnitude.
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  const double tol = std::max(1e-8, 1e-12 * scale);
  Eigen::SelfAdjointEigenSolver<Mat> es(cov);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument(std::string(context) +
                                ": covariance not positive semidefinite");
  }
  // Symplectic spectrum needs strict positive definiteness; nudge exact-zero
  // eigenvalues off the axis is not meaningful, so guard first.
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument(std::string(context) +
                                ": covariance singular, below vacuum floor");
  }
  const auto nus = symplectic_eigenvalues(cov);
  if (nus.front() < 0.5 - tol) {
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  ": covariance violates the uncertainty bound, min "
                  "symplectic eigenvalue %.17g (tol %.3g)",
                  nus.front(), tol);
    throw std::invalid_argument(std::string(context) + detail);
  }
}

}  // namespace detail

GaussianState::GaussianState(int modes_in, Mat cov_in)
    : GaussianState(modes_in, std::move(cov_in), Vec::Zero(2 * modes_in)) {}

GaussianState::GaussianState(int modes_in, Mat cov_in, Vec mean_in)
    : modes(modes_in), cov(std::move(cov_in)), mean(std::move(mean_in)) {
  if (modes < 1) throw std::invalid_argument("GaussianState: modes must be >= 1");
  if (cov.rows() != 2 * modes || cov.cols() != 2 * modes) {
    throw std::invalid_argument("GaussianState: covariance dimension mismatch");
  }
  if (mean.size() != 2 * modes) {
    throw std::invalid_argument("GaussianState: mean dimension mismatch");
  }
  check_symmetric(cov, "GaussianState");
  cov = ((cov + cov.transpose()) / 2.0).eval();
  detail::require_physical_cov(cov, "GaussianState");
}

GaussianState vacuum_state(int modes) {
  if (modes < 1) throw std::invalid_argument("vacuum_state: modes must be >= 1");
  return GaussianState(modes, 0.5 * Mat::Identity(2 * modes, 2 * modes));
}

GaussianState two_mode_squeezed_vacuum(double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("two_mode_squeezed_vacuum: r must be >= 0");
  }
  const double ch = std::cosh(2.0 * r) / 2.0;
  const double sh = std::sinh(2.0 * r) / 2.0;
  Mat cov = Mat::Zero(4, 4);
  cov.block<2, 2>(0, 0) = ch * Mat::Identity(2, 2);
  cov.block<2, 2>(2, 2) = ch * Mat::Identity(2, 2);
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = sh;
  z(1, 1) = -sh;
  cov.block<2, 2>(0, 2) = z;
  cov.block<2, 2>(2, 0) = z;
  return GaussianState(2, cov);
}

GaussianState apply_symplectic(const GaussianState& state,
                               const SymplecticMatrix& s) {
  if (state.modes != s.modes) {
    throw std::invalid_argument("apply_symplectic: mode count mismatch");
  }
  return GaussianState(state.modes, s.matrix * state.cov * s.matrix.transpose(),
                       s.matrix * state.mean);
}

GaussianState tensor_product(const GaussianState& a, const GaussianState& b) {
  const int m = a.modes + b.modes;
  Mat cov = Mat::Zero(2 * m, 2 * m);
  cov.topLeftCorner(2 * a.modes, 2 * a.modes) = a.cov;
  cov.bottomRightCorner(2 * b.modes, 2 * b.modes) = b.cov;
  Vec mean(2 * m);
  mean << a.mean, b.mean;
  return GaussianState(m, cov, mean);
}

namespace {

void check_mode_pair(int modes, int mode_a, int mode_b, const char* what) {
  if (mode_a < 0 || mode_b < 0 || mode_a >= modes || mode_b >= modes ||
      mode_a == mode_b) {
    throw std::invalid_argument(std::string(what) + ": bad mode pair");
  }
}

}  // namespace

SymplecticMatrix beamsplitter(double reflectivity, int modes, int mode_a,
                              int mode_b) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
    throw std::invalid_argument("beamsplitter: reflectivity outside [0, 1]");
  }
  check_mode_pair(modes, mode_a, mode_b, "beamsplitter");
  const double t = std::sqrt(1.0 - reflectivity);
  const double rr = std::sqrt(reflectivity);
  Mat s = Mat::Identity(2 * modes, 2 * modes);
  for (int q = 0; q < 2; ++q) {
    const int ia = 2 * mode_a + q;
    const int ib = 2 * mode_b + q;
    s(ia, ia) = t;
    s(ia, ib) = rr;
    s(ib, ia) = -rr;
    s(ib, ib) = t;
  }
  return SymplecticMatrix(modes, s);
}

SymplecticMatrix phase_rotation(double theta, int modes, int mode) {
  if (mode < 0 || mode >= modes) {
    throw std::invalid_argument("phase_rotation: bad mode index");
  }
  Mat s = Mat::Identity(2 * modes, 2 * modes);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  s(2 * mode, 2 * mode) = c;
  s(2 * mode, 2 * mode + 1) = sn;
  s(2 * mode + 1, 2 * mode) = -sn;
  s(2 * mode + 1, 2 * mode + 1) = c;
  return SymplecticMatrix(modes, s);
}

SymplecticMatrix single_mode_squeeze(double z, int modes, int mode) {
  if (mode < 0 || mode >= modes) {
    throw std::invalid_argument("single_mode_squeeze: bad mode index");
  }
  Mat s = Mat::Identity(2 * modes, 2 * modes);
  s(2 * mode, 2 * mode) = std::exp(-z);
  s(2 * mode + 1, 2 * mode + 1) = std::exp(z);
  return SymplecticMatrix(modes, s);
}

std::vector<double> symplectic_eigenvalues(const Mat& cov) {
  check_square_even(cov, "symplectic_eigenvalues");
  check_symmetric(cov, "symplectic_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Mat> psd(cov);
  if (psd.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument(
        "symplectic_eigenvalues: matrix not positive definite");
  }
  const int m = static_cast<int>(cov.rows()) / 2;
  // i Omega V is similar to the Hermitian matrix i V^{1/2} Omega V^{1/2},
  // whose spectrum is +/- nu_k; the self-adjoint solver is convergence-safe
  // where general QR iteration can stall on rotation-like Omega V.
  const Mat sqrt_v = psd.operatorSqrt();
  const Mat antis = sqrt_v * symplectic_form(m) * sqrt_v;
  const Eigen::MatrixXcd herm =
      std::complex<double>(0.0, 1.0) * antis.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  std::vector<double> nus(m);
  for (int i = 0; i < m; ++i) nus[static_cast<size_t>(i)] = es.eigenvalues()(m + i);
  return nus;
}

bool is_physical(const Mat& cov) {
  check_square_even(cov, "is_physical");
  check_symmetric(cov, "is_physical");
  Eigen::SelfAdjointEigenSolver<Mat> psd(cov);
  if (psd.eigenvalues().minCoeff() <= 0.0) return false;
  // The 1e-10 eigenvalue tolerance is relative to the matrix scale; computed
  // symplectic eigenvalues carry backward error proportional to the norm.
  const double tol = 1e-10 * std::max(1.0, cov.cwiseAbs().maxCoeff());
  return symplectic_eigenvalues(cov).front() >= 0.5 - tol;
}

GaussianState random_pure_state(int modes, std::uint64_t seed, double z_max) {
  if (modes < 1) throw std::invalid_argument("random_pure_state: modes must be >= 1");
  if (!(z_max >= 0.0)) {
    throw std::invalid_argument("random_pure_state: z_max must be >= 0");
  }
  std::mt19937_64 rng(seed);
  // Uniform [0, 1) straight from the generator words, so the matrix is
  // reproducible independent of library distribution internals.
  const auto uni = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const double two_pi = 2.0 * M_PI;
  Mat s = Mat::Identity(2 * modes, 2 * modes);
  for (int round = 0; round < 3; ++round) {
    for (int i = 0; i < modes; ++i) {
      s = phase_rotation(two_pi * uni(), modes, i).matrix * s;
      s = single_mode_squeeze(z_max * (2.0 * uni() - 1.0), modes, i).matrix * s;
    }
    for (int i = 0; i + 1 < modes; ++i) {
      s = beamsplitter(uni(), modes, i, i + 1).matrix * s;
    }
  }
  for (int i = 0; i < modes; ++i) {
    s = phase_rotation(two_pi * uni(), modes, i).matrix * s;
  }
  return GaussianState(modes, 0.5 * s * s.transpose());
}

}  // namespace gmsep

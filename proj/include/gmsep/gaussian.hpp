#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace gmsep {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Quadrature ordering is (x1, p1, x2, p2, ...) throughout; vacuum variance
// is 1/2 per quadrature.

/// Block-diagonal antisymmetric form: m copies of [[0, 1], [-1, 0]].
Mat symplectic_form(int modes);

/// Linear transform S of the quadrature vector with S Omega S^T = Omega.
struct SymplecticMatrix {
  int modes;
  Mat matrix;  // 2m x 2m

  SymplecticMatrix(int modes, Mat matrix);

  /// Inverse via the symplectic identity, S^{-1} = -Omega S^T Omega.
  SymplecticMatrix inverse() const;
};

/// Gaussian state of `modes` modes: symmetric covariance matrix plus a mean
/// vector. Means are carried through transforms but never consulted by any
/// separability logic.
struct GaussianState {
  int modes;
  Mat cov;   // 2m x 2m, stored symmetrized
  Vec mean;  // length 2m

  GaussianState(int modes, Mat cov);
  GaussianState(int modes, Mat cov, Vec mean);
};

GaussianState vacuum_state(int modes);

/// Two-mode squeezed vacuum at squeezing r >= 0: diagonal blocks
/// (cosh 2r / 2) I, off-diagonal block (sinh 2r / 2) diag(1, -1).
GaussianState two_mode_squeezed_vacuum(double r);

GaussianState apply_symplectic(const GaussianState& state,
                               const SymplecticMatrix& s);

/// Kronecker-style product state: `a` occupies the leading modes.
GaussianState tensor_product(const GaussianState& a, const GaussianState& b);

/// Beamsplitter mixing modes (mode_a, mode_b) of `modes` total with
/// reflectivity l in [0, 1]:
///   out_a = sqrt(1-l) in_a + sqrt(l) in_b,
///   out_b = sqrt(1-l) in_b - sqrt(l) in_a,
/// identically on both quadratures.
SymplecticMatrix beamsplitter(double reflectivity, int modes, int mode_a,
                              int mode_b);

/// Phase rotation on one mode: x -> cos(t) x + sin(t) p, p -> -sin(t) x + cos(t) p.
SymplecticMatrix phase_rotation(double theta, int modes, int mode);

/// Single-mode squeezer diag(e^{-z}, e^{+z}): z > 0 squeezes x.
SymplecticMatrix single_mode_squeeze(double z, int modes, int mode);

/// Moduli of the eigenvalues of i Omega V, deduplicated from conjugate
/// pairs into m values, ascending. Requires V symmetric positive definite.
std::vector<double> symplectic_eigenvalues(const Mat& cov);

/// True iff cov is a valid quantum covariance matrix: positive definite with
/// every symplectic eigenvalue >= 1/2 - 1e-10.
bool is_physical(const Mat& cov);

/// Pure-state covariance (1/2) S S^T for S a seeded random product of
/// beamsplitters, phase rotations, and single-mode squeezers with
/// |z| <= z_max. Deterministic for a fixed seed.
GaussianState random_pure_state(int modes, std::uint64_t seed, double z_max);

namespace detail {
/// Scale-aware physicality guard used by constructors on large-norm
/// covariances, where the strict 1e-10 eigenvalue tolerance is below
/// accumulated rounding. Throws std::invalid_argument on failure.
void require_physical_cov(const Mat& cov, const char* context);
}  // namespace detail

}  // namespace gmsep

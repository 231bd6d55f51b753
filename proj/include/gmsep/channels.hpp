#pragma once

#include "gmsep/gaussian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmsep {

enum class Quadrature { x, p };

/// One primitive in an ordered channel construction. `value` holds the
/// single parameter (l, a, n, eps, theta, or z depending on kind).
struct PrimitiveOp {
  enum class Kind { loss, amp, noise, b1, rotate, squeeze };
  Kind kind;
  double value = 0.0;
  Quadrature quad = Quadrature::x;  // b1 only

  static PrimitiveOp loss(double l) { return {Kind::loss, l, Quadrature::x}; }
  static PrimitiveOp amp(double a) { return {Kind::amp, a, Quadrature::x}; }
  static PrimitiveOp noise(double n) { return {Kind::noise, n, Quadrature::x}; }
  static PrimitiveOp b1(double eps, Quadrature q) { return {Kind::b1, eps, q}; }
  static PrimitiveOp rotate(double theta) { return {Kind::rotate, theta, Quadrature::x}; }
  static PrimitiveOp squeeze(double z) { return {Kind::squeeze, z, Quadrature::x}; }
};

/// Ordered list of primitives, applied first-to-last.
struct ChannelSpec {
  std::vector<PrimitiveOp> ops;
};

/// Affine covariance map V -> X V X^T + Y. Y must be symmetric PSD and the
/// pair must satisfy complete positivity: Y + (i/2)(Omega - X Omega X^T) >= 0.
struct GaussianChannel {
  int modes;
  Mat X;
  Mat Y;
  std::optional<ChannelSpec> provenance;
};

/// Validating factory; all constructors below funnel through it.
GaussianChannel make_channel(int modes, Mat x, Mat y,
                             std::optional<ChannelSpec> provenance = std::nullopt);

GaussianChannel identity_channel();

/// V -> (1-l) V + (l/2) I, 0 <= l <= 1.
GaussianChannel loss(double l);

/// V -> a V + ((a-1)/2) I, a >= 1.
GaussianChannel amp(double a);

/// V -> V + n I, n >= 0.
GaussianChannel noise(double n);

/// Adds eps > 0 of noise to a single quadrature (rank-1 Y). eps = 0 is
/// rejected so the identity stays a distinct case in reports.
GaussianChannel b1(double eps, Quadrature quad);

GaussianChannel rotation_channel(double theta);
GaussianChannel squeeze_channel(double z);

/// Composite applying `first` then `second`: X = X2 X1, Y = X2 Y1 X2^T + Y2.
GaussianChannel compose(const GaussianChannel& second,
                        const GaussianChannel& first);

GaussianChannel channel_from_spec(const ChannelSpec& spec);

/// Embeds the channel on the listed state modes (one target per channel mode).
GaussianState apply_channel(const GaussianChannel& channel,
                            const GaussianState& state,
                            const std::vector<int>& target_modes);
GaussianState apply_channel(const GaussianChannel& channel,
                            const GaussianState& state, int target_mode);

/// For X = x I, Y = y I: true iff y >= (1 + x^2)/2 - 1e-12 (boundary counts
/// as entanglement-breaking). Exact single-quadrature-noise channels report
/// false; anything else is unsupported.
bool is_entanglement_breaking(const GaussianChannel& channel);

/// Dual (adjoint) channel up to normalization, for loss/amp compositions
/// identified by provenance: loss(l) <-> amp(1/(1-l)), amp(a) <-> loss(1-1/a),
/// with the composition order reversed. Full loss has no finite dual.
GaussianChannel dual(const GaussianChannel& channel);

enum class HolevoType { A, B1, B2, C1, C2, D };

const char* to_string(HolevoType t);

/// Classification by det X and the rank of Y. det X = 0 -> A; det X = 1 with
/// Y = 0 or full-rank Y -> B2 (identity reported as B2 with n = 0), rank-1
/// Y -> B1; 0 < det X < 1 -> C1; det X > 1 -> C2; det X < 0 -> D.
HolevoType classify(const GaussianChannel& channel);
HolevoType classify(const ChannelSpec& spec);

/// Canonical reduction of a single-mode channel, up to unitary equivalence.
struct CanonicalForm {
  enum class Kind { amp_then_loss, b1_equivalent, entanglement_breaking, identity };
  Kind kind;
  double amp = 1.0;     // amp_then_loss
  double loss = 0.0;    // amp_then_loss
  double b1_eps = 0.0;  // b1_equivalent: the composite's single-quadrature noise
  double kappa = 1.0;   // effective V -> kappa V + mu I parameters, when defined
  double mu = 0.0;
};

const char* to_string(CanonicalForm::Kind k);

/// Reduces a primitive composition to amplification-followed-by-loss up to
/// unitary equivalence, or reports it entanglement-breaking / single-quadrature
/// noise / identity. Supports composites whose X is a scaled rotation with
/// isotropic Y, plus symplectic-X composites (rotations and squeezes around
/// single-quadrature noise or isotropizable noise). Everything else throws
/// UnsupportedChannelError.
CanonicalForm to_amp_then_loss(const ChannelSpec& spec);

}  // namespace gmsep

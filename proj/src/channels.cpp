#include "gmsep/channels.hpp"

#include "gmsep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gmsep {

namespace {

// True if M is within tolerance of `scale` * I; reports the best scale.
bool scaled_identity(const Mat& m, double& scale) {
  scale = (m(0, 0) + m(1, 1)) / 2.0;
  const double tol = 1e-10 * std::max(1.0, std::abs(scale));
  return std::abs(m(0, 0) - scale) <= tol && std::abs(m(1, 1) - scale) <= tol &&
         std::abs(m(0, 1)) <= tol && std::abs(m(1, 0)) <= tol;
}

void check_complete_positivity(int modes, const Mat& x, const Mat& y) {
  const Mat omega = symplectic_form(modes);
  const Mat antis = omega - x * omega * x.transpose();
  Eigen::MatrixXcd herm =
      y.cast<std::complex<double>>() +
      std::complex<double>(0.0, 0.5) * antis.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw std::invalid_argument(
        "GaussianChannel: (X, Y) violates complete positivity");
  }
}

ChannelSpec concat(const std::optional<ChannelSpec>& a,
                   const std::optional<ChannelSpec>& b) {
  ChannelSpec out;
  if (a) out.ops = a->ops;
  if (b) out.ops.insert(out.ops.end(), b->ops.begin(), b->ops.end());
  return out;
}

}  // namespace

GaussianChannel make_channel(int modes, Mat x, Mat y,
                             std::optional<ChannelSpec> provenance) {
  if (modes < 1) throw std::invalid_argument("make_channel: modes must be >= 1");
  if (x.rows() != 2 * modes || x.cols() != 2 * modes || y.rows() != 2 * modes ||
      y.cols() != 2 * modes) {
    throw std::invalid_argument("make_channel: dimension mismatch");
  }
  const double yscale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if ((y - y.transpose()).cwiseAbs().maxCoeff() > 1e-12 * yscale) {
    throw std::invalid_argument("make_channel: Y not symmetric");
  }
  y = ((y + y.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(y);
  if (es.eigenvalues().minCoeff() < -1e-10 * yscale) {
    throw std::invalid_argument("make_channel: Y not positive semidefinite");
  }
  check_complete_positivity(modes, x, y);
  return GaussianChannel{modes, std::move(x), std::move(y), std::move(provenance)};
}

GaussianChannel identity_channel() {
  return make_channel(1, Mat::Identity(2, 2), Mat::Zero(2, 2), ChannelSpec{});
}

GaussianChannel loss(double l) {
  if (!(l >= 0.0 && l <= 1.0)) {
    throw std::invalid_argument("loss: parameter outside [0, 1]");
  }
  return make_channel(1, std::sqrt(1.0 - l) * Mat::Identity(2, 2),
                      (l / 2.0) * Mat::Identity(2, 2),
                      ChannelSpec{{PrimitiveOp::loss(l)}});
}

GaussianChannel amp(double a) {
  if (!(a >= 1.0)) throw std::invalid_argument("amp: parameter must be >= 1");
  return make_channel(1, std::sqrt(a) * Mat::Identity(2, 2),
                      ((a - 1.0) / 2.0) * Mat::Identity(2, 2),
                      ChannelSpec{{PrimitiveOp::amp(a)}});
}

GaussianChannel noise(double n) {
  if (!(n >= 0.0)) throw std::invalid_argument("noise: parameter must be >= 0");
  return make_channel(1, Mat::Identity(2, 2), n * Mat::Identity(2, 2),
                      ChannelSpec{{PrimitiveOp::noise(n)}});
}

GaussianChannel b1(double eps, Quadrature quad) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("b1: eps must be > 0 (use the identity instead)");
  }
  Mat y = Mat::Zero(2, 2);
  y(quad == Quadrature::x ? 0 : 1, quad == Quadrature::x ? 0 : 1) = eps;
  return make_channel(1, Mat::Identity(2, 2), y,
                      ChannelSpec{{PrimitiveOp::b1(eps, quad)}});
}

GaussianChannel rotation_channel(double theta) {
  return make_channel(1, phase_rotation(theta, 1, 0).matrix, Mat::Zero(2, 2),
                      ChannelSpec{{PrimitiveOp::rotate(theta)}});
}

GaussianChannel squeeze_channel(double z) {
  return make_channel(1, single_mode_squeeze(z, 1, 0).matrix, Mat::Zero(2, 2),
                      ChannelSpec{{PrimitiveOp::squeeze(z)}});
}

GaussianChannel compose(const GaussianChannel& second,
                        const GaussianChannel& first) {
  if (second.modes != first.modes) {
    throw std::invalid_argument("compose: mode count mismatch");
  }
  Mat x = second.X * first.X;
  Mat y = second.X * first.Y * second.X.transpose() + second.Y;
  std::optional<ChannelSpec> prov;
  if (first.provenance && second.provenance) {
    prov = concat(first.provenance, second.provenance);
  }
  return make_channel(first.modes, std::move(x), std::move(y), std::move(prov));
}

GaussianChannel channel_from_spec(const ChannelSpec& spec) {
  GaussianChannel out = identity_channel();
  for (const PrimitiveOp& op : spec.ops) {
    switch (op.kind) {
      case PrimitiveOp::Kind::loss:
        out = compose(loss(op.value), out);
        break;
      case PrimitiveOp::Kind::amp:
        out = compose(amp(op.value), out);
        break;
      case PrimitiveOp::Kind::noise:
        out = compose(noise(op.value), out);
        break;
      case PrimitiveOp::Kind::b1:
        out = compose(b1(op.value, op.quad), out);
        break;
      case PrimitiveOp::Kind::rotate:
        out = compose(rotation_channel(op.value), out);
        break;
      case PrimitiveOp::Kind::squeeze:
        out = compose(squeeze_channel(op.value), out);
        break;
    }
  }
  return out;
}

GaussianState apply_channel(const GaussianChannel& channel,
                            const GaussianState& state,
                            const std::vector<int>& target_modes) {
  if (static_cast<int>(target_modes.size()) != channel.modes) {
    throw std::invalid_argument("apply_channel: one target mode per channel mode");
  }
  for (size_t i = 0; i < target_modes.size(); ++i) {
    const int t = target_modes[i];
    if (t < 0 || t >= state.modes) {
      throw std::invalid_argument("apply_channel: target mode out of range");
    }
    for (size_t j = i + 1; j < target_modes.size(); ++j) {
      if (target_modes[j] == t) {
        throw std::invalid_argument("apply_channel: duplicate target mode");
      }
    }
  }
  std::vector<int> q;
  q.reserve(2 * target_modes.size());
  for (int t : target_modes) {
    q.push_back(2 * t);
    q.push_back(2 * t + 1);
  }
  const int n = 2 * state.modes;
  Mat xf = Mat::Identity(n, n);
  Mat yf = Mat::Zero(n, n);
  for (size_t i = 0; i < q.size(); ++i) {
    for (size_t j = 0; j < q.size(); ++j) {
      xf(q[i], q[j]) = channel.X(static_cast<int>(i), static_cast<int>(j));
      yf(q[i], q[j]) = channel.Y(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return GaussianState(state.modes, xf * state.cov * xf.transpose() + yf,
                       xf * state.mean);
}

GaussianState apply_channel(const GaussianChannel& channel,
                            const GaussianState& state, int target_mode) {
  return apply_channel(channel, state, std::vector<int>{target_mode});
}

bool is_entanglement_breaking(const GaussianChannel& channel) {
  if (channel.modes != 1) {
    throw UnsupportedChannelError(
        "is_entanglement_breaking: single-mode channels only");
  }
  double xs = 0.0, ys = 0.0;
  if (scaled_identity(channel.X, xs) && scaled_identity(channel.Y, ys)) {
    return ys >= (1.0 + xs * xs) / 2.0 - 1e-12;
  }
  // Exact single-quadrature noise: X = I, rank-1 Y. Never breaks entanglement.
  Mat dx = channel.X - Mat::Identity(2, 2);
  Eigen::SelfAdjointEigenSolver<Mat> es(channel.Y);
  const double l0 = es.eigenvalues()(0);
  const double l1 = es.eigenvalues()(1);
  if (dx.cwiseAbs().maxCoeff() <= 1e-10 &&
      std::abs(l0) <= 1e-12 * std::max(1.0, l1) && l1 > 0.0) {
    return false;
  }
  throw UnsupportedChannelError(
      "is_entanglement_breaking: channel is not phase-insensitive");
}

GaussianChannel dual(const GaussianChannel& channel) {
  if (!channel.provenance) {
    throw UnsupportedChannelError(
        "dual: requires loss/amp provenance; canonicalize first");
  }
  ChannelSpec dspec;
  const auto& ops = channel.provenance->ops;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    switch (it->kind) {
      case PrimitiveOp::Kind::loss: {
        if (it->value >= 1.0) {
          throw UnsupportedChannelError("dual: full loss has no finite dual");
        }
        dspec.ops.push_back(PrimitiveOp::amp(1.0 / (1.0 - it->value)));
        break;
      }
      case PrimitiveOp::Kind::amp:
        dspec.ops.push_back(PrimitiveOp::loss(1.0 - 1.0 / it->value));
        break;
      default:
        throw UnsupportedChannelError(
            "dual: only loss/amp compositions are dualizable; convert via "
            "to_amp_then_loss first");
    }
  }
  return channel_from_spec(dspec);
}

const char* to_string(HolevoType t) {
  switch (t) {
    case HolevoType::A: return "A";
    case HolevoType::B1: return "B1";
    case HolevoType::B2: return "B2";
    case HolevoType::C1: return "C1";
    case HolevoType::C2: return "C2";
    case HolevoType::D: return "D";
  }
  return "?";
}

HolevoType classify(const GaussianChannel& channel) {
  if (channel.modes != 1) {
    throw UnsupportedChannelError("classify: single-mode channels only");
  }
  const double det = channel.X.determinant();
  if (std::abs(det) <= 1e-10) return HolevoType::A;
  if (det < 0.0) return HolevoType::D;
  if (std::abs(det - 1.0) <= 1e-10) {
    Eigen::SelfAdjointEigenSolver<Mat> es(channel.Y);
    const double l0 = es.eigenvalues()(0);
    const double l1 = es.eigenvalues()(1);
    if (l1 <= 1e-12) return HolevoType::B2;  // identity, n = 0
    if (l0 <= 1e-12 * std::max(1.0, l1)) return HolevoType::B1;
    return HolevoType::B2;
  }
  return det < 1.0 ? HolevoType::C1 : HolevoType::C2;
}

HolevoType classify(const ChannelSpec& spec) {
  return classify(channel_from_spec(spec));
}

const char* to_string(CanonicalForm::Kind k) {
  switch (k) {
    case CanonicalForm::Kind::amp_then_loss: return "amp_then_loss";
    case CanonicalForm::Kind::b1_equivalent: return "b1_equivalent";
    case CanonicalForm::Kind::entanglement_breaking: return "entanglement_breaking";
    case CanonicalForm::Kind::identity: return "identity";
  }
  return "?";
}

CanonicalForm to_amp_then_loss(const ChannelSpec& spec) {
  const GaussianChannel ch = channel_from_spec(spec);

  const auto finish_phase_insensitive = [](double kappa, double mu) {
    kappa = std::max(kappa, 0.0);
    mu = std::max(mu, 0.0);
    CanonicalForm out{CanonicalForm::Kind::identity, 1.0, 0.0, 0.0, kappa, mu};
    if (mu >= (1.0 + kappa) / 2.0 - 1e-12) {
      out.kind = CanonicalForm::Kind::entanglement_breaking;
      return out;
    }
    if (std::abs(kappa - 1.0) <= 1e-10 && mu <= 1e-12) {
      return out;  // identity
    }
    // Invert V -> a(1-l) V + (a(1-l) + 2l - 1)/2 I for (a, l).
    double lp = (2.0 * mu - kappa + 1.0) / 2.0;
    if (lp < -1e-9 || lp > 1.0 + 1e-9) {
      throw std::logic_error("to_amp_then_loss: derived loss outside [0, 1]");
    }
    lp = std::clamp(lp, 0.0, 1.0);
    double ap = kappa / (1.0 - lp);
    // CP guarantees kappa + 2 mu >= 1, i.e. ap >= 1; absorb rounding dips.
    if (ap < 1.0 - 1e-9) {
      throw std::logic_error("to_amp_then_loss: derived amplification below 1");
    }
    out.kind = CanonicalForm::Kind::amp_then_loss;
    out.loss = lp;
    out.amp = std::max(ap, 1.0);
    return out;
  };

  double kappa = 0.0, mu = 0.0;
  const Mat gram = ch.X.transpose() * ch.X;
  if (scaled_identity(gram, kappa) && ch.X.determinant() >= -1e-12 &&
      scaled_identity(ch.Y, mu)) {
    // X is a scaled rotation and Y isotropic: the rotation commutes out as
    // unitary equivalence and the map is V -> kappa V + mu I.
    return finish_phase_insensitive(kappa, mu);
  }

  const double det = ch.X.determinant();
  if (std::abs(det - 1.0) <= 1e-10) {
    // Symplectic X absorbed as a pre-unitary, leaving V -> V + Y. A further
    // symplectic congruence brings Y to sqrt(det Y) * I at fixed determinant.
    Eigen::SelfAdjointEigenSolver<Mat> es(ch.Y);
    const double l0 = std::max(es.eigenvalues()(0), 0.0);
    const double l1 = std::max(es.eigenvalues()(1), 0.0);
    if (l1 <= 1e-12) {
      return CanonicalForm{CanonicalForm::Kind::identity, 1.0, 0.0, 0.0, 1.0, 0.0};
    }
    if (l0 <= 1e-12 * std::max(1.0, l1)) {
      return CanonicalForm{CanonicalForm::Kind::b1_equivalent, 1.0, 0.0, l1, 1.0, 0.0};
    }
    return finish_phase_insensitive(1.0, std::sqrt(l0 * l1));
  }

  throw UnsupportedChannelError(
      "to_amp_then_loss: composite is neither phase-insensitive up to rotation "
      "nor a squeeze-conjugated noise channel");
}

}  // namespace gmsep

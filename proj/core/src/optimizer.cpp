#include "infomax/optimizer.hpp"

#include "infomax/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace infomax {
namespace {

double sign_of(Direction d) { return d == Direction::ascent ? 1.0 : -1.0; }

void require_finite(const Eigen::Ref<const Vector>& g, const char* who) {
  if (!g.allFinite()) throw InvalidArgument(std::string(who) + ": gradient has non-finite entries");
}

}  // namespace

void AdamHyper::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("adam: eta must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw InvalidArgument("adam: beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw InvalidArgument("adam: beta2 must lie in [0, 1)");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("adam: epsilon must be positive");
  }
}

AdamState adam_init(Eigen::Index dim) {
  if (dim < 1) throw InvalidArgument("adam_init: dimension must be at least 1");
  return AdamState{Vector::Zero(dim), Vector::Zero(dim), 0, 1.0, 1.0};
}

AdamStep adam_step(const AdamState& state, const Eigen::Ref<const Vector>& g,
                   const AdamHyper& hyper, Direction direction) {
  if (g.size() != state.m.size() || state.m.size() != state.second_moment.size()) {
    throw InvalidArgument("adam_step: gradient length " + std::to_string(g.size()) +
                          " does not match state length " + std::to_string(state.m.size()));
  }
  require_finite(g, "adam_step");
  if (state.t == std::numeric_limits<std::uint64_t>::max()) {
    throw InvalidArgument("adam_step: step counter overflow");
  }

  AdamStep out;
  out.state.t = state.t + 1;
  out.state.beta1_power = state.beta1_power * hyper.beta1;
  out.state.beta2_power = state.beta2_power * hyper.beta2;
  out.state.m = hyper.beta1 * state.m + (1.0 - hyper.beta1) * g;
  out.state.second_moment =
      hyper.beta2 * state.second_moment + (1.0 - hyper.beta2) * g.cwiseProduct(g);

  out.m_hat = out.state.m / (1.0 - out.state.beta1_power);
  out.v_hat = out.state.second_moment / (1.0 - out.state.beta2_power);
  out.update = sign_of(direction) * hyper.eta *
               (out.m_hat.array() / (out.v_hat.array().sqrt() + hyper.epsilon)).matrix();
  return out;
}

Vector sgd_step(const Eigen::Ref<const Vector>& g, double mu, Direction direction) {
  require_finite(g, "sgd_step");
  return sign_of(direction) * mu * g;
}

MomentumState momentum_init(Eigen::Index dim, double alpha) {
  if (dim < 1) throw InvalidArgument("momentum_init: dimension must be at least 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("momentum: alpha must lie in [0, 1)");
  return MomentumState{Vector::Zero(dim), alpha};
}

MomentumStep momentum_step(const MomentumState& state, const Eigen::Ref<const Vector>& g,
                           double mu, Direction direction) {
  if (g.size() != state.previous_update.size()) {
    throw InvalidArgument("momentum_step: gradient length does not match state");
  }
  require_finite(g, "momentum_step");

  MomentumStep out;
  out.update = sign_of(direction) * mu * g + state.alpha * state.previous_update;
  out.state = MomentumState{out.update, state.alpha};
  return out;
}

}  // namespace infomax

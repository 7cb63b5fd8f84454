#pragma once

#include "infomax/types.hpp"

#include <cstdint>

namespace infomax {

struct AdamHyper {
  double eta = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  /// Throws InvalidArgument unless eta > 0, beta ∈ [0,1), epsilon > 0.
  void validate() const;
};

/// First/second moment estimates and the step counter. The running powers
/// β1^t and β2^t are carried along so bias correction needs no pow().
struct AdamState {
  Vector m;
  Vector second_moment;
  std::uint64_t t = 0;
  double beta1_power = 1.0;
  double beta2_power = 1.0;
};

AdamState adam_init(Eigen::Index dim);

struct AdamStep {
  Vector update;  ///< additive delta for the parameters
  AdamState state;
  Vector m_hat;
  Vector v_hat;
};

/// One Adam step. `update` is ±η·m̂/(√v̂ + ε), positive sign for ascent.
/// Non-finite g or a length mismatch throws InvalidArgument; the input
/// state is never modified.
AdamStep adam_step(const AdamState& state, const Eigen::Ref<const Vector>& g,
                   const AdamHyper& hyper, Direction direction);

/// ±μ·g.
Vector sgd_step(const Eigen::Ref<const Vector>& g, double mu, Direction direction);

/// Heavy-ball momentum: Δ_t = ±μ·g + α·Δ_{t-1}.
struct MomentumState {
  Vector previous_update;
  double alpha = 0.5;
};

MomentumState momentum_init(Eigen::Index dim, double alpha);

struct MomentumStep {
  Vector update;
  MomentumState state;
};

MomentumStep momentum_step(const MomentumState& state, const Eigen::Ref<const Vector>& g,
                           double mu, Direction direction);

}  // namespace infomax

#pragma once

#include "infomax/metrics.hpp"
#include "infomax/optimizer.hpp"
#include "infomax/types.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace infomax {

enum class Algorithm { adam, sgd, momentum };
enum class GradientVariant { standard, natural };

std::string_view to_string(Algorithm a);
std::string_view to_string(GradientVariant g);
/// Throws InvalidArgument on an unknown name.
Algorithm parse_algorithm(std::string_view name);
GradientVariant parse_gradient_variant(std::string_view name);

struct RunConfig {
  Algorithm algorithm = Algorithm::adam;
  GradientVariant gradient = GradientVariant::standard;
  std::size_t block_size = 30;
  std::size_t epochs = 1;
  AdamHyper adam;
  double mu = 5e-5;     ///< SGD / momentum step size
  double alpha = 0.5;   ///< momentum coefficient
  Seed seed = 0;
  std::optional<SeparatingMatrix> w0;  ///< identity when empty

  void validate() const;
};

struct RunResult {
  SeparatingMatrix w_final;
  /// One entry per iteration: grad_norm always, pi on each epoch's last
  /// iteration when a reference mixing matrix was supplied.
  MetricTrace trace;
  SignalMatrix separated;
};

using Observer =
    std::function<void(std::uint64_t iteration, const SeparatingMatrix& w, const GradientMatrix& g)>;

struct RunHooks {
  Observer observer;
  std::optional<MixingMatrix> reference;
};

/// Entries are bounded by this magnitude; beyond it the run is treated as
/// diverged.
inline constexpr double kDivergenceBound = 1e12;

/// Column-stacking vec(G).
Vector vectorize(const Matrix& g);
/// Inverse of vectorize. Throws InvalidArgument unless w.size() == n².
Matrix matricize(const Eigen::Ref<const Vector>& w, Eigen::Index n);

/// Number of full blocks ⌊L/B⌋.
std::size_t block_count(const SignalMatrix& x, std::size_t block_size);

/// The t-th block (1-based) of the cyclic schedule: samples
/// [k·B, (k+1)·B) with k = (t-1) mod ⌊L/B⌋. Trailing samples are never
/// visited. Throws InvalidArgument when t = 0 or no full block fits.
Block block_at(const SignalMatrix& x, std::uint64_t t, std::size_t block_size);

/// Runs P = ⌊L/B⌋·epochs adaptation steps on the vectorized separating
/// matrix, each an ascent step of the configured optimizer driven by the
/// configured InfoMax gradient, then separates the full record with W_P.
///
/// Throws RunError (singular or divergence) carrying the failing iteration.
RunResult run(const SignalMatrix& x, const RunConfig& config, const RunHooks& hooks = {});

/// u = W·x.
SignalMatrix separate(const SignalMatrix& x, const SeparatingMatrix& w);

/// Mean of entropy_objective over all full blocks of the record.
double record_entropy(const SeparatingMatrix& w, const SignalMatrix& x, std::size_t block_size);

}  // namespace infomax

#include "infomax/separator.hpp"

#include "infomax/errors.hpp"
#include "infomax/infomax.hpp"
#include "infomax/linalg.hpp"

#include <cmath>
#include <string>
#include <variant>

namespace infomax {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::adam: return "adam";
    case Algorithm::sgd: return "sgd";
    case Algorithm::momentum: return "momentum";
  }
  return "?";
}

std::string_view to_string(GradientVariant g) {
  return g == GradientVariant::standard ? "standard" : "natural";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "adam") return Algorithm::adam;
  if (name == "sgd") return Algorithm::sgd;
  if (name == "momentum") return Algorithm::momentum;
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "' (adam|sgd|momentum)");
}

GradientVariant parse_gradient_variant(std::string_view name) {
  if (name == "standard") return GradientVariant::standard;
  if (name == "natural") return GradientVariant::natural;
  throw InvalidArgument("unknown gradient variant '" + std::string(name) + "' (standard|natural)");
}

void RunConfig::validate() const {
  if (block_size < 1) throw InvalidArgument("block_size must be at least 1");
  if (epochs < 1) throw InvalidArgument("epochs must be at least 1");
  switch (algorithm) {
    case Algorithm::adam:
      adam.validate();
      break;
    case Algorithm::momentum:
      if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in [0, 1)");
      [[fallthrough]];
    case Algorithm::sgd:
      if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("mu must be positive");
      break;
  }
  if (w0) {
    if (w0->rows() != w0->cols() || w0->rows() < 1) throw InvalidArgument("w0 must be square");
    if (!linalg::all_finite(*w0)) throw InvalidArgument("w0 has non-finite entries");
  }
}

Vector vectorize(const Matrix& g) {
  Vector out(g.size());
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < g.cols(); ++c)
    for (Eigen::Index r = 0; r < g.rows(); ++r) out(k++) = g(r, c);
  return out;
}

Matrix matricize(const Eigen::Ref<const Vector>& w, Eigen::Index n) {
  if (n < 1 || w.size() != n * n) {
    throw InvalidArgument("matricize: vector of length " + std::to_string(w.size()) +
                          " cannot form a " + std::to_string(n) + "x" + std::to_string(n) +
                          " matrix");
  }
  Matrix out(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = w(k++);
  return out;
}

std::size_t block_count(const SignalMatrix& x, std::size_t block_size) {
  if (block_size == 0) throw InvalidArgument("block size must be at least 1");
  return static_cast<std::size_t>(x.samples()) / block_size;
}

Block block_at(const SignalMatrix& x, std::uint64_t t, std::size_t block_size) {
  if (t == 0) throw InvalidArgument("block_at: step index is 1-based");
  const std::size_t blocks = block_count(x, block_size);
  if (blocks == 0) {
    throw InvalidArgument("block_at: record of " + std::to_string(x.samples()) +
                          " samples holds no block of " + std::to_string(block_size));
  }
  const auto k = static_cast<Eigen::Index>((t - 1) % blocks);
  const auto b = static_cast<Eigen::Index>(block_size);
  return x.data().middleCols(k * b, b);
}

namespace {

using OptimizerState = std::variant<AdamState, MomentumState, std::monostate>;

OptimizerState make_state(const RunConfig& c, Eigen::Index dim) {
  switch (c.algorithm) {
    case Algorithm::adam: return adam_init(dim);
    case Algorithm::momentum: return momentum_init(dim, c.alpha);
    case Algorithm::sgd: break;
  }
  return std::monostate{};
}

Vector ascent_update(OptimizerState& state, const Vector& g, const RunConfig& c) {
  if (auto* adam = std::get_if<AdamState>(&state)) {
    auto step = adam_step(*adam, g, c.adam, Direction::ascent);
    *adam = std::move(step.state);
    return std::move(step.update);
  }
  if (auto* momentum = std::get_if<MomentumState>(&state)) {
    auto step = momentum_step(*momentum, g, c.mu, Direction::ascent);
    *momentum = std::move(step.state);
    return std::move(step.update);
  }
  return sgd_step(g, c.mu, Direction::ascent);
}

bool diverged(const Matrix& w) {
  return !w.allFinite() || w.cwiseAbs().maxCoeff() > kDivergenceBound;
}

}  // namespace

RunResult run(const SignalMatrix& x, const RunConfig& config, const RunHooks& hooks) {
  config.validate();
  const Eigen::Index n = x.channels();
  if (config.w0 && config.w0->rows() != n) {
    throw InvalidArgument("w0 is " + std::to_string(config.w0->rows()) + "x" +
                          std::to_string(config.w0->cols()) + " but the mixtures have " +
                          std::to_string(n) + " channels");
  }
  if (hooks.reference && (hooks.reference->rows() != n || hooks.reference->cols() != n)) {
    throw InvalidArgument("reference mixing matrix does not match the channel count");
  }
  const std::size_t blocks = block_count(x, config.block_size);
  if (blocks == 0) {
    throw InvalidArgument("record of " + std::to_string(x.samples()) +
                          " samples holds no block of " + std::to_string(config.block_size));
  }
  const std::uint64_t total = static_cast<std::uint64_t>(blocks) * config.epochs;

  SeparatingMatrix w = config.w0 ? *config.w0 : Matrix::Identity(n, n);
  Vector params = vectorize(w);
  OptimizerState state = make_state(config, params.size());

  RunResult result;
  result.trace.entries.reserve(total);

  for (std::uint64_t t = 1; t <= total; ++t) {
    const Block block = block_at(x, t, config.block_size);

    GradientMatrix g;
    try {
      g = config.gradient == GradientVariant::standard ? gradient_standard(w, block)
                                                       : gradient_natural(w, block);
    } catch (const SingularMatrixError& e) {
      throw RunError(RunError::Kind::singular, t,
                     "separating matrix became singular at iteration " + std::to_string(t) +
                         ": " + e.what());
    }
    if (!g.allFinite()) {
      throw RunError(RunError::Kind::divergence, t,
                     "non-finite gradient at iteration " + std::to_string(t));
    }

    params += ascent_update(state, vectorize(g), config);
    w = matricize(params, n);
    if (diverged(w)) {
      throw RunError(RunError::Kind::divergence, t,
                     "separating matrix diverged at iteration " + std::to_string(t));
    }

    const std::uint64_t epoch = (t - 1) / blocks + 1;
    MetricTrace::Entry entry{t, epoch, std::nullopt, grad_norm(g)};
    if (hooks.reference && t % blocks == 0) entry.pi = amari_pi(w, *hooks.reference);
    result.trace.entries.push_back(entry);

    if (hooks.observer) hooks.observer(t, w, g);
  }

  result.separated = separate(x, w);
  result.w_final = std::move(w);
  return result;
}

SignalMatrix separate(const SignalMatrix& x, const SeparatingMatrix& w) {
  if (w.rows() != w.cols() || w.cols() != x.channels()) {
    throw InvalidArgument("separate: W is " + std::to_string(w.rows()) + "x" +
                          std::to_string(w.cols()) + " but x has " +
                          std::to_string(x.channels()) + " channels");
  }
  return SignalMatrix(w * x.data(), x.sample_rate_hz());
}

double record_entropy(const SeparatingMatrix& w, const SignalMatrix& x, std::size_t block_size) {
  const std::size_t blocks = block_count(x, block_size);
  if (blocks == 0) throw InvalidArgument("record_entropy: no full block in record");
  double acc = 0.0;
  for (std::size_t k = 1; k <= blocks; ++k) acc += entropy_objective(w, block_at(x, k, block_size));
  return acc / static_cast<double>(blocks);
}

}  // namespace infomax

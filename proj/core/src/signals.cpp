#include "infomax/signals.hpp"

#include "infomax/errors.hpp"
#include "infomax/linalg.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace infomax {

SignalMatrix::SignalMatrix(Matrix data, double sample_rate_hz)
    : data_(std::move(data)), sample_rate_hz_(sample_rate_hz) {
  if (data_.rows() < 1 || data_.cols() < 1) {
    throw InvalidArgument("signal matrix needs at least one channel and one sample");
  }
  if (!data_.allFinite()) throw InvalidArgument("signal matrix has non-finite samples");
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw InvalidArgument("sample rate must be positive");
  }
}

namespace signals {

double tri(double x) {
  // Phase shifted by a quarter period so that tri(0) = 0 on the rising edge.
  const double phase = x / (2.0 * std::numbers::pi) + 0.25;
  const double frac = phase - std::floor(phase);
  return 1.0 - 4.0 * std::abs(frac - 0.5);
}

SignalMatrix generate_badly_scaled_sources(std::size_t length, Seed seed) {
  if (length == 0) throw InvalidArgument("source length must be at least 1");

  Matrix s(5, static_cast<Eigen::Index>(length));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);

  for (Eigen::Index i = 0; i < s.cols(); ++i) {
    const double n = static_cast<double>(i);
    s(0, i) = 1e-6 * std::sin(350.0 * n) * std::sin(60.0 * n);
    s(1, i) = 1e-5 * tri(70.0 * n);
    s(2, i) = 1e-4 * std::sin(800.0 * n) * std::sin(80.0 * n);
    s(3, i) = 1e-5 * std::cos(400.0 * n + 4.0 * std::cos(60.0 * n));
    s(4, i) = uniform(rng);
  }
  return SignalMatrix(std::move(s));
}

MixingMatrix hilbert_matrix(std::size_t n) {
  if (n == 0) throw InvalidArgument("hilbert_matrix: dimension must be at least 1");
  const auto dim = static_cast<Eigen::Index>(n);
  MixingMatrix h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  return h;
}

MixingMatrix random_mixing_matrix(std::size_t n, Seed seed) {
  if (n == 0) throw InvalidArgument("random_mixing_matrix: dimension must be at least 1");
  const auto dim = static_cast<Eigen::Index>(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  MixingMatrix a(dim, dim);
  // Row-major fill so the draw order reads naturally.
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = uniform(rng);
  return a;
}

SignalMatrix mix(const SignalMatrix& sources, const MixingMatrix& a, const NoiseSpec& noise,
                 Seed seed) {
  if (a.rows() != a.cols() || a.rows() != sources.channels()) {
    throw InvalidArgument("mix: mixing matrix is " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " but sources have " +
                          std::to_string(sources.channels()) + " channels");
  }
  if (!linalg::all_finite(a)) throw InvalidArgument("mix: mixing matrix has non-finite entries");

  Matrix x = a * sources.data();
  if (!noise.snr_db) return SignalMatrix(std::move(x), sources.sample_rate_hz());

  if (!std::isfinite(*noise.snr_db)) throw InvalidArgument("mix: SNR must be finite");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix v(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < v.rows(); ++c)
    for (Eigen::Index n = 0; n < v.cols(); ++n) v(c, n) = gauss(rng);

  const double ratio = std::pow(10.0, *noise.snr_db / 10.0);
  for (Eigen::Index c = 0; c < x.rows(); ++c) {
    const double clean_power = x.row(c).squaredNorm() / static_cast<double>(x.cols());
    const double drawn_power = v.row(c).squaredNorm() / static_cast<double>(v.cols());
    const double target = clean_power / ratio;
    v.row(c) *= drawn_power > 0.0 ? std::sqrt(target / drawn_power) : 0.0;
  }
  x += v;
  return SignalMatrix(std::move(x), sources.sample_rate_hz());
}

Vector measured_snr_db(const Matrix& clean, const Matrix& noise) {
  if (clean.rows() != noise.rows() || clean.cols() != noise.cols()) {
    throw InvalidArgument("measured_snr_db: shape mismatch");
  }
  Vector out(clean.rows());
  for (Eigen::Index c = 0; c < clean.rows(); ++c) {
    out(c) = 10.0 * std::log10(clean.row(c).squaredNorm() / noise.row(c).squaredNorm());
  }
  return out;
}

}  // namespace signals
}  // namespace infomax

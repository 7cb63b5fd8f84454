#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace infomax {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// N×N mixing matrix A in x = A·s + v.
using MixingMatrix = Matrix;
/// N×N separating matrix W in u = W·x.
using SeparatingMatrix = Matrix;
/// ∇_W H(y), same shape as W.
using GradientMatrix = Matrix;

/// N×B window of mixture samples, one column per sample.
using Block = Eigen::Ref<const Matrix>;

using Seed = std::uint64_t;

/// N channels × L samples of real signal data.
///
/// Rows are channels, columns are samples. Every entry is finite.
class SignalMatrix {
 public:
  SignalMatrix() = default;
  /// Throws InvalidArgument if data is empty, contains NaN/Inf, or
  /// sample_rate_hz is not positive.
  explicit SignalMatrix(Matrix data, double sample_rate_hz = 1.0);

  const Matrix& data() const noexcept { return data_; }
  Eigen::Index channels() const noexcept { return data_.rows(); }
  Eigen::Index samples() const noexcept { return data_.cols(); }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }

 private:
  Matrix data_;
  double sample_rate_hz_ = 1.0;
};

enum class Direction { ascent, descent };

}  // namespace infomax

#pragma once

#include "infomax/types.hpp"

#include <cstddef>
#include <optional>

namespace infomax::signals {

/// Unit triangle wave with period 2π, odd, tri(π/2) = 1.
double tri(double x);

/// The five bad-scaled test sources, evaluated at integer sample index n
/// (arguments in radians). Rows 0..3 are deterministic; row 4 is uniform
/// noise on [-1, 1] drawn from `seed`.
SignalMatrix generate_badly_scaled_sources(std::size_t length, Seed seed);

/// h_ij = 1 / (i + j - 1), 1-based.
MixingMatrix hilbert_matrix(std::size_t n);

/// Entries i.i.d. uniform on [-1, 1].
MixingMatrix random_mixing_matrix(std::size_t n, Seed seed);

/// Additive white Gaussian noise at a fixed per-channel SNR. An empty
/// optional means noiseless mixing.
struct NoiseSpec {
  std::optional<double> snr_db;

  static NoiseSpec none() { return {}; }
  static NoiseSpec snr(double db) { return {db}; }
};

/// x = A·s + v. When noise is requested each channel's noise is scaled so
/// that mean(clean²) / mean(noise²) hits the requested SNR exactly.
SignalMatrix mix(const SignalMatrix& sources, const MixingMatrix& a,
                 const NoiseSpec& noise, Seed seed);

/// Per-channel 10·log10(P_clean / P_noise), both powers as mean squares.
Vector measured_snr_db(const Matrix& clean, const Matrix& noise);

}  // namespace infomax::signals

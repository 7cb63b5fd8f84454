#pragma once

#include "infomax/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace infomax {

/// Per-iteration or per-epoch convergence record.
struct MetricTrace {
  struct Entry {
    std::uint64_t iteration = 0;
    std::uint64_t epoch = 0;
    std::optional<double> pi;
    std::optional<double> grad_norm;

    bool operator==(const Entry&) const = default;
  };

  std::vector<Entry> entries;

  bool operator==(const MetricTrace&) const = default;
};

/// Amari performance index of Q = W·A:
///
///   1/(N(N-1)) Σ_i [ (Σ_k |q_ik| / max_j |q_ij| - 1)
///                  + (Σ_k |q_ki| / max_j |q_ji| - 1) ]
///
/// Zero iff Q is a scaled permutation. Throws InvalidArgument for N < 2 or
/// mismatched shapes, DegenerateMatrixError for an all-zero row or column.
double amari_pi(const SeparatingMatrix& w, const MixingMatrix& a);

/// Frobenius norm, i.e. the 2-norm of vec(G).
double grad_norm(const GradientMatrix& g);

/// Collapse a per-iteration trace into one entry per epoch of `blocks_per_epoch`
/// iterations. grad_norm is the epoch mean over iterations that carry one; pi
/// is taken from the epoch's last iteration. Throws InvalidArgument when the
/// trace length is not a multiple of blocks_per_epoch.
MetricTrace epoch_reduce(const MetricTrace& trace, std::uint64_t blocks_per_epoch);

}  // namespace infomax

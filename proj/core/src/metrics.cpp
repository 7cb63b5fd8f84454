#include "infomax/metrics.hpp"

#include "infomax/errors.hpp"

#include <string>

namespace infomax {

double amari_pi(const SeparatingMatrix& w, const MixingMatrix& a) {
  if (w.rows() != w.cols() || a.rows() != a.cols() || w.cols() != a.rows()) {
    throw InvalidArgument("amari_pi: W and A must be square and of equal size");
  }
  const Eigen::Index n = w.rows();
  if (n < 2) throw InvalidArgument("amari_pi: undefined for N < 2");

  const Matrix q = (w * a).cwiseAbs();
  const Vector row_max = q.rowwise().maxCoeff();
  const Vector col_max = q.colwise().maxCoeff().transpose();
  if (!q.allFinite()) throw InvalidArgument("amari_pi: Q = WA has non-finite entries");
  if (row_max.minCoeff() == 0.0 || col_max.minCoeff() == 0.0) {
    throw DegenerateMatrixError("amari_pi: Q = WA has an all-zero row or column");
  }

  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    acc += q.row(i).sum() / row_max(i) - 1.0;
    acc += q.col(i).sum() / col_max(i) - 1.0;
  }
  return acc / static_cast<double>(n * (n - 1));
}

double grad_norm(const GradientMatrix& g) { return g.norm(); }

MetricTrace epoch_reduce(const MetricTrace& trace, std::uint64_t blocks_per_epoch) {
  if (blocks_per_epoch == 0) throw InvalidArgument("epoch_reduce: blocks per epoch must be >= 1");
  if (trace.entries.size() % blocks_per_epoch != 0) {
    throw InvalidArgument("epoch_reduce: " + std::to_string(trace.entries.size()) +
                          " iterations do not split into epochs of " +
                          std::to_string(blocks_per_epoch));
  }

  MetricTrace out;
  out.entries.reserve(trace.entries.size() / blocks_per_epoch);
  for (std::size_t start = 0; start < trace.entries.size(); start += blocks_per_epoch) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = start; k < start + blocks_per_epoch; ++k) {
      if (const auto& g = trace.entries[k].grad_norm) {
        sum += *g;
        ++count;
      }
    }
    const auto& last = trace.entries[start + blocks_per_epoch - 1];
    MetricTrace::Entry e;
    e.iteration = last.iteration;
    e.epoch = start / blocks_per_epoch + 1;
    e.pi = last.pi;
    if (count > 0) e.grad_norm = sum / static_cast<double>(count);
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace infomax

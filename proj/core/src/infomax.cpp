#include "infomax/infomax.hpp"

#include "infomax/errors.hpp"
#include "infomax/linalg.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace infomax {
namespace {

void check_shapes(const SeparatingMatrix& w, const Block& block) {
  if (w.rows() != w.cols()) throw InvalidArgument("separating matrix must be square");
  if (block.cols() < 1) throw InvalidArgument("block must contain at least one sample");
  if (block.rows() != w.cols()) {
    throw InvalidArgument("block has " + std::to_string(block.rows()) +
                          " channels, separating matrix expects " + std::to_string(w.cols()));
  }
}

// ln(1 - tanh²u) = 2·ln sech u = 2·(ln 2 - |u| - ln(1 + e^{-2|u|})).
double log_tanh_derivative(double u) {
  const double a = std::abs(u);
  return 2.0 * (std::numbers::ln2 - a - std::log1p(std::exp(-2.0 * a)));
}

}  // namespace

Matrix activation_tanh(const Eigen::Ref<const Matrix>& u) { return u.array().tanh().matrix(); }

Matrix psi_tanh(const Eigen::Ref<const Matrix>& y) { return -2.0 * y; }

double entropy_objective(const SeparatingMatrix& w, const Block& block) {
  check_shapes(w, block);
  const Matrix u = w * block;
  double acc = 0.0;
  for (Eigen::Index n = 0; n < u.cols(); ++n)
    for (Eigen::Index i = 0; i < u.rows(); ++i) acc += log_tanh_derivative(u(i, n));
  return linalg::log_abs_det(w) + acc / static_cast<double>(block.cols());
}

GradientMatrix gradient_standard(const SeparatingMatrix& w, const Block& block) {
  check_shapes(w, block);
  const Matrix psi = psi_tanh(activation_tanh(w * block));
  GradientMatrix g = linalg::inverse(w).transpose();
  g.noalias() += (psi * block.transpose()) / static_cast<double>(block.cols());
  return g;
}

GradientMatrix gradient_natural(const SeparatingMatrix& w, const Block& block) {
  check_shapes(w, block);
  const Matrix u = w * block;
  const Matrix psi = psi_tanh(activation_tanh(u));
  Matrix core = Matrix::Identity(w.rows(), w.cols());
  core.noalias() += (psi * u.transpose()) / static_cast<double>(block.cols());
  return core * w;
}

}  // namespace infomax

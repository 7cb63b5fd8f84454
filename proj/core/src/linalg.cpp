#include "infomax/linalg.hpp"

#include "infomax/errors.hpp"

#include <Eigen/LU>

#include <cmath>
#include <string>

namespace infomax::linalg {
namespace {

Eigen::PartialPivLU<Matrix> checked_lu(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InvalidArgument("expected a non-empty square matrix, got " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()));
  }
  if (!all_finite(a)) throw InvalidArgument("matrix has non-finite entries");

  const double scale = a.cwiseAbs().maxCoeff();
  Eigen::PartialPivLU<Matrix> lu(a);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (scale == 0.0 || min_pivot < kSingularityThreshold * scale) {
    throw SingularMatrixError("matrix is singular to working precision (min pivot " +
                              std::to_string(min_pivot) + ", max entry " + std::to_string(scale) +
                              ")");
  }
  return lu;
}

}  // namespace

Matrix inverse(const Matrix& a) { return checked_lu(a).inverse(); }

double log_abs_det(const Matrix& a) {
  const auto lu = checked_lu(a);
  return lu.matrixLU().diagonal().cwiseAbs().array().log().sum();
}

bool all_finite(const Eigen::Ref<const Matrix>& a) { return a.allFinite(); }

}  // namespace infomax::linalg

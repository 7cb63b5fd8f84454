#pragma once

#include "infomax/types.hpp"

namespace infomax::linalg {

/// Pivots with magnitude below this fraction of max|a_ij| count as zero.
inline constexpr double kSingularityThreshold = 1e-12;

/// Inverse via LU with partial pivoting. Throws SingularMatrixError when a
/// pivot falls below kSingularityThreshold·max|a_ij|, InvalidArgument when
/// the matrix is not square.
Matrix inverse(const Matrix& a);

/// ln|det a| from the same factorization, with the same singularity rule.
double log_abs_det(const Matrix& a);

bool all_finite(const Eigen::Ref<const Matrix>& a);

}  // namespace infomax::linalg

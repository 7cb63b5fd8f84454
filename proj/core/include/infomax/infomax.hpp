#pragma once

#include "infomax/types.hpp"

namespace infomax {

/// Elementwise tanh.
Matrix activation_tanh(const Eigen::Ref<const Matrix>& u);

/// Score ratio h''/h' for h = tanh, expressed in the activation output:
/// Ψ = -2y.
Matrix psi_tanh(const Eigen::Ref<const Matrix>& y);

/// W-dependent part of the output joint entropy, averaged over the block:
///
///   ln|det W| + (1/B) Σ_n Σ_i ln(1 - tanh²(u_i[n])),  u = W·x.
///
/// The log-derivative term is evaluated as 2·ln sech(u) so it stays
/// accurate for large |u|. Throws SingularMatrixError for singular W.
double entropy_objective(const SeparatingMatrix& w, const Block& block);

/// InfoMax stochastic gradient, block-averaged:
///
///   W^{-T} + (1/B) Σ_n Ψ[n]·x[n]^T.
///
/// Ascent direction for entropy_objective. Requires invertible W.
GradientMatrix gradient_standard(const SeparatingMatrix& w, const Block& block);

/// Natural-gradient form (I + (1/B) Σ_n Ψ[n]·u[n]^T)·W. No inversion.
GradientMatrix gradient_natural(const SeparatingMatrix& w, const Block& block);

}  // namespace infomax

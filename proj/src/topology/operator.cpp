#include "fredlab/topology/operator.hpp"

#include <cmath>

#include "fredlab/error.hpp"

namespace fredlab::topology {

SelfAdjointOperator::SelfAdjointOperator(linalg::Matrix matrix, std::optional<TailDescriptor> tail,
                                         linalg::Tolerances tol)
    : matrix_(std::move(matrix)), tail_(tail), cache_(std::make_shared<Cache>()) {
  tol.validate();
  if (!matrix_.is_square()) fail(ErrorCode::NonSquare, "selfadjoint operator needs a square matrix");
  if (!matrix_.all_finite()) fail(ErrorCode::NonFinite, "operator matrix has non-finite entries");
  if (linalg::asymmetry(matrix_) > 1e-12) fail(ErrorCode::NotSymmetric, "operator matrix is not symmetric");
  matrix_ = linalg::symmetric_part(matrix_);
  cache_->tol = tol;
}

const linalg::SpectralDecomposition& SelfAdjointOperator::spectral() const {
  std::call_once(cache_->once, [this] { cache_->value = linalg::sym_eig(matrix_, cache_->tol); });
  return cache_->value;
}

double riesz_profile(double lambda) noexcept { return lambda / std::sqrt(1.0 + lambda * lambda); }

double alpha_ramp_value(double lambda, double half_width) noexcept {
  if (lambda <= -half_width) return 0.0;
  if (lambda >= half_width) return 1.0;
  return 0.5 * (lambda + half_width) / half_width;
}

ScalarFunction ScalarFunction::p0() { return {FunctionKind::P0, 0.5, "P0", {}, false}; }
ScalarFunction ScalarFunction::p_plus() { return {FunctionKind::Pplus, 0.5, "Pplus", {}, false}; }
ScalarFunction ScalarFunction::p_minus() { return {FunctionKind::Pminus, 0.5, "Pminus", {}, false}; }
ScalarFunction ScalarFunction::riesz() { return {FunctionKind::r, 0.5, "r", {}, false}; }

ScalarFunction ScalarFunction::alpha_ramp(double half_width) {
  if (!(half_width > 0.0)) fail(ErrorCode::InvalidSpec, "ramp half width must be positive");
  return {FunctionKind::alpha_ramp, half_width, "alpha_ramp", {}, false};
}

ScalarFunction ScalarFunction::custom(std::string name, std::function<std::complex<double>(double)> fn,
                                      bool real_valued) {
  return {FunctionKind::custom, 0.5, std::move(name), std::move(fn), real_valued};
}

std::complex<double> ScalarFunction::operator()(double lambda) const {
  using namespace std::complex_literals;
  switch (kind) {
    case FunctionKind::P0:
      return 1.0;
    case FunctionKind::Pplus:
      return 1.0 / (lambda + 1i);
    case FunctionKind::Pminus:
      return 1.0 / (lambda - 1i);
    case FunctionKind::r:
      return riesz_profile(lambda);
    case FunctionKind::alpha_ramp:
      return alpha_ramp_value(lambda, ramp_half_width);
    case FunctionKind::custom:
      return custom_fn(lambda);
  }
  return 0.0;
}

bool ScalarFunction::real_valued() const noexcept {
  switch (kind) {
    case FunctionKind::Pplus:
    case FunctionKind::Pminus:
      return false;
    case FunctionKind::custom:
      return custom_is_real;
    default:
      return true;
  }
}

std::string ScalarFunction::label() const { return name; }

}  // namespace fredlab::topology

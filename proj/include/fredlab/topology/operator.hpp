#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "fredlab/linalg/eigen.hpp"
#include "fredlab/linalg/matrix.hpp"

namespace fredlab::topology {

/// Declared knowledge about where the essential spectrum of the untruncated
/// operator escapes to. A finite matrix cannot reveal this by itself.
enum class EssentialSpectrum { none, plus_only, minus_only, both };

struct TailDescriptor {
  EssentialSpectrum ess_spectrum_signs = EssentialSpectrum::none;
};

/// Finite symmetric truncation of a selfadjoint operator. The spectral
/// decomposition is computed once, on first use, and shared between copies.
class SelfAdjointOperator {
 public:
  explicit SelfAdjointOperator(linalg::Matrix matrix, std::optional<TailDescriptor> tail = std::nullopt,
                               linalg::Tolerances tol = {});

  const linalg::Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const std::optional<TailDescriptor>& tail() const noexcept { return tail_; }
  const linalg::Tolerances& tolerances() const noexcept { return cache_->tol; }

  const linalg::SpectralDecomposition& spectral() const;

 private:
  struct Cache {
    linalg::Tolerances tol;
    std::once_flag once;
    linalg::SpectralDecomposition value;
  };

  linalg::Matrix matrix_;
  std::optional<TailDescriptor> tail_;
  std::shared_ptr<Cache> cache_;
};

enum class FunctionKind { P0, Pplus, Pminus, r, alpha_ramp, custom };

/// Test functions of the functional calculus: the generators P0 ≡ 1 and
/// P±(λ) = (λ ± i)⁻¹, the Riesz profile r(λ) = λ/√(1+λ²), the ramp α that
/// is 0 below -w, 1 above w and linear in between, or a user function.
struct ScalarFunction {
  FunctionKind kind = FunctionKind::P0;
  double ramp_half_width = 0.5;
  std::string name;
  std::function<std::complex<double>(double)> custom_fn;
  bool custom_is_real = false;

  static ScalarFunction p0();
  static ScalarFunction p_plus();
  static ScalarFunction p_minus();
  static ScalarFunction riesz();
  static ScalarFunction alpha_ramp(double half_width = 0.5);
  static ScalarFunction custom(std::string name, std::function<std::complex<double>(double)> fn,
                               bool real_valued = false);

  std::complex<double> operator()(double lambda) const;
  bool real_valued() const noexcept;
  std::string label() const;
};

double riesz_profile(double lambda) noexcept;
double alpha_ramp_value(double lambda, double half_width) noexcept;

}  // namespace fredlab::topology

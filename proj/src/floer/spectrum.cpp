#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "fredlab/error.hpp"
#include "fredlab/floer/floer.hpp"
#include "fredlab/linalg/eigen.hpp"

namespace fredlab::floer {

using linalg::BandedSymmetric;

namespace {

std::vector<double> nearest_zero(std::vector<double> values, std::size_t k) {
  std::stable_sort(values.begin(), values.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b);
  });
  values.resize(std::min(k, values.size()));
  std::sort(values.begin(), values.end());
  return values;
}

void check_window(const DiscretizedOperator& op, std::size_t k_window) {
  if (k_window == 0 || k_window > op.dim()) {
    fail(ErrorCode::InvalidConfig, "eigenvalue window must hold between 1 and " + std::to_string(op.dim()) + " values");
  }
}

// Runs body(i) for i in [0, n) on a few threads; every index writes only
// its own slot, so results do not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, Body body) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<double> floer_spectrum(const DiscretizedOperator& op, std::size_t k_window) {
  check_window(op, k_window);
  const std::size_t n = op.dim();
  BandedSymmetric id(n, 0);
  for (std::size_t i = 0; i < n; ++i) id.band(i, 0) = 1.0;
  if (linalg::pencil_count_below(op.mass, id, 0.0) != 0) {
    fail(ErrorCode::MassNotPositiveDefinite, "mass matrix has a nonpositive pivot");
  }
  const std::size_t below = linalg::pencil_count_below(op.stiffness, op.mass, 0.0);
  const std::size_t first = below > k_window ? below - k_window : 0;
  const std::size_t last = std::min(n, below + k_window);
  std::vector<double> values;
  for (std::size_t idx = first; idx < last; ++idx) values.push_back(linalg::pencil_eigenvalue(op.stiffness, op.mass, idx));
  return nearest_zero(std::move(values), k_window);
}

std::vector<double> floer_spectrum_dense(const DiscretizedOperator& op, std::size_t k_window) {
  check_window(op, k_window);
  linalg::SpectralDecomposition d;
  try {
    d = linalg::generalized_sym_eig(op.dense_stiffness(), op.dense_mass());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveDefinite) fail(ErrorCode::MassNotPositiveDefinite, e.what());
    throw;
  }
  return nearest_zero(std::move(d.eigenvalues), k_window);
}

std::vector<double> shooting_eigenvalues(const FloerConfig& cfg, Interval search) {
  cfg.validate();
  if (!(search.lo < search.hi) || !std::isfinite(search.lo) || !std::isfinite(search.hi)) {
    fail(ErrorCode::InvalidConfig, "search interval must be finite and nonempty");
  }
  const double reach = std::max(std::abs(search.lo), std::abs(search.hi)) + cfg.a.max_abs() + 1.0;
  const std::size_t steps = std::max<std::size_t>(2000, static_cast<std::size_t>(std::ceil(400.0 * reach)));
  const double h = 1.0 / static_cast<double>(steps);
  const double cs = std::cos(cfg.s);
  const double sn = std::sin(cfg.s);

  // u' = J (C(t) - λ) u.
  auto mismatch = [&](double lambda) {
    auto rhs = [&](double t, double u0, double u1, double& d0, double& d1) {
      const Mat2 c = zeroth_order(cfg, t);
      const double v0 = (c[0][0] - lambda) * u0 + c[0][1] * u1;
      const double v1 = c[1][0] * u0 + (c[1][1] - lambda) * u1;
      d0 = -v1;
      d1 = v0;
    };
    double u0 = 1.0;
    double u1 = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
      const double t = static_cast<double>(i) * h;
      double k10, k11, k20, k21, k30, k31, k40, k41;
      rhs(t, u0, u1, k10, k11);
      rhs(t + 0.5 * h, u0 + 0.5 * h * k10, u1 + 0.5 * h * k11, k20, k21);
      rhs(t + 0.5 * h, u0 + 0.5 * h * k20, u1 + 0.5 * h * k21, k30, k31);
      rhs(t + h, u0 + h * k30, u1 + h * k31, k40, k41);
      u0 += h / 6.0 * (k10 + 2.0 * k20 + 2.0 * k30 + k40);
      u1 += h / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
    }
    return u0 * (-sn) - u1 * cs;
  };

  const std::size_t intervals =
      std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil((search.hi - search.lo) / 0.025)));
  const double dx = (search.hi - search.lo) / static_cast<double>(intervals);
  std::vector<double> roots;
  double x_prev = search.lo;
  double f_prev = mismatch(x_prev);
  if (f_prev == 0.0) roots.push_back(x_prev);
  for (std::size_t j = 1; j <= intervals; ++j) {
    const double x = j == intervals ? search.hi : search.lo + static_cast<double>(j) * dx;
    const double f = mismatch(x);
    if (f == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && (f_prev < 0.0) != (f < 0.0)) {
      double lo = x_prev;
      double hi = x;
      double flo = f_prev;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = mismatch(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    f_prev = f;
  }
  return roots;
}

long spectral_flow_from_windows(std::span<const std::vector<double>> windows, double zero_tol) {
  if (!(zero_tol >= 0.0)) fail(ErrorCode::InvalidConfig, "zero tolerance must be nonnegative");
  auto sign_of = [&](double x) { return x > zero_tol ? 1 : (x < -zero_tol ? -1 : 0); };
  auto min_gap = [](const std::vector<double>& w) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < w.size(); ++i) g = std::min(g, w[i] - w[i - 1]);
    return g;
  };
  for (const auto& w : windows) {
    if (!std::is_sorted(w.begin(), w.end())) fail(ErrorCode::InvalidConfig, "eigenvalue windows must be ascending");
  }
  if (windows.empty()) return 0;

  // Effective side of each tracked eigenvalue; 0 while undecided.
  std::vector<int> state;
  for (double x : windows[0]) state.push_back(sign_of(x));
  long flow = 0;

  for (std::size_t j = 0; j + 1 < windows.size(); ++j) {
    const auto& prev = windows[j];
    const auto& next = windows[j + 1];
    const double half_gap = 0.5 * std::min(min_gap(prev), min_gap(next));
    std::vector<int> next_state(next.size(), 2);  // 2 = not yet matched

    for (std::size_t i = 0; i < prev.size(); ++i) {
      const double y = prev[i];
      std::size_t best = next.size();
      double dist = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < next.size(); ++c) {
        if (std::abs(next[c] - y) < dist) {
          dist = std::abs(next[c] - y);
          best = c;
        }
      }
      if (best < next.size() && dist < half_gap) {
        const double x = next[best];
        const int sx = sign_of(x);
        int e = state[i];
        if (sx == 0) {
          if (e != 0) {
            flow += -e;
            e = -e;
          }
        } else if (e == 0) {
          e = sx;
        } else if (sx != e) {
          flow += sx;
          e = sx;
        }
        next_state[best] = e;
        continue;
      }
      const bool outside = next.empty() || y < next.front() || y > next.back();
      if (!outside || sign_of(y) == 0) {
        fail(ErrorCode::SamplingTooCoarse,
             "eigenvalue " + std::to_string(y) + " at sample " + std::to_string(j) + " has no partner within half the minimal gap");
      }
    }
    for (std::size_t c = 0; c < next.size(); ++c) {
      if (next_state[c] != 2) continue;
      const bool outside = prev.empty() || next[c] < prev.front() || next[c] > prev.back();
      if (!outside) {
        fail(ErrorCode::SamplingTooCoarse,
             "eigenvalue " + std::to_string(next[c]) + " at sample " + std::to_string(j + 1) + " appears inside the window");
      }
      next_state[c] = sign_of(next[c]);
    }
    state = std::move(next_state);
  }
  return flow;
}

long spectral_flow(std::span<const DiscretizedOperator> family, std::size_t k_window) {
  std::vector<std::vector<double>> windows(family.size());
  parallel_for(family.size(), [&](std::size_t i) { windows[i] = floer_spectrum(family[i], k_window); });
  double step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < family.size(); ++i) {
    const double ds = std::abs(family[i].config.s - family[i - 1].config.s);
    if (ds > 0.0) step = std::min(step, ds);
  }
  const double zero_tol = std::isfinite(step) ? 0.25 * step : 0.0;
  return spectral_flow_from_windows(windows, zero_tol);
}

long spectral_flow_over(const FloerConfig& cfg_base, std::span<const double> s_samples, std::size_t k_window) {
  std::vector<DiscretizedOperator> family;
  family.reserve(s_samples.size());
  for (double s : s_samples) {
    FloerConfig cfg = cfg_base;
    cfg.s = s;
    family.push_back(assemble_floer_operator(cfg));
  }
  return spectral_flow(family, k_window);
}

}  // namespace fredlab::floer

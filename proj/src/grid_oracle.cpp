#include "gkpt/grid_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "gkpt/quadrature.hpp"
#include "gkpt/tgate_fidelity.hpp"

namespace gkpt {

Complex rotation_kernel(double Theta, double x, double xp) {
  const double s = std::sin(Theta);
  if (std::abs(s) < 1e-12) {
    throw SingularAngleError("rotation_kernel: sin(Theta) ~ 0; use the identity map");
  }
  const double c = std::cos(Theta);
  const double phase = ((x * x + xp * xp) * c - 2.0 * x * xp) / (2.0 * s);
  return std::polar(1.0 / std::sqrt(2.0 * kPi * std::abs(s)), phase);
}

double GridWavefunction1::norm2() const {
  double s = 0.0;
  for (const Complex& a : amp) s += std::norm(a);
  return s * grid.dx;
}

double GridWavefunction2::norm2() const {
  double s = 0.0;
  for (const Complex& a : amp) s += std::norm(a);
  return s * grid.dx * grid.dx;
}

namespace {

double lanczos(double t, int a) {
  if (t == 0.0) return 1.0;
  if (std::abs(t) >= a) return 0.0;
  const double pt = kPi * t;
  return a * std::sin(pt) * std::sin(pt / a) / (pt * pt);
}

constexpr int kLanczosA = 6;

}  // namespace

Complex interpolate(const Grid1d& grid, const std::vector<Complex>& values, double x,
                    Interp interp) {
  const double t = (x + grid.half_width) / grid.dx;
  const int n = static_cast<int>(values.size());
  if (t < 0.0 || t > n - 1) return Complex(0.0);
  if (interp == Interp::Linear) {
    const int i = std::min(static_cast<int>(t), n - 2);
    const double f = t - i;
    return (1.0 - f) * values[i] + f * values[i + 1];
  }
  const int center = static_cast<int>(std::floor(t));
  Complex sum(0.0);
  for (int k = center - kLanczosA + 1; k <= center + kLanczosA; ++k) {
    if (k < 0 || k >= n) continue;
    sum += values[k] * lanczos(t - k, kLanczosA);
  }
  return sum;
}

GridWavefunction2 beam_splitter_resample(const GridWavefunction2& state, Interp interp,
                                         double* pre_renorm_deviation) {
  const Grid1d& g = state.grid;
  const int n = g.size();
  GridWavefunction2 out{g, std::vector<Complex>(state.amp.size())};

  // row views for separable interpolation
  std::vector<Complex> row(n);
  const auto value_at = [&](double x1, double x2) -> Complex {
    // separable Lanczos/linear: interpolate along x2 within the rows near x1,
    // then along x1.
    const double t1 = (x1 + g.half_width) / g.dx;
    if (t1 < 0.0 || t1 > n - 1) return Complex(0.0);
    const int c1 = static_cast<int>(std::floor(t1));
    const int a = (interp == Interp::Sinc) ? kLanczosA : 1;
    Complex sum(0.0);
    for (int i = c1 - a + 1; i <= c1 + a; ++i) {
      if (i < 0 || i >= n) continue;
      const double w1 = (interp == Interp::Sinc)
                            ? lanczos(t1 - i, kLanczosA)
                            : std::max(0.0, 1.0 - std::abs(t1 - i));
      if (w1 == 0.0) continue;
      const Complex* r = &state.amp[static_cast<std::size_t>(i) * n];
      std::copy(r, r + n, row.begin());
      sum += w1 * interpolate(g, row, x2, interp);
    }
    return sum;
  };

  for (int i1 = 0; i1 < n; ++i1) {
    const double y1 = g.x(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const double y2 = g.x(i2);
      // inverse of (x1,x2) -> ((-x1+x2)/sqrt2, (x1+x2)/sqrt2)
      const double x1 = (y2 - y1) / kSqrt2;
      const double x2 = (y1 + y2) / kSqrt2;
      out.amp[static_cast<std::size_t>(i1) * n + i2] = value_at(x1, x2);
    }
  }

  const double n_in = state.norm2();
  const double n_out = out.norm2();
  if (pre_renorm_deviation != nullptr) {
    *pre_renorm_deviation = (n_in > 0.0) ? std::abs(std::sqrt(n_out / n_in) - 1.0) : 0.0;
  }
  if (n_out > 0.0) {
    const double scale = std::sqrt(n_in / n_out);
    for (Complex& a : out.amp) a *= scale;
  }
  return out;
}

DmResult accumulate_logical_dm(const DensityKernel& kernel, const ModularConfig& cfg) {
  const Grid1d& g = kernel.grid;
  const int n = g.size();
  if (kernel.values.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("accumulate_logical_dm: kernel size mismatch");
  }

  const auto kernel_at = [&](double xa, double xb) -> Complex {
    const double tb = (xb + g.half_width) / g.dx;
    if (tb < 0.0 || tb > n - 1) return Complex(0.0);
    const int cb = static_cast<int>(std::floor(tb));
    Complex sum(0.0);
    std::vector<Complex> col(n);
    for (int j = cb - kLanczosA + 1; j <= cb + kLanczosA; ++j) {
      if (j < 0 || j >= n) continue;
      const double wb = lanczos(tb - j, kLanczosA);
      if (wb == 0.0) continue;
      for (int i = 0; i < n; ++i) col[i] = kernel.values[static_cast<std::size_t>(i) * n + j];
      sum += wb * interpolate(g, col, xa, Interp::Sinc);
    }
    return sum;
  };

  const long long mt_max =
      static_cast<long long>(std::floor((g.half_width - 1.0) / (2.0 * kSqrtPi))) + 1;

  const auto pass = [&](int u_nodes) -> LogicalDensityMatrix {
    const double feature = cfg.feature_scale > 0.0 ? cfg.feature_scale : 0.25;
    const QuadratureRule u_rule = composite_gauss_legendre(
        -0.5 * kSqrtPi, 0.5 * kSqrtPi, u_nodes, feature, cfg.osc_rate_hint);
    double r00 = 0.0, r11 = 0.0;
    Complex r01(0.0);
    for (long long mt = -mt_max; mt <= mt_max; ++mt) {
      const double b0 = logical_bin_center(0, mt, cfg.origin);
      const double b1 = logical_bin_center(1, mt, cfg.origin);
      for (std::size_t ui = 0; ui < u_rule.size(); ++ui) {
        const double u = u_rule.nodes[ui];
        const double w = u_rule.weights[ui];
        r00 += w * kernel_at(b0 + u, b0 + u).real();
        r11 += w * kernel_at(b1 + u, b1 + u).real();
        r01 += w * kernel_at(b0 + u, b1 + u);
      }
    }
    return {r00, r11, r01};
  };

  const int base_nodes = std::max(cfg.u_order, 8);
  const LogicalDensityMatrix coarse = pass(base_nodes).normalized();
  const LogicalDensityMatrix fine = pass(2 * base_nodes).normalized();
  DmResult out;
  out.rho = fine;
  out.est_error = std::max({std::abs(fine.rho00() - coarse.rho00()),
                            std::abs(fine.rho11() - coarse.rho11()),
                            std::abs(fine.rho01() - coarse.rho01())});
  out.converged = out.est_error <= cfg.rel_tol;
  return out;
}

namespace {

struct VGrid {
  std::vector<double> nodes;    // uniform midpoints
  std::vector<double> weights;  // dv * sqrt2 * N_sq * Sq(v)
  double dv = 0.0;
};

// Uniform grid over the ancilla direction: resolves both the squeezed-vacuum
// width and the fastest kernel phase.
VGrid make_v_grid(double sigma, double x_max, double q2_half_width, int min_nodes) {
  const double span = 12.0 * sigma;
  const double rate = kSqrt2 * (x_max + kSqrt2 * span) + 2.0 * q2_half_width;
  const double h_feature = 0.9 * sigma;
  const double h_phase = 2.0 * kPi / rate / 6.0;
  const double h = std::min(h_feature, h_phase);
  int count = std::max(min_nodes, static_cast<int>(std::ceil(2.0 * span / h)));
  VGrid v;
  v.dv = 2.0 * span / count;
  v.nodes.resize(count);
  v.weights.resize(count);
  const double n_sq = std::pow(2.0 * kPi * sigma * sigma, -0.25);
  for (int j = 0; j < count; ++j) {
    const double vj = -span + (j + 0.5) * v.dv;
    v.nodes[j] = vj;
    v.weights[j] = v.dv * kSqrt2 * n_sq * squeezed_vacuum_amplitude(sigma, vj);
  }
  return v;
}

}  // namespace

DmResult simulate_circuit(double delta, double sigma, const GridParams& grid,
                          const QSampling& sampling, GaugeOrigin origin,
                          GridRunReport* report) {
  if (!(delta > 0.0)) throw std::invalid_argument("simulate_circuit: delta must be > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("simulate_circuit: sigma must be > 0");
  if (grid.dx > delta / 4.0) {
    throw GridTooSmallError("simulate_circuit: dx must resolve the comb peaks (dx <= delta/4 = " +
                            std::to_string(delta / 4.0) + ")");
  }

  const Grid1d g{grid.dx, grid.half_width};
  const int n = g.size();
  const double X = grid.half_width;

  const GkpWavefunction t_wave(t_state(), delta);
  const GkpWavefunction psi_wave(plus_state(), delta);
  const NormConfig ncfg{.half_width = X + 2.0, .feature_scale = delta, .rel_tol = 1e-10,
                        .min_nodes = 256};
  const double n_t = normalization_constant([&](double x) { return t_wave(x); }, ncfg);
  const double n_psi = normalization_constant([&](double x) { return psi_wave(x); }, ncfg);

  // Input combs must die out before the grid edge.
  double leak = 0.0;
  for (const double edge : {-X, X}) {
    leak = std::max(leak, std::abs(n_t * t_wave(edge)));
    leak = std::max(leak, std::abs(n_psi * psi_wave(edge)));
  }
  if (leak > grid.boundary_floor) {
    throw GridTooSmallError(
        "simulate_circuit: comb amplitude " + std::to_string(leak) +
        " at the grid edge exceeds the boundary floor; increase half_width");
  }

  // Two-mode state after BS1 via the coordinate map, materialized on the grid.
  GridWavefunction2 after_bs1{g, std::vector<Complex>(static_cast<std::size_t>(n) * n)};
  {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = g.x(i);
    for (int i1 = 0; i1 < n; ++i1) {
      Complex* row = &after_bs1.amp[static_cast<std::size_t>(i1) * n];
      for (int i2 = 0; i2 < n; ++i2) {
        const double x1 = (xs[i2] - xs[i1]) / kSqrt2;
        const double x2 = (xs[i1] + xs[i2]) / kSqrt2;
        row[i2] = n_t * t_wave(x1) * n_psi * psi_wave(x2);
      }
    }
  }

  // q1 samples: midpoints over a window of q1_cells kappa-cells.
  const double q1_hw = 0.5 * sampling.q1_cells * kSqrtHalfPi;
  const int q1_count = sampling.q1_cells * sampling.q1_per_cell;
  const double dq1 = 2.0 * q1_hw / q1_count;
  const double dq2 = 2.0 * sampling.q2_half_width / sampling.q2_count;

  const VGrid v = make_v_grid(sigma, X, sampling.q2_half_width, 96);

  // Logical accumulation targets: bins fully inside the grid.
  const long long mt_max =
      static_cast<long long>(std::floor((X - 1.0) / (2.0 * kSqrtPi))) + 1;
  const QuadratureRule u_rule =
      composite_gauss_legendre(-0.5 * kSqrtPi, 0.5 * kSqrtPi, 64, delta);

  double acc00 = 0.0, acc11 = 0.0;
  Complex acc01(0.0);
  double weight_sum = 0.0;

  std::vector<Complex> chi(n);          // conditional state on the in-grid
  std::vector<Complex> coupling;        // A_i * B_j * e^{i gamma z_i v_j} * X_ij
  coupling.resize(static_cast<std::size_t>(n) * v.nodes.size());
  std::vector<Complex> gvec(n);
  std::vector<Complex> u_phase(v.nodes.size());

  for (int iq1 = 0; iq1 < q1_count; ++iq1) {
    const double q1 = -q1_hw + (iq1 + 0.5) * dq1;
    const int kap = sampling.force_kappa0 ? 0 : kappa(q1);
    const double Theta = 0.5 * kPi - theta(kap);
    const double sin_t = std::sin(Theta);
    const double cos_t = std::cos(Theta);
    const double a_coef = cos_t / (2.0 * sin_t);
    const double kernel_c = 1.0 / std::sqrt(2.0 * kPi * sin_t);
    const double gamma = 2.0 * kSqrt2 * a_coef;

    // homodyne slice of mode A at x = q1 (interpolated from the 2-mode grid)
    const double t1 = (q1 + X) / g.dx;
    const int c1 = static_cast<int>(std::floor(t1));
    std::fill(chi.begin(), chi.end(), Complex(0.0));
    for (int i = c1 - kLanczosA + 1; i <= c1 + kLanczosA; ++i) {
      if (i < 0 || i >= n) continue;
      const double w1 = lanczos(t1 - i, kLanczosA);
      if (w1 == 0.0) continue;
      const Complex* row = &after_bs1.amp[static_cast<std::size_t>(i) * n];
      for (int j = 0; j < n; ++j) chi[j] += w1 * row[j];
    }
    // boundary check on the conditional state
    leak = std::max({leak, std::abs(chi.front()), std::abs(chi.back())});

    // coupling matrix: e^{i a (z + sqrt2 v)^2} X(z, v) with
    // X = chi(sqrt2 z + v) * ancilla weights
    for (int i = 0; i < n; ++i) {
      const double z = g.x(i);
      const Complex a_i = std::polar(1.0, a_coef * z * z);
      const Complex step = std::polar(1.0, gamma * z * v.dv);
      Complex rot = std::polar(1.0, gamma * z * v.nodes[0]);
      Complex* out = &coupling[static_cast<std::size_t>(i) * v.nodes.size()];
      for (std::size_t j = 0; j < v.nodes.size(); ++j) {
        const Complex x_ij =
            interpolate(g, chi, kSqrt2 * z + v.nodes[j], grid.interp) * v.weights[j];
        const Complex b_j = std::polar(1.0, 2.0 * a_coef * v.nodes[j] * v.nodes[j]);
        out[j] = a_i * b_j * rot * x_ij;
        rot *= step;
      }
    }

    const double x0 = q1 / kSqrt2;

    for (int iq2 = 0; iq2 < sampling.q2_count; ++iq2) {
      const double q2 = -sampling.q2_half_width + (iq2 + 0.5) * dq2;
      const double b_coef = -q2 / sin_t;
      // u_j = e^{i sqrt2 b v_j}, b_phase_i = e^{i b z_i}; uniform grids allow
      // multiplicative recurrences.
      {
        const Complex step = std::polar(1.0, kSqrt2 * b_coef * v.dv);
        Complex cur = std::polar(1.0, kSqrt2 * b_coef * v.nodes[0]);
        for (std::size_t j = 0; j < v.nodes.size(); ++j) {
          u_phase[j] = cur;
          cur *= step;
        }
      }
      for (int i = 0; i < n; ++i) {
        const Complex* m_row = &coupling[static_cast<std::size_t>(i) * v.nodes.size()];
        Complex s(0.0);
        for (std::size_t j = 0; j < v.nodes.size(); ++j) s += m_row[j] * u_phase[j];
        gvec[i] = s;
      }

      // captured joint probability (diagnostic)
      double norm2 = 0.0;
      for (int i = 0; i < n; ++i) norm2 += std::norm(gvec[i]);
      weight_sum += norm2 * kernel_c * kernel_c * g.dx * dq1 * dq2;

      // displacement D(x0, p0): phase e^{i p0 x} and coordinate shift by x0
      // (a conditional global phase is dropped)
      const double p0 = kap * q1 / kSqrt2 + std::sqrt(1.0 + kap * kap) * q2;
      const double wq = dq1 * dq2;
      for (long long mt = -mt_max; mt <= mt_max; ++mt) {
        const double b0 = logical_bin_center(0, mt, origin);
        const double b1 = logical_bin_center(1, mt, origin);
        for (std::size_t ui = 0; ui < u_rule.size(); ++ui) {
          const double u = u_rule.nodes[ui];
          const double wu = u_rule.weights[ui];
          const double pos0 = b0 + u, pos1 = b1 + u;
          const double t0 = pos0 - x0, t1s = pos1 - x0;
          const Complex phi0 =
              std::polar(kernel_c, p0 * pos0 + a_coef * t0 * t0 + b_coef * t0) *
              interpolate(g, gvec, t0, grid.interp);
          const Complex phi1 =
              std::polar(kernel_c, p0 * pos1 + a_coef * t1s * t1s + b_coef * t1s) *
              interpolate(g, gvec, t1s, grid.interp);
          acc00 += wq * wu * std::norm(phi0);
          acc11 += wq * wu * std::norm(phi1);
          acc01 += wq * wu * phi0 * std::conj(phi1);
        }
      }
    }
  }

  if (report != nullptr) {
    report->weight_sum = weight_sum;
    report->boundary_leak = leak;
    report->v_nodes = static_cast<int>(v.nodes.size());
    report->interp = grid.interp == Interp::Sinc ? "sinc" : "linear";
  }

  DmResult out;
  out.rho = LogicalDensityMatrix(acc00, acc11, acc01).normalized();
  out.est_error = 0.0;
  out.converged = true;
  return out;
}

}  // namespace gkpt

#include "gkpt/modular.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gkpt/quadrature.hpp"

namespace gkpt {

namespace {

long long positive_mod2(long long m) { return ((m % 2) + 2) % 2; }

}  // namespace

ModularCoords decompose_position(double x, GaugeOrigin origin) {
  const long long m = static_cast<long long>(std::floor(x / kSqrtPi + 0.5));
  const int l = static_cast<int>(positive_mod2(m));
  const long long m_tilde =
      (origin == GaugeOrigin::PlusSqrtPi) ? (m - l) / 2 : (m + l) / 2;
  const double u_tilde = x - kSqrtPi * static_cast<double>(m);
  return {l, m_tilde, u_tilde};
}

double reconstruct_position(const ModularCoords& c, GaugeOrigin origin) {
  const long long m = (origin == GaugeOrigin::PlusSqrtPi) ? 2 * c.m_tilde + c.l
                                                          : 2 * c.m_tilde - c.l;
  return kSqrtPi * static_cast<double>(m) + c.u_tilde;
}

double logical_bin_center(int zeta, long long m_tilde, GaugeOrigin origin) {
  const long long m = (origin == GaugeOrigin::PlusSqrtPi) ? 2 * m_tilde + zeta
                                                          : 2 * m_tilde - zeta;
  return kSqrtPi * static_cast<double>(m);
}

LogicalDensityMatrix LogicalDensityMatrix::normalized() const {
  const double t = trace();
  if (!(std::abs(t) > 1e-300)) throw std::domain_error("LogicalDensityMatrix: zero trace");
  return {r00_ / t, r11_ / t, r01_ / t};
}

double LogicalDensityMatrix::min_eigenvalue() const {
  const double mean = 0.5 * (r00_ + r11_);
  const double half_diff = 0.5 * (r00_ - r11_);
  const double disc = std::sqrt(half_diff * half_diff + std::norm(r01_));
  return mean - disc;
}

double LogicalDensityMatrix::max_abs_entry() const {
  return std::max({std::abs(r00_), std::abs(r11_), std::abs(r01_)});
}

double logical_fidelity(const LogicalDensityMatrix& rho, const LogicalAmplitudes& target) {
  if (std::abs(rho.trace() - 1.0) > 1e-6) {
    throw std::invalid_argument("logical_fidelity: rho must be trace-normalized");
  }
  const LogicalAmplitudes t = target.normalized();
  const Complex cross = std::conj(t.a) * rho.rho01() * t.b;
  const Complex f = std::norm(t.a) * rho.rho00() + std::norm(t.b) * rho.rho11() +
                    cross + std::conj(cross);
  if (std::abs(f.imag()) > 1e-10) {
    throw std::domain_error("logical_fidelity: non-Hermitian input");
  }
  return f.real();
}

namespace {

// Scan bins outward from the origin for wavefunction support. Five probe
// points per bin; combs have their peaks at bin centers so this cannot miss.
long long auto_m_range(const std::function<Complex(double)>& psi, double floor_abs) {
  long long last_live = 0;
  const long long cap = 1 << 14;
  for (long long m = 0; m <= cap; ++m) {
    bool live = false;
    for (int side = 0; side < 2 && !live; ++side) {
      const double center = (side == 0 ? m : -m) * kSqrtPi;
      for (int p = -2; p <= 2 && !live; ++p) {
        if (std::abs(psi(center + 0.2 * p * kSqrtPi)) > floor_abs) live = true;
      }
    }
    if (live) {
      last_live = m;
    } else if (m > last_live + 2) {
      break;
    }
  }
  return last_live;
}

LogicalDensityMatrix dm_pass(const std::function<Complex(double)>& psi,
                             const ModularConfig& cfg, long long m_max,
                             int u_nodes) {
  const double half_bin = 0.5 * kSqrtPi;
  const double feature = cfg.feature_scale > 0.0 ? cfg.feature_scale : kSqrtPi;
  const QuadratureRule u_rule = composite_gauss_legendre(
      -half_bin, half_bin, u_nodes, feature, cfg.osc_rate_hint);

  double r00 = 0.0, r11 = 0.0;
  Complex r01(0.0, 0.0);
  // m counts logical bins: bin center (2*m_tilde + zeta)*sqrt(pi) covers all
  // integers as (zeta, m_tilde) range over {0,1} x Z.
  for (long long mt = -(m_max / 2 + 1); mt <= m_max / 2 + 1; ++mt) {
    const double b0 = logical_bin_center(0, mt, cfg.origin);
    const double b1 = logical_bin_center(1, mt, cfg.origin);
    for (std::size_t i = 0; i < u_rule.size(); ++i) {
      const double u = u_rule.nodes[i];
      const double w = u_rule.weights[i];
      const Complex p0 = psi(b0 + u);
      const Complex p1 = psi(b1 + u);
      r00 += w * std::norm(p0);
      r11 += w * std::norm(p1);
      r01 += w * p0 * std::conj(p1);
    }
  }
  return {r00, r11, r01};
}

}  // namespace

DmResult logical_dm_from_pure(const std::function<Complex(double)>& psi,
                              const ModularConfig& cfg) {
  long long m_max = cfg.m_range;
  if (m_max <= 0) m_max = auto_m_range(psi, cfg.envelope_floor);

  DmResult result;
  LogicalDensityMatrix prev;
  bool have_prev = false;
  // Start from the node count the oscillation/feature hints actually produce,
  // so that each refinement step genuinely doubles the panel density.
  int start_nodes = std::max(cfg.u_order, 8);
  {
    const double feature = cfg.feature_scale > 0.0 ? cfg.feature_scale : kSqrtPi;
    const QuadratureRule probe = composite_gauss_legendre(
        -0.5 * kSqrtPi, 0.5 * kSqrtPi, start_nodes, feature, cfg.osc_rate_hint);
    start_nodes = static_cast<int>(probe.size());
  }
  for (int u_nodes = start_nodes; u_nodes <= std::max(cfg.max_u_order, 4 * start_nodes);
       u_nodes *= 2) {
    const LogicalDensityMatrix raw = dm_pass(psi, cfg, m_max, u_nodes);
    const LogicalDensityMatrix norm = raw.normalized();
    if (have_prev) {
      const double err = std::max(
          {std::abs(norm.rho00() - prev.rho00()), std::abs(norm.rho11() - prev.rho11()),
           std::abs(norm.rho01() - prev.rho01())});
      result.rho = norm;
      result.est_error = err;
      if (err <= cfg.rel_tol) {
        result.converged = true;
        return result;
      }
    }
    prev = norm;
    have_prev = true;
  }
  result.rho = prev;
  result.converged = false;
  return result;
}

}  // namespace gkpt

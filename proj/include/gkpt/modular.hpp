#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include "gkpt/gkp_states.hpp"

namespace gkpt {

/// Which comb peak anchors the gauge mode for logical bit 1. The default maps
/// |1>_L (x) |0,0>_G to |+sqrt(pi)>; the mirrored choice maps it to
/// |-sqrt(pi)> and reverses the +-n0 asymmetry of the cubic-gate families.
enum class GaugeOrigin { PlusSqrtPi, MinusSqrtPi };

/// Integer/fractional split of a position: x = sqrt(pi)*(2*m_tilde +- l) + u_tilde
/// (+ for PlusSqrtPi, - for MinusSqrtPi), with l in {0,1} and
/// u_tilde in [-sqrt(pi)/2, sqrt(pi)/2).
struct ModularCoords {
  int l;
  long long m_tilde;
  double u_tilde;
};

ModularCoords decompose_position(double x, GaugeOrigin origin = GaugeOrigin::PlusSqrtPi);
double reconstruct_position(const ModularCoords& c, GaugeOrigin origin = GaugeOrigin::PlusSqrtPi);

/// Position of the logical-bin center (2*m_tilde +- zeta)*sqrt(pi) under the
/// given origin convention.
double logical_bin_center(int zeta, long long m_tilde, GaugeOrigin origin);

/// 2x2 logical density matrix. Hermitian by construction: the (1,0) entry is
/// stored as the conjugate of (0,1).
class LogicalDensityMatrix {
 public:
  LogicalDensityMatrix() : r00_(0.0), r11_(0.0), r01_(0.0, 0.0) {}
  LogicalDensityMatrix(double r00, double r11, Complex r01)
      : r00_(r00), r11_(r11), r01_(r01) {}

  double rho00() const { return r00_; }
  double rho11() const { return r11_; }
  Complex rho01() const { return r01_; }
  Complex rho10() const { return std::conj(r01_); }

  double trace() const { return r00_ + r11_; }
  /// Trace-normalized copy. Throws std::domain_error on zero trace.
  LogicalDensityMatrix normalized() const;
  double min_eigenvalue() const;
  double max_abs_entry() const;

 private:
  double r00_;
  double r11_;
  Complex r01_;
};

/// <target| rho |target>; rho must be trace-normalized within tol and target
/// normalized. Invariant under a global phase of the target.
double logical_fidelity(const LogicalDensityMatrix& rho, const LogicalAmplitudes& target);

/// Quadrature settings for the gauge-trace integrals.
struct ModularConfig {
  int u_order = 64;           // starting nodes per u-bin
  int max_u_order = 1 << 15;  // refinement cap
  double envelope_floor = 1e-14;
  double rel_tol = 1e-6;
  long long m_range = 0;      // 0 = auto-scan for support
  double osc_rate_hint = 0.0; // known phase rate of the integrand (rad/unit)
  double feature_scale = 0.0; // known feature width; 0 = bin width
  GaugeOrigin origin = GaugeOrigin::PlusSqrtPi;
};

struct DmResult {
  LogicalDensityMatrix rho;
  double est_error = 0.0;  // max elementwise change in the last refinement
  bool converged = false;
};

/// rho_{zeta,eta} ~ sum_m integral du psi(bin(zeta,m)+u) conj(psi(bin(eta,m)+u)),
/// trace-normalized. Refines the u-quadrature (doubling density) until the
/// normalized entries move by less than rel_tol. Throws std::domain_error on
/// zero trace.
DmResult logical_dm_from_pure(const std::function<Complex(double)>& psi,
                              const ModularConfig& cfg = {});

}  // namespace gkpt

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkpt/gkp_states.hpp"
#include "gkpt/modular.hpp"

namespace gkpt {

/// Feedforward branch for a first-homodyne outcome:
/// kappa(q1) = floor(sqrt(2/pi) q1 + 1/2) mod 2, in {0, 1} for all real q1.
int kappa(double q1);

/// Rotation angle of the dynamic squeezing gate: arctan(kappa), so 0 or pi/4.
double theta(int kappa);

/// Raised when a quadrature refinement fails to meet the requested tolerance.
/// Carries the achieved error estimate.
struct AccuracyError : std::runtime_error {
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error(achieved) {}
  double achieved_error;
};

enum class Q1Mode {
  Analytic,          // per-cell Gaussian integrals in closed form (erf)
  PerCellQuadrature  // per-cell Gauss-Legendre, for cross-validation
};

/// Truncation and resolution of the nested integrals. Zeros mean "derive from
/// delta/sigma and the envelope floor".
struct QuadratureConfig {
  int q1_window_cells = 0;   // half-width of the q1 window, in sqrt(pi/2) cells
  int q1_nodes_per_cell = 0; // per-cell GL order (PerCellQuadrature mode)
  int u_nodes_per_bin = 64;
  int x3_order = 40;         // Gauss-Hermite order for the |Sq_sigma|^2 weight
  long long m_trunc = 0;     // max |m_tilde|
  double envelope_floor = 1e-14;
  double rel_tol = 1e-6;
  Q1Mode q1_mode = Q1Mode::Analytic;
};

/// One unnormalized element of Eq.-level triple integral for finite sigma.
/// Constant prefactors are dropped; they cancel under trace normalization.
Complex rho_element_finite(int zeta, int eta, double delta, double sigma,
                           const QuadratureConfig& cfg = {});

/// The sigma -> 0 limit (ideal ancillary squeezed vacuum).
Complex rho_element_ideal_ancilla(int zeta, int eta, double delta,
                                  const QuadratureConfig& cfg = {});

struct SigmaSpec {
  enum class Mode { Equal, Ideal, Explicit };
  Mode mode = Mode::Equal;
  double value = 0.0;

  static SigmaSpec equal() { return {Mode::Equal, 0.0}; }
  static SigmaSpec ideal() { return {Mode::Ideal, 0.0}; }
  static SigmaSpec explicit_value(double sigma);
  /// Parses "equal", "ideal" or "value:<sigma>".
  static SigmaSpec parse(const std::string& text);
  std::string name() const;
};

struct TgateDmResult {
  LogicalDensityMatrix rho;  // trace-normalized, Hermitian by construction
  double est_error = 0.0;    // max elementwise refinement change
  bool converged = false;
};

/// Assembles the logical density matrix of the T-gate output for the
/// equally-superposed input (a = b = 1/sqrt2) and the given ancilla mode.
TgateDmResult tgate_logical_dm(double delta, const SigmaSpec& sigma,
                               const QuadratureConfig& cfg = {});

/// <T| rho |T> for the assembled matrix. Throws AccuracyError when the
/// refinement certificate misses rel_tol.
double tgate_logical_fidelity(double delta, const SigmaSpec& sigma,
                              const QuadratureConfig& cfg = {});

struct SweepRow {
  double db = 0.0;
  double fidelity = 0.0;
  LogicalDensityMatrix rho;
  double est_error = 0.0;
  bool converged = false;
};

/// One row per squeezing level, in input order. Accuracy failures are flagged
/// per row; the sweep continues.
std::vector<SweepRow> fidelity_sweep(const std::vector<double>& db_values,
                                     const SigmaSpec& sigma,
                                     const QuadratureConfig& cfg = {});

}  // namespace gkpt

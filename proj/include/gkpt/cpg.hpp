#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkpt/gkp_states.hpp"
#include "gkpt/modular.hpp"

namespace gkpt {

/// Gains of the cubic, quadratic and linear phase terms of
/// exp{i pi [c0 (x/sqrt(pi))^3 + c1 (x/sqrt(pi))^2 + c2 (x/sqrt(pi))]}.
struct CpgGains {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Gains proposed in the original GKP construction: (1/2, 1/4, -1/2),
/// i.e. (n0, n1, n2) = (3, 2, 0).
CpgGains gkp_original_gains();
/// Optimized gains (-1/6, 1/4, 1/6), i.e. (n0, n1, n2) = (-1, 0, 0).
CpgGains optimized_gains();

/// Integer parameterization of the exact T-gate gain families.
struct IntegerGainTriple {
  int n0 = 0;
  int n1 = 0;
  int n2 = 0;

  /// (-n0 + 2 n1 + 4 n2) = 1 (mod 8).
  bool valid() const;
};

struct InvalidTripleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// c0 = n0/6, c1 = -n0/4 + n1/2, c2 = n2 - n0/6. Throws InvalidTripleError
/// when the congruence is violated.
CpgGains gains_from_integers(const IntegerGainTriple& t);

struct TgateConditionReport {
  bool passed = false;
  // first |s| <= s_range where f(s) or g(s) left the integers; 0 if none
  int first_failing_s = 0;
  std::string failed_condition;  // "f", "g", "h" or empty
};

/// Exact T-gate conditions on ideal combs: f(s) = 4c0 s^3 + 2c1 s^2 + c2 s and
/// g(s) = 6c0 s^2 + (3c0 + 2c1) s integral for all |s| <= s_range, and
/// 4(c0+c1+c2) = 1 (mod 8). Integer tests use tolerance 1e-9.
TgateConditionReport check_ideal_tgate_conditions(const CpgGains& g, int s_range);

/// Pure phase applied by the gate at position x.
Complex cpg_phase(double x, const CpgGains& g);

/// Gate output on the equally superposed approximate GKP input:
/// exp{i pi [...]} * psi_delta(x) with a = b = 1/sqrt2, unnormalized.
Complex cpg_output_wavefunction(double x, double delta, const CpgGains& g);

struct CpgFidelityResult {
  double fidelity = 0.0;
  LogicalDensityMatrix rho;
  double est_error = 0.0;
  bool converged = false;
};

/// Logical fidelity of the ideal cubic-phase-gate T gate on the approximate
/// input (ancilla non-idealities are not modeled). The modular quadrature is
/// seeded with the phase oscillation rate implied by the gains.
CpgFidelityResult cpg_logical_fidelity(double delta, const CpgGains& g,
                                       const ModularConfig& cfg = {});

struct IntRange {
  int lo = 0;
  int hi = 0;
};

struct GainSearchRow {
  IntegerGainTriple triple;
  CpgGains gains;
  double fidelity = 0.0;
  double est_error = 0.0;
};

struct EmptyResultError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluates every valid triple in the ranges and returns rows sorted by
/// descending fidelity (ties broken by the triple for determinism). Throws
/// EmptyResultError when no triple satisfies the congruence.
std::vector<GainSearchRow> gain_search(const IntRange& n0_range, const IntRange& n1_range,
                                       const IntRange& n2_range, double delta,
                                       const ModularConfig& cfg = {});

inline constexpr double kDistillationThreshold = 0.853;

enum class DistillationClass { Above, Below };

/// Strict comparison against the 0.853 magic-state distillation threshold.
DistillationClass classify_distillation(double fidelity);

}  // namespace gkpt

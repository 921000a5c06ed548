#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <utility>

#include "gkpt/gkp_states.hpp"

namespace gkpt {

/// Lattice step sqrt(pi) * 2^(half_log2/2). Beam splitters and the squeezer
/// change half_log2 only; positions stay exact integer multiples of the step,
/// which keeps all comb bookkeeping free of float comparisons.
struct LatticeStep {
  int half_log2 = 0;

  double value() const;
  bool operator==(const LatticeStep&) const = default;
};

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One-mode truncated Dirac comb: amplitudes on integer multiples of the step.
struct IdealComb1 {
  LatticeStep step;
  std::map<long long, Complex> amps;

  double norm2() const;
  /// Drops entries below `floor` in magnitude.
  IdealComb1 pruned(double floor = 1e-15) const;
};

/// Two-mode truncated Dirac comb on a common lattice.
struct IdealComb2 {
  LatticeStep step;
  std::map<std::pair<long long, long long>, Complex> amps;

  double norm2() const;
};

IdealComb2 tensor(const IdealComb1& first, const IdealComb1& second);

/// 50:50 beam splitter: basis point (x1, x2) -> ((-x1+x2)/sqrt2, (x1+x2)/sqrt2).
/// Output lattice step is input/sqrt2; exactly norm-preserving.
IdealComb2 beam_splitter_5050(const IdealComb2& state);

enum class CombMode { A, In };

/// Unnormalized conditional comb on the remaining mode after projecting the
/// measured mode onto the lattice point q1 = q1_index * step. Returns the zero
/// comb when q1 has no support.
IdealComb1 homodyne_x_condition(const IdealComb2& state, CombMode measured,
                                long long q1_index);
/// Same, validating that q1 lies on the lattice (throws LatticeError otherwise).
IdealComb1 homodyne_x_condition(const IdealComb2& state, CombMode measured, double q1);

/// Squeezer U_sq: x -> x/sqrt2 (uniform Jacobian factor dropped; it cancels in
/// normalized comparisons).
IdealComb1 apply_usq(const IdealComb1& state);

/// Displacement by x0, which must be an integer multiple of the lattice step.
IdealComb1 apply_displacement_x(const IdealComb1& state, double x0);

/// Shear P(kappa): amplitude at x gains exp(i kappa x^2 / 2).
IdealComb1 apply_shear(const IdealComb1& state, double kappa);

/// T applied peak-wise: e^{i pi/4} on odd multiples of sqrt(pi).
IdealComb1 apply_tgate_comb(const IdealComb1& state);

/// Ideal logical comb a|0_L> + b|1_L> truncated to |n| <= truncation on the
/// sqrt(pi) lattice.
IdealComb1 make_logical_comb(const LogicalAmplitudes& amps, int truncation);

/// Runs the beam-splitter + homodyne + feedforward pipeline for every
/// on-lattice measurement outcome with |index| <= truncation (covering both
/// kappa branches), aligns the global phase on the largest interior amplitude,
/// and returns the maximum deviation from T applied to the input comb.
/// Interior means |n| <= truncation - 2 on the sqrt(pi) lattice; the excluded
/// shell is where comb truncation bleeds.
double verify_tgate_identity(const LogicalAmplitudes& amps, int truncation);

}  // namespace gkpt

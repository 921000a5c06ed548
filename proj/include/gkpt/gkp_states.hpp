#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "gkpt/constants.hpp"

namespace gkpt {

using Complex = std::complex<double>;

/// Squeezing widths of the approximate states: `delta` is the GKP peak width,
/// `sigma` the width of the ancillary squeezed vacuum. sigma == 0 encodes the
/// ideal (infinitely squeezed) ancilla.
struct GkpParams {
  double delta;
  double sigma;

  GkpParams(double delta_, double sigma_) : delta(delta_), sigma(sigma_) {
    if (!(delta > 0.0)) throw std::invalid_argument("GkpParams: delta must be > 0");
    if (sigma < 0.0) throw std::invalid_argument("GkpParams: sigma must be >= 0");
  }
};

/// Squeezing level in dB for a peak width: -10*log10(2*delta^2).
double delta_to_db(double delta);
/// Peak width for a squeezing level in dB (inverse of delta_to_db).
double db_to_delta(double db);

/// Coefficients of |0_L> and |1_L>.
struct LogicalAmplitudes {
  Complex a;
  Complex b;

  LogicalAmplitudes normalized() const;
};

/// (|0> + e^{i pi/4} |1>)/sqrt(2), the magic state targeted by the T gate.
LogicalAmplitudes t_state();
/// (|0> + |1>)/sqrt(2).
LogicalAmplitudes plus_state();

/// Unnormalized wavefunction of the approximate GKP basis state: a comb of
/// Gaussian peaks of width delta at even (bit 0) or odd (bit 1) multiples of
/// sqrt(pi), each carrying the envelope weight exp(-pi k^2 delta^2) of its
/// peak index k. The sum runs over peak indices |k| <= 2*s_max + bit with
/// k = bit (mod 2), so the result is exactly even in x.
double gkp_basis_amplitude(int bit, double delta, double x, int s_max);

/// a*psi0(x) + b*psi1(x), unnormalized; peak indices truncated where the
/// envelope drops below 1e-14.
Complex superposition_amplitude(const LogicalAmplitudes& amps, double delta, double x);

/// exp(-x^2/(4 sigma^2)), unnormalized. The sigma -> 0 limit is handled
/// analytically by the fidelity evaluators, never here.
double squeezed_vacuum_amplitude(double sigma, double x);

/// Fast evaluator for a*psi0 + b*psi1 that visits only the peaks within reach
/// of x. Peak indices are truncated where exp(-pi k^2 delta^2) < envelope_floor.
class GkpWavefunction {
 public:
  GkpWavefunction(const LogicalAmplitudes& amps, double delta,
                  double envelope_floor = 1e-14);

  Complex operator()(double x) const;

  /// Envelope weight of peak k combined with the logical coefficient.
  Complex peak_coefficient(long long k) const;

  double delta() const { return delta_; }
  /// Largest peak index with envelope weight >= envelope_floor.
  long long max_peak_index() const { return max_peak_; }
  /// Half-width of the region around a peak where a single Gaussian still
  /// exceeds the floor.
  double peak_reach() const { return reach_; }

 private:
  LogicalAmplitudes amps_;
  double delta_;
  long long max_peak_;
  double reach_;
};

/// Integration settings for normalization_constant.
struct NormConfig {
  double half_width = 0.0;     // 0 = auto (derived from the comb truncation)
  double feature_scale = 0.0;  // 0 = auto
  double rel_tol = 1e-10;
  int min_nodes = 64;
};

/// N > 0 with N^2 * integral |psi|^2 dx = 1. Throws std::domain_error when the
/// norm integral is degenerate (< 1e-300).
double normalization_constant(const std::function<Complex(double)>& psi,
                              const NormConfig& cfg = {});

/// Envelope truncation: largest |k| with exp(-pi k^2 delta^2) >= floor.
long long envelope_peak_bound(double delta, double envelope_floor);

}  // namespace gkpt

#include "gkpt/gkp_states.hpp"

#include <cmath>

#include "gkpt/quadrature.hpp"

namespace gkpt {

double delta_to_db(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta_to_db: delta must be > 0");
  return -10.0 * std::log10(2.0 * delta * delta);
}

double db_to_delta(double db) {
  return std::sqrt(0.5 * std::pow(10.0, -db / 10.0));
}

LogicalAmplitudes LogicalAmplitudes::normalized() const {
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  if (n < 1e-300) throw std::domain_error("LogicalAmplitudes: zero state");
  return {a / n, b / n};
}

LogicalAmplitudes t_state() {
  const double r = 1.0 / kSqrt2;
  return {Complex(r, 0.0), std::polar(r, kPi / 4.0)};
}

LogicalAmplitudes plus_state() {
  const double r = 1.0 / kSqrt2;
  return {Complex(r, 0.0), Complex(r, 0.0)};
}

double gkp_basis_amplitude(int bit, double delta, double x, int s_max) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("gkp_basis_amplitude: bit must be 0 or 1");
  if (!(delta > 0.0)) throw std::invalid_argument("gkp_basis_amplitude: delta must be > 0");
  if (s_max < 1) throw std::invalid_argument("gkp_basis_amplitude: s_max must be >= 1");
  const double inv4d2 = 1.0 / (4.0 * delta * delta);
  const double env = kPi * delta * delta;
  double sum = 0.0;
  const long long bound = 2LL * s_max + bit;
  for (long long k = -bound; k <= bound; ++k) {
    if (((k % 2) + 2) % 2 != bit) continue;
    const double d = x - k * kSqrtPi;
    sum += std::exp(-env * static_cast<double>(k) * static_cast<double>(k) - d * d * inv4d2);
  }
  return sum;
}

Complex superposition_amplitude(const LogicalAmplitudes& amps, double delta, double x) {
  return GkpWavefunction(amps, delta)(x);
}

double squeezed_vacuum_amplitude(double sigma, double x) {
  if (!(sigma > 0.0)) throw std::invalid_argument("squeezed_vacuum_amplitude: sigma must be > 0");
  return std::exp(-x * x / (4.0 * sigma * sigma));
}

long long envelope_peak_bound(double delta, double envelope_floor) {
  if (!(envelope_floor > 0.0) || envelope_floor >= 1.0) {
    throw std::invalid_argument("envelope_peak_bound: floor must be in (0, 1)");
  }
  return static_cast<long long>(
      std::ceil(std::sqrt(-std::log(envelope_floor) / kPi) / delta));
}

GkpWavefunction::GkpWavefunction(const LogicalAmplitudes& amps, double delta,
                                 double envelope_floor)
    : amps_(amps), delta_(delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("GkpWavefunction: delta must be > 0");
  max_peak_ = envelope_peak_bound(delta, envelope_floor);
  // Single-peak reach at the same floor: exp(-d^2/(4 delta^2)) >= floor.
  reach_ = 2.0 * delta * std::sqrt(-std::log(envelope_floor));
}

Complex GkpWavefunction::peak_coefficient(long long k) const {
  const Complex coef = (((k % 2) + 2) % 2 == 0) ? amps_.a : amps_.b;
  const double kk = static_cast<double>(k);
  return coef * std::exp(-kPi * delta_ * delta_ * kk * kk);
}

Complex GkpWavefunction::operator()(double x) const {
  const double inv4d2 = 1.0 / (4.0 * delta_ * delta_);
  long long lo = static_cast<long long>(std::ceil((x - reach_) / kSqrtPi));
  long long hi = static_cast<long long>(std::floor((x + reach_) / kSqrtPi));
  lo = std::max(lo, -max_peak_);
  hi = std::min(hi, max_peak_);
  Complex sum(0.0, 0.0);
  for (long long k = lo; k <= hi; ++k) {
    const double d = x - k * kSqrtPi;
    sum += peak_coefficient(k) * std::exp(-d * d * inv4d2);
  }
  return sum;
}

double normalization_constant(const std::function<Complex(double)>& psi,
                              const NormConfig& cfg) {
  double half_width = cfg.half_width;
  double feature = cfg.feature_scale;
  if (half_width <= 0.0) half_width = 20.0;
  if (feature <= 0.0) feature = 0.05;

  double prev = -1.0;
  int nodes = std::max(cfg.min_nodes, 16);
  for (int iter = 0; iter < 8; ++iter) {
    const QuadratureRule rule =
        composite_gauss_legendre(-half_width, half_width, nodes, feature);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      integral += rule.weights[i] * std::norm(psi(rule.nodes[i]));
    }
    if (prev >= 0.0 && std::abs(integral - prev) <= cfg.rel_tol * std::abs(integral)) {
      if (integral < 1e-300) throw std::domain_error("normalization_constant: degenerate state");
      return 1.0 / std::sqrt(integral);
    }
    prev = integral;
    nodes *= 2;
  }
  if (prev < 1e-300) throw std::domain_error("normalization_constant: degenerate state");
  return 1.0 / std::sqrt(prev);
}

}  // namespace gkpt

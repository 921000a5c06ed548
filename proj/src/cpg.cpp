#include "gkpt/cpg.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace gkpt {

namespace {

bool near_integer(double v, double tol = 1e-9) {
  return std::abs(v - std::round(v)) <= tol;
}

long long positive_mod8(long long v) { return ((v % 8) + 8) % 8; }

}  // namespace

CpgGains gkp_original_gains() { return {0.5, 0.25, -0.5}; }
CpgGains optimized_gains() { return {-1.0 / 6.0, 0.25, 1.0 / 6.0}; }

bool IntegerGainTriple::valid() const {
  return positive_mod8(-static_cast<long long>(n0) + 2LL * n1 + 4LL * n2) == 1;
}

CpgGains gains_from_integers(const IntegerGainTriple& t) {
  if (!t.valid()) {
    throw InvalidTripleError("gains_from_integers: (-n0 + 2 n1 + 4 n2) mod 8 != 1");
  }
  return {t.n0 / 6.0, -t.n0 / 4.0 + t.n1 / 2.0, t.n2 - t.n0 / 6.0};
}

TgateConditionReport check_ideal_tgate_conditions(const CpgGains& g, int s_range) {
  if (s_range < 2) throw std::invalid_argument("check_ideal_tgate_conditions: s_range must be >= 2");
  TgateConditionReport report;
  // scan outward from s = 0 so the reported failure has the smallest |s|
  for (int a = 0; a <= s_range; ++a) {
    for (const int s : {a, -a}) {
      const double f = 4.0 * g.c0 * s * s * s + 2.0 * g.c1 * s * s + g.c2 * s;
      if (!near_integer(f)) {
        report.first_failing_s = s;
        report.failed_condition = "f";
        return report;
      }
      const double gg = 6.0 * g.c0 * s * s + (3.0 * g.c0 + 2.0 * g.c1) * s;
      if (!near_integer(gg)) {
        report.first_failing_s = s;
        report.failed_condition = "g";
        return report;
      }
      if (s == 0) break;
    }
  }
  const double h4 = 4.0 * (g.c0 + g.c1 + g.c2);
  if (!near_integer(h4) || positive_mod8(std::llround(h4)) != 1) {
    report.failed_condition = "h";
    return report;
  }
  report.passed = true;
  return report;
}

Complex cpg_phase(double x, const CpgGains& g) {
  const double t = x / kSqrtPi;
  return std::polar(1.0, kPi * (g.c0 * t * t * t + g.c1 * t * t + g.c2 * t));
}

Complex cpg_output_wavefunction(double x, double delta, const CpgGains& g) {
  return cpg_phase(x, g) * superposition_amplitude(plus_state(), delta, x);
}

namespace {

// Largest phase-derivative of the gate over the live comb support; used to
// seed the u-quadrature so the within-peak phase winding is resolved.
double max_phase_rate(double delta, const CpgGains& g, double envelope_floor) {
  const long long k = envelope_peak_bound(delta, envelope_floor) + 1;
  const double xmax = k * kSqrtPi;
  return 3.0 * std::abs(g.c0) * xmax * xmax / kSqrtPi +
         2.0 * std::abs(g.c1) * xmax + kPi * std::abs(g.c2) / kSqrtPi;
}

}  // namespace

CpgFidelityResult cpg_logical_fidelity(double delta, const CpgGains& g,
                                       const ModularConfig& cfg) {
  if (!(delta > 0.0)) throw std::invalid_argument("cpg_logical_fidelity: delta must be > 0");
  ModularConfig mc = cfg;
  if (mc.feature_scale <= 0.0) mc.feature_scale = delta;
  mc.osc_rate_hint = std::max(mc.osc_rate_hint, max_phase_rate(delta, g, mc.envelope_floor));
  const GkpWavefunction wave(plus_state(), delta, mc.envelope_floor);
  const auto psi = [&](double x) { return cpg_phase(x, g) * wave(x); };
  const DmResult dm = logical_dm_from_pure(psi, mc);
  CpgFidelityResult out;
  out.rho = dm.rho;
  out.est_error = dm.est_error;
  out.converged = dm.converged;
  out.fidelity = logical_fidelity(dm.rho, t_state());
  return out;
}

std::vector<GainSearchRow> gain_search(const IntRange& n0_range, const IntRange& n1_range,
                                       const IntRange& n2_range, double delta,
                                       const ModularConfig& cfg) {
  if (n0_range.lo > n0_range.hi || n1_range.lo > n1_range.hi || n2_range.lo > n2_range.hi) {
    throw std::invalid_argument("gain_search: empty integer range");
  }
  std::vector<GainSearchRow> rows;
  for (int n0 = n0_range.lo; n0 <= n0_range.hi; ++n0) {
    for (int n1 = n1_range.lo; n1 <= n1_range.hi; ++n1) {
      for (int n2 = n2_range.lo; n2 <= n2_range.hi; ++n2) {
        const IntegerGainTriple t{n0, n1, n2};
        if (!t.valid()) continue;
        GainSearchRow row;
        row.triple = t;
        row.gains = gains_from_integers(t);
        const CpgFidelityResult f = cpg_logical_fidelity(delta, row.gains, cfg);
        row.fidelity = f.fidelity;
        row.est_error = f.est_error;
        rows.push_back(row);
      }
    }
  }
  if (rows.empty()) {
    throw EmptyResultError("gain_search: no valid triple in the given ranges");
  }
  std::sort(rows.begin(), rows.end(), [](const GainSearchRow& a, const GainSearchRow& b) {
    if (a.fidelity != b.fidelity) return a.fidelity > b.fidelity;
    return std::tie(a.triple.n0, a.triple.n1, a.triple.n2) <
           std::tie(b.triple.n0, b.triple.n1, b.triple.n2);
  });
  return rows;
}

DistillationClass classify_distillation(double fidelity) {
  return fidelity > kDistillationThreshold ? DistillationClass::Above
                                           : DistillationClass::Below;
}

}  // namespace gkpt

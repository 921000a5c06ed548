#include "gkpt/tgate_fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "gkpt/quadrature.hpp"

namespace gkpt {

int kappa(double q1) {
  const long long m = static_cast<long long>(std::floor(q1 / kSqrtHalfPi + 0.5));
  return static_cast<int>(((m % 2) + 2) % 2);
}

double theta(int k) {
  if (k != 0 && k != 1) throw std::invalid_argument("theta: kappa must be 0 or 1");
  return k == 0 ? 0.0 : kPi / 4.0;
}

SigmaSpec SigmaSpec::explicit_value(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("SigmaSpec: explicit sigma must be > 0");
  return {Mode::Explicit, sigma};
}

SigmaSpec SigmaSpec::parse(const std::string& text) {
  if (text == "equal") return equal();
  if (text == "ideal") return ideal();
  if (text.rfind("value:", 0) == 0) {
    return explicit_value(std::stod(text.substr(6)));
  }
  throw std::invalid_argument("SigmaSpec: expected equal, ideal or value:<sigma>");
}

std::string SigmaSpec::name() const {
  switch (mode) {
    case Mode::Equal: return "equal";
    case Mode::Ideal: return "ideal";
    case Mode::Explicit: return "value:" + std::to_string(value);
  }
  return "?";
}

namespace {

// Measurement cells [w(k-1/2), w(k+1/2)) with w = sqrt(pi/2); kappa is the
// parity of k on each cell.
constexpr double kCell = kSqrtHalfPi;

struct ResolvedQuad {
  double delta = 0.0;
  double sigma = 0.0;  // <= 0 means the ideal-ancilla limit
  long long peak_bound = 0;
  long long m_lo = 0, m_hi = 0;
  QuadratureRule u_rule;
  QuadratureRule x3_rule;  // nodes in x3 (already scaled); {0} for ideal
  double window = 0.0;     // q1 half-width
  int q1_order = 0;        // per-cell GL order (quadrature mode)
  int d_max = 0;           // peak-offset bound in the pair expansion
  double floor = 0.0;
  Q1Mode q1_mode = Q1Mode::Analytic;
};

ResolvedQuad resolve(double delta, double sigma, const QuadratureConfig& cfg,
                     bool refined) {
  ResolvedQuad r;
  r.delta = delta;
  r.sigma = sigma;
  r.q1_mode = cfg.q1_mode;
  r.floor = refined ? std::pow(cfg.envelope_floor, 1.5) : cfg.envelope_floor;

  r.peak_bound = envelope_peak_bound(delta, r.floor);
  long long m_trunc = cfg.m_trunc > 0 ? cfg.m_trunc : r.peak_bound / 2 + 2;
  if (refined && cfg.m_trunc > 0) m_trunc += 2;
  r.m_lo = -m_trunc;
  r.m_hi = m_trunc;

  // Kappa-phase rate in u is at most sqrt(pi); comb features have width delta.
  // The refined rule genuinely doubles the node density of the base rule so
  // the certificate is meaningful even when the feature scale, not
  // u_nodes_per_bin, sets the panel count.
  const int u_min = std::max(cfg.u_nodes_per_bin, 8);
  const QuadratureRule u_base =
      composite_gauss_legendre(-0.5 * kSqrtPi, 0.5 * kSqrtPi, u_min, delta, kSqrtPi);
  r.u_rule = refined ? composite_gauss_legendre(-0.5 * kSqrtPi, 0.5 * kSqrtPi,
                                                static_cast<int>(2 * u_base.size()),
                                                delta, kSqrtPi)
                     : u_base;

  if (sigma > 0.0) {
    int order = cfg.x3_order;
    // Node spacing ~ sigma*pi/sqrt(n) must resolve comb features of width
    // delta*sqrt(2) along x3.
    const double ratio = sigma / delta;
    order = std::max(order, static_cast<int>(std::ceil(48.0 * ratio * ratio)));
    order = std::clamp(order, 4, 512);
    if (refined) order = std::min(2 * order, 1024);
    const QuadratureRule& gh = gauss_hermite(order);
    r.x3_rule.nodes.resize(gh.size());
    r.x3_rule.weights.resize(gh.size());
    const double scale = kSqrt2 * sigma;
    for (std::size_t i = 0; i < gh.size(); ++i) {
      r.x3_rule.nodes[i] = scale * gh.nodes[i];
      r.x3_rule.weights[i] = scale * gh.weights[i];
    }
  } else {
    r.x3_rule.nodes = {0.0};
    r.x3_rule.weights = {1.0};
  }

  int window_cells = cfg.q1_window_cells > 0
                         ? cfg.q1_window_cells
                         : static_cast<int>(2 * m_trunc + 3);
  if (refined) window_cells += 2;
  r.window = window_cells * kCell;

  int q1_order = cfg.q1_nodes_per_cell > 0
                     ? cfg.q1_nodes_per_cell
                     : std::max(24, static_cast<int>(std::ceil(5.5 / delta)));
  if (refined) q1_order *= 2;
  r.q1_order = std::min(q1_order, 2048);

  // Cross-peak suppression exp(-d^2 pi / (8 delta^2)) below the floor.
  r.d_max = static_cast<int>(
      std::floor(delta * std::sqrt(8.0 * -std::log(r.floor) / kPi)));
  return r;
}

double clipped_gauss(double mu, double delta, double lo, double hi) {
  // integral over [lo, hi] of exp(-(q - mu)^2 / delta^2)
  if (mu - 7.0 * delta >= lo && mu + 7.0 * delta <= hi) {
    return kSqrtPi * delta;
  }
  if (mu + 7.0 * delta <= lo || mu - 7.0 * delta >= hi) return 0.0;
  return 0.5 * kSqrtPi * delta *
         (std::erf((hi - mu) / delta) - std::erf((lo - mu) / delta));
}

// q1 integral of T(Az - sqrt2 q1) conj(T(Ae - sqrt2 q1)) over the window,
// split by the kappa parity of the cell: out[0] for kappa = 0, out[1] for 1.
// For diag = true only the total is needed and out[1] is left at zero.
void q1_integral_analytic(const GkpWavefunction& t_wave, const ResolvedQuad& r,
                          int zeta, int eta, double az, double ae, bool diag,
                          Complex out[2]) {
  out[0] = Complex(0.0);
  out[1] = Complex(0.0);
  const double delta = r.delta;
  const double reach = 7.0 * delta;
  const long long K = r.peak_bound;
  for (long long j = -K; j <= K; ++j) {
    const Complex cj = t_wave.peak_coefficient(j);
    if (std::abs(cj) < r.floor) continue;
    for (int d = -r.d_max; d <= r.d_max; ++d) {
      const long long jp = j - (zeta - eta) - d;
      if (jp < -K || jp > K) continue;
      const Complex cjp = std::conj(t_wave.peak_coefficient(jp));
      const double cross = std::exp(-d * d * kPi / (8.0 * delta * delta));
      const Complex amp = cj * cjp * cross;
      if (std::abs(amp) < r.floor * r.floor) continue;
      const double alpha = (az - j * kSqrtPi) / kSqrt2;
      const double beta = (ae - jp * kSqrtPi) / kSqrt2;
      const double mu = 0.5 * (alpha + beta);
      const double full = clipped_gauss(mu, delta, -r.window, r.window);
      if (full == 0.0) continue;
      if (diag) {
        out[0] += amp * full;
        continue;
      }
      // odd cells within reach; even share is the remainder of the total
      double odd = 0.0;
      const long long k_lo = static_cast<long long>(std::floor((mu - reach) / kCell + 0.5));
      const long long k_hi = static_cast<long long>(std::floor((mu + reach) / kCell + 0.5));
      for (long long k = k_lo; k <= k_hi; ++k) {
        if (((k % 2) + 2) % 2 == 0) continue;
        const double lo = std::max((k - 0.5) * kCell, -r.window);
        const double hi = std::min((k + 0.5) * kCell, r.window);
        if (hi <= lo) continue;
        odd += clipped_gauss(mu, delta, lo, hi);
      }
      out[0] += amp * (full - odd);
      out[1] += amp * odd;
    }
  }
}

void q1_integral_quadrature(const GkpWavefunction& t_wave, const ResolvedQuad& r,
                            double az, double ae, bool diag, Complex out[2]) {
  out[0] = Complex(0.0);
  out[1] = Complex(0.0);
  const long long cells = static_cast<long long>(std::floor(r.window / kCell + 0.5));
  const QuadratureRule& base = gauss_legendre(r.q1_order);
  // Prune cells beyond the comb support: T(a - sqrt2 q1) vanishes once
  // a - sqrt2 q1 leaves [-S, S].
  const double support =
      t_wave.max_peak_index() * kSqrtPi + t_wave.peak_reach() + 1.0;
  for (long long k = -cells; k <= cells; ++k) {
    const double center = k * kCell;
    const double lo = center - 0.5 * kCell;
    const double hi = center + 0.5 * kCell;
    const double s_lo = kSqrt2 * lo, s_hi = kSqrt2 * hi;
    const bool live_z = (az - s_hi) <= support && (az - s_lo) >= -support;
    const bool live_e = (ae - s_hi) <= support && (ae - s_lo) >= -support;
    if (!live_z || !live_e) continue;
    Complex cell_sum(0.0);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double q1 = mid + half * base.nodes[i];
      const Complex tz = t_wave(az - kSqrt2 * q1);
      const Complex te = std::conj(t_wave(ae - kSqrt2 * q1));
      cell_sum += half * base.weights[i] * tz * te;
    }
    if (diag) {
      out[0] += cell_sum;
    } else {
      out[((k % 2) + 2) % 2] += cell_sum;
    }
  }
}

Complex element_pass(int zeta, int eta, const ResolvedQuad& r) {
  const GkpWavefunction t_wave(LogicalAmplitudes{Complex(1.0), std::polar(1.0, kPi / 4.0)},
                               r.delta, r.floor);
  const GkpWavefunction psi_wave(LogicalAmplitudes{Complex(1.0), Complex(1.0)},
                                 r.delta, r.floor);
  const bool diag = (zeta == eta);
  const double skip = 1e-4 * r.floor;

  Complex total(0.0);
  for (long long mt = r.m_lo; mt <= r.m_hi; ++mt) {
    const double bin_z = (2 * mt + zeta) * kSqrtPi;
    const double bin_e = (2 * mt + eta) * kSqrtPi;
    Complex m_sum(0.0);
    for (std::size_t ui = 0; ui < r.u_rule.size(); ++ui) {
      const double u = r.u_rule.nodes[ui];
      const double wu = r.u_rule.weights[ui];
      const double bz = bin_z + u;
      const double be = bin_e + u;
      for (std::size_t xi = 0; xi < r.x3_rule.size(); ++xi) {
        const double x3 = r.x3_rule.nodes[xi];
        const double w3 = r.x3_rule.weights[xi];
        const double az = x3 / kSqrt2 + bz;
        const double ae = x3 / kSqrt2 + be;
        const Complex pref = psi_wave(az) * std::conj(psi_wave(ae)) * (wu * w3);
        if (std::abs(pref) < skip) continue;
        Complex h[2];
        if (r.q1_mode == Q1Mode::Analytic) {
          q1_integral_analytic(t_wave, r, zeta, eta, az, ae, diag, h);
        } else {
          q1_integral_quadrature(t_wave, r, az, ae, diag, h);
        }
        if (diag) {
          m_sum += pref * h[0];
        } else {
          const double cz = kSqrt2 * x3 + bz;
          const double ce = kSqrt2 * x3 + be;
          const double diff_phase = 0.5 * (cz * cz - ce * ce);
          m_sum += pref * (h[0] + std::polar(1.0, diff_phase) * h[1]);
        }
      }
    }
    total += m_sum;
  }
  return total;
}

Complex element(int zeta, int eta, double delta, double sigma,
                const QuadratureConfig& cfg, bool refined) {
  if ((zeta != 0 && zeta != 1) || (eta != 0 && eta != 1)) {
    throw std::invalid_argument("rho element: zeta/eta must be 0 or 1");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("rho element: delta must be > 0");
  return element_pass(zeta, eta, resolve(delta, sigma, cfg, refined));
}

LogicalDensityMatrix assemble(double delta, double sigma,
                              const QuadratureConfig& cfg, bool refined) {
  const Complex e00 = element(0, 0, delta, sigma, cfg, refined);
  const Complex e11 = element(1, 1, delta, sigma, cfg, refined);
  const Complex e01 = element(0, 1, delta, sigma, cfg, refined);
  return LogicalDensityMatrix(e00.real(), e11.real(), e01).normalized();
}

double resolve_sigma(double delta, const SigmaSpec& spec) {
  switch (spec.mode) {
    case SigmaSpec::Mode::Equal: return delta;
    case SigmaSpec::Mode::Ideal: return 0.0;
    case SigmaSpec::Mode::Explicit:
      if (!(spec.value > 0.0)) throw std::invalid_argument("SigmaSpec: sigma must be > 0");
      return spec.value;
  }
  throw std::logic_error("SigmaSpec: bad mode");
}

}  // namespace

Complex rho_element_finite(int zeta, int eta, double delta, double sigma,
                           const QuadratureConfig& cfg) {
  if (!(sigma > 0.0)) throw std::invalid_argument("rho_element_finite: sigma must be > 0");
  return element(zeta, eta, delta, sigma, cfg, false);
}

Complex rho_element_ideal_ancilla(int zeta, int eta, double delta,
                                  const QuadratureConfig& cfg) {
  return element(zeta, eta, delta, 0.0, cfg, false);
}

TgateDmResult tgate_logical_dm(double delta, const SigmaSpec& sigma,
                               const QuadratureConfig& cfg) {
  const double s = resolve_sigma(delta, sigma);
  const LogicalDensityMatrix base = assemble(delta, s, cfg, false);
  const LogicalDensityMatrix fine = assemble(delta, s, cfg, true);
  TgateDmResult out;
  out.rho = fine;
  out.est_error = std::max({std::abs(fine.rho00() - base.rho00()),
                            std::abs(fine.rho11() - base.rho11()),
                            std::abs(fine.rho01() - base.rho01())});
  out.converged = out.est_error <= cfg.rel_tol;
  return out;
}

double tgate_logical_fidelity(double delta, const SigmaSpec& sigma,
                              const QuadratureConfig& cfg) {
  const TgateDmResult dm = tgate_logical_dm(delta, sigma, cfg);
  if (!dm.converged) {
    throw AccuracyError("tgate_logical_fidelity: refinement certificate missed rel_tol",
                        dm.est_error);
  }
  return logical_fidelity(dm.rho, t_state());
}

std::vector<SweepRow> fidelity_sweep(const std::vector<double>& db_values,
                                     const SigmaSpec& sigma,
                                     const QuadratureConfig& cfg) {
  std::vector<SweepRow> rows;
  rows.reserve(db_values.size());
  for (const double db : db_values) {
    SweepRow row;
    row.db = db;
    const TgateDmResult dm = tgate_logical_dm(db_to_delta(db), sigma, cfg);
    row.rho = dm.rho;
    row.est_error = dm.est_error;
    row.converged = dm.converged;
    row.fidelity = logical_fidelity(dm.rho, t_state());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gkpt

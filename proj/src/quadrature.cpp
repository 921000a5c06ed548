#include "gkpt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gkpt {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Newton iteration on Legendre polynomials, roots seeded by the Chebyshev
// approximation. Standard Golub-Welsch alternative is not needed at these
// orders.
QuadratureRule make_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// Eigenvalues of a symmetric tridiagonal matrix by the implicit QL method
// with Wilkinson shifts (diagonal d, off-diagonal e; e[0] unused).
void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw std::runtime_error("tridiagonal_eigenvalues: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && m - 1 >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Golub-Welsch nodes from the Hermite Jacobi matrix, then one Newton polish
// with the orthonormal recurrence to recover machine precision and weights.
QuadratureRule make_gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  for (int k = 1; k < n; ++k) e[k] = std::sqrt(0.5 * k);
  tridiagonal_eigenvalues(d, e);
  std::sort(d.begin(), d.end());

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = d[i];
    double pp = 0.0;
    for (int it = 0; it < 8; ++it) {
      double p1 = std::pow(kPi, -0.25);
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      if (!std::isfinite(pp) || pp == 0.0) break;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    // weights at extreme nodes can underflow for very high orders; they are
    // far below any integrand scale and flush to zero
    const double ppsq = pp * pp;
    rule.weights[i] = (std::isfinite(ppsq) && ppsq > 0.0) ? 2.0 / ppsq : 0.0;
  }
  // enforce exact symmetry
  for (int i = 0; i < n / 2; ++i) {
    const double node = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[n - 1 - i] = node;
    rule.nodes[i] = -node;
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

template <typename Maker>
const QuadratureRule& cached_rule(std::map<int, QuadratureRule>& cache,
                                  std::mutex& mu, int n, Maker maker) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, maker(n)).first;
  return it->second;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mu;
  return cached_rule(cache, mu, n, make_gauss_legendre);
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  const QuadratureRule& base = gauss_legendre(n);
  QuadratureRule rule;
  rule.nodes.resize(base.size());
  rule.weights.resize(base.size());
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < base.size(); ++i) {
    rule.nodes[i] = mid + half * base.nodes[i];
    rule.weights[i] = half * base.weights[i];
  }
  return rule;
}

const QuadratureRule& gauss_hermite(int n) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mu;
  return cached_rule(cache, mu, n, make_gauss_hermite);
}

QuadratureRule composite_gauss_legendre(double a, double b, int min_nodes,
                                        double feature_scale, double phase_rate,
                                        int panel_order) {
  if (!(b > a)) throw std::invalid_argument("composite_gauss_legendre: empty interval");
  if (panel_order < 2) panel_order = 2;
  const double width = b - a;
  // Panel budget: ~4 panel nodes per feature width, ~6 per oscillation period.
  double max_panel = width;
  if (feature_scale > 0.0) {
    max_panel = std::min(max_panel, feature_scale * (panel_order / 4.0));
  }
  if (phase_rate > 0.0) {
    const double period = 2.0 * kPi / phase_rate;
    max_panel = std::min(max_panel, period * (panel_order / 6.0));
  }
  int panels = static_cast<int>(std::ceil(width / max_panel));
  if (min_nodes > 0) {
    panels = std::max(panels, (min_nodes + panel_order - 1) / panel_order);
  }
  panels = std::clamp(panels, 1, 1 << 20);

  const QuadratureRule& base = gauss_legendre(panel_order);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * panel_order);
  rule.weights.reserve(static_cast<std::size_t>(panels) * panel_order);
  const double h = width / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < base.size(); ++i) {
      rule.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return rule;
}

}  // namespace gkpt

#pragma once

#include <cstddef>
#include <vector>

namespace gkpt {

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1]. Results are cached per order.
const QuadratureRule& gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// n-point Gauss-Hermite rule for the weight exp(-t^2) on the real line
/// (physicists' convention). Results are cached per order.
const QuadratureRule& gauss_hermite(int n);

/// Composite Gauss-Legendre rule on [a, b]. Panel widths are chosen so that
/// features of width `feature_scale` and oscillations of angular rate
/// `phase_rate` (rad per unit length) are resolved by `panel_order` nodes per
/// panel. `min_nodes` sets a floor on the total node count.
QuadratureRule composite_gauss_legendre(double a, double b, int min_nodes,
                                        double feature_scale,
                                        double phase_rate = 0.0,
                                        int panel_order = 12);

}  // namespace gkpt

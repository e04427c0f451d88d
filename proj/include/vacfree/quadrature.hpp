#pragma once

#include <vector>

namespace vacfree {

// n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

// Composite Gauss-Legendre in r over consecutive panels, times an equispaced angular
// rule with M points and weight 2pi/M. The angular rule integrates e^{i m theta}
// exactly for |m| < M.
class QuadratureGrid {
 public:
  QuadratureGrid(std::vector<double> edges, int order, int angular);

  // ceil-ish uniform panels on [0, R].
  static QuadratureGrid uniform(double R, int panels, int order, int angular);

  // Every panel split in two; same order and angular count.
  QuadratureGrid refined() const;

  const std::vector<double>& edges() const { return edges_; }
  const std::vector<double>& radial_nodes() const { return nodes_; }
  const std::vector<double>& radial_weights() const { return weights_; }
  int order() const { return order_; }
  int angular() const { return angular_; }
  double radius() const { return edges_.back(); }

  double angle(int j) const;
  double angular_weight() const;

 private:
  std::vector<double> edges_;
  int order_;
  int angular_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace vacfree

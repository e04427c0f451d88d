#include "vacfree/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "vacfree/errors.hpp"

namespace vacfree {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) {
    throw ConfigError("Gauss-Legendre order must be >= 1");
  }
  GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n via the three-term recurrence.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) {
        break;
      }
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // ascending order
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

QuadratureGrid::QuadratureGrid(std::vector<double> edges, int order, int angular)
    : edges_(std::move(edges)), order_(order), angular_(angular) {
  if (edges_.size() < 2) {
    throw ConfigError("quadrature grid needs at least one panel");
  }
  if (angular_ < 1) {
    throw ConfigError("angular point count must be >= 1");
  }
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) {
      throw ConfigError("quadrature panel edges must be strictly increasing");
    }
  }
  const GaussLegendreRule rule = gauss_legendre(order_);
  nodes_.reserve((edges_.size() - 1) * order_);
  weights_.reserve(nodes_.capacity());
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    const double half = 0.5 * (edges_[i] - edges_[i - 1]);
    const double mid = 0.5 * (edges_[i] + edges_[i - 1]);
    for (int j = 0; j < order_; ++j) {
      nodes_.push_back(mid + half * rule.nodes[j]);
      weights_.push_back(half * rule.weights[j]);
    }
  }
}

QuadratureGrid QuadratureGrid::uniform(double R, int panels, int order, int angular) {
  if (!(R > 0.0) || panels < 1) {
    throw ConfigError("uniform grid needs R > 0 and at least one panel");
  }
  std::vector<double> edges(panels + 1);
  for (int i = 0; i <= panels; ++i) {
    edges[i] = R * i / panels;
  }
  edges.back() = R;
  return QuadratureGrid(std::move(edges), order, angular);
}

QuadratureGrid QuadratureGrid::refined() const {
  std::vector<double> edges;
  edges.reserve(2 * edges_.size() - 1);
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    edges.push_back(edges_[i]);
    edges.push_back(0.5 * (edges_[i] + edges_[i + 1]));
  }
  edges.push_back(edges_.back());
  return QuadratureGrid(std::move(edges), order_, angular_);
}

double QuadratureGrid::angle(int j) const { return 2.0 * std::numbers::pi * j / angular_; }

double QuadratureGrid::angular_weight() const { return 2.0 * std::numbers::pi / angular_; }

}  // namespace vacfree

#include "spectral.h"

#include <Eigen/Dense>
#include <cmath>

namespace odo {

namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<int>>& a) {
  int n = static_cast<int>(a.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a[i][j];
  return m;
}

}  // namespace

double graph_norm(const BigraphWithDuals& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(g.adjacency()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double graph_norm(const std::vector<Matrix>& matrices) {
  BigraphWithDuals g;
  g.matrices = matrices;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(g.adjacency()),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double quantum_integer(int n, double q) {
  return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}

double q_of_norm(double norm) {
  return (norm + std::sqrt(norm * norm - 4.0)) / 2.0;
}

std::optional<double> DimensionSolution::evaluate(const DimFunctional& f) const {
  if (!consistent) return std::nullopt;
  double v = 0;
  for (auto [idx, c] : f) v += c * values[idx];
  // Determined iff the functional annihilates the kernel.
  for (const auto& k : kernel) {
    double dot = 0;
    for (auto [idx, c] : f) dot += c * k[idx];
    if (std::abs(dot) > 1e-8) return std::nullopt;
  }
  return v;
}

DimensionSolution dimension_vector(const BigraphWithDuals& g, double q) {
  double delta = q + 1.0 / q;
  auto adj = g.adjacency();
  int n = g.vertex_count();
  int interior = n - g.rank(g.depth());  // vertices of depth < depth(g)
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(1 + interior, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(1 + interior);
  e(0, 0) = 1;  // root dimension is 1
  b(0) = 1;
  for (int v = 0; v < interior; ++v) {
    e(1 + v, v) = delta;
    for (int w = 0; w < n; ++w) e(1 + v, w) -= adj[v][w];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(e);
  lu.setThreshold(1e-9);
  DimensionSolution sol;
  Eigen::VectorXd x = lu.solve(b);
  sol.consistent = (e * x - b).norm() < 1e-6 * (1.0 + b.norm());
  sol.values.assign(x.data(), x.data() + n);
  Eigen::MatrixXd k = lu.kernel();
  sol.known.assign(n, 1);
  if (lu.dimensionOfKernel() > 0) {
    for (int c = 0; c < k.cols(); ++c) {
      std::vector<double> col(n);
      for (int i = 0; i < n; ++i) col[i] = k(i, c);
      sol.kernel.push_back(std::move(col));
    }
    for (int i = 0; i < n; ++i)
      for (const auto& col : sol.kernel)
        if (std::abs(col[i]) > 1e-8) sol.known[i] = 0;
  }
  if (!sol.consistent) sol.known.assign(n, 0);
  return sol;
}

ScreenResult dimension_screen(const BigraphWithDuals& g, const DimFunctional& f,
                              double q_lo, double q_hi, double lo, double hi,
                              int samples) {
  ScreenResult r;
  bool first = true;
  double step = (q_hi - q_lo) / samples;
  for (int i = 0; i < samples; ++i) {
    double q = q_lo + (i + 0.5) * step;  // open interval: midpoints only
    auto sol = dimension_vector(g, q);
    auto v = sol.evaluate(f);
    if (!v) {
      r.determined = false;
      r.holds = false;
      continue;
    }
    if (first || *v < r.min_value) {
      r.min_value = *v;
      r.argmin_q = q;
    }
    if (first || *v > r.max_value) {
      r.max_value = *v;
      r.argmax_q = q;
    }
    first = false;
    if (!(*v > lo && *v < hi)) r.holds = false;
  }
  if (first) r.holds = false;
  return r;
}

}  // namespace odo

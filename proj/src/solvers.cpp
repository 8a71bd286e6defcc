#include "ltrex/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltrex {

namespace {

void check_inputs(const std::vector<std::vector<double>>& Z,
                  const std::vector<double>& y,
                  const std::vector<double>& w) {
  if (Z.empty() || Z.size() != y.size() || Z.size() != w.size())
    throw std::invalid_argument("design/target/weight length mismatch");
  const std::size_t d = Z[0].size();
  for (const auto& row : Z)
    if (row.size() != d) throw std::invalid_argument("ragged design matrix");
  double sum = 0.0;
  for (double wi : w) {
    if (wi < 0.0) throw std::invalid_argument("negative sample weight");
    sum += wi;
  }
  if (!(sum > 0.0))
    throw std::invalid_argument("sample weights must have positive sum");
}

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

}  // namespace

SurrogateFit fit_weighted_lasso(const std::vector<std::vector<double>>& Z,
                                const std::vector<double>& y,
                                const std::vector<double>& sample_weights,
                                double alpha, double tol, int max_iter) {
  check_inputs(Z, y, sample_weights);
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");

  const std::size_t n = Z.size();
  const std::size_t d = Z[0].size();
  const auto& w = sample_weights;
  double weight_sum = 0.0;
  for (double wi : w) weight_sum += wi;

  std::vector<double> col_sq(d, 0.0);  // sum_j w_j z_jk^2
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < d; ++k) col_sq[k] += w[j] * Z[j][k] * Z[j][k];

  SurrogateFit fit;
  fit.weights.assign(d, 0.0);
  fit.intercept = 0.0;
  std::vector<double> residual(y);  // y_j - b - theta . z_j

  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    double max_change = 0.0;

    double mean_residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) mean_residual += w[j] * residual[j];
    mean_residual /= weight_sum;
    fit.intercept += mean_residual;
    for (std::size_t j = 0; j < n; ++j) residual[j] -= mean_residual;
    max_change = std::abs(mean_residual);

    for (std::size_t k = 0; k < d; ++k) {
      if (col_sq[k] == 0.0) continue;  // feature unseen under the weights
      double rho = fit.weights[k] * col_sq[k];
      for (std::size_t j = 0; j < n; ++j)
        rho += w[j] * Z[j][k] * residual[j];
      const double updated = soft_threshold(rho, alpha / 2.0) / col_sq[k];
      const double delta = updated - fit.weights[k];
      if (delta != 0.0) {
        for (std::size_t j = 0; j < n; ++j) residual[j] -= delta * Z[j][k];
        fit.weights[k] = updated;
      }
      max_change = std::max(max_change, std::abs(delta));
    }

    fit.iterations_used = sweep;
    if (max_change < tol) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

double lasso_objective(const std::vector<std::vector<double>>& Z,
                       const std::vector<double>& y,
                       const std::vector<double>& sample_weights, double alpha,
                       const std::vector<double>& weights, double intercept) {
  double loss = 0.0;
  for (std::size_t j = 0; j < Z.size(); ++j) {
    double pred = intercept;
    for (std::size_t k = 0; k < weights.size(); ++k)
      pred += weights[k] * Z[j][k];
    const double r = pred - y[j];
    loss += sample_weights[j] * r * r;
  }
  double penalty = 0.0;
  for (double t : weights) penalty += std::abs(t);
  return loss + alpha * penalty;
}

SurrogateFit fit_weighted_linear_svr(const std::vector<std::vector<double>>& Z,
                                     const std::vector<double>& y,
                                     const std::vector<double>& sample_weights,
                                     double C, double epsilon,
                                     double learning_rate, int max_iter) {
  check_inputs(Z, y, sample_weights);
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  if (epsilon < 0.0)
    throw std::invalid_argument("epsilon must be non-negative");
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("learning_rate must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");

  const std::size_t n = Z.size();
  const std::size_t d = Z[0].size();
  const auto& w = sample_weights;

  std::vector<double> theta(d, 0.0);
  double b = 0.0;
  std::vector<double> best_theta(theta);
  double best_b = b;
  double best_obj = std::numeric_limits<double>::infinity();

  std::vector<double> grad(d, 0.0);
  for (int t = 1; t <= max_iter + 1; ++t) {
    // Objective and subgradient of the current iterate in one pass.
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    double hinge_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double pred = b;
      for (std::size_t k = 0; k < d; ++k) pred += theta[k] * Z[j][k];
      const double r = pred - y[j];
      const double excess = std::abs(r) - epsilon;
      if (excess > 0.0) {
        hinge_sum += w[j] * excess;
        const double s = r > 0.0 ? 1.0 : -1.0;
        for (std::size_t k = 0; k < d; ++k) grad[k] += w[j] * s * Z[j][k];
        grad_b += w[j] * s;
      }
    }
    double norm_sq = 0.0;
    for (double tk : theta) norm_sq += tk * tk;
    const double obj = 0.5 * norm_sq + C * hinge_sum;
    if (obj < best_obj) {
      best_obj = obj;
      best_theta = theta;
      best_b = b;
    }
    if (t > max_iter) break;  // final iterate scored, no further step

    const double step = learning_rate / std::sqrt(static_cast<double>(t));
    for (std::size_t k = 0; k < d; ++k)
      theta[k] -= step * (theta[k] + C * grad[k]);
    b -= step * C * grad_b;
  }

  SurrogateFit fit;
  fit.weights = std::move(best_theta);
  fit.intercept = best_b;
  fit.converged = true;
  fit.iterations_used = max_iter;
  return fit;
}

double svr_objective(const std::vector<std::vector<double>>& Z,
                     const std::vector<double>& y,
                     const std::vector<double>& sample_weights, double C,
                     double epsilon, const std::vector<double>& weights,
                     double intercept) {
  double hinge_sum = 0.0;
  for (std::size_t j = 0; j < Z.size(); ++j) {
    double pred = intercept;
    for (std::size_t k = 0; k < weights.size(); ++k)
      pred += weights[k] * Z[j][k];
    const double excess = std::abs(pred - y[j]) - epsilon;
    if (excess > 0.0) hinge_sum += sample_weights[j] * excess;
  }
  double norm_sq = 0.0;
  for (double t : weights) norm_sq += t * t;
  return 0.5 * norm_sq + C * hinge_sum;
}

}  // namespace ltrex

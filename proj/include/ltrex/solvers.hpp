#pragma once

#include <vector>

namespace ltrex {

struct SurrogateFit {
  std::vector<double> weights;
  double intercept = 0.0;
  bool converged = false;
  int iterations_used = 0;
};

// Minimizes sum_j w_j * (theta . z_j + b - y_j)^2 + alpha * sum|theta| by
// cyclic coordinate descent with soft-thresholding. The intercept is
// unpenalized and refreshed each sweep as the weighted mean of residuals.
// Converged once the largest coordinate change in a sweep drops below tol.
SurrogateFit fit_weighted_lasso(const std::vector<std::vector<double>>& Z,
                                const std::vector<double>& y,
                                const std::vector<double>& sample_weights,
                                double alpha, double tol, int max_iter);

double lasso_objective(const std::vector<std::vector<double>>& Z,
                       const std::vector<double>& y,
                       const std::vector<double>& sample_weights, double alpha,
                       const std::vector<double>& weights, double intercept);

// Minimizes 0.5*||theta||^2 + C * sum_j w_j * max(0, |theta . z_j + b - y_j|
// - epsilon) by full-batch subgradient descent from zero with step
// learning_rate / sqrt(t). Runs exactly max_iter steps and returns the
// visited iterate (including the start) with the lowest objective.
SurrogateFit fit_weighted_linear_svr(const std::vector<std::vector<double>>& Z,
                                     const std::vector<double>& y,
                                     const std::vector<double>& sample_weights,
                                     double C, double epsilon,
                                     double learning_rate, int max_iter);

double svr_objective(const std::vector<std::vector<double>>& Z,
                     const std::vector<double>& y,
                     const std::vector<double>& sample_weights, double C,
                     double epsilon, const std::vector<double>& weights,
                     double intercept);

}  // namespace ltrex

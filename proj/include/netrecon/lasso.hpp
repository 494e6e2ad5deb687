#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "netrecon/problem.hpp"

namespace netrecon {

/// Objective: (1/(2M)) ||y - Xw||^2 + lambda ||w||_1, so lambda_max =
/// ||X^T y||_inf / M and grids are comparable across sample sizes.
struct LassoOptions {
    int n_lambdas = 100;
    double lambda_min_ratio = 1e-3;
    int k_folds = 5;
    double tol = 1e-7;
    int max_iters = 100000;
    bool standardize = true;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LassoPathEntry {
    double lambda = 0.0;
    Eigen::VectorXd coef;
};

struct LassoCvRow {
    double lambda = 0.0;
    double mean_mse = 0.0;
    double se_mse = 0.0;
};

struct LassoCvResult {
    double best_lambda = 0.0;
    Eigen::VectorXd coef;
    std::vector<LassoCvRow> cv_table;
};

std::vector<double> lasso_lambda_grid(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                      const LassoOptions& opts);

/// Cyclic coordinate descent with soft thresholding, warm-started down a
/// log-spaced lambda grid. Pass an explicit grid to reuse one across CV
/// folds.
std::vector<LassoPathEntry> lasso_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                       const LassoOptions& opts,
                                       const std::vector<double>& lambda_grid = {});

/// Single-lambda fit from a zero start; returns the penalized objective
/// after each coordinate-descent sweep.
std::vector<double> lasso_objective_trace(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                          double lambda, const LassoOptions& opts);

LassoCvResult lasso_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LassoOptions& opts);

ReconstructionResult lasso_reconstruct(const TimeSeriesPanel& panel, const LassoOptions& opts);

void write_cv_table(const std::vector<LassoCvRow>& table, const std::string& path);

}  // namespace netrecon

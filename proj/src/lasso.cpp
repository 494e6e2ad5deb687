#include "netrecon/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace netrecon {

namespace {

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

struct GramProblem {
    Eigen::MatrixXd gram;     // X_s^T X_s / M on the (possibly standardized) scale
    Eigen::VectorXd xty;      // X_s^T y / M
    Eigen::VectorXd scale;    // column scales; original coef = standardized coef / scale
    double yty_over_m = 0.0;
    int m = 0;
};

GramProblem make_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, bool standardize) {
    if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("lasso inputs must be finite");
    if (X.rows() < 1 || X.cols() < 1 || X.rows() != y.size())
        throw std::invalid_argument("lasso inputs have invalid shape");
    GramProblem g;
    g.m = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    g.scale = Eigen::VectorXd::Ones(p);
    if (standardize) {
        for (int j = 0; j < p; ++j) {
            const double rms = std::sqrt(X.col(j).squaredNorm() / g.m);
            if (rms > 0.0) g.scale(j) = rms;
        }
    }
    const Eigen::MatrixXd xs = X * g.scale.cwiseInverse().asDiagonal();
    g.gram = (xs.transpose() * xs) / g.m;
    g.xty = (xs.transpose() * y) / g.m;
    g.yty_over_m = y.squaredNorm() / g.m;
    return g;
}

double kkt_residual(const GramProblem& g, const Eigen::VectorXd& w, const Eigen::VectorXd& q,
                    double lambda) {
    double worst = 0.0;
    for (int j = 0; j < w.size(); ++j) {
        const double grad = q(j) - g.xty(j);
        const double viol = w(j) != 0.0 ? std::abs(grad + lambda * (w(j) > 0 ? 1.0 : -1.0))
                                        : std::max(0.0, std::abs(grad) - lambda);
        worst = std::max(worst, viol);
    }
    return worst;
}

/// One lasso fit at fixed lambda, warm-started from w (standardized
/// scale). q must equal gram * w on entry and is kept in sync.
void fit_at_lambda(const GramProblem& g, double lambda, const LassoOptions& opts,
                   Eigen::VectorXd& w, Eigen::VectorXd& q, std::vector<double>* objective_trace) {
    const int p = static_cast<int>(w.size());
    for (int sweep = 0; sweep < opts.max_iters; ++sweep) {
        double max_change = 0.0;
        for (int j = 0; j < p; ++j) {
            const double gjj = g.gram(j, j);
            if (gjj <= 0.0) continue;  // all-zero column stays at zero
            const double rho = g.xty(j) - q(j) + gjj * w(j);
            const double updated = soft_threshold(rho, lambda) / gjj;
            const double delta = updated - w(j);
            if (delta != 0.0) {
                q += g.gram.col(j) * delta;
                w(j) = updated;
                max_change = std::max(max_change, std::abs(delta));
            }
        }
        if (objective_trace) {
            const double quad = 0.5 * (g.yty_over_m - 2.0 * w.dot(g.xty) + w.dot(q));
            objective_trace->push_back(quad + lambda * w.lpNorm<1>());
        }
        if (max_change < opts.tol && kkt_residual(g, w, q, lambda) <= 10.0 * opts.tol) return;
    }
}

std::vector<double> grid_from_gram(const GramProblem& g, const LassoOptions& opts) {
    const double lambda_max = g.xty.cwiseAbs().maxCoeff();
    std::vector<double> grid(opts.n_lambdas);
    if (lambda_max <= 0.0) {
        std::fill(grid.begin(), grid.end(), 0.0);
        return grid;
    }
    if (opts.n_lambdas == 1) {
        grid[0] = lambda_max;
        return grid;
    }
    const double log_max = std::log(lambda_max);
    const double log_min = std::log(lambda_max * opts.lambda_min_ratio);
    for (int i = 0; i < opts.n_lambdas; ++i)
        grid[i] = std::exp(log_max + (log_min - log_max) * i / (opts.n_lambdas - 1));
    return grid;
}

std::vector<LassoPathEntry> path_on_gram(const GramProblem& g, const LassoOptions& opts,
                                         const std::vector<double>& grid) {
    const int p = static_cast<int>(g.gram.rows());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(p);
    std::vector<LassoPathEntry> path;
    path.reserve(grid.size());
    for (double lambda : grid) {
        fit_at_lambda(g, lambda, opts, w, q, nullptr);
        LassoPathEntry entry;
        entry.lambda = lambda;
        entry.coef = w.cwiseQuotient(g.scale);
        path.push_back(std::move(entry));
    }
    return path;
}

}  // namespace

void LassoOptions::validate() const {
    if (n_lambdas < 1 || max_iters < 1) throw std::invalid_argument("n_lambdas and max_iters must be positive");
    if (lambda_min_ratio <= 0.0 || lambda_min_ratio >= 1.0)
        throw std::invalid_argument("lambda_min_ratio must be in (0,1)");
    if (k_folds < 2) throw std::invalid_argument("k_folds must be >= 2");
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
}

std::vector<double> lasso_lambda_grid(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                      const LassoOptions& opts) {
    opts.validate();
    return grid_from_gram(make_gram(X, y, opts.standardize), opts);
}

std::vector<LassoPathEntry> lasso_path(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                       const LassoOptions& opts,
                                       const std::vector<double>& lambda_grid) {
    opts.validate();
    const GramProblem g = make_gram(X, y, opts.standardize);
    return path_on_gram(g, opts, lambda_grid.empty() ? grid_from_gram(g, opts) : lambda_grid);
}

std::vector<double> lasso_objective_trace(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                          double lambda, const LassoOptions& opts) {
    opts.validate();
    const GramProblem g = make_gram(X, y, opts.standardize);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(g.gram.rows());
    Eigen::VectorXd q = Eigen::VectorXd::Zero(g.gram.rows());
    std::vector<double> trace;
    fit_at_lambda(g, lambda, opts, w, q, &trace);
    return trace;
}

LassoCvResult lasso_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const LassoOptions& opts) {
    opts.validate();
    const int m = static_cast<int>(X.rows());
    if (m < opts.k_folds) throw std::invalid_argument("need at least k_folds samples");

    const std::vector<double> grid = lasso_lambda_grid(X, y, opts);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(opts.seed);
    std::shuffle(order.begin(), order.end(), rng);

    const int n_lambdas = static_cast<int>(grid.size());
    Eigen::MatrixXd fold_mse(opts.k_folds, n_lambdas);
    for (int f = 0; f < opts.k_folds; ++f) {
        const int lo = f * m / opts.k_folds, hi = (f + 1) * m / opts.k_folds;
        const int n_test = hi - lo, n_train = m - n_test;
        Eigen::MatrixXd xtr(n_train, X.cols()), xte(n_test, X.cols());
        Eigen::VectorXd ytr(n_train), yte(n_test);
        int a = 0, b = 0;
        for (int r = 0; r < m; ++r) {
            const int idx = order[r];
            if (r >= lo && r < hi) {
                xte.row(b) = X.row(idx);
                yte(b++) = y(idx);
            } else {
                xtr.row(a) = X.row(idx);
                ytr(a++) = y(idx);
            }
        }
        const auto path = lasso_path(xtr, ytr, opts, grid);
        for (int i = 0; i < n_lambdas; ++i)
            fold_mse(f, i) = (yte - xte * path[i].coef).squaredNorm() / n_test;
    }

    LassoCvResult result;
    result.cv_table.resize(n_lambdas);
    int best = 0;
    for (int i = 0; i < n_lambdas; ++i) {
        const double mean = fold_mse.col(i).mean();
        const double var = (fold_mse.col(i).array() - mean).square().sum() / (opts.k_folds - 1);
        result.cv_table[i] = {grid[i], mean, std::sqrt(var / opts.k_folds)};
        if (mean < result.cv_table[best].mean_mse) best = i;
    }
    result.best_lambda = grid[best];
    result.coef = lasso_path(X, y, opts, grid)[best].coef;
    return result;
}

ReconstructionResult lasso_reconstruct(const TimeSeriesPanel& panel, const LassoOptions& opts) {
    opts.validate();
    std::vector<NodeSolution> solutions;
    solutions.reserve(panel.n_nodes());
    std::mt19937_64 seeder(opts.seed);
    for (int i = 0; i < panel.n_nodes(); ++i) {
        RegressionProblem prob = build_problem(panel, i);
        LassoOptions node_opts = opts;
        node_opts.seed = seeder();  // independent fold shuffles per node
        const LassoCvResult cv = lasso_cv(prob.X, prob.y, node_opts);
        NodeSolution sol;
        sol.node_index = i;
        sol.mu = cv.coef;
        sol.theta.resize(cv.coef.size());
        for (int j = 0; j < cv.coef.size(); ++j) sol.theta(j) = cv.coef(j) != 0.0 ? 1.0 : 0.0;
        sol.column_nodes = prob.column_nodes;
        sol.orientation = prob.orientation;
        solutions.push_back(std::move(sol));
    }
    return assemble_network(solutions);
}

void write_cv_table(const std::vector<LassoCvRow>& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.precision(12);
    out << "lambda,mean_mse,se_mse\n";
    for (const auto& row : table) out << row.lambda << ',' << row.mean_mse << ',' << row.se_mse << '\n';
}

}  // namespace netrecon

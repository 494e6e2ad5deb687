#pragma once

#include <Eigen/Dense>
#include <vector>

namespace netrecon {

struct Hyperparams {
    double c0 = 1e-2;  // Gamma shape, noise precision
    double d0 = 1e-4;  // Gamma rate, noise precision
    double e0 = 1.0;   // Beta, inclusion probability
    double f0 = 1.0;
    double g0 = 1e-2;  // Gamma shape, slab precisions
    double h0 = 1e-4;  // Gamma rate, slab precisions

    void validate() const;
};

struct SolverOptions {
    int max_iters = 500;
    double tol = 1e-6;
    double damping = 1.0;     // (0,1]; 1 = undamped theta updates
    bool elbo_check = false;  // track the bound every sweep
};

/// All variational parameters for one regression problem. c and g are
/// fixed at their closed forms by init() and never change.
struct VariationalState {
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;
    Eigen::VectorXd theta;
    double c = 0.0, d = 0.0;  // Gamma posterior of the noise precision
    double e = 0.0, f = 0.0;  // Beta posterior of the inclusion probability
    Eigen::VectorXd g, h;     // Gamma posteriors of the slab precisions
    int iterations = 0;

    static VariationalState init(int n_samples, int n_predictors, const Hyperparams& hyper);
    int n_predictors() const { return static_cast<int>(theta.size()); }
};

struct VbrDiagnostics {
    int iterations = 0;
    bool converged = false;
    double final_elbo = 0.0;
    std::vector<double> theta_deltas;  // per-iteration max theta change
};

struct VbrResult {
    Eigen::VectorXd theta;
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;
    VbrDiagnostics diagnostics;
};

/// E[a a^T] under the factorized Bernoulli posterior: theta theta^T off
/// the diagonal, theta on it.
Eigen::MatrixXd omega_matrix(const Eigen::VectorXd& theta);

double digamma(double x);

void update_w(VariationalState& state, const Eigen::MatrixXd& XtX, const Eigen::VectorXd& Xty);
void update_lambda(VariationalState& state, const Hyperparams& hyper);
void update_tau(VariationalState& state, const Eigen::MatrixXd& XtX, const Eigen::VectorXd& Xty,
                double yty, int n_samples, const Hyperparams& hyper);
void update_a(VariationalState& state, const Eigen::MatrixXd& XtX, const Eigen::VectorXd& Xty,
              double damping = 1.0);
void update_rho(VariationalState& state, const Hyperparams& hyper);

double elbo(const VariationalState& state, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
            const Hyperparams& hyper);

VbrResult vbr_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    const Hyperparams& hyper = {}, const SolverOptions& opts = {});

}  // namespace netrecon

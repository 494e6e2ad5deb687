#include "netrecon/vbr.hpp"

#include <cmath>
#include <stdexcept>

namespace netrecon {

namespace {

constexpr double kThetaEps = 1e-12;

double clamp_theta(double t) {
    if (t < kThetaEps) return kThetaEps;
    if (t > 1.0 - kThetaEps) return 1.0 - kThetaEps;
    return t;
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

/// E||y - X D(a) w||^2 under the factorized posterior.
double expected_residual(const VariationalState& s, const Eigen::MatrixXd& XtX,
                         const Eigen::VectorXd& Xty, double yty) {
    const Eigen::VectorXd v = s.theta.cwiseProduct(s.mu);
    const Eigen::MatrixXd omega = omega_matrix(s.theta);
    const Eigen::MatrixXd second_moment = s.sigma + s.mu * s.mu.transpose();
    const double tr = XtX.cwiseProduct(omega).cwiseProduct(second_moment).sum();
    return yty - 2.0 * v.dot(Xty) + tr;
}

Eigen::MatrixXd invert_spd_with_jitter(Eigen::MatrixXd a) {
    const int p = static_cast<int>(a.rows());
    double jitter = 1e-10 * a.trace() / p;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() == Eigen::Success) {
            Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(p, p));
            return 0.5 * (inv + inv.transpose());
        }
        a.diagonal().array() += jitter;
        jitter *= 10.0;
    }
    throw std::runtime_error("posterior covariance factorization failed (matrix not SPD)");
}

}  // namespace

void Hyperparams::validate() const {
    if (c0 <= 0 || d0 <= 0 || e0 <= 0 || f0 <= 0 || g0 <= 0 || h0 <= 0)
        throw std::invalid_argument("all hyperparameters must be strictly positive");
}

VariationalState VariationalState::init(int n_samples, int n_predictors, const Hyperparams& hyper) {
    hyper.validate();
    if (n_samples < 1 || n_predictors < 1)
        throw std::invalid_argument("need at least one sample and one predictor");
    VariationalState s;
    s.mu = Eigen::VectorXd::Zero(n_predictors);
    s.sigma = Eigen::MatrixXd::Zero(n_predictors, n_predictors);
    s.theta = Eigen::VectorXd::Constant(n_predictors, 1.0 - kThetaEps);
    s.c = hyper.c0 + 0.5 * n_samples;  // fixed for the whole run
    s.d = hyper.d0;
    s.e = hyper.e0;
    s.f = hyper.f0;
    s.g = Eigen::VectorXd::Constant(n_predictors, hyper.g0 + 0.5);  // fixed
    s.h = Eigen::VectorXd::Constant(n_predictors, hyper.h0);
    return s;
}

Eigen::MatrixXd omega_matrix(const Eigen::VectorXd& theta) {
    for (int j = 0; j < theta.size(); ++j)
        if (theta(j) < 0.0 || theta(j) > 1.0)
            throw std::invalid_argument("theta entries must lie in [0,1]");
    Eigen::MatrixXd omega = theta * theta.transpose();
    omega.diagonal() = theta;
    return omega;
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma requires x > 0");
    double result = 0.0;
    while (x < 6.0) {  // recurrence shift into the asymptotic regime
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    // psi(x) ~ ln x - 1/(2x) - sum B_{2k}/(2k x^{2k})
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    return result;
}

void update_w(VariationalState& state, const Eigen::MatrixXd& XtX, const Eigen::VectorXd& Xty) {
    const double tau_mean = state.c / state.d;
    Eigen::MatrixXd a = tau_mean * XtX.cwiseProduct(omega_matrix(state.theta));
    a.diagonal() += state.g.cwiseQuotient(state.h);
    state.sigma = invert_spd_with_jitter(std::move(a));
    state.mu = tau_mean * (state.sigma * state.theta.cwiseProduct(Xty));
}

void update_lambda(VariationalState& state, const Hyperparams& hyper) {
    const int p = state.n_predictors();
    for (int j = 0; j < p; ++j)
        state.h(j) = hyper.h0 + 0.5 * (state.sigma(j, j) + state.mu(j) * state.mu(j));
}

void update_tau(VariationalState& state, const Eigen::MatrixXd& XtX, const Eigen::VectorXd& Xty,
                double yty, int n_samples, const Hyperparams& hyper) {
    state.c = hyper.c0 + 0.5 * n_samples;
    state.d = hyper.d0 + 0.5 * expected_residual(state, XtX, Xty, yty);
    if (!(state.d > 0.0)) throw std::runtime_error("noise-precision rate became nonpositive");
}

void update_a(VariationalState& state, const Eigen::MatrixXd& XtX, const Eigen::VectorXd& Xty,
              double damping) {
    if (damping <= 0.0 || damping > 1.0) throw std::invalid_argument("damping must be in (0,1]");
    const double tau_mean = state.c / state.d;
    const double log_odds_prior = digamma(state.e) - digamma(state.f);
    // Cross terms enter through the posterior means only: the residual each
    // coordinate sees is r_j = y - sum_{n != j} X_n mu_n theta_n.
    Eigen::VectorXd q = XtX * state.theta.cwiseProduct(state.mu);  // kept fresh per coordinate
    for (int j = 0; j < state.n_predictors(); ++j) {
        const double xjr = Xty(j) - q(j);  // X_j^T (y - X D(theta) mu), theta_j included
        const double xjxj = XtX(j, j);
        const double mu_j = state.mu(j);
        // the theta_j mu_j^2 X_j^T X_j term restores the self-exclusion of r_j
        const double u = log_odds_prior +
                         tau_mean * (mu_j * xjr + state.theta(j) * mu_j * mu_j * xjxj) -
                         0.5 * tau_mean * (state.sigma(j, j) + mu_j * mu_j) * xjxj;
        const double raw = 1.0 / (1.0 + std::exp(-u));
        const double updated = clamp_theta(damping * raw + (1.0 - damping) * state.theta(j));
        const double delta = updated - state.theta(j);
        state.theta(j) = updated;
        if (delta != 0.0) q += XtX.col(j) * (mu_j * delta);
    }
}

void update_rho(VariationalState& state, const Hyperparams& hyper) {
    state.e = hyper.e0 + state.theta.sum();
    state.f = hyper.f0 + (state.n_predictors() - state.theta.sum());
}

double elbo(const VariationalState& s, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
            const Hyperparams& hyper) {
    const int m = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());
    const Eigen::MatrixXd XtX = X.transpose() * X;
    const Eigen::VectorXd Xty = X.transpose() * y;
    const double yty = y.squaredNorm();

    const double elog_tau = digamma(s.c) - std::log(s.d);
    const double tau_mean = s.c / s.d;
    const double elog_rho = digamma(s.e) - digamma(s.e + s.f);
    const double elog_1mrho = digamma(s.f) - digamma(s.e + s.f);
    constexpr double log2pi = 1.8378770664093454836;

    double value = 0.0;
    // E[log p(y | a, w, tau)]
    value += 0.5 * m * (elog_tau - log2pi) - 0.5 * tau_mean * expected_residual(s, XtX, Xty, yty);
    // E[log p(w | lambda)], E[log p(lambda)], E[log p(a | rho)] and slab entropies
    for (int j = 0; j < p; ++j) {
        const double elog_lambda = digamma(s.g(j)) - std::log(s.h(j));
        const double lambda_mean = s.g(j) / s.h(j);
        const double w2 = s.sigma(j, j) + s.mu(j) * s.mu(j);
        value += 0.5 * (elog_lambda - log2pi) - 0.5 * lambda_mean * w2;
        value += hyper.g0 * std::log(hyper.h0) - std::lgamma(hyper.g0) +
                 (hyper.g0 - 1.0) * elog_lambda - hyper.h0 * lambda_mean;
        value += s.theta(j) * elog_rho + (1.0 - s.theta(j)) * elog_1mrho;
        // Gamma and Bernoulli entropies
        value += s.g(j) - std::log(s.h(j)) + std::lgamma(s.g(j)) + (1.0 - s.g(j)) * digamma(s.g(j));
        const double t = s.theta(j);
        value += -t * std::log(t) - (1.0 - t) * std::log(1.0 - t);
    }
    // E[log p(tau)], E[log p(rho)]
    value += hyper.c0 * std::log(hyper.d0) - std::lgamma(hyper.c0) + (hyper.c0 - 1.0) * elog_tau -
             hyper.d0 * tau_mean;
    value += -log_beta(hyper.e0, hyper.f0) + (hyper.e0 - 1.0) * elog_rho + (hyper.f0 - 1.0) * elog_1mrho;
    // Gaussian entropy needs log det Sigma
    Eigen::LLT<Eigen::MatrixXd> llt(s.sigma);
    if (llt.info() != Eigen::Success) throw std::runtime_error("sigma not SPD in ELBO evaluation");
    double logdet = 0.0;
    for (int j = 0; j < p; ++j) logdet += 2.0 * std::log(llt.matrixL()(j, j));
    value += 0.5 * (p * (log2pi + 1.0) + logdet);
    // Gamma(tau) and Beta(rho) entropies
    value += s.c - std::log(s.d) + std::lgamma(s.c) + (1.0 - s.c) * digamma(s.c);
    value += log_beta(s.e, s.f) - (s.e - 1.0) * digamma(s.e) - (s.f - 1.0) * digamma(s.f) +
             (s.e + s.f - 2.0) * digamma(s.e + s.f);
    if (!std::isfinite(value)) throw std::runtime_error("ELBO evaluated to a non-finite value");
    return value;
}

VbrResult vbr_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Hyperparams& hyper,
                    const SolverOptions& opts) {
    if (X.rows() != y.size()) throw std::invalid_argument("X and y disagree in sample count");
    if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("inputs must be finite");
    const int m = static_cast<int>(X.rows());
    const int p = static_cast<int>(X.cols());

    const Eigen::MatrixXd XtX = X.transpose() * X;
    const Eigen::VectorXd Xty = X.transpose() * y;
    const double yty = y.squaredNorm();

    VariationalState state = VariationalState::init(m, p, hyper);
    VbrResult result;

    Eigen::VectorXd prev_theta = state.theta, prev_mu = state.mu;
    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        update_w(state, XtX, Xty);
        update_lambda(state, hyper);
        update_tau(state, XtX, Xty, yty, m, hyper);
        update_a(state, XtX, Xty, opts.damping);
        update_rho(state, hyper);
        state.iterations = iter;

        const double dtheta = (state.theta - prev_theta).cwiseAbs().maxCoeff();
        const double dmu = (state.mu - prev_mu).cwiseAbs().maxCoeff();
        result.diagnostics.theta_deltas.push_back(dtheta);
        if (opts.elbo_check) elbo(state, X, y, hyper);  // surfaces non-finite states early
        if (dtheta < opts.tol && dmu < opts.tol) {
            result.diagnostics.converged = true;
            break;
        }
        prev_theta = state.theta;
        prev_mu = state.mu;
    }

    result.diagnostics.iterations = state.iterations;
    result.diagnostics.final_elbo = elbo(state, X, y, hyper);
    result.theta = state.theta;
    result.mu = state.mu;
    result.sigma = state.sigma;
    return result;
}

}  // namespace netrecon

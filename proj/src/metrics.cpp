#include "netrecon/metrics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace netrecon {

namespace {

void check_same_size(const WeightedNetwork& a, const WeightedNetwork& b) {
    if (a.n_nodes != b.n_nodes) throw std::invalid_argument("networks must have the same node count");
}

}  // namespace

std::pair<std::optional<double>, std::optional<double>> tpr_tnr(const WeightedNetwork& truth,
                                                                const WeightedNetwork& est) {
    check_same_size(truth, est);
    double tp = 0, positives = 0, tn = 0, negatives = 0;
    for (int i = 0; i < truth.n_nodes; ++i) {
        for (int j = 0; j < truth.n_nodes; ++j) {
            const double a = truth.adjacency(i, j), ahat = est.adjacency(i, j);
            tp += a * ahat;
            positives += a;
            tn += (1.0 - a) * (1.0 - ahat);
            negatives += 1.0 - a;
        }
    }
    std::optional<double> tpr, tnr;
    if (positives > 0) tpr = tp / positives;
    if (negatives > 0) tnr = tn / negatives;
    return {tpr, tnr};
}

std::optional<double> strength_error(const WeightedNetwork& truth, const WeightedNetwork& est) {
    check_same_size(truth, est);
    const double denom = truth.weights.norm();
    if (denom == 0.0) return std::nullopt;
    return (est.weights - truth.weights).norm() / denom;
}

std::vector<double> cohesion_index(const WeightedNetwork& est, const LabeledPartition& labels) {
    const int n = est.n_nodes;
    if (static_cast<int>(labels.labels.size()) != n)
        throw std::invalid_argument("every node needs a label");
    std::vector<double> ci(n);
    for (int i = 0; i < n; ++i) {
        double same = 0, diff = 0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            const double links = est.adjacency(i, k) + est.adjacency(k, i);
            (labels.labels[i] == labels.labels[k] ? same : diff) += links;
        }
        if (same == 0.0 && diff == 0.0)
            ci[i] = std::numeric_limits<double>::quiet_NaN();  // isolated node
        else if (diff == 0.0)
            ci[i] = std::numeric_limits<double>::infinity();
        else
            ci[i] = same / diff;
    }
    return ci;
}

std::pair<std::optional<double>, int> mean_cohesion(const std::vector<double>& ci) {
    double sum = 0;
    int finite = 0, excluded = 0;
    for (double v : ci) {
        if (std::isfinite(v)) {
            sum += v;
            ++finite;
        } else {
            ++excluded;
        }
    }
    if (finite == 0) return {std::nullopt, excluded};
    return {sum / finite, excluded};
}

namespace {

struct NmfFit {
    Eigen::MatrixXd h;
    double objective = 0.0;
    std::vector<double> trace;
};

NmfFit nmf_fit(const Eigen::MatrixXd& s, int k, std::uint64_t seed, bool keep_trace) {
    const int n = static_cast<int>(s.rows());
    constexpr int kMaxIters = 500;
    constexpr double kRelTol = 1e-6;
    constexpr double kEps = 1e-12;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd h(n, k);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < k; ++c) h(i, c) = unit(rng);

    NmfFit fit;
    double prev = (s - h * h.transpose()).squaredNorm();
    for (int iter = 0; iter < kMaxIters; ++iter) {
        // Damped multiplicative update for symmetric NMF (beta = 1/2
        // keeps the objective non-increasing).
        const Eigen::MatrixXd numer = s * h;
        const Eigen::MatrixXd denom = h * (h.transpose() * h);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < k; ++c)
                h(i, c) *= 0.5 + 0.5 * numer(i, c) / std::max(denom(i, c), kEps);
        const double obj = (s - h * h.transpose()).squaredNorm();
        if (keep_trace) fit.trace.push_back(obj);
        if (std::abs(prev - obj) <= kRelTol * std::max(prev, 1.0)) {
            prev = obj;
            break;
        }
        prev = obj;
    }
    fit.objective = prev;
    fit.h = std::move(h);
    return fit;
}

LabeledPartition labels_from_h(const Eigen::MatrixXd& h) {
    LabeledPartition part;
    part.labels.resize(h.rows());
    for (int i = 0; i < h.rows(); ++i) {
        int best = 0;
        for (int c = 1; c < h.cols(); ++c)
            if (h(i, c) > h(i, best)) best = c;  // ties keep the lowest index
        part.labels[i] = best;
    }
    return part;
}

Eigen::MatrixXd symmetrized_affinity(const WeightedNetwork& est) {
    return 0.5 * (est.weights.cwiseAbs() + est.weights.transpose().cwiseAbs());
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

LabeledPartition nmf_run(const WeightedNetwork& est, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    const Eigen::MatrixXd s = symmetrized_affinity(est);
    if (k == 1 || s.maxCoeff() == 0.0) {
        LabeledPartition part;
        part.labels.assign(est.n_nodes, 0);  // all-zero affinity: single community
        return part;
    }
    return labels_from_h(nmf_fit(s, k, seed, false).h);
}

LabeledPartition nmf_communities(const WeightedNetwork& est, int k, int restarts, std::uint64_t seed) {
    if (k < 1 || restarts < 1) throw std::invalid_argument("k and restarts must be positive");
    const Eigen::MatrixXd s = symmetrized_affinity(est);
    if (k == 1 || s.maxCoeff() == 0.0) {
        LabeledPartition part;
        part.labels.assign(est.n_nodes, 0);
        return part;
    }
    NmfFit best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        NmfFit fit = nmf_fit(s, k, mix_seed(seed, r), false);
        if (fit.objective < best.objective) best = std::move(fit);
    }
    return labels_from_h(best.h);
}

std::vector<double> nmf_objective_trace(const WeightedNetwork& est, int k, std::uint64_t seed) {
    const Eigen::MatrixXd s = symmetrized_affinity(est);
    return nmf_fit(s, k, seed, true).trace;
}

double nmi(const LabeledPartition& a, const LabeledPartition& b) {
    if (a.labels.size() != b.labels.size()) throw std::invalid_argument("partitions must cover the same nodes");
    const int n = static_cast<int>(a.labels.size());
    if (n == 0) throw std::invalid_argument("partitions are empty");

    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> pa, pb;
    for (int i = 0; i < n; ++i) {
        joint[{a.labels[i], b.labels[i]}] += 1.0 / n;
        pa[a.labels[i]] += 1.0 / n;
        pb[b.labels[i]] += 1.0 / n;
    }
    double ha = 0, hb = 0, mi = 0;
    for (const auto& [label, p] : pa) ha -= p * std::log(p);
    for (const auto& [label, p] : pb) hb -= p * std::log(p);
    for (const auto& [cell, p] : joint)
        if (p > 0) mi += p * std::log(p / (pa[cell.first] * pb[cell.second]));
    if (ha + hb == 0.0) return a.labels == b.labels ? 1.0 : 0.0;  // both single-label
    return 2.0 * mi / (ha + hb);
}

}  // namespace netrecon

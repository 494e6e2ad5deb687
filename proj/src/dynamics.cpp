#include "netrecon/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace netrecon {

std::string to_string(DynamicsKind kind) {
    switch (kind) {
        case DynamicsKind::Ect: return "ect";
        case DynamicsKind::Communication: return "communication";
        case DynamicsKind::LinearMixing: return "linear_mixing";
    }
    return "unknown";
}

DynamicsKind dynamics_from_string(const std::string& name) {
    if (name == "ect") return DynamicsKind::Ect;
    if (name == "communication" || name == "comm") return DynamicsKind::Communication;
    if (name == "linear_mixing" || name == "mixing" || name == "stock") return DynamicsKind::LinearMixing;
    throw std::invalid_argument("unknown dynamics kind: " + name);
}

TimeSeriesPanel simulate_ect(const WeightedNetwork& net, const EctConfig& cfg) {
    net.validate();
    if (cfg.noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be nonnegative");
    const int n = net.n_nodes;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (net.adjacency(i, j) != 0.0 && net.weights(i, j) <= 0.0)
                throw std::invalid_argument("ECT conductances must be positive on edges");

    std::vector<double> times = cfg.sample_times;
    int m = cfg.n_samples > 0 ? cfg.n_samples : static_cast<int>(times.size());
    std::mt19937_64 rng(cfg.seed);
    if (times.empty()) {
        if (m <= 0) throw std::invalid_argument("n_samples or sample_times required");
        times.resize(m);
        for (int t = 0; t < m; ++t) times[t] = static_cast<double>(t + 1) * cfg.sample_dt;
    }
    m = static_cast<int>(times.size());
    std::uniform_real_distribution<double> dw_dist(cfg.delta_omega_lo, cfg.delta_omega_hi);
    Eigen::VectorXd freq(n);
    for (int i = 0; i < n; ++i) freq(i) = cfg.omega + dw_dist(rng);

    TimeSeriesPanel panel;
    panel.kind = DynamicsKind::Ect;
    panel.noise_sigma = cfg.noise_sigma;
    panel.seed = cfg.seed;
    panel.series.resize(m, n);
    for (int t = 0; t < m; ++t)
        for (int i = 0; i < n; ++i) panel.series(t, i) = cfg.v_bar * std::sin(freq(i) * times[t]);

    // I_i = sum_j a_ij w_ij (V_i - V_j)
    panel.responses.resize(m, n);
    const Eigen::VectorXd strength = net.weights.rowwise().sum();
    panel.responses = panel.series * net.weights.transpose();
    for (int i = 0; i < n; ++i)
        panel.responses.col(i) = strength(i) * panel.series.col(i) - panel.responses.col(i);

    return add_noise(panel, cfg.noise_sigma, rng());
}

WeightedNetwork normalize_incoming(const WeightedNetwork& net) {
    net.validate();
    WeightedNetwork out = net;
    for (int i = 0; i < net.n_nodes; ++i) {
        const double s = net.weights.col(i).sum();
        if (net.adjacency.col(i).sum() > 0.0) {
            if (s == 0.0) throw std::invalid_argument("incoming weights sum to zero with nonzero in-degree");
            out.weights.col(i) /= s;
        }
    }
    out.rebuild_adjacency();
    return out;
}

TimeSeriesPanel simulate_communication(const WeightedNetwork& net, const CommConfig& cfg) {
    if (cfg.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (cfg.outflux_lo < 0.0 || cfg.outflux_hi < cfg.outflux_lo)
        throw std::invalid_argument("outflux range must be within [0, inf)");
    if (cfg.noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be nonnegative");
    const WeightedNetwork norm = normalize_incoming(net);
    const int n = norm.n_nodes, m = cfg.n_samples;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> odist(cfg.outflux_lo, cfg.outflux_hi);

    TimeSeriesPanel panel;
    panel.kind = DynamicsKind::Communication;
    panel.noise_sigma = cfg.noise_sigma;
    panel.seed = cfg.seed;
    panel.series.resize(m, n);
    for (int t = 0; t < m; ++t)
        for (int j = 0; j < n; ++j) panel.series(t, j) = odist(rng);

    // f_i = sum_j a_ji w_ji o_j
    panel.responses = panel.series * norm.weights;
    for (int i = 0; i < n; ++i)
        if (norm.adjacency.col(i).sum() == 0.0) panel.zero_indegree_nodes.push_back(i);

    return add_noise(panel, cfg.noise_sigma, rng());
}

TimeSeriesPanel simulate_linear_mixing(const WeightedNetwork& net, int n_samples, double sigma,
                                       std::uint64_t seed) {
    net.validate();
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (sigma < 0.0) throw std::invalid_argument("noise sigma must be nonnegative");
    const int n = net.n_nodes;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    TimeSeriesPanel panel;
    panel.kind = DynamicsKind::LinearMixing;
    panel.noise_sigma = sigma;
    panel.seed = seed;
    panel.series.resize(n_samples, n);
    for (int t = 0; t < n_samples; ++t)
        for (int j = 0; j < n; ++j) panel.series(t, j) = unit(rng);

    // s_i = sum_{k != i} a_ik w_ik s_k (diagonal weights are zero)
    panel.responses = panel.series * net.weights.transpose();
    return add_noise(panel, sigma, rng());
}

TimeSeriesPanel add_noise(const TimeSeriesPanel& panel, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("noise sigma must be nonnegative");
    if (sigma == 0.0) return panel;
    TimeSeriesPanel out = panel;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (int t = 0; t < out.responses.rows(); ++t)
        for (int i = 0; i < out.responses.cols(); ++i) out.responses(t, i) += noise(rng);
    return out;
}

namespace {

void write_matrix_csv(const Eigen::MatrixXd& mat, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.precision(17);
    for (int j = 0; j < mat.cols(); ++j) out << (j ? "," : "") << "node_" << (j + 1);
    out << '\n';
    for (int t = 0; t < mat.rows(); ++t) {
        for (int j = 0; j < mat.cols(); ++j) out << (j ? "," : "") << mat(t, j);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failure on " + path);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": missing header");
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": non-numeric value `" + cell + "`");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    Eigen::MatrixXd mat(rows.size(), rows.front().size());
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (std::size_t j = 0; j < rows[t].size(); ++j) mat(t, j) = rows[t][j];
    return mat;
}

}  // namespace

void write_panel(const TimeSeriesPanel& panel, const std::string& path) {
    write_matrix_csv(panel.series, path);
    write_matrix_csv(panel.responses, path + ".responses.csv");
    std::ofstream meta(path + ".meta");
    if (!meta) throw std::runtime_error("cannot open " + path + ".meta for writing");
    meta << "dynamics = " << to_string(panel.kind) << '\n';
    meta << "sigma = " << panel.noise_sigma << '\n';
    meta << "seed = " << panel.seed << '\n';
}

TimeSeriesPanel read_panel(const std::string& path) {
    TimeSeriesPanel panel;
    panel.series = read_matrix_csv(path);
    panel.responses = read_matrix_csv(path + ".responses.csv");
    if (panel.series.rows() != panel.responses.rows() || panel.series.cols() != panel.responses.cols())
        throw std::runtime_error("panel matrices disagree in shape");
    std::ifstream meta(path + ".meta");
    if (!meta) throw std::runtime_error("cannot open " + path + ".meta");
    std::string line;
    while (std::getline(meta, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        key = trim(key);
        value = trim(value);
        if (key == "dynamics") panel.kind = dynamics_from_string(value);
        else if (key == "sigma") panel.noise_sigma = std::stod(value);
        else if (key == "seed") panel.seed = std::stoull(value);
    }
    return panel;
}

}  // namespace netrecon

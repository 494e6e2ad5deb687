#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "netrecon/network.hpp"

namespace netrecon {

enum class DynamicsKind { Ect, Communication, LinearMixing };

std::string to_string(DynamicsKind kind);
DynamicsKind dynamics_from_string(const std::string& name);

/// Observed nodal states: `series` holds the predictor-side signal
/// (voltages, outgoing fluxes, or prices) and `responses` the measured
/// quantity each node's regression explains (currents, incoming fluxes,
/// or prices again). Both are M x N with one column per node.
struct TimeSeriesPanel {
    Eigen::MatrixXd series;
    Eigen::MatrixXd responses;
    DynamicsKind kind = DynamicsKind::Ect;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    std::vector<int> zero_indegree_nodes;  // communication only

    int n_samples() const { return static_cast<int>(series.rows()); }
    int n_nodes() const { return static_cast<int>(series.cols()); }
};

struct EctConfig {
    double v_bar = 1.0;
    double omega = 1e3;                    // base angular frequency
    double delta_omega_lo = 0.0;
    double delta_omega_hi = 20.0;
    int n_samples = 0;
    // When empty, instants are the grid t_m = m * sample_dt, m = 1..n_samples.
    // Sub-period spacing makes the voltage differences nearly collinear
    // across samples (each is close to (dw_i - dw_j) t cos(wt)), so the
    // spacing must stay coarse. On a coarse grid the observable frequencies
    // fold modulo 2*pi/sample_dt; the default spacing equals
    // 2*pi / (delta_omega_hi - delta_omega_lo), which spreads the folded
    // offsets over exactly one period so no two distinct offsets collide.
    std::vector<double> sample_times;
    double sample_dt = 0.3141592653589793;  // 2*pi / 20
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

struct CommConfig {
    int n_samples = 0;
    double outflux_lo = 0.0;
    double outflux_hi = 20.0;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Alternating-current voltages driven through Kirchhoff's law; edge
/// weights act as conductances. Responses carry the noisy currents.
TimeSeriesPanel simulate_ect(const WeightedNetwork& net, const EctConfig& cfg);

/// Scale each node's incoming weights so they sum to one. Nodes with no
/// in-neighbors are left untouched. The normalized network is the ground
/// truth for communication-dynamics reconstruction.
WeightedNetwork normalize_incoming(const WeightedNetwork& net);

TimeSeriesPanel simulate_communication(const WeightedNetwork& net, const CommConfig& cfg);

TimeSeriesPanel simulate_linear_mixing(const WeightedNetwork& net, int n_samples, double sigma,
                                       std::uint64_t seed);

/// Adds iid Gaussian noise to the responses; sigma = 0 returns the panel
/// unchanged.
TimeSeriesPanel add_noise(const TimeSeriesPanel& panel, double sigma, std::uint64_t seed);

/// CSV export/import of a panel: `path` holds the series matrix,
/// `path.responses.csv` the responses, `path.meta` the sidecar metadata.
void write_panel(const TimeSeriesPanel& panel, const std::string& path);
TimeSeriesPanel read_panel(const std::string& path);

}  // namespace netrecon

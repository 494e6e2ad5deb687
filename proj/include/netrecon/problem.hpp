#pragma once

#include <Eigen/Dense>
#include <vector>

#include "netrecon/dynamics.hpp"
#include "netrecon/network.hpp"

namespace netrecon {

/// RowWise solutions fill row i of the weight matrix; ColumnWise fill
/// column i (communication dynamics recovers incoming weights).
enum class Orientation { RowWise, ColumnWise };

struct RegressionProblem {
    int node_index = 0;
    Eigen::VectorXd y;              // length M
    Eigen::MatrixXd X;              // M x (N-1)
    std::vector<int> column_nodes;  // column j of X <-> node column_nodes[j]
    Orientation orientation = Orientation::RowWise;
};

RegressionProblem build_ect_problem(const TimeSeriesPanel& panel, int node);
RegressionProblem build_comm_problem(const TimeSeriesPanel& panel, int node);
RegressionProblem build_mixing_problem(const TimeSeriesPanel& panel, int node);
RegressionProblem build_problem(const TimeSeriesPanel& panel, int node);

struct NodeSolution {
    int node_index = 0;
    Eigen::VectorXd theta;          // inclusion probabilities (0/1 for lasso)
    Eigen::VectorXd mu;             // weight estimates
    std::vector<int> column_nodes;
    Orientation orientation = Orientation::RowWise;
    int iterations = 0;
};

struct ReconstructionResult {
    WeightedNetwork network;
    std::vector<NodeSolution> solutions;
    double runtime_seconds = 0.0;
    long total_iterations = 0;
};

/// Places theta-thresholded weight estimates into the full matrix
/// (w_ij = mu_ij when theta_ij > threshold, else 0).
ReconstructionResult assemble_network(const std::vector<NodeSolution>& solutions,
                                      double threshold = 0.5);

}  // namespace netrecon

#include "netrecon/problem.hpp"

#include <stdexcept>

namespace netrecon {

namespace {

std::vector<int> other_nodes(int n, int node) {
    std::vector<int> cols;
    cols.reserve(n - 1);
    for (int j = 0; j < n; ++j)
        if (j != node) cols.push_back(j);
    return cols;
}

void check_node(const TimeSeriesPanel& panel, int node) {
    if (node < 0 || node >= panel.n_nodes()) throw std::out_of_range("node index out of range");
}

}  // namespace

RegressionProblem build_ect_problem(const TimeSeriesPanel& panel, int node) {
    if (panel.kind != DynamicsKind::Ect) throw std::invalid_argument("panel is not ECT");
    check_node(panel, node);
    RegressionProblem prob;
    prob.node_index = node;
    prob.orientation = Orientation::RowWise;
    prob.column_nodes = other_nodes(panel.n_nodes(), node);
    prob.y = panel.responses.col(node);
    prob.X.resize(panel.n_samples(), panel.n_nodes() - 1);
    for (std::size_t c = 0; c < prob.column_nodes.size(); ++c)
        prob.X.col(c) = panel.series.col(node) - panel.series.col(prob.column_nodes[c]);
    return prob;
}

RegressionProblem build_comm_problem(const TimeSeriesPanel& panel, int node) {
    if (panel.kind != DynamicsKind::Communication) throw std::invalid_argument("panel is not communication");
    check_node(panel, node);
    RegressionProblem prob;
    prob.node_index = node;
    prob.orientation = Orientation::ColumnWise;
    prob.column_nodes = other_nodes(panel.n_nodes(), node);
    prob.y = panel.responses.col(node);
    prob.X.resize(panel.n_samples(), panel.n_nodes() - 1);
    for (std::size_t c = 0; c < prob.column_nodes.size(); ++c)
        prob.X.col(c) = panel.series.col(prob.column_nodes[c]);
    return prob;
}

RegressionProblem build_mixing_problem(const TimeSeriesPanel& panel, int node) {
    if (panel.kind != DynamicsKind::LinearMixing) throw std::invalid_argument("panel is not linear mixing");
    check_node(panel, node);
    RegressionProblem prob;
    prob.node_index = node;
    prob.orientation = Orientation::RowWise;
    prob.column_nodes = other_nodes(panel.n_nodes(), node);
    prob.y = panel.responses.col(node);
    prob.X.resize(panel.n_samples(), panel.n_nodes() - 1);
    for (std::size_t c = 0; c < prob.column_nodes.size(); ++c)
        prob.X.col(c) = panel.series.col(prob.column_nodes[c]);
    return prob;
}

RegressionProblem build_problem(const TimeSeriesPanel& panel, int node) {
    switch (panel.kind) {
        case DynamicsKind::Ect: return build_ect_problem(panel, node);
        case DynamicsKind::Communication: return build_comm_problem(panel, node);
        case DynamicsKind::LinearMixing: return build_mixing_problem(panel, node);
    }
    throw std::invalid_argument("unknown dynamics kind");
}

ReconstructionResult assemble_network(const std::vector<NodeSolution>& solutions, double threshold) {
    if (solutions.empty()) throw std::invalid_argument("no solutions to assemble");
    if (threshold <= 0.0 || threshold >= 1.0) throw std::invalid_argument("threshold must be in (0,1)");
    const int n = static_cast<int>(solutions.size());
    std::vector<bool> seen(n, false);
    ReconstructionResult result;
    result.network = WeightedNetwork::zero(n);
    for (const auto& sol : solutions) {
        if (sol.node_index < 0 || sol.node_index >= n || seen[sol.node_index])
            throw std::invalid_argument("need exactly one solution per node");
        seen[sol.node_index] = true;
        if (sol.theta.size() != static_cast<Eigen::Index>(sol.column_nodes.size()) ||
            sol.mu.size() != sol.theta.size())
            throw std::invalid_argument("solution vectors disagree with column map");
        for (std::size_t c = 0; c < sol.column_nodes.size(); ++c) {
            const int other = sol.column_nodes[c];
            if (other == sol.node_index || other < 0 || other >= n)
                throw std::invalid_argument("column map refers to invalid node");
            const double w = sol.theta(c) > threshold ? sol.mu(c) : 0.0;
            if (sol.orientation == Orientation::RowWise)
                result.network.weights(sol.node_index, other) = w;
            else
                result.network.weights(other, sol.node_index) = w;
        }
        result.total_iterations += sol.iterations;
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i]) throw std::invalid_argument("missing solution for node " + std::to_string(i));
    result.network.rebuild_adjacency();
    result.solutions = solutions;
    return result;
}

}  // namespace netrecon

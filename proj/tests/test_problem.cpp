#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netrecon/problem.hpp"

using namespace netrecon;

namespace {

WeightedNetwork small_ect_net() {
    auto net = WeightedNetwork::zero(3);
    net.weights(0, 1) = net.weights(1, 0) = 0.5;
    net.weights(0, 2) = net.weights(2, 0) = 2.0;
    net.rebuild_adjacency();
    return net;
}

Eigen::VectorXd ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    // QR rather than normal equations: ECT designs can be ill-conditioned.
    return X.colPivHouseholderQr().solve(y);
}

}  // namespace

TEST_CASE("build_ect_problem") {
    SUBCASE("design row is the voltage differences") {
        TimeSeriesPanel panel;
        panel.kind = DynamicsKind::Ect;
        panel.series.resize(1, 3);
        panel.series << 2.0, 1.0, 0.0;
        panel.responses = Eigen::MatrixXd::Constant(1, 3, 7.0);
        const auto prob = build_ect_problem(panel, 0);
        CHECK(prob.y(0) == 7.0);
        CHECK(prob.X(0, 0) == 1.0);  // V1 - V2
        CHECK(prob.X(0, 1) == 2.0);  // V1 - V3
        CHECK(prob.column_nodes == std::vector<int>{1, 2});
        CHECK(prob.orientation == Orientation::RowWise);
    }
    SUBCASE("noiseless panel satisfies y = X (a o w)") {
        const auto net = small_ect_net();
        EctConfig cfg;
        cfg.n_samples = 10;
        cfg.seed = 1;
        const auto panel = simulate_ect(net, cfg);
        const auto prob = build_ect_problem(panel, 0);
        Eigen::VectorXd coef(2);
        coef << 0.5, 2.0;  // true row weights of node 1
        CHECK((prob.y - prob.X * coef).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("OLS on true support recovers conductances") {
        GeneratorSpec spec;
        spec.n_nodes = 5;
        spec.ba_edges_per_node = 2;
        spec.seed = 2;
        const auto net = generate_ba(spec);
        EctConfig cfg;
        cfg.n_samples = 50;
        cfg.seed = 3;
        const auto panel = simulate_ect(net, cfg);
        for (int i = 0; i < 5; ++i) {
            const auto prob = build_problem(panel, i);
            std::vector<int> support;
            for (std::size_t c = 0; c < prob.column_nodes.size(); ++c)
                if (net.weights(i, prob.column_nodes[c]) != 0.0) support.push_back(static_cast<int>(c));
            Eigen::MatrixXd xs(prob.X.rows(), support.size());
            for (std::size_t s = 0; s < support.size(); ++s) xs.col(s) = prob.X.col(support[s]);
            const Eigen::VectorXd w = ols(xs, prob.y);
            for (std::size_t s = 0; s < support.size(); ++s)
                CHECK(w(s) == doctest::Approx(net.weights(i, prob.column_nodes[support[s]])).epsilon(1e-8));
        }
    }
    SUBCASE("index out of range") {
        TimeSeriesPanel panel;
        panel.kind = DynamicsKind::Ect;
        panel.series = panel.responses = Eigen::MatrixXd::Zero(2, 3);
        CHECK_THROWS_AS(build_ect_problem(panel, 3), std::out_of_range);
    }
}

TEST_CASE("build_comm_problem") {
    SUBCASE("design row is the others' outfluxes") {
        TimeSeriesPanel panel;
        panel.kind = DynamicsKind::Communication;
        panel.series.resize(1, 3);
        panel.series << 4.0, 5.0, 6.0;
        panel.responses = Eigen::MatrixXd::Constant(1, 3, 9.0);
        const auto prob = build_comm_problem(panel, 1);
        CHECK(prob.X(0, 0) == 4.0);
        CHECK(prob.X(0, 1) == 6.0);
        CHECK(prob.y(0) == 9.0);
        CHECK(prob.orientation == Orientation::ColumnWise);
    }
    SUBCASE("noiseless ground truth fits exactly") {
        auto net = WeightedNetwork::zero(4);
        net.weights(1, 0) = 0.25;
        net.weights(2, 0) = 0.75;  // incoming weights of node 1 already sum to 1
        net.weights(0, 3) = 1.0;
        net.rebuild_adjacency();
        CommConfig cfg;
        cfg.n_samples = 12;
        cfg.seed = 4;
        const auto panel = simulate_communication(net, cfg);
        const auto norm = normalize_incoming(net);
        const auto prob = build_comm_problem(panel, 0);
        Eigen::VectorXd coef(3);
        for (std::size_t c = 0; c < prob.column_nodes.size(); ++c)
            coef(static_cast<Eigen::Index>(c)) = norm.weights(prob.column_nodes[c], 0);
        CHECK((prob.y - prob.X * coef).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("OLS oracle recovers normalized incoming weights") {
        GeneratorSpec spec;
        spec.n_nodes = 6;
        spec.ba_edges_per_node = 2;
        spec.weight_lo = 0.1;
        spec.weight_hi = 1.0;
        spec.seed = 5;
        const auto net = generate_ba(spec);
        const auto norm = normalize_incoming(net);
        CommConfig cfg;
        cfg.n_samples = 80;
        cfg.seed = 6;
        const auto panel = simulate_communication(net, cfg);
        const auto prob = build_problem(panel, 2);
        std::vector<int> support;
        for (std::size_t c = 0; c < prob.column_nodes.size(); ++c)
            if (norm.weights(prob.column_nodes[c], 2) != 0.0) support.push_back(static_cast<int>(c));
        Eigen::MatrixXd xs(prob.X.rows(), support.size());
        for (std::size_t s = 0; s < support.size(); ++s) xs.col(s) = prob.X.col(support[s]);
        const Eigen::VectorXd w = ols(xs, prob.y);
        for (std::size_t s = 0; s < support.size(); ++s)
            CHECK(w(s) == doctest::Approx(norm.weights(prob.column_nodes[support[s]], 2)).epsilon(1e-8));
    }
}

TEST_CASE("build_mixing_problem") {
    auto net = WeightedNetwork::zero(4);
    net.weights(0, 1) = 2.0;
    net.weights(0, 3) = -1.0;
    net.rebuild_adjacency();
    const auto panel = simulate_linear_mixing(net, 60, 0.0, 7);

    SUBCASE("columns are the other nodes' series") {
        const auto prob = build_mixing_problem(panel, 0);
        CHECK(prob.column_nodes == std::vector<int>{1, 2, 3});
        CHECK(prob.X.col(0) == panel.series.col(1));
        CHECK(prob.y == panel.responses.col(0));
        CHECK(prob.orientation == Orientation::RowWise);
    }
    SUBCASE("true coefficients fit exactly") {
        const auto prob = build_mixing_problem(panel, 0);
        Eigen::VectorXd coef(3);
        coef << 2.0, 0.0, -1.0;
        CHECK((prob.y - prob.X * coef).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("OLS oracle") {
        const auto prob = build_mixing_problem(panel, 0);
        Eigen::MatrixXd xs(60, 2);
        xs.col(0) = prob.X.col(0);
        xs.col(1) = prob.X.col(2);
        const Eigen::VectorXd w = ols(xs, prob.y);
        CHECK(w(0) == doctest::Approx(2.0).epsilon(1e-8));
        CHECK(w(1) == doctest::Approx(-1.0).epsilon(1e-8));
    }
}

TEST_CASE("assemble_network") {
    const auto make_solution = [](int node, std::vector<int> cols, std::vector<double> theta,
                                  std::vector<double> mu, Orientation ori) {
        NodeSolution sol;
        sol.node_index = node;
        sol.column_nodes = std::move(cols);
        sol.theta = Eigen::Map<Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
        sol.mu = Eigen::Map<Eigen::VectorXd>(mu.data(), static_cast<Eigen::Index>(mu.size()));
        sol.orientation = ori;
        return sol;
    };

    SUBCASE("thresholding rule") {
        std::vector<NodeSolution> sols = {
            make_solution(0, {1, 2}, {0.9, 0.2}, {1.5, 7.0}, Orientation::RowWise),
            make_solution(1, {0, 2}, {0.0, 0.0}, {0.0, 0.0}, Orientation::RowWise),
            make_solution(2, {0, 1}, {0.0, 0.0}, {0.0, 0.0}, Orientation::RowWise)};
        const auto result = assemble_network(sols);
        CHECK(result.network.weights(0, 1) == 1.5);
        CHECK(result.network.weights(0, 2) == 0.0);
        CHECK(result.network.adjacency(0, 1) == 1.0);
        result.network.validate();
    }
    SUBCASE("all theta below threshold gives an empty network") {
        std::vector<NodeSolution> sols = {
            make_solution(0, {1}, {0.5}, {3.0}, Orientation::RowWise),
            make_solution(1, {0}, {0.4}, {2.0}, Orientation::RowWise)};
        CHECK(assemble_network(sols).network.edge_count_directed() == 0);
    }
    SUBCASE("column-wise placement fills column i") {
        std::vector<NodeSolution> sols = {
            make_solution(0, {1, 2}, {0.9, 0.9}, {0.3, 0.7}, Orientation::ColumnWise),
            make_solution(1, {0, 2}, {0.0, 0.0}, {0.0, 0.0}, Orientation::ColumnWise),
            make_solution(2, {0, 1}, {0.0, 0.0}, {0.0, 0.0}, Orientation::ColumnWise)};
        const auto result = assemble_network(sols);
        CHECK(result.network.weights(1, 0) == 0.3);
        CHECK(result.network.weights(2, 0) == 0.7);
    }
    SUBCASE("round-trip placement identity") {
        std::vector<NodeSolution> sols = {
            make_solution(0, {1, 2}, {0.9, 0.1}, {1.5, 9.0}, Orientation::RowWise),
            make_solution(1, {0, 2}, {0.8, 0.7}, {-2.0, 4.0}, Orientation::RowWise),
            make_solution(2, {0, 1}, {0.2, 0.6}, {5.0, 0.5}, Orientation::RowWise)};
        const auto result = assemble_network(sols);
        for (const auto& sol : sols)
            for (std::size_t c = 0; c < sol.column_nodes.size(); ++c) {
                const double expect = sol.theta(c) > 0.5 ? sol.mu(c) : 0.0;
                CHECK(result.network.weights(sol.node_index, sol.column_nodes[c]) == expect);
            }
    }
    SUBCASE("missing node solution rejected") {
        std::vector<NodeSolution> sols = {
            make_solution(0, {1, 2}, {0.9, 0.9}, {1.0, 1.0}, Orientation::RowWise),
            make_solution(0, {1, 2}, {0.9, 0.9}, {1.0, 1.0}, Orientation::RowWise),
            make_solution(2, {0, 1}, {0.9, 0.9}, {1.0, 1.0}, Orientation::RowWise)};
        CHECK_THROWS_AS(assemble_network(sols), std::invalid_argument);
    }
    SUBCASE("diagonal never written") {
        std::vector<NodeSolution> sols = {
            make_solution(0, {1}, {0.9}, {1.0}, Orientation::RowWise),
            make_solution(1, {0}, {0.9}, {1.0}, Orientation::RowWise)};
        const auto result = assemble_network(sols);
        CHECK(result.network.weights.diagonal().cwiseAbs().maxCoeff() == 0.0);
    }
}

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netrecon/dynamics.hpp"
#include "netrecon/lasso.hpp"
#include "netrecon/metrics.hpp"
#include "netrecon/network.hpp"
#include "netrecon/problem.hpp"
#include "netrecon/vbr.hpp"

namespace netrecon {

enum class ExperimentKind { Exp1BaWs, Exp2SfGamma, Exp3Scaling, Exp4Real, Exp5Stock };
enum class Method { Vbr, Lasso };

std::string to_string(ExperimentKind kind);
std::string to_string(Method method);

/// Deterministic per-cell seed derivation (splitmix-style hash chain).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Exp1BaWs;
    DynamicsKind dynamics = DynamicsKind::Ect;
    GeneratorKind network = GeneratorKind::BA;
    std::string topology_path;  // Exp4
    NetworkFormat topology_format = NetworkFormat::EdgeListTSV;
    int n_nodes = 50;
    int n_samples = 50;
    std::vector<int> n_grid;         // Exp3
    std::vector<double> sigma_grid;  // Exp1/Exp4
    std::vector<double> gamma_grid;  // Exp2
    int n_replicates = 20;
    std::vector<Method> methods = {Method::Vbr, Method::Lasso};
    std::uint64_t seed = 0;
    std::string output_dir = ".";

    int ba_edges_per_node = 2;
    int ws_mean_degree = 4;
    double ws_rewire_prob = 0.1;
    double weight_lo = 2.0;
    double weight_hi = 3.0;
    double threshold = 0.5;
    Hyperparams vbr_hyper;
    SolverOptions vbr_opts;
    LassoOptions lasso_opts;

    void validate() const;
    /// Flat key = value view with every default materialized.
    std::map<std::string, std::string> resolved() const;
    static ExperimentConfig from_file(const std::string& path);
};

struct ResultRow {
    std::string experiment;
    std::string method;
    std::string dynamics;
    int n_nodes = 0;
    int n_samples = 0;
    std::optional<double> sigma;
    std::optional<double> gamma;
    int replicate = 0;
    std::uint64_t seed = 0;
    std::optional<double> tpr, tnr, error;
    double runtime_seconds = 0.0;
    long iterations = 0;
    std::string failure;  // nonempty when the cell errored
};

/// VBR over every node of a panel; runtime covers build + solve +
/// assemble only.
ReconstructionResult reconstruct_vbr(const TimeSeriesPanel& panel, const Hyperparams& hyper = {},
                                     const SolverOptions& opts = {}, double threshold = 0.5);

/// Reassigns undirected edge weights uniformly from [lo, hi] (used to put
/// conductances on real topologies read from file).
WeightedNetwork assign_weights(const WeightedNetwork& net, double lo, double hi, std::uint64_t seed);

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

void write_results_csv(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg,
                       const std::string& path);
void write_summary_csv(const std::vector<ResultRow>& rows, const std::string& path);

struct StockMethodReport {
    ReconstructionResult reconstruction;
    std::optional<double> mean_ci;
    int ci_excluded = 0;
    double mean_nmi = 0.0;  // averaged over NMF restarts
};

struct StockReport {
    std::vector<std::string> tickers;
    LabeledPartition industries;
    int n_industries = 0;
    std::map<std::string, StockMethodReport> by_method;
};

StockReport run_stock(const std::string& prices_csv, const std::string& labels_csv,
                      const std::vector<Method>& methods, std::uint64_t seed, int nmf_restarts = 100);

/// Builds a linear-mixing panel whose series and responses are both the
/// given price matrix (one column per ticker).
TimeSeriesPanel panel_from_prices(const Eigen::MatrixXd& prices);

}  // namespace netrecon

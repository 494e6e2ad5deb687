#include "netrecon/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace netrecon {

namespace {

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

template <typename T>
std::string join_list(const std::vector<T>& values) {
    std::ostringstream out;
    out.precision(12);
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
    return out.str();
}

GeneratorKind generator_from_string(const std::string& name) {
    if (name == "ba") return GeneratorKind::BA;
    if (name == "ws") return GeneratorKind::WS;
    if (name == "sf") return GeneratorKind::PowerLawSF;
    throw std::invalid_argument("unknown network kind: " + name);
}

std::string generator_to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::BA: return "ba";
        case GeneratorKind::WS: return "ws";
        case GeneratorKind::PowerLawSF: return "sf";
    }
    return "unknown";
}

ExperimentKind experiment_from_string(const std::string& name) {
    if (name == "exp1_ba_ws") return ExperimentKind::Exp1BaWs;
    if (name == "exp2_sf_gamma") return ExperimentKind::Exp2SfGamma;
    if (name == "exp3_scaling") return ExperimentKind::Exp3Scaling;
    if (name == "exp4_real") return ExperimentKind::Exp4Real;
    if (name == "exp5_stock") return ExperimentKind::Exp5Stock;
    throw std::invalid_argument("unknown experiment: " + name);
}

Method method_from_string(const std::string& name) {
    if (name == "vbr") return Method::Vbr;
    if (name == "lasso") return Method::Lasso;
    throw std::invalid_argument("unknown method: " + name);
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Exp1BaWs: return "exp1_ba_ws";
        case ExperimentKind::Exp2SfGamma: return "exp2_sf_gamma";
        case ExperimentKind::Exp3Scaling: return "exp3_scaling";
        case ExperimentKind::Exp4Real: return "exp4_real";
        case ExperimentKind::Exp5Stock: return "exp5_stock";
    }
    return "unknown";
}

std::string to_string(Method method) { return method == Method::Vbr ? "vbr" : "lasso"; }

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t state = mix(master);
    for (std::uint64_t part : parts) state = mix(state ^ mix(part));
    return state;
}

void ExperimentConfig::validate() const {
    if (n_replicates < 1) throw std::invalid_argument("n_replicates must be >= 1");
    if (methods.empty()) throw std::invalid_argument("at least one method required");
    switch (experiment) {
        case ExperimentKind::Exp1BaWs:
        case ExperimentKind::Exp4Real:
            if (sigma_grid.empty()) throw std::invalid_argument("sigma_grid must be nonempty");
            break;
        case ExperimentKind::Exp2SfGamma:
            if (gamma_grid.empty()) throw std::invalid_argument("gamma_grid must be nonempty");
            if (sigma_grid.size() != 1) throw std::invalid_argument("exp2 needs exactly one sigma");
            break;
        case ExperimentKind::Exp3Scaling:
            if (n_grid.empty()) throw std::invalid_argument("n_grid must be nonempty");
            if (sigma_grid.size() != 1) throw std::invalid_argument("exp3 needs exactly one sigma");
            break;
        case ExperimentKind::Exp5Stock:
            throw std::invalid_argument("exp5 runs through the stock pipeline, not run_experiment");
    }
    if (experiment == ExperimentKind::Exp4Real && topology_path.empty())
        throw std::invalid_argument("exp4 requires topology_path");
}

std::map<std::string, std::string> ExperimentConfig::resolved() const {
    std::map<std::string, std::string> kv;
    kv["experiment"] = to_string(experiment);
    kv["dynamics"] = to_string(dynamics);
    kv["network"] = generator_to_string(network);
    kv["topology_path"] = topology_path;
    kv["topology_format"] = topology_format == NetworkFormat::EdgeListTSV ? "tsv" : "mtx";
    kv["n_nodes"] = std::to_string(n_nodes);
    kv["n_samples"] = std::to_string(n_samples);
    kv["n_grid"] = join_list(n_grid);
    kv["sigma_grid"] = join_list(sigma_grid);
    kv["gamma_grid"] = join_list(gamma_grid);
    kv["n_replicates"] = std::to_string(n_replicates);
    std::vector<std::string> names;
    for (Method m : methods) names.push_back(to_string(m));
    kv["methods"] = join_list(names);
    kv["seed"] = std::to_string(seed);
    kv["output_dir"] = output_dir;
    kv["ba_edges_per_node"] = std::to_string(ba_edges_per_node);
    kv["ws_mean_degree"] = std::to_string(ws_mean_degree);
    kv["ws_rewire_prob"] = fmt(ws_rewire_prob);
    kv["weight_lo"] = fmt(weight_lo);
    kv["weight_hi"] = fmt(weight_hi);
    kv["threshold"] = fmt(threshold);
    kv["vbr_max_iters"] = std::to_string(vbr_opts.max_iters);
    kv["vbr_tol"] = fmt(vbr_opts.tol);
    kv["lasso_n_lambdas"] = std::to_string(lasso_opts.n_lambdas);
    kv["lasso_lambda_min_ratio"] = fmt(lasso_opts.lambda_min_ratio);
    kv["lasso_k_folds"] = std::to_string(lasso_opts.k_folds);
    return kv;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    ExperimentConfig cfg;
    cfg.sigma_grid.clear();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "experiment") cfg.experiment = experiment_from_string(value);
            else if (key == "dynamics") cfg.dynamics = dynamics_from_string(value);
            else if (key == "network") cfg.network = generator_from_string(value);
            else if (key == "topology_path") cfg.topology_path = value;
            else if (key == "topology_format")
                cfg.topology_format = value == "mtx" ? NetworkFormat::MatrixMarket : NetworkFormat::EdgeListTSV;
            else if (key == "n_nodes") cfg.n_nodes = std::stoi(value);
            else if (key == "n_samples") cfg.n_samples = std::stoi(value);
            else if (key == "n_grid") {
                cfg.n_grid.clear();
                for (const auto& item : split_list(value)) cfg.n_grid.push_back(std::stoi(item));
            } else if (key == "sigma_grid") {
                cfg.sigma_grid.clear();
                for (const auto& item : split_list(value)) cfg.sigma_grid.push_back(std::stod(item));
            } else if (key == "gamma_grid") {
                cfg.gamma_grid.clear();
                for (const auto& item : split_list(value)) cfg.gamma_grid.push_back(std::stod(item));
            } else if (key == "n_replicates") cfg.n_replicates = std::stoi(value);
            else if (key == "methods") {
                cfg.methods.clear();
                for (const auto& item : split_list(value)) cfg.methods.push_back(method_from_string(item));
            } else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "output_dir") cfg.output_dir = value;
            else if (key == "ba_edges_per_node") cfg.ba_edges_per_node = std::stoi(value);
            else if (key == "ws_mean_degree") cfg.ws_mean_degree = std::stoi(value);
            else if (key == "ws_rewire_prob") cfg.ws_rewire_prob = std::stod(value);
            else if (key == "weight_lo") cfg.weight_lo = std::stod(value);
            else if (key == "weight_hi") cfg.weight_hi = std::stod(value);
            else if (key == "threshold") cfg.threshold = std::stod(value);
            else if (key == "vbr_max_iters") cfg.vbr_opts.max_iters = std::stoi(value);
            else if (key == "vbr_tol") cfg.vbr_opts.tol = std::stod(value);
            else if (key == "lasso_n_lambdas") cfg.lasso_opts.n_lambdas = std::stoi(value);
            else if (key == "lasso_lambda_min_ratio") cfg.lasso_opts.lambda_min_ratio = std::stod(value);
            else if (key == "lasso_k_folds") cfg.lasso_opts.k_folds = std::stoi(value);
            else throw std::runtime_error("unknown key `" + key + "`");
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception& ex) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + ex.what());
        }
    }
    if (cfg.sigma_grid.empty()) cfg.sigma_grid = {0.1};
    return cfg;
}

ReconstructionResult reconstruct_vbr(const TimeSeriesPanel& panel, const Hyperparams& hyper,
                                     const SolverOptions& opts, double threshold) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<NodeSolution> solutions;
    solutions.reserve(panel.n_nodes());
    for (int i = 0; i < panel.n_nodes(); ++i) {
        RegressionProblem prob = build_problem(panel, i);
        VbrResult fit = vbr_solve(prob.X, prob.y, hyper, opts);
        NodeSolution sol;
        sol.node_index = i;
        sol.theta = std::move(fit.theta);
        sol.mu = std::move(fit.mu);
        sol.column_nodes = std::move(prob.column_nodes);
        sol.orientation = prob.orientation;
        sol.iterations = fit.diagnostics.iterations;
        solutions.push_back(std::move(sol));
    }
    ReconstructionResult result = assemble_network(solutions, threshold);
    result.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

WeightedNetwork assign_weights(const WeightedNetwork& net, double lo, double hi, std::uint64_t seed) {
    if (lo <= 0.0 || hi < lo) throw std::invalid_argument("weight range must satisfy 0 < lo <= hi");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> wdist(lo, hi);
    WeightedNetwork out = net;
    for (int i = 0; i < net.n_nodes; ++i)
        for (int j = i + 1; j < net.n_nodes; ++j) {
            if (net.adjacency(i, j) == 0.0 && net.adjacency(j, i) == 0.0) continue;
            const double w = wdist(rng);
            if (net.adjacency(i, j) != 0.0) out.weights(i, j) = w;
            if (net.adjacency(j, i) != 0.0) out.weights(j, i) = w;
        }
    out.rebuild_adjacency();
    return out;
}

namespace {

struct Cell {
    int n_nodes;
    std::optional<double> sigma;
    std::optional<double> gamma;
    std::uint64_t index;
};

ReconstructionResult reconstruct_timed(Method method, const TimeSeriesPanel& panel,
                                       const ExperimentConfig& cfg, std::uint64_t seed) {
    if (method == Method::Vbr) return reconstruct_vbr(panel, cfg.vbr_hyper, cfg.vbr_opts, cfg.threshold);
    const auto start = std::chrono::steady_clock::now();
    LassoOptions opts = cfg.lasso_opts;
    opts.seed = seed;
    ReconstructionResult result = lasso_reconstruct(panel, opts);
    result.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::uint64_t exp_id = static_cast<std::uint64_t>(cfg.experiment);

    std::vector<Cell> cells;
    switch (cfg.experiment) {
        case ExperimentKind::Exp1BaWs:
        case ExperimentKind::Exp4Real:
            for (std::size_t i = 0; i < cfg.sigma_grid.size(); ++i)
                cells.push_back({cfg.n_nodes, cfg.sigma_grid[i], std::nullopt, i});
            break;
        case ExperimentKind::Exp2SfGamma:
            for (std::size_t i = 0; i < cfg.gamma_grid.size(); ++i)
                cells.push_back({cfg.n_nodes, cfg.sigma_grid[0], cfg.gamma_grid[i], i});
            break;
        case ExperimentKind::Exp3Scaling:
            for (std::size_t i = 0; i < cfg.n_grid.size(); ++i)
                cells.push_back({cfg.n_grid[i], cfg.sigma_grid[0], std::nullopt, i});
            break;
        case ExperimentKind::Exp5Stock:
            break;  // unreachable, validate() rejects it
    }

    std::optional<WeightedNetwork> real_topology;
    if (cfg.experiment == ExperimentKind::Exp4Real)
        real_topology = read_network(cfg.topology_path, cfg.topology_format);

    std::vector<ResultRow> rows;
    for (const Cell& cell : cells) {
        for (int rep = 0; rep < cfg.n_replicates; ++rep) {
            const std::uint64_t cell_seed = derive_seed(cfg.seed, {exp_id, cell.index, static_cast<std::uint64_t>(rep)});
            for (Method method : cfg.methods) {
                ResultRow row;
                row.experiment = to_string(cfg.experiment);
                row.method = to_string(method);
                row.dynamics = to_string(cfg.dynamics);
                row.n_nodes = cell.n_nodes;
                row.n_samples = cfg.n_samples;
                row.sigma = cell.sigma;
                row.gamma = cell.gamma;
                row.replicate = rep;
                row.seed = cell_seed;
                try {
                    GeneratorSpec gen;
                    gen.n_nodes = cell.n_nodes;
                    gen.ba_edges_per_node = cfg.ba_edges_per_node;
                    gen.ws_mean_degree = cfg.ws_mean_degree;
                    gen.ws_rewire_prob = cfg.ws_rewire_prob;
                    gen.weight_lo = cfg.weight_lo;
                    gen.weight_hi = cfg.weight_hi;
                    gen.seed = derive_seed(cell_seed, {1});
                    WeightedNetwork truth;
                    if (cfg.experiment == ExperimentKind::Exp2SfGamma) {
                        gen.kind = GeneratorKind::PowerLawSF;
                        gen.sf_gamma = *cell.gamma;
                        truth = generate(gen);
                    } else if (cfg.experiment == ExperimentKind::Exp4Real) {
                        truth = assign_weights(*real_topology, cfg.weight_lo, cfg.weight_hi, gen.seed);
                    } else {
                        gen.kind = cfg.network;
                        truth = generate(gen);
                    }
                    const std::uint64_t sim_seed = derive_seed(cell_seed, {2});
                    TimeSeriesPanel panel;
                    if (cfg.dynamics == DynamicsKind::Ect) {
                        EctConfig ect;
                        ect.n_samples = cfg.n_samples;
                        ect.noise_sigma = cell.sigma.value_or(0.0);
                        ect.seed = sim_seed;
                        panel = simulate_ect(truth, ect);
                    } else if (cfg.dynamics == DynamicsKind::Communication) {
                        CommConfig comm;
                        comm.n_samples = cfg.n_samples;
                        comm.noise_sigma = cell.sigma.value_or(0.0);
                        comm.seed = sim_seed;
                        panel = simulate_communication(truth, comm);
                        truth = normalize_incoming(truth);  // normalized weights are the ground truth
                    } else {
                        panel = simulate_linear_mixing(truth, cfg.n_samples, cell.sigma.value_or(0.0), sim_seed);
                    }
                    const ReconstructionResult recon =
                        reconstruct_timed(method, panel, cfg, derive_seed(cell_seed, {3}));
                    const auto [tpr, tnr] = tpr_tnr(truth, recon.network);
                    row.tpr = tpr;
                    row.tnr = tnr;
                    row.error = strength_error(truth, recon.network);
                    row.runtime_seconds = recon.runtime_seconds;
                    row.iterations = recon.total_iterations;
                } catch (const std::exception& ex) {
                    row.failure = ex.what();
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void write_results_csv(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& [key, value] : cfg.resolved()) out << "# " << key << " = " << value << '\n';
    out << "experiment,method,dynamics,N,M,sigma,gamma,replicate,seed,tpr,tnr,error,runtime_seconds,iterations\n";
    for (const ResultRow& row : rows) {
        out << row.experiment << ',' << row.method << ',' << row.dynamics << ',' << row.n_nodes << ','
            << row.n_samples << ',' << fmt_opt(row.sigma) << ',' << fmt_opt(row.gamma) << ','
            << row.replicate << ',' << row.seed << ',' << fmt_opt(row.tpr) << ',' << fmt_opt(row.tnr)
            << ',' << fmt_opt(row.error) << ',' << fmt(row.runtime_seconds) << ',' << row.iterations;
        if (!row.failure.empty()) {
            std::string msg = row.failure;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << ",# " << msg;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failure on " + path);
}

void write_summary_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    struct Agg {
        int count = 0;
        double tpr = 0, tpr2 = 0, tnr = 0, tnr2 = 0, err = 0, err2 = 0, rt = 0, rt2 = 0;
    };
    std::map<std::string, Agg> cells;
    for (const ResultRow& row : rows) {
        if (!row.failure.empty()) continue;
        std::ostringstream key;
        key << row.experiment << ',' << row.method << ',' << row.dynamics << ',' << row.n_nodes << ','
            << row.n_samples << ',' << fmt_opt(row.sigma) << ',' << fmt_opt(row.gamma);
        Agg& agg = cells[key.str()];
        ++agg.count;
        const double tpr = row.tpr.value_or(0.0), tnr = row.tnr.value_or(0.0), err = row.error.value_or(0.0);
        agg.tpr += tpr;
        agg.tpr2 += tpr * tpr;
        agg.tnr += tnr;
        agg.tnr2 += tnr * tnr;
        agg.err += err;
        agg.err2 += err * err;
        agg.rt += row.runtime_seconds;
        agg.rt2 += row.runtime_seconds * row.runtime_seconds;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "experiment,method,dynamics,N,M,sigma,gamma,replicates,"
           "tpr_mean,tpr_std,tnr_mean,tnr_std,error_mean,error_std,runtime_mean,runtime_std\n";
    const auto stats = [](double sum, double sum2, int n) {
        const double mean = sum / n;
        const double var = n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1)) : 0.0;
        return std::make_pair(mean, std::sqrt(var));
    };
    for (const auto& [key, agg] : cells) {
        const auto [tm, ts] = stats(agg.tpr, agg.tpr2, agg.count);
        const auto [nm, ns] = stats(agg.tnr, agg.tnr2, agg.count);
        const auto [em, es] = stats(agg.err, agg.err2, agg.count);
        const auto [rm, rs] = stats(agg.rt, agg.rt2, agg.count);
        out << key << ',' << agg.count << ',' << fmt(tm) << ',' << fmt(ts) << ',' << fmt(nm) << ','
            << fmt(ns) << ',' << fmt(em) << ',' << fmt(es) << ',' << fmt(rm) << ',' << fmt(rs) << '\n';
    }
}

TimeSeriesPanel panel_from_prices(const Eigen::MatrixXd& prices) {
    if (!prices.allFinite()) throw std::invalid_argument("price matrix must be finite");
    TimeSeriesPanel panel;
    panel.kind = DynamicsKind::LinearMixing;
    panel.series = prices;
    panel.responses = prices;
    return panel;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    return cells;
}

}  // namespace

StockReport run_stock(const std::string& prices_csv, const std::string& labels_csv,
                      const std::vector<Method>& methods, std::uint64_t seed, int nmf_restarts) {
    std::ifstream in(prices_csv);
    if (!in) throw std::runtime_error("cannot open " + prices_csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(prices_csv + ": missing ticker header");
    StockReport report;
    report.tickers = split_csv_line(line);
    const int n = static_cast<int>(report.tickers.size());
    if (n < 2) throw std::runtime_error(prices_csv + ": need at least two tickers");

    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != n)
            throw std::runtime_error(prices_csv + ":" + std::to_string(lineno) + ": wrong column count");
        std::vector<double> row(n);
        for (int j = 0; j < n; ++j) {
            try {
                row[j] = std::stod(cells[j]);
            } catch (const std::exception&) {
                throw std::runtime_error(prices_csv + ":" + std::to_string(lineno) + ": non-numeric price `" +
                                         cells[j] + "`");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(prices_csv + ": no price rows");
    Eigen::MatrixXd prices(rows.size(), n);
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (int j = 0; j < n; ++j) prices(t, j) = rows[t][j];

    std::ifstream lin(labels_csv);
    if (!lin) throw std::runtime_error("cannot open " + labels_csv);
    std::map<std::string, std::string> ticker_industry;
    lineno = 0;
    while (std::getline(lin, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 2)
            throw std::runtime_error(labels_csv + ":" + std::to_string(lineno) + ": expected `ticker,industry`");
        if (lineno == 1 && cells[0] == "ticker") continue;  // optional header
        ticker_industry[cells[0]] = cells[1];
    }
    std::map<std::string, int> industry_ids;
    report.industries.labels.resize(n);
    for (int j = 0; j < n; ++j) {
        const auto it = ticker_industry.find(report.tickers[j]);
        if (it == ticker_industry.end())
            throw std::runtime_error(labels_csv + ": missing label for ticker `" + report.tickers[j] + "`");
        report.industries.labels[j] =
            industry_ids.emplace(it->second, static_cast<int>(industry_ids.size())).first->second;
    }
    report.n_industries = static_cast<int>(industry_ids.size());

    const TimeSeriesPanel panel = panel_from_prices(prices);
    for (Method method : methods) {
        StockMethodReport mr;
        ExperimentConfig cfg;  // defaults only; stock uses the standard knobs
        mr.reconstruction = reconstruct_timed(method, panel, cfg, derive_seed(seed, {10}));
        const auto ci = cohesion_index(mr.reconstruction.network, report.industries);
        std::tie(mr.mean_ci, mr.ci_excluded) = mean_cohesion(ci);
        double nmi_sum = 0.0;
        for (int r = 0; r < nmf_restarts; ++r) {
            const auto part = nmf_run(mr.reconstruction.network, report.n_industries,
                                      derive_seed(seed, {20, static_cast<std::uint64_t>(r)}));
            nmi_sum += nmi(part, report.industries);
        }
        mr.mean_nmi = nmi_sum / nmf_restarts;
        report.by_method[to_string(method)] = std::move(mr);
    }
    return report;
}

}  // namespace netrecon

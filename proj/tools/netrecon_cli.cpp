#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "netrecon/harness.hpp"

namespace {

using namespace netrecon;

NetworkFormat format_from_name(const std::string& name) {
    if (name == "tsv") return NetworkFormat::EdgeListTSV;
    if (name == "mtx") return NetworkFormat::MatrixMarket;
    throw CLI::ValidationError("format", "expected tsv or mtx");
}

int cmd_generate(const std::string& kind, int n, int m, int k, double p, double gamma, double wlo,
                 double whi, std::uint64_t seed, const std::string& out, const std::string& format) {
    GeneratorSpec spec;
    spec.n_nodes = n;
    spec.ba_edges_per_node = m;
    spec.ws_mean_degree = k;
    spec.ws_rewire_prob = p;
    spec.sf_gamma = gamma;
    spec.weight_lo = wlo;
    spec.weight_hi = whi;
    spec.seed = seed;
    if (kind == "ba") spec.kind = GeneratorKind::BA;
    else if (kind == "ws") spec.kind = GeneratorKind::WS;
    else if (kind == "sf") spec.kind = GeneratorKind::PowerLawSF;
    else throw CLI::ValidationError("kind", "expected ba, ws or sf");
    const WeightedNetwork net = generate(spec);
    write_network(net, out, format_from_name(format));
    std::cout << "wrote " << net.n_nodes << "-node network with " << net.edge_count_undirected()
              << " undirected edges to " << out << '\n';
    return 0;
}

int cmd_simulate(const std::string& net_path, const std::string& format, const std::string& dynamics,
                 int samples, double sigma, std::uint64_t seed, const std::string& out) {
    const WeightedNetwork net = read_network(net_path, format_from_name(format));
    const DynamicsKind kind = dynamics_from_string(dynamics);
    TimeSeriesPanel panel;
    if (kind == DynamicsKind::Ect) {
        EctConfig cfg;
        cfg.n_samples = samples;
        cfg.noise_sigma = sigma;
        cfg.seed = seed;
        panel = simulate_ect(net, cfg);
    } else if (kind == DynamicsKind::Communication) {
        CommConfig cfg;
        cfg.n_samples = samples;
        cfg.noise_sigma = sigma;
        cfg.seed = seed;
        panel = simulate_communication(net, cfg);
    } else {
        panel = simulate_linear_mixing(net, samples, sigma, seed);
    }
    write_panel(panel, out);
    std::cout << "wrote " << panel.n_samples() << "x" << panel.n_nodes() << " panel to " << out << '\n';
    return 0;
}

int cmd_reconstruct(const std::string& method, const std::string& panel_path,
                    const std::string& dynamics, double threshold, std::uint64_t seed,
                    const std::string& out, const std::string& format) {
    TimeSeriesPanel panel = read_panel(panel_path);
    if (!dynamics.empty()) panel.kind = dynamics_from_string(dynamics);
    ReconstructionResult result;
    if (method == "vbr") {
        result = reconstruct_vbr(panel, {}, {}, threshold);
    } else if (method == "lasso") {
        const auto start = std::chrono::steady_clock::now();
        LassoOptions opts;
        opts.seed = seed;
        result = lasso_reconstruct(panel, opts);
        result.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } else {
        throw CLI::ValidationError("method", "expected vbr or lasso");
    }
    write_network(result.network, out, format_from_name(format));
    std::printf("reconstructed %d nodes, %d directed edges, %.3f s\n", result.network.n_nodes,
                result.network.edge_count_directed(), result.runtime_seconds);
    return 0;
}

int cmd_evaluate(const std::string& truth_path, const std::string& est_path, const std::string& format) {
    const WeightedNetwork truth = read_network(truth_path, format_from_name(format));
    const WeightedNetwork est = read_network(est_path, format_from_name(format));
    const auto [tpr, tnr] = tpr_tnr(truth, est);
    const auto error = strength_error(truth, est);
    const auto show = [](const std::optional<double>& v) { return v ? std::to_string(*v) : "missing"; };
    std::cout << "TPR=" << show(tpr) << " TNR=" << show(tnr) << " Error=" << show(error) << '\n';
    return 0;
}

int cmd_experiment(const std::string& config_path) {
    const ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
    const auto rows = run_experiment(cfg);
    std::filesystem::create_directories(cfg.output_dir);
    const std::string base = cfg.output_dir + "/" + to_string(cfg.experiment);
    write_results_csv(rows, cfg, base + "_results.csv");
    write_summary_csv(rows, base + "_summary.csv");
    int failures = 0;
    for (const auto& row : rows)
        if (!row.failure.empty()) ++failures;
    std::cout << "wrote " << rows.size() << " rows to " << base << "_results.csv (" << failures
              << " failed cells)\n";
    return 0;
}

int cmd_stock(const std::string& prices, const std::string& labels, const std::string& methods_arg,
              std::uint64_t seed, const std::string& outdir) {
    std::vector<Method> methods;
    for (const auto& name : {std::string("vbr"), std::string("lasso")})
        if (methods_arg.find(name) != std::string::npos)
            methods.push_back(name == "vbr" ? Method::Vbr : Method::Lasso);
    if (methods.empty()) throw CLI::ValidationError("methods", "expected vbr, lasso or vbr,lasso");
    const StockReport report = run_stock(prices, labels, methods, seed);
    std::filesystem::create_directories(outdir);
    for (const auto& [name, mr] : report.by_method) {
        write_network(mr.reconstruction.network, outdir + "/stock_" + name + ".tsv",
                      NetworkFormat::EdgeListTSV);
        std::printf("%s: mean_CI=%s (excluded %d) mean_NMI=%.4f runtime=%.3f s\n", name.c_str(),
                    mr.mean_ci ? std::to_string(*mr.mean_ci).c_str() : "missing", mr.ci_excluded,
                    mr.mean_nmi, mr.reconstruction.runtime_seconds);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted network reconstruction from nodal time series"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a random network");
    std::string gen_kind = "ba", gen_out, gen_format = "tsv";
    int gen_n = 50, gen_m = 2, gen_k = 4;
    double gen_p = 0.1, gen_gamma = -3.0, gen_wlo = 2.0, gen_whi = 3.0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "ba | ws | sf");
    gen->add_option("--n", gen_n, "number of nodes");
    gen->add_option("--m", gen_m, "BA edges per node");
    gen->add_option("--k", gen_k, "WS mean degree (even)");
    gen->add_option("--p", gen_p, "WS rewire probability");
    gen->add_option("--gamma", gen_gamma, "SF degree exponent in [-3,-2]");
    gen->add_option("--wlo", gen_wlo, "weight range lower bound");
    gen->add_option("--whi", gen_whi, "weight range upper bound");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output path")->required();
    gen->add_option("--format", gen_format, "tsv | mtx");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Simulate nodal time series on a network");
    std::string sim_net, sim_format = "tsv", sim_dyn = "ect", sim_out;
    int sim_samples = 50;
    double sim_sigma = 0.0;
    std::uint64_t sim_seed = 0;
    sim->add_option("--net", sim_net, "network file")->required();
    sim->add_option("--format", sim_format, "tsv | mtx");
    sim->add_option("--dynamics", sim_dyn, "ect | communication | mixing");
    sim->add_option("--samples", sim_samples, "number of time samples M");
    sim->add_option("--sigma", sim_sigma, "observation noise scale");
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--out", sim_out, "panel CSV path")->required();

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Reconstruct a network from a panel");
    std::string rec_method = "vbr", rec_panel, rec_dyn, rec_out, rec_format = "tsv";
    double rec_threshold = 0.5;
    std::uint64_t rec_seed = 0;
    rec->add_option("--method", rec_method, "vbr | lasso");
    rec->add_option("--panel", rec_panel, "panel CSV (with sidecar .meta)")->required();
    rec->add_option("--dynamics", rec_dyn, "override dynamics kind from the sidecar");
    rec->add_option("--threshold", rec_threshold, "inclusion-probability threshold");
    rec->add_option("--seed", rec_seed, "CV fold seed (lasso)");
    rec->add_option("--out", rec_out, "output network path")->required();
    rec->add_option("--format", rec_format, "tsv | mtx");

    // evaluate
    auto* eva = app.add_subcommand("evaluate", "Compare an estimate against a ground truth");
    std::string eva_truth, eva_est, eva_format = "tsv";
    eva->add_option("--truth", eva_truth, "ground-truth network")->required();
    eva->add_option("--est", eva_est, "estimated network")->required();
    eva->add_option("--format", eva_format, "tsv | mtx");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a configured experiment grid");
    std::string exp_config;
    exp->add_option("--config", exp_config, "flat key = value config file")->required();

    // stock
    auto* stk = app.add_subcommand("stock", "Reconstruct a stock network from prices");
    std::string stk_prices, stk_labels, stk_methods = "vbr,lasso", stk_outdir = ".";
    std::uint64_t stk_seed = 0;
    stk->add_option("--prices", stk_prices, "prices CSV (ticker header row)")->required();
    stk->add_option("--labels", stk_labels, "labels CSV (ticker,industry)")->required();
    stk->add_option("--methods", stk_methods, "vbr | lasso | vbr,lasso");
    stk->add_option("--seed", stk_seed, "RNG seed");
    stk->add_option("--outdir", stk_outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_kind, gen_n, gen_m, gen_k, gen_p, gen_gamma, gen_wlo, gen_whi,
                                gen_seed, gen_out, gen_format);
        if (sim->parsed())
            return cmd_simulate(sim_net, sim_format, sim_dyn, sim_samples, sim_sigma, sim_seed, sim_out);
        if (rec->parsed())
            return cmd_reconstruct(rec_method, rec_panel, rec_dyn, rec_threshold, rec_seed, rec_out,
                                   rec_format);
        if (eva->parsed()) return cmd_evaluate(eva_truth, eva_est, eva_format);
        if (exp->parsed()) return cmd_experiment(exp_config);
        if (stk->parsed()) return cmd_stock(stk_prices, stk_labels, stk_methods, stk_seed, stk_outdir);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

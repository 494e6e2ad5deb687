#include "netrecon/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace netrecon {

WeightedNetwork WeightedNetwork::zero(int n) {
    if (n <= 0) throw std::invalid_argument("n_nodes must be positive");
    WeightedNetwork net;
    net.n_nodes = n;
    net.weights = Eigen::MatrixXd::Zero(n, n);
    net.adjacency = Eigen::MatrixXd::Zero(n, n);
    return net;
}

void WeightedNetwork::rebuild_adjacency() {
    adjacency = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
    for (int i = 0; i < n_nodes; ++i)
        for (int j = 0; j < n_nodes; ++j)
            if (i != j && weights(i, j) != 0.0) adjacency(i, j) = 1.0;
}

void WeightedNetwork::validate() const {
    if (n_nodes <= 0 || weights.rows() != n_nodes || weights.cols() != n_nodes ||
        adjacency.rows() != n_nodes || adjacency.cols() != n_nodes)
        throw std::invalid_argument("network matrices must be n_nodes x n_nodes");
    for (int i = 0; i < n_nodes; ++i) {
        if (weights(i, i) != 0.0 || adjacency(i, i) != 0.0)
            throw std::invalid_argument("network must be loop-free (zero diagonal)");
        for (int j = 0; j < n_nodes; ++j) {
            const bool edge = weights(i, j) != 0.0;
            if (adjacency(i, j) != (edge ? 1.0 : 0.0))
                throw std::invalid_argument("adjacency inconsistent with weights");
        }
    }
}

bool WeightedNetwork::is_symmetric(double tol) const {
    return (weights - weights.transpose()).cwiseAbs().maxCoeff() <= tol;
}

int WeightedNetwork::edge_count_directed() const {
    int count = 0;
    for (int i = 0; i < n_nodes; ++i)
        for (int j = 0; j < n_nodes; ++j)
            if (i != j && weights(i, j) != 0.0) ++count;
    return count;
}

int WeightedNetwork::edge_count_undirected() const { return edge_count_directed() / 2; }

Eigen::VectorXi WeightedNetwork::degrees_undirected() const {
    Eigen::VectorXi deg = Eigen::VectorXi::Zero(n_nodes);
    for (int i = 0; i < n_nodes; ++i)
        for (int j = 0; j < n_nodes; ++j)
            if (i != j && weights(i, j) != 0.0) deg(i) += 1;
    return deg;
}

namespace {

using EdgeSet = std::set<std::pair<int, int>>;

std::pair<int, int> ordered(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

WeightedNetwork weight_undirected_edges(int n, const EdgeSet& edges, double lo, double hi,
                                        std::mt19937_64& rng) {
    std::uniform_real_distribution<double> wdist(lo, hi);
    WeightedNetwork net = WeightedNetwork::zero(n);
    for (const auto& [a, b] : edges) {
        const double w = wdist(rng);
        net.weights(a, b) = w;
        net.weights(b, a) = w;
    }
    net.rebuild_adjacency();
    return net;
}

void check_weight_range(const GeneratorSpec& spec) {
    if (spec.weight_lo <= 0.0 || spec.weight_hi < spec.weight_lo)
        throw std::invalid_argument("weight range must satisfy 0 < lo <= hi");
}

}  // namespace

WeightedNetwork generate_ba(const GeneratorSpec& spec) {
    const int n = spec.n_nodes;
    const int m = spec.ba_edges_per_node;
    if (m < 1 || n <= m) throw std::invalid_argument("BA generator requires n_nodes > ba_edges_per_node >= 1");
    check_weight_range(spec);

    std::mt19937_64 rng(spec.seed);
    EdgeSet edges;
    std::vector<int> degree(n, 0);
    // Seed clique of m0 = m nodes.
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            edges.insert({a, b});
            ++degree[a];
            ++degree[b];
        }
    for (int v = m; v < n; ++v) {
        std::set<int> targets;
        const int want = std::min(m, v);
        while (static_cast<int>(targets.size()) < want) {
            long total = std::accumulate(degree.begin(), degree.begin() + v, 0L);
            int pick;
            if (total == 0) {
                pick = static_cast<int>(std::uniform_int_distribution<int>(0, v - 1)(rng));
            } else {
                long r = std::uniform_int_distribution<long>(0, total - 1)(rng);
                pick = 0;
                while (r >= degree[pick]) r -= degree[pick++];
            }
            targets.insert(pick);
        }
        for (int t : targets) {
            edges.insert(ordered(v, t));
            ++degree[v];
            ++degree[t];
        }
    }
    return weight_undirected_edges(n, edges, spec.weight_lo, spec.weight_hi, rng);
}

WeightedNetwork generate_ws(const GeneratorSpec& spec) {
    const int n = spec.n_nodes;
    const int k = spec.ws_mean_degree;
    if (k <= 0 || k % 2 != 0) throw std::invalid_argument("WS mean degree must be positive and even");
    if (k >= n) throw std::invalid_argument("WS mean degree must be < n_nodes");
    if (spec.ws_rewire_prob < 0.0 || spec.ws_rewire_prob > 1.0)
        throw std::invalid_argument("rewire probability must be in [0,1]");
    check_weight_range(spec);

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    EdgeSet edges;
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= k / 2; ++d) edges.insert(ordered(i, (i + d) % n));

    // Rewire the far endpoint of each lattice edge with probability p.
    for (int d = 1; d <= k / 2; ++d) {
        for (int i = 0; i < n; ++i) {
            const auto old_edge = ordered(i, (i + d) % n);
            if (edges.count(old_edge) == 0) continue;  // already rewired away
            if (unit(rng) >= spec.ws_rewire_prob) continue;
            std::uniform_int_distribution<int> pick(0, n - 1);
            for (int attempt = 0; attempt < 64 * n; ++attempt) {
                const int j = pick(rng);
                if (j == i) continue;
                const auto candidate = ordered(i, j);
                if (edges.count(candidate)) continue;
                edges.erase(old_edge);
                edges.insert(candidate);
                break;
            }
        }
    }
    return weight_undirected_edges(n, edges, spec.weight_lo, spec.weight_hi, rng);
}

WeightedNetwork generate_powerlaw_sf(const GeneratorSpec& spec) {
    const int n = spec.n_nodes;
    if (n < 20) throw std::invalid_argument("power-law generator requires n_nodes >= 20");
    if (spec.sf_gamma < -3.0 || spec.sf_gamma > -2.0)
        throw std::invalid_argument("sf_gamma must lie in [-3, -2]");
    check_weight_range(spec);

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Inverse-CDF sampling of degrees from p(k) proportional to k^gamma on {1..n-1}.
    std::vector<double> cdf(n - 1);
    double norm = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
        norm += std::pow(static_cast<double>(k), spec.sf_gamma);
        cdf[k - 1] = norm;
    }
    std::vector<int> degree(n);
    long degree_sum = 0;
    for (int i = 0; i < n; ++i) {
        const double u = unit(rng) * norm;
        const int k = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin()) + 1;
        degree[i] = k;
        degree_sum += k;
    }
    if (degree_sum % 2 != 0) {
        // Fix parity by incrementing one uniformly chosen node's degree.
        for (;;) {
            const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
            if (degree[i] < n - 1) {
                ++degree[i];
                break;
            }
        }
    }

    // Configuration-model wiring, then simple-graph repair by deletion.
    std::vector<int> stubs;
    for (int i = 0; i < n; ++i) stubs.insert(stubs.end(), degree[i], i);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    EdgeSet edges;
    for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
        const int a = stubs[s], b = stubs[s + 1];
        if (a == b) continue;
        edges.insert(ordered(a, b));  // set semantics drop multi-edges
    }
    return weight_undirected_edges(n, edges, spec.weight_lo, spec.weight_hi, rng);
}

WeightedNetwork generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::BA: return generate_ba(spec);
        case GeneratorKind::WS: return generate_ws(spec);
        case GeneratorKind::PowerLawSF: return generate_powerlaw_sf(spec);
    }
    throw std::invalid_argument("unknown generator kind");
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

WeightedNetwork read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    struct Entry { int i, j; double w; };
    std::vector<Entry> entries;
    int max_node = 0, lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int i, j;
        double w;
        if (!(ls >> i >> j >> w)) parse_fail(path, lineno, "expected `i j w`");
        if (i < 1 || j < 1) parse_fail(path, lineno, "indices must be 1-based positive");
        if (i == j) parse_fail(path, lineno, "self-loop not allowed");
        entries.push_back({i - 1, j - 1, w});
        max_node = std::max({max_node, i, j});
    }
    WeightedNetwork net = WeightedNetwork::zero(std::max(max_node, 1));
    std::set<std::pair<int, int>> explicit_pairs;
    for (const auto& e : entries) {
        net.weights(e.i, e.j) = e.w;
        explicit_pairs.insert({e.i, e.j});
    }
    // Mirror entries whose reverse direction never appeared.
    for (const auto& e : entries)
        if (!explicit_pairs.count({e.j, e.i})) net.weights(e.j, e.i) = e.w;
    net.rebuild_adjacency();
    return net;
}

WeightedNetwork read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) parse_fail(path, 1, "missing header");
    ++lineno;
    std::istringstream hs(line);
    std::string banner, object, fmt, field, symmetry;
    hs >> banner >> object >> fmt >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || fmt != "coordinate" || field != "real")
        parse_fail(path, 1, "expected `%%MatrixMarket matrix coordinate real ...` header");
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general") parse_fail(path, 1, "unsupported symmetry: " + symmetry);

    int rows = 0, cols = 0;
    long nnz = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ds(line);
        if (!(ds >> rows >> cols >> nnz)) parse_fail(path, lineno, "expected size line `N N nnz`");
        break;
    }
    if (nnz < 0) parse_fail(path, lineno, "missing size line");
    if (rows != cols || rows <= 0) parse_fail(path, lineno, "matrix must be square and nonempty");
    WeightedNetwork net = WeightedNetwork::zero(rows);
    long seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream es(line);
        int i, j;
        double w;
        if (!(es >> i >> j >> w)) parse_fail(path, lineno, "expected `i j w`");
        if (i < 1 || j < 1 || i > rows || j > cols) parse_fail(path, lineno, "index out of range");
        ++seen;
        if (i == j) continue;  // diagonal forced to zero
        net.weights(i - 1, j - 1) = w;
        if (symmetric) net.weights(j - 1, i - 1) = w;
    }
    if (seen != nnz) parse_fail(path, lineno, "entry count does not match header");
    net.rebuild_adjacency();
    return net;
}

void write_edge_list(const WeightedNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.precision(17);
    const bool symmetric = net.is_symmetric();
    for (int i = 0; i < net.n_nodes; ++i) {
        for (int j = 0; j < net.n_nodes; ++j) {
            if (i == j || net.weights(i, j) == 0.0) continue;
            if (symmetric && j < i) continue;
            out << (i + 1) << '\t' << (j + 1) << '\t' << net.weights(i, j) << '\n';
            // Pin one-directional edges so the reader does not mirror them.
            if (!symmetric && net.weights(j, i) == 0.0)
                out << (j + 1) << '\t' << (i + 1) << '\t' << 0.0 << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failure on " + path);
}

void write_matrix_market(const WeightedNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.precision(17);
    const bool symmetric = net.is_symmetric();
    std::vector<std::tuple<int, int, double>> entries;
    for (int i = 0; i < net.n_nodes; ++i)
        for (int j = 0; j < net.n_nodes; ++j) {
            if (i == j || net.weights(i, j) == 0.0) continue;
            if (symmetric && j > i) continue;  // store lower triangle
            entries.emplace_back(i + 1, j + 1, net.weights(i, j));
        }
    out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << '\n';
    out << net.n_nodes << ' ' << net.n_nodes << ' ' << entries.size() << '\n';
    for (const auto& [i, j, w] : entries) out << i << ' ' << j << ' ' << w << '\n';
    if (!out) throw std::runtime_error("write failure on " + path);
}

}  // namespace

WeightedNetwork read_network(const std::string& path, NetworkFormat format) {
    return format == NetworkFormat::EdgeListTSV ? read_edge_list(path) : read_matrix_market(path);
}

void write_network(const WeightedNetwork& net, const std::string& path, NetworkFormat format) {
    if (format == NetworkFormat::EdgeListTSV)
        write_edge_list(net, path);
    else
        write_matrix_market(net, path);
}

}  // namespace netrecon

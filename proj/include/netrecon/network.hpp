#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace netrecon {

/// A directed weighted network without loops. adjacency(i,j) == 1 exactly
/// when weights(i,j) != 0; the diagonal of both matrices is zero.
struct WeightedNetwork {
    int n_nodes = 0;
    Eigen::MatrixXd weights;    // w(i,j): connection strength from i to j
    Eigen::MatrixXd adjacency;  // 0/1 entries

    static WeightedNetwork zero(int n);

    /// Recompute adjacency from the weight matrix (a_ij = 1 iff w_ij != 0).
    void rebuild_adjacency();

    /// Throws std::invalid_argument if the loop-free / consistency
    /// invariants are violated.
    void validate() const;

    bool is_symmetric(double tol = 0.0) const;
    int edge_count_directed() const;         // number of nonzero off-diagonal entries
    int edge_count_undirected() const;       // for symmetric networks: directed count / 2
    Eigen::VectorXi degrees_undirected() const;
};

enum class GeneratorKind { BA, WS, PowerLawSF };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::BA;
    int n_nodes = 0;
    int ba_edges_per_node = 2;      // m (seed clique size m0 = m)
    int ws_mean_degree = 4;         // K, must be even
    double ws_rewire_prob = 0.0;
    double sf_gamma = -3.0;         // degree exponent, in [-3, -2]
    double weight_lo = 2.0;
    double weight_hi = 3.0;
    std::uint64_t seed = 0;
};

WeightedNetwork generate_ba(const GeneratorSpec& spec);
WeightedNetwork generate_ws(const GeneratorSpec& spec);
WeightedNetwork generate_powerlaw_sf(const GeneratorSpec& spec);
WeightedNetwork generate(const GeneratorSpec& spec);

enum class NetworkFormat { EdgeListTSV, MatrixMarket };

/// Edge-list TSV: one `i<TAB>j<TAB>w` line per edge, 1-based indices.
/// A line present in the file is authoritative (including explicit zeros);
/// a pair whose reverse direction never appears is mirrored on read, so
/// symmetric networks may be stored with one line per undirected edge.
WeightedNetwork read_network(const std::string& path, NetworkFormat format);
void write_network(const WeightedNetwork& net, const std::string& path, NetworkFormat format);

}  // namespace netrecon

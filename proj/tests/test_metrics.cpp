#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "netrecon/metrics.hpp"

using namespace netrecon;

namespace {

WeightedNetwork from_weights(const Eigen::MatrixXd& w) {
    WeightedNetwork net;
    net.n_nodes = static_cast<int>(w.rows());
    net.weights = w;
    net.rebuild_adjacency();
    return net;
}

// Two disconnected 4-cliques.
WeightedNetwork two_cliques() {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(8, 8);
    for (int block = 0; block < 2; ++block)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) w(4 * block + i, 4 * block + j) = 1.0;
    return from_weights(w);
}

WeightedNetwork permuted(const WeightedNetwork& net, const std::vector<int>& perm) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(net.n_nodes, net.n_nodes);
    for (int i = 0; i < net.n_nodes; ++i)
        for (int j = 0; j < net.n_nodes; ++j) w(perm[i], perm[j]) = net.weights(i, j);
    return from_weights(w);
}

}  // namespace

TEST_CASE("tpr_tnr") {
    SUBCASE("perfect estimate") {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
        w(0, 1) = w(1, 0) = 2.0;
        const auto net = from_weights(w);
        const auto [tpr, tnr] = tpr_tnr(net, net);
        CHECK(*tpr == 1.0);
        CHECK(*tnr == 1.0);
    }
    SUBCASE("off-diagonal complement misses every edge") {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
        w(0, 1) = w(2, 0) = 1.0;
        const auto truth = from_weights(w);
        Eigen::MatrixXd v = Eigen::MatrixXd::Ones(3, 3);
        v.diagonal().setZero();
        v(0, 1) = v(2, 0) = 0.0;
        const auto est = from_weights(v);
        const auto [tpr, tnr] = tpr_tnr(truth, est);
        CHECK(*tpr == 0.0);
        // The structurally zero diagonal still counts as 3 true negatives
        // out of the 7 negatives, per the all-ordered-pairs sums.
        CHECK(*tnr == doctest::Approx(3.0 / 7.0));
    }
    SUBCASE("brute-force pair enumeration oracle") {
        // Truth: 3 directed edges of the 6 possible off-diagonal pairs (N=3).
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
        w(0, 1) = w(1, 2) = w(2, 0) = 1.0;
        const auto truth = from_weights(w);
        // Estimate hits 2 of the 3 and adds 1 fake edge.
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(3, 3);
        v(0, 1) = v(1, 2) = 1.0;  // hits
        v(1, 0) = 1.0;            // fake
        const auto est = from_weights(v);
        double tp = 0, pos = 0, tn = 0, neg = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (truth.adjacency(i, j) != 0.0) {
                    ++pos;
                    if (est.adjacency(i, j) != 0.0) ++tp;
                } else {
                    ++neg;
                    if (est.adjacency(i, j) == 0.0) ++tn;
                }
            }
        const auto [tpr, tnr] = tpr_tnr(truth, est);
        CHECK(*tpr == doctest::Approx(2.0 / 3.0));
        CHECK(*tpr == doctest::Approx(tp / pos));
        CHECK(*tnr == doctest::Approx(tn / neg));  // diagonal counted as negatives
    }
    SUBCASE("missing values for empty classes") {
        const auto empty = WeightedNetwork::zero(3);
        const auto [tpr, tnr] = tpr_tnr(empty, empty);
        CHECK_FALSE(tpr.has_value());
        CHECK(*tnr == 1.0);
        Eigen::MatrixXd full = Eigen::MatrixXd::Ones(2, 2);
        full.diagonal().setZero();
        // N=2 all-connected truth still has the 2 diagonal negatives.
        const auto [tpr2, tnr2] = tpr_tnr(from_weights(full), from_weights(full));
        CHECK(*tpr2 == 1.0);
        CHECK(*tnr2 == 1.0);
    }
    SUBCASE("invariant under simultaneous node relabeling") {
        const auto truth = two_cliques();
        Eigen::MatrixXd v = truth.weights;
        v(0, 5) = 1.0;  // one fake edge
        v(1, 2) = 0.0;  // one miss
        const auto est = from_weights(v);
        std::vector<int> perm{3, 1, 7, 0, 5, 2, 6, 4};
        const auto [tpr, tnr] = tpr_tnr(truth, est);
        const auto [ptpr, ptnr] = tpr_tnr(permuted(truth, perm), permuted(est, perm));
        CHECK(*tpr == *ptpr);
        CHECK(*tnr == *ptnr);
    }
}

TEST_CASE("strength_error") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
    w(0, 1) = 2.0;
    w(1, 2) = -1.0;
    const auto truth = from_weights(w);

    SUBCASE("exact estimate") { CHECK(*strength_error(truth, truth) == 0.0); }
    SUBCASE("empty estimate") { CHECK(*strength_error(truth, WeightedNetwork::zero(3)) == doctest::Approx(1.0)); }
    SUBCASE("doubled estimate") {
        CHECK(*strength_error(truth, from_weights(2.0 * w)) == doctest::Approx(1.0));
    }
    SUBCASE("zero-mass truth is missing") {
        CHECK_FALSE(strength_error(WeightedNetwork::zero(3), truth).has_value());
    }
    SUBCASE("scale covariance") {
        const auto est = from_weights(1.7 * w);
        const double c = 3.0;
        const auto scaled_truth = from_weights(c * w);
        const auto rescaled_est = from_weights(est.weights / c);
        CHECK(*strength_error(scaled_truth, est) == doctest::Approx(*strength_error(truth, rescaled_est)));
    }
}

TEST_CASE("cohesion_index") {
    SUBCASE("all different-label neighbors gives zero") {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
        w(0, 1) = w(1, 0) = 1.0;
        w(0, 2) = w(2, 0) = 1.0;
        const auto net = from_weights(w);
        const auto ci = cohesion_index(net, {{0, 1, 1}});
        CHECK(ci[0] == 0.0);
    }
    SUBCASE("2 same-label and 1 different-label undirected neighbors gives 2") {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
        w(0, 1) = w(1, 0) = 1.0;
        w(0, 2) = w(2, 0) = 1.0;
        w(0, 3) = w(3, 0) = 1.0;
        const auto net = from_weights(w);
        const auto ci = cohesion_index(net, {{0, 0, 0, 1}});
        CHECK(ci[0] == doctest::Approx(2.0));
    }
    SUBCASE("isolated node is NaN; all-same-label is +inf") {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
        w(0, 1) = w(1, 0) = 1.0;
        const auto net = from_weights(w);
        const auto ci = cohesion_index(net, {{0, 0, 0}});
        CHECK(std::isinf(ci[0]));
        CHECK(std::isnan(ci[2]));
        const auto [mean, excluded] = mean_cohesion(ci);
        CHECK(excluded == 3);  // two infinities and one NaN
        CHECK_FALSE(mean.has_value());
    }
    SUBCASE("mean skips non-finite entries") {
        const auto [mean, excluded] = mean_cohesion({2.0, 4.0, std::numeric_limits<double>::infinity()});
        CHECK(*mean == doctest::Approx(3.0));
        CHECK(excluded == 1);
    }
}

TEST_CASE("NMF community detection") {
    SUBCASE("separates two disconnected cliques") {
        const auto net = two_cliques();
        const auto part = nmf_communities(net, 2, 20, 42);
        // All nodes in each clique share a label; the cliques differ.
        for (int i = 1; i < 4; ++i) CHECK(part.labels[i] == part.labels[0]);
        for (int i = 5; i < 8; ++i) CHECK(part.labels[i] == part.labels[4]);
        CHECK(part.labels[0] != part.labels[4]);
    }
    SUBCASE("k=1 puts everyone in one community") {
        const auto part = nmf_communities(two_cliques(), 1, 5, 1);
        CHECK(std::all_of(part.labels.begin(), part.labels.end(), [](int l) { return l == 0; }));
    }
    SUBCASE("zero affinity collapses to one community") {
        const auto part = nmf_run(WeightedNetwork::zero(5), 3, 1);
        CHECK(std::all_of(part.labels.begin(), part.labels.end(), [](int l) { return l == 0; }));
    }
    SUBCASE("deterministic per seed") {
        const auto net = two_cliques();
        CHECK(nmf_run(net, 2, 7).labels == nmf_run(net, 2, 7).labels);
        CHECK(nmf_communities(net, 2, 10, 7).labels == nmf_communities(net, 2, 10, 7).labels);
    }
    SUBCASE("multiplicative updates never increase the objective") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(10, 10);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j)
                if (i != j && unit(rng) < 0.3) w(i, j) = unit(rng);
        const auto net = from_weights(w);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto trace = nmf_objective_trace(net, 3, seed);
            REQUIRE(trace.size() >= 2);
            for (std::size_t k = 1; k < trace.size(); ++k)
                CHECK(trace[k] <= trace[k - 1] + 1e-8 * std::max(1.0, trace[k - 1]));
        }
    }
}

TEST_CASE("nmi") {
    SUBCASE("identical multi-class partitions give 1") {
        LabeledPartition p{{0, 0, 1, 1, 2}};
        CHECK(nmi(p, p) == doctest::Approx(1.0));
    }
    SUBCASE("constant vs balanced binary gives 0") {
        CHECK(nmi({{0, 0, 0, 0}}, {{0, 1, 0, 1}}) == doctest::Approx(0.0));
    }
    SUBCASE("hand-computed independent 2x2 table gives 0") {
        // Joint table of (0,0,1,1) vs (0,1,0,1) is uniform: independent margins.
        CHECK(nmi({{0, 0, 1, 1}}, {{0, 1, 0, 1}}) == doctest::Approx(0.0));
    }
    SUBCASE("symmetry and range") {
        std::mt19937_64 rng(10);
        std::uniform_int_distribution<int> lab(0, 3);
        for (int trial = 0; trial < 20; ++trial) {
            LabeledPartition a, b;
            for (int i = 0; i < 30; ++i) {
                a.labels.push_back(lab(rng));
                b.labels.push_back(lab(rng));
            }
            const double ab = nmi(a, b);
            CHECK(ab == doctest::Approx(nmi(b, a)).epsilon(1e-12));
            CHECK(ab >= -1e-12);
            CHECK(ab <= 1.0 + 1e-12);
        }
    }
    SUBCASE("invariant under label renaming") {
        LabeledPartition a{{0, 0, 1, 1, 2, 2}};
        LabeledPartition b{{1, 1, 0, 0, 2, 2}};
        LabeledPartition c{{5, 5, 9, 9, 7, 7}};  // same grouping as a, new names
        CHECK(nmi(a, b) == doctest::Approx(nmi(c, b)).epsilon(1e-12));
    }
    SUBCASE("both single-label") {
        CHECK(nmi({{0, 0}}, {{0, 0}}) == 1.0);
        CHECK(nmi({{0, 0}}, {{1, 1}}) == 0.0);  // same grouping but not identical labels
    }
}

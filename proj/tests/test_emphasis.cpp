#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "neteffect/emphasis.hpp"
#include "neteffect/svd.hpp"

using namespace neteffect;
using namespace test_helpers;

namespace {

Graph clique(NodeId size, NodeId offset = 0, NodeId total = -1) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < size; ++i)
        for (NodeId j = i + 1; j < size; ++j) edges.emplace_back(offset + i, offset + j);
    return Graph::from_edges(total < 0 ? offset + size : total, edges);
}

double row_sum(const SparseWeightedMatrix& m, NodeId row) {
    double sum = 0.0;
    for (const double v : m.row_values(row)) sum += v;
    return sum;
}

double entry(const SparseWeightedMatrix& m, NodeId i, NodeId j) {
    const auto cols = m.row_cols(i);
    const auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
        if (cols[k] == j) return vals[k];
    return 0.0;
}

bool has_entry(const SparseWeightedMatrix& m, NodeId i, NodeId j) {
    const auto cols = m.row_cols(i);
    return std::find(cols.begin(), cols.end(), j) != cols.end();
}

}  // namespace

TEST_CASE("a single edge dead-ends every non-backtracking walk after one step") {
    const Graph g = graph_from_pairs(2, {{0, 1}});
    WalkConfig config;
    config.length = 4;
    config.trials = 3;
    config.seed = 9;
    const auto wprime = nb_random_walks(g, config);
    CHECK(entry(wprime, 0, 1) == 3.0);
    CHECK(entry(wprime, 1, 0) == 3.0);
    CHECK(wprime.nnz() == 2);
}

TEST_CASE("a triangle walk of length two visits two distinct nodes") {
    const Graph g = graph_from_pairs(3, {{0, 1}, {1, 2}, {0, 2}});
    WalkConfig config;
    config.length = 2;
    config.trials = 1;
    config.seed = 4;
    const auto wprime = nb_random_walks(g, config);
    CHECK(row_sum(wprime, 0) == 2.0);
    CHECK(wprime.row_cols(0).size() == 2);
}

TEST_CASE("star-graph walks from a leaf always dead-end after two hops") {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId leaf = 1; leaf <= 5; ++leaf) edges.emplace_back(0, leaf);
    const Graph g = graph_from_pairs(6, edges);
    WalkConfig config;
    config.length = 3;
    config.trials = 10;
    config.seed = 21;
    const auto wprime = nb_random_walks(g, config);
    CHECK(entry(wprime, 1, 0) == 10.0);
    CHECK(row_sum(wprime, 1) - entry(wprime, 1, 0) == 10.0);
}

TEST_CASE("path-graph walks sweep forward without revisits") {
    const Graph g = graph_from_pairs(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    WalkConfig config;
    config.length = 5;
    config.trials = 7;
    config.seed = 2;
    const auto wprime = nb_random_walks(g, config);
    for (NodeId j = 1; j <= 5; ++j) CHECK(entry(wprime, 0, j) == 7.0);
}

TEST_CASE("non-backtracking walks never contain an (a, b, a) subsequence") {
    const Graph g = random_graph(40, 120, 5);
    WalkConfig config;
    config.length = 8;
    config.trials = 5;
    config.seed = 13;
    std::vector<std::vector<NodeId>> walks;
    nb_random_walks(g, config, 1, &walks);
    REQUIRE(walks.size() == 40u * 5u);
    for (const auto& walk : walks)
        for (std::size_t t = 2; t < walk.size(); ++t)
            CHECK(walk[t] != walk[t - 2]);
}

TEST_CASE("isolated nodes produce empty rows") {
    const Graph g = graph_from_pairs(4, {{0, 1}});
    WalkConfig config;
    config.seed = 1;
    const auto wprime = nb_random_walks(g, config);
    CHECK(wprime.row_cols(2).empty());
    CHECK(wprime.row_cols(3).empty());
}

TEST_CASE("walk counting is deterministic and thread-count independent") {
    const Graph g = random_graph(60, 200, 77);
    WalkConfig config;
    config.seed = 31;
    const auto serial = nb_random_walks(g, config, 1);
    const auto again = nb_random_walks(g, config, 1);
    const auto parallel = nb_random_walks(g, config, 4);
    CHECK(serial.values == again.values);
    CHECK(serial.cols == parallel.cols);
    CHECK(serial.values == parallel.values);
}

TEST_CASE("walk error bound values and monotonicity") {
    CHECK(walk_error_bound(4, 10, 0.05, false) ==
          doctest::Approx(0.0536836760433422).epsilon(1e-10));
    CHECK(walk_error_bound(4, 10, 0.05, true) ==
          doctest::Approx(0.1073673520866844).epsilon(1e-10));
    CHECK(walk_error_bound(4, 10, 0.05, true) == 2.0 * walk_error_bound(4, 10, 0.05, false));
    for (int length = 2; length <= 12; ++length)
        CHECK(walk_error_bound(length, 10, 0.05, false) <=
              walk_error_bound(length, 10, 0.05, true));
    CHECK_THROWS_AS(walk_error_bound(4, 10, 0.0, false), std::invalid_argument);
    CHECK_THROWS_AS(walk_error_bound(4, 10, 1.0, false), std::invalid_argument);
    CHECK_THROWS_AS(walk_error_bound(1, 10, 0.05, false), std::invalid_argument);
}

TEST_CASE("proximity transform masks, normalizes and logs") {
    // Node 0 has neighbors 1, 2, 3 (degree 3). Visits: 3x node 1, 5x node 4.
    const Graph g = graph_from_pairs(5, {{0, 1}, {0, 2}, {0, 3}});
    SparseWeightedMatrix wprime;
    wprime.n = 5;
    wprime.offsets = {0, 2, 2, 2, 2, 2};
    wprime.cols = {1, 4};
    wprime.values = {3.0, 5.0};

    const auto w = transform_proximity(wprime, g);
    CHECK(has_entry(w, 0, 1));           // ln(3/3) = 0 is stored explicitly
    CHECK(entry(w, 0, 1) == 0.0);
    CHECK_FALSE(has_entry(w, 0, 4));     // masked out: not an edge
    CHECK(w.nnz() == 1);
}

TEST_CASE("proximity transform keeps negative logs") {
    const Graph g = graph_from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    SparseWeightedMatrix wprime;
    wprime.n = 5;
    wprime.offsets = {0, 1, 1, 1, 1, 1};
    wprime.cols = {1};
    wprime.values = {1.0};
    const auto w = transform_proximity(wprime, g);
    CHECK(entry(w, 0, 1) == doctest::Approx(-1.3862943611198906).epsilon(1e-12));
}

TEST_CASE("transformed entries respect the visit-budget bound") {
    const Graph g = random_graph(50, 150, 3);
    WalkConfig config;
    config.length = 4;
    config.trials = 10;
    config.seed = 8;
    const auto w = transform_proximity(nb_random_walks(g, config), g);
    for (NodeId i = 0; i < w.n; ++i) {
        const double budget = std::log(40.0 / g.degree(i));
        for (const double v : w.row_values(i)) CHECK(v <= budget + 1e-12);
    }
}

TEST_CASE("embedding of the identity matrix is orthonormal") {
    const auto emb = embed(dense_to_csr(Eigen::MatrixXd::Identity(2, 2)), 2, 5);
    REQUIRE(emb.cols == 2);
    const Eigen::Map<const Eigen::Matrix<double, 2, 2, Eigen::RowMajor>> u(emb.values.data());
    CHECK(u.row(0).norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(u.row(1).norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(u.row(0).dot(u.row(1)) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("full-rank factorization reconstructs the matrix") {
    Rng rng(6);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (rng.uniform01() < 0.5) dense(i, j) = rng.uniform01() * 2.0 - 1.0;
    const auto svd = truncated_svd(dense_to_csr(dense), 6, 17);
    const Eigen::MatrixXd rebuilt = svd.u * svd.sigma.asDiagonal() * svd.v.transpose();
    CHECK((rebuilt - dense).norm() < 1e-8);
}

TEST_CASE("rank-2 residual matches the dense SVD oracle") {
    Rng rng(12);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (rng.uniform01() < 0.6) dense(i, j) = rng.uniform01();
    const auto svd = truncated_svd(dense_to_csr(dense), 2, 3);
    const double residual = (svd.u * svd.sigma.asDiagonal() * svd.v.transpose() - dense).norm();

    Eigen::BDCSVD<Eigen::MatrixXd> oracle(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd truncated = oracle.singularValues();
    for (Eigen::Index k = 2; k < truncated.size(); ++k) truncated(k) = 0.0;
    const double best = (oracle.matrixU() * truncated.asDiagonal() * oracle.matrixV().transpose() -
                         dense)
                            .norm();
    CHECK(residual == doctest::Approx(best).epsilon(1e-6));
    for (Eigen::Index k = 0; k < 2; ++k)
        CHECK(svd.sigma(k) == doctest::Approx(oracle.singularValues()(k)).epsilon(1e-6));
}

TEST_CASE("requested rank above the achievable rank is reduced with a flag") {
    Eigen::MatrixXd rank_one = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0) *
                               Eigen::RowVectorXd::LinSpaced(4, 1.0, 2.0);
    const auto emb = embed(dense_to_csr(rank_one), 3, 11);
    CHECK(emb.cols == 1);
    CHECK(emb.rank_reduced);
}

TEST_CASE("emphasis weights come from embedding distances") {
    const Graph g = graph_from_pairs(3, {{0, 1}, {1, 2}});
    NodeEmbedding emb;
    emb.rows = 3;
    emb.cols = 1;
    emb.values = {0.0, 0.0, std::log(2.0)};
    const auto astar = build_emphasis(g, emb);
    CHECK(entry(astar, 0, 1) == 1.0);                       // identical embeddings
    CHECK(entry(astar, 1, 2) == doctest::Approx(0.5));      // distance ln 2
    CHECK(entry(astar, 2, 1) == entry(astar, 1, 2));
}

TEST_CASE("emphasis matrix keeps the adjacency pattern with weights in (0, 1]") {
    const Graph g = random_graph(50, 180, 23);
    WalkConfig config;
    config.rank = 16;
    config.seed = 40;
    const auto astar = emphasis_pipeline(g, config);
    CHECK(astar.offsets == g.offsets());
    CHECK(astar.cols == g.adjacency());
    for (const double v : astar.values) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
    for (NodeId i = 0; i < astar.n; ++i) {
        const auto cols = astar.row_cols(i);
        const auto vals = astar.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k)
            CHECK(vals[k] == entry(astar, cols[k], i));  // bitwise symmetric
    }
}

TEST_CASE("emphasis pipeline is deterministic bit-for-bit") {
    const Graph g = random_graph(60, 220, 9);
    WalkConfig config;
    config.rank = 12;
    config.seed = 3;
    const auto a = emphasis_pipeline(g, config, 1);
    const auto b = emphasis_pipeline(g, config, 1);
    const auto c = emphasis_pipeline(g, config, 4);
    CHECK(a.values == b.values);
    CHECK(a.values == c.values);
}

TEST_CASE("single-edge graph yields one symmetric weight in (0, 1]") {
    const Graph g = graph_from_pairs(2, {{0, 1}});
    WalkConfig config;
    config.seed = 5;
    const auto astar = emphasis_pipeline(g, config);
    CHECK(astar.nnz() == 2);
    const double w = entry(astar, 0, 1);
    CHECK(w > 0.0);
    CHECK(w <= 1.0);
    CHECK(entry(astar, 1, 0) == w);
}

TEST_CASE("automorphic clique edges get nearly equal weights") {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId block = 0; block < 2; ++block)
        for (NodeId i = 0; i < 5; ++i)
            for (NodeId j = i + 1; j < 5; ++j)
                edges.emplace_back(5 * block + i, 5 * block + j);
    const Graph g = graph_from_pairs(10, edges);
    WalkConfig config;
    config.length = 4;
    config.trials = 200;
    // Rank 2 keeps exactly the two block directions, where automorphic nodes
    // coincide; higher ranks cut arbitrarily through the degenerate tail of
    // the clique spectrum.
    config.rank = 2;
    config.seed = 19;
    const auto astar = emphasis_pipeline(g, config);
    for (NodeId block = 0; block < 2; ++block) {
        double lo = 1.0, hi = 0.0;
        for (NodeId i = 5 * block; i < 5 * (block + 1); ++i)
            for (const double v : astar.row_values(i)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        CHECK(hi - lo < 0.05);
    }
}

TEST_CASE("well-connected neighbors are emphasized over pendants") {
    // K4 core {0, 1, 2, 3} plus two pendant nodes attached to node 0.
    const Graph g = graph_from_pairs(
        6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}});
    WalkConfig config;
    config.length = 4;
    config.trials = 50;
    config.rank = 4;
    config.seed = 33;
    const auto astar = emphasis_pipeline(g, config);
    const double core = (entry(astar, 0, 1) + entry(astar, 0, 2) + entry(astar, 0, 3)) / 3.0;
    const double pendants = (entry(astar, 0, 4) + entry(astar, 0, 5)) / 2.0;
    CHECK(core > pendants);
}

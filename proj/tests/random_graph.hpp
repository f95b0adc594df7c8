#pragma once

#include "gviews/graph/property_graph.hpp"
#include "gviews/views/ebm.hpp"
#include "gviews/views/eds.hpp"

#include <random>
#include <string>

namespace testutil {

// Directed multigraph with int `duration` weights in [0, 9]. Self-loops and
// parallel edges are allowed on purpose.
inline gviews::PropertyGraph random_graph(std::mt19937_64& rng, std::size_t nodes,
                                          std::size_t edges) {
    std::string n = "id:uint\n";
    for (std::size_t i = 0; i < nodes; ++i) n += std::to_string(i) + "\n";
    std::string e = "src:uint,dst:uint,duration:int\n";
    std::uniform_int_distribution<std::size_t> pick(0, nodes - 1);
    std::uniform_int_distribution<int> w(0, 9);
    for (std::size_t i = 0; i < edges; ++i) {
        e += std::to_string(pick(rng)) + "," + std::to_string(pick(rng)) + "," +
             std::to_string(w(rng)) + "\n";
    }
    return gviews::parse_graph(n, e);
}

// k views; each edge flips membership from the previous view with
// probability `churn`, so consecutive views overlap.
inline gviews::EdgeDifferenceStream random_collection(std::mt19937_64& rng,
                                                      const gviews::PropertyGraph& g,
                                                      std::size_t k, double churn = 0.2) {
    std::bernoulli_distribution start(0.6), flip(churn);
    std::vector<std::vector<bool>> rows(g.num_edges(), std::vector<bool>(k));
    for (auto& r : rows) {
        r[0] = start(rng);
        for (std::size_t j = 1; j < k; ++j) r[j] = flip(rng) ? !r[j - 1] : r[j - 1];
    }
    std::vector<std::string> names;
    for (std::size_t j = 0; j < k; ++j) names.push_back("V" + std::to_string(j));
    auto m = gviews::EdgeBooleanMatrix::from_rows(rows, names);
    return gviews::compute_eds(m, gviews::ViewOrder::identity(k), "random");
}

}  // namespace testutil

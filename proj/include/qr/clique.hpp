#pragma once

#include <cstdint>
#include <vector>

#include "qr/graph.hpp"

namespace qr {

struct CliqueResult {
    std::uint32_t omega = 0;
    std::vector<std::uint32_t> witness;  // sorted vertex indices, re-verified
    std::uint64_t nodes_explored = 0;
    bool exact = true;
};

// Branch and bound over bit rows with greedy-coloring upper bounds.  Vertex
// order is descending degree with ties by index, so search trees are
// deterministic.  Budget exhaustion returns the best clique found with
// exact = false.
CliqueResult max_clique(const GraphInstance& G, std::uint64_t node_budget = 0);

// max_clique on the complement.
CliqueResult independence_number(const GraphInstance& G, std::uint64_t node_budget = 0);

struct HomogeneousTransfer {
    bool clique_verified = false;  // r * (max independent set) is a clique
    std::uint32_t omega = 0;
    std::uint32_t alpha = 0;
};

// For homogeneous f of odd degree and non-square r, maps a maximum
// independent set I to rI and verifies rI is a clique (so omega >= alpha).
HomogeneousTransfer verify_homogeneous_transfer(const GraphInstance& G, const BivarPoly& f,
                                                const Field& F, elem r);

}  // namespace qr

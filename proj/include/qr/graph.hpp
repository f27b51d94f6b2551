#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "qr/poly.hpp"

namespace qr {

struct Provenance {
    Field field;
    std::string f;  // canonical polynomial string
    std::string family;
};

// Vertex set F_q, adjacency as a q x q bit matrix (symmetric, zero diagonal).
// Memory is q^2/8 bytes; q is capped at 65536.
struct GraphInstance {
    std::uint32_t n = 0;
    std::size_t words = 0;  // 64-bit words per row
    std::vector<std::uint64_t> bits;
    std::vector<std::uint32_t> degrees;
    std::uint64_t edges = 0;
    std::uint64_t zero_pairs = 0;  // ordered pairs u != v with f(u,v) = 0
    Provenance provenance;

    const std::uint64_t* row(std::uint32_t u) const { return bits.data() + u * words; }
    bool adj(std::uint32_t u, std::uint32_t v) const {
        return (row(u)[v >> 6] >> (v & 63)) & 1u;
    }
    void set_adj(std::uint32_t u, std::uint32_t v) {
        bits[u * words + (v >> 6)] |= 1ull << (v & 63);
    }
};

// adj[u][v] = is_square(f(u,v)) for u != v, zero included as a square.
// Throws DirectedPolynomial (with witness in the message) if undirectedness
// fails.  parallel=false forces the serial reference path.
GraphInstance build_graph(const Field& F, const BivarPoly& f, bool parallel = true);

GraphInstance paley(const Field& F);          // x - y, q = 1 (mod 4)
GraphInstance paley_sum(const Field& F);      // x + y
GraphInstance diophantine(const Field& F);    // x*y + 1
GraphInstance gen_dio(const Field& F, elem a, elem b);  // a*x*y + b, a,b != 0

// X_{h,q} or X_{h~,q} for bidegree-(1,1) admissible f and nonconstant g.
GraphInstance family_member(const Field& F, const BivarPoly& f, const UniPoly& g,
                            ComposeVariant variant);

GraphInstance complement_graph(const GraphInstance& G);

enum class StructureKind { complete, empty, complete_bipartite, two_cliques, none };

struct StructureClass {
    StructureKind kind = StructureKind::none;
    std::vector<elem> removed_vertices;   // zeros of F and G, at most 2d
    std::uint64_t removed_edge_budget = 0;  // mismatched pairs, at most dq
    std::vector<elem> side_a, side_b;     // the sign classes of the residual graph
};

// Witness search for the degenerate-kernel structure: when the primitive
// kernel is a constant times a square, the graph minus at most 2d vertices
// and dq edges is complete / empty / complete bipartite / two cliques.
// Returns kind = none when no witness is found under that budget.
StructureClass classify_structure(const GraphInstance& G, const BivarPoly& f, const Field& F);

struct ScalingCheck {
    bool self_complementary = false;
    std::uint64_t exempt_pairs = 0;  // pairs with f(u,v) = 0, not constrained
};

// v -> r*v must map edges to non-edges and back, exactly, on all pairs with
// f(u,v) != 0.  Requires r non-square and homogeneous f of odd degree.
ScalingCheck is_self_complementary_via_scaling(const GraphInstance& G, const BivarPoly& f,
                                               const Field& F, elem r);

enum class ExportFormat { dimacs, edgelist, json };

void export_graph(const GraphInstance& G, ExportFormat fmt, std::ostream& out);

}  // namespace qr

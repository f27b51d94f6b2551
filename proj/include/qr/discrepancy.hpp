#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qr/graph.hpp"
#include "qr/spectral.hpp"

namespace qr {

// Bitset over the vertex set, used for S and T.
using VertexSet = std::vector<std::uint64_t>;

VertexSet make_vertex_set(const GraphInstance& G, const std::vector<std::uint32_t>& verts);
std::uint32_t set_size(const VertexSet& s);

// Ordered-pair edge count #{(u,v) in S x T : uv in E}; edges inside the
// intersection are counted twice.
std::uint64_t e_st(const GraphInstance& G, const VertexSet& S, const VertexSet& T);
std::uint64_t e_st_naive(const GraphInstance& G, const std::vector<std::uint32_t>& S,
                         const std::vector<std::uint32_t>& T);

struct DiscrepancyReport {
    double theta = 0;
    double c_hat = 0;  // max |e(S,T) - |S||T|/2| / (q^theta sqrt(|S||T|))
    std::string argmax;
    std::string mode;  // "exhaustive" | "sampled"
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// Exact sup over all ordered pairs of nonempty subsets; q <= 13.  For each T
// the per-vertex counts |N(u) cap T| are precomputed; for every size s the
// extremal S is a sorted prefix/suffix, so the sup is exact.
DiscrepancyReport discrepancy_exhaustive(const GraphInstance& G, double theta);

// Lower bound on the sup: random pairs with log-uniform sizes, structured
// candidate sets (neighborhoods, the square set, non-square cosets, the
// subfield when q is a square, initial index segments), and 3 passes of
// single-element hill climbing from the running argmax.  Deterministic for a
// fixed (seed, samples).
DiscrepancyReport discrepancy_sampled(const GraphInstance& G, double theta, std::uint64_t samples,
                                      std::uint64_t seed);

struct MixingCertificate {
    double alpha_hat = 0;  // log_q sum (deg - q/2)^2
    double beta_hat = 0;   // log_q |lambda1 - q/2| (0 if dev < 1)
    double gamma_hat = 0;  // log_q |lambda2|
    double theta_cert = 0; // max((1+alpha)/4, beta, gamma)
};

MixingCertificate mixing_certificate(const GraphInstance& G, const SpectrumReport& spectrum);

struct TupleCensus {
    unsigned m = 0;
    std::uint64_t count = 0;  // exact number of m-cliques
    double predicted = 0;     // q^m / (2^{C(m,2)} m!)
    double rel_err = 0;
};

// Exact m-clique count by recursive bit-row intersection; m <= 5, q <= 2000.
TupleCensus tuple_census(const GraphInstance& G, unsigned m, bool parallel = true);

}  // namespace qr

#pragma once

#include <cstdint>
#include <vector>

#include "qr/graph.hpp"

namespace qr {

struct SpectrumReport {
    std::vector<double> lambda;  // descending by absolute value
    double lambda1_dev = 0;      // lambda1 - q/2
    double lambda2_ratio_34 = 0; // |lambda2| / q^{3/4}
    double lambda2_ratio_12 = 0; // |lambda2| / q^{1/2}
    double trace_check = 0;      // |sum lambda_i^2 - 2e|
};

// Full spectrum of the adjacency matrix: Householder tridiagonalization
// followed by shifted QL iteration.  Dense O(q^3); q capped at 4096.
SpectrumReport eigenvalues(const GraphInstance& G);

// Eigenvalues of a dense symmetric matrix (row-major n x n), ascending.
// Exposed for validation against analytically known spectra.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

// Approximate top-two eigenvalues by power iteration with deflation; used
// beyond the dense cap and flagged as approximate by callers.
std::pair<double, double> top_two_eigenvalues_power(const GraphInstance& G, unsigned iters = 300);

struct ASquaredStats {
    std::uint64_t diag_band_hits = 0;     // diagonal entries in q/2 +- c sqrt(q)
    std::uint64_t offdiag_band_hits = 0;  // off-diagonal entries in q/4 +- c sqrt(q)
    std::uint64_t diag_total = 0;
    std::uint64_t offdiag_total = 0;
    double c = 0;
    std::vector<std::uint32_t> exceptional_rows;  // diagonal outside the band
};

// Exact integer A^2 statistics via bit-row intersections.
ASquaredStats a_squared_stats(const GraphInstance& G, double c, bool parallel = true);
ASquaredStats a_squared_stats_serial(const GraphInstance& G, double c);

// Count of off-diagonal A^2 entries outside [center - halfwidth, center +
// halfwidth], restricted to rows/columns not in `excluded`.
std::uint64_t offdiag_out_of_band(const GraphInstance& G, double center, double halfwidth,
                                  const std::vector<std::uint32_t>& excluded_rows);

// |N(u) cap N(v)| (equals A^2 entry for u != v; A^2 diagonal is the degree).
std::uint32_t codegree(const GraphInstance& G, std::uint32_t u, std::uint32_t v);

struct HWReport {
    double lhs_min = 0;  // best matching of spec(A^2) against spec((q/4)(I+J))
    double rhs = 0;      // ||A^2 - (q/4)(I+J)||_F^2, exact integer arithmetic
};

HWReport hw_gap(const GraphInstance& G, const SpectrumReport& spectrum);

// |lambda2| / sqrt(q)
double min_lambda2_check(const GraphInstance& G, const SpectrumReport& spectrum);

}  // namespace qr

#pragma once

#include <cstdint>
#include <vector>

#include "qr/poly.hpp"

namespace qr {

struct CharSumReport {
    std::int64_t value = 0;  // exact integer character sum
    double bound = 0;        // applicable theoretical bound
    double ratio = 0;        // |value| / bound (0 when both vanish)
    unsigned distinct_roots = 0;  // weil_sum only: deg of the squarefree part
};

// Sum_x chi(a g(x)) with the Weil bound (n-1) sqrt(q); g must be monic,
// nonconstant and not a constant times a square.
CharSumReport weil_sum(const Field& F, const UniPoly& g, elem a, bool parallel = true);
CharSumReport weil_sum_serial(const Field& F, const UniPoly& g, elem a);

// Sum_{a,b in C} chi(f(a,b)) with bound |C|^{3/2} q^{1/4} + |C| q^{1/2}
// (the hidden O_d constant is reported via ratio, never asserted).
CharSumReport incomplete_2d_sum(const Field& F, const BivarPoly& f, const std::vector<elem>& C,
                                bool parallel = true);

}  // namespace qr

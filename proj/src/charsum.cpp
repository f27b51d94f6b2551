#include "qr/charsum.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qr {

CharSumReport weil_sum_impl(const Field& F, const UniPoly& g, elem a, bool parallel) {
    if (g.degree() < 1 || g.lead() != 1)
        fail("SquareHypothesisViolated", "weil_sum requires a monic nonconstant g");
    if (a == 0) fail("SquareHypothesisViolated", "weil_sum requires a != 0");
    if (is_const_times_square_uni(F, g))
        fail("SquareHypothesisViolated", "g is a constant multiple of a square");
    // distinct roots in the splitting field: degree of the squarefree part
    auto decomp = uni_squarefree_decomposition(F, g);
    unsigned n = 0;
    for (const auto& fm : decomp.factors) n += static_cast<unsigned>(fm.factor.degree());

    CharTable chi = quadratic_character(F);
    std::int64_t value = 0;
    const std::int64_t q = static_cast<std::int64_t>(F.q());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : value) if (parallel)
#endif
    for (std::int64_t x = 0; x < q; ++x)
        value += chi.chi[F.mul(a, uni_eval(F, g, static_cast<elem>(x)))];

    CharSumReport rep;
    rep.value = value;
    rep.distinct_roots = n;
    rep.bound = (n >= 1 ? n - 1.0 : 0.0) * std::sqrt(static_cast<double>(F.q()));
    rep.ratio = rep.bound > 0 ? std::fabs(static_cast<double>(value)) / rep.bound
                              : (value == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    return rep;
}

CharSumReport weil_sum(const Field& F, const UniPoly& g, elem a, bool parallel) {
    return weil_sum_impl(F, g, a, parallel);
}

CharSumReport weil_sum_serial(const Field& F, const UniPoly& g, elem a) {
    return weil_sum_impl(F, g, a, false);
}

CharSumReport incomplete_2d_sum(const Field& F, const BivarPoly& f, const std::vector<elem>& C,
                                bool parallel) {
    if (f.is_zero()) fail("ZeroPolynomial", "incomplete_2d_sum of the zero polynomial");
    if (is_const_times_square_biv(F, primitive_kernel(F, f).H))
        fail("KernelSquare", "primitive kernel is a constant multiple of a square");
    CharTable chi = quadratic_character(F);
    std::int64_t value = 0;
    const std::int64_t csz = static_cast<std::int64_t>(C.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : value) if (parallel)
#endif
    for (std::int64_t i = 0; i < csz; ++i) {
        UniPoly gv = specialize_y(F, f, C[i]);
        for (std::int64_t j = 0; j < csz; ++j)
            value += chi.chi[uni_eval(F, gv, C[j])];
    }
    CharSumReport rep;
    rep.value = value;
    double cs = static_cast<double>(C.size());
    double q = static_cast<double>(F.q());
    rep.bound = std::pow(cs, 1.5) * std::pow(q, 0.25) + cs * std::sqrt(q);
    rep.ratio = rep.bound > 0 ? std::fabs(static_cast<double>(value)) / rep.bound : 0.0;
    return rep;
}

}  // namespace qr

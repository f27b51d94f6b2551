#include "qr/ramsey.hpp"

#include <cmath>

#include "qr/common.hpp"

namespace qr {

double rho(double lambda) {
    if (lambda < 0.0 || lambda > 1.0) fail("DomainError", "rho requires lambda in [0,1]");
    return (-0.25 * lambda + 0.03 * lambda * lambda + 0.08 * lambda * lambda * lambda) *
           std::exp(-lambda);
}

double rate_function(double x) {
    if (x <= 0.0 || x >= 1.0) fail("DomainError", "rate_function requires x in (0,1)");
    double entropy = -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
    double u = x / (1.0 - x);
    double poly = -0.25 * u + 0.03 * u * u + 0.08 * u * u * u;
    return entropy + poly * std::exp(-u) * (1.0 - x);
}

double ell_equation_lhs(double ell, double theta) {
    double a = 1.0 - theta;
    double b = ell + a;
    double lam = ell / b;
    return ell * std::log2(2.0 + a / ell) + b * std::log2(1.0 + lam) +
           b / std::log(2.0) * rho(lam);
}

BoundReport solve_ell(double theta) {
    if (theta < 0.5 || theta >= 1.0) fail("DomainError", "solve_ell requires theta in [1/2, 1)");
    double lo = 1e-9, hi = 1.0;
    double flo = ell_equation_lhs(lo, theta) - theta;
    double fhi = ell_equation_lhs(hi, theta) - theta;
    if (!(flo < 0.0 && fhi > 0.0))
        fail("NoBracket", "sign condition lhs(1e-9) < theta < lhs(1) fails");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = ell_equation_lhs(mid, theta) - theta;
        if (fm < 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-15) break;
    }
    BoundReport rep;
    rep.theta = theta;
    rep.ell = 0.5 * (lo + hi);
    rep.base = std::pow(2.0, 1.0 / (1.0 - theta + rep.ell));
    rep.residual = std::fabs(ell_equation_lhs(rep.ell, theta) - theta);
    return rep;
}

RamseyUpper ramsey_upper(unsigned k, unsigned l) {
    if (l < 1 || l > k) fail("DomainError", "ramsey_upper requires 1 <= l <= k");
    RamseyUpper r;
    double lam = static_cast<double>(l) / k;
    double log_binom = std::lgamma(static_cast<double>(k) + l + 1.0) -
                       std::lgamma(static_cast<double>(k) + 1.0) -
                       std::lgamma(static_cast<double>(l) + 1.0);
    r.log_value = rho(lam) * k + log_binom;
    r.magnitude = std::exp(r.log_value);
    return r;
}

BoundReport lower_bound_plan(std::uint64_t q, double theta, double C) {
    if (q < 3) fail("DomainError", "lower_bound_plan requires q >= 3");
    BoundReport rep = solve_ell(theta);
    rep.q = q;
    rep.C = C;
    double n = static_cast<double>(q);
    double log2n = std::log2(n);
    double inner = std::pow(n, 1.0 - theta) / (5.0 * C) + 0.8;
    int m = static_cast<int>(std::floor(std::log2(inner)));
    rep.m = std::max(m, 0);
    rep.r = static_cast<int>(std::floor(rep.ell * log2n));
    rep.s = rep.r + rep.m;
    rep.per_side_asymptotic = (1.0 - theta + rep.ell) * log2n;
    rep.total_bound = 2.0 * rep.per_side_asymptotic;
    return rep;
}

}  // namespace qr

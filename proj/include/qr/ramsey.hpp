#pragma once

#include <cstdint>

namespace qr {

// rho(lambda) = (-0.25 lambda + 0.03 lambda^2 + 0.08 lambda^3) e^{-lambda},
// lambda in [0,1].
double rho(double lambda);

// The entropy-plus-rho rate function on (0,1); strictly increasing on
// (0, 0.55).
double rate_function(double x);

// Left side of the defining equation for ell(theta).
double ell_equation_lhs(double ell, double theta);

struct BoundReport {
    double theta = 0;
    double ell = 0;
    double base = 0;      // 2^{1/(1 - theta + ell)}
    double residual = 0;  // |lhs(ell) - theta|
    // lower-bound plan from the constructive proof
    int m = 0;
    int r = 0;
    int s = 0;
    double C = 1.0;
    double per_side_asymptotic = 0;  // (1 - theta + ell) log2 q
    double total_bound = 0;          // 2 (1 - theta + ell) log2 q
    std::uint64_t q = 0;
};

// Bisection on ell in [1e-9, 1]; residual <= 1e-9.  Throws NoBracket if the
// sign condition fails.
BoundReport solve_ell(double theta);

struct RamseyUpper {
    double log_value = 0;  // rho(l/k) k + ln C(k+l, l), main term only
    double magnitude = 0;  // exp(log_value), may overflow to inf for large k
};

RamseyUpper ramsey_upper(unsigned k, unsigned l);

// m = floor(log2(q^{1-theta}/(5C) + 4/5)), r = floor(ell log2 q), s = r + m.
BoundReport lower_bound_plan(std::uint64_t q, double theta, double C = 1.0);

}  // namespace qr

#include "qr/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qr {

namespace {

// Householder reduction to tridiagonal form, values only (no eigenvector
// accumulation).  a is n x n row-major and is destroyed.
void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e) {
    d.assign(n, 0);
    e.assign(n, 0);
    auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (std::size_t i = n - 1; i >= 1; --i) {
        std::size_t l = i - 1;
        double h = 0, scale = 0;
        if (l > 0) {
            for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
            if (scale == 0.0) {
                e[i] = A(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    A(i, k) /= scale;
                    h += A(i, k) * A(i, k);
                }
                double f = A(i, l);
                double g = f >= 0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                A(i, l) = f - g;
                f = 0;
                for (std::size_t j = 0; j <= l; ++j) {
                    g = 0;
                    for (std::size_t k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
                    for (std::size_t k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
                    e[j] = g / h;
                    f += e[j] * A(i, j);
                }
                double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) {
                    f = A(i, j);
                    double g2 = e[j] - hh * f;
                    e[j] = g2;
                    for (std::size_t k = 0; k <= j; ++k)
                        A(j, k) -= f * e[k] + g2 * A(i, k);
                }
            }
        } else {
            e[i] = A(i, l);
        }
        d[i] = h;
        if (i == 1) break;
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = A(i, i);
}

// Shifted QL iteration with implicit shifts on the tridiagonal (d, e).
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::size_t n) {
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        unsigned iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (iter++ == 80) fail("NoConvergence", "QL iteration exceeded 80 sweeps");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {a[0]};
    std::vector<double> d, e;
    tridiagonalize(a, n, d, e);
    ql_implicit(d, e, n);
    std::sort(d.begin(), d.end());
    return d;
}

SpectrumReport eigenvalues(const GraphInstance& G) {
    if (G.n > 4096) fail("TooLarge", "dense eigensolver is capped at q <= 4096");
    const std::size_t n = G.n;
    std::vector<double> a(n * n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (G.adj(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)))
                a[u * n + v] = 1.0;
    std::vector<double> vals = symmetric_eigenvalues(std::move(a), n);

    SpectrumReport rep;
    rep.lambda = vals;
    std::sort(rep.lambda.begin(), rep.lambda.end(),
              [](double x, double y) { return std::fabs(x) > std::fabs(y); });
    double q = static_cast<double>(n);
    double l1 = rep.lambda[0];
    double l2 = n > 1 ? rep.lambda[1] : 0.0;
    rep.lambda1_dev = l1 - q / 2.0;
    rep.lambda2_ratio_34 = std::fabs(l2) / std::pow(q, 0.75);
    rep.lambda2_ratio_12 = std::fabs(l2) / std::sqrt(q);
    double s2 = 0;
    for (double l : rep.lambda) s2 += l * l;
    rep.trace_check = std::fabs(s2 - 2.0 * static_cast<double>(G.edges));
    return rep;
}

std::pair<double, double> top_two_eigenvalues_power(const GraphInstance& G, unsigned iters) {
    const std::size_t n = G.n;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t u = 0; u < static_cast<std::int64_t>(n); ++u) {
            double s = 0;
            const std::uint64_t* row = G.row(static_cast<std::uint32_t>(u));
            for (std::size_t w = 0; w < G.words; ++w) {
                std::uint64_t bitsw = row[w];
                while (bitsw) {
                    unsigned b = std::countr_zero(bitsw);
                    s += x[w * 64 + b];
                    bitsw &= bitsw - 1;
                }
            }
            y[u] = s;
        }
    };
    auto normalize = [&](std::vector<double>& x) {
        double nrm = 0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm > 0)
            for (double& v : x) v /= nrm;
    };
    std::vector<double> v1(n), y(n);
    for (auto& v : v1) v = uni(rng);
    normalize(v1);
    double l1 = 0;
    for (unsigned it = 0; it < iters; ++it) {
        matvec(v1, y);
        l1 = 0;
        for (std::size_t i = 0; i < n; ++i) l1 += v1[i] * y[i];
        std::swap(v1, y);
        normalize(v1);
    }
    std::vector<double> v2(n);
    for (auto& v : v2) v = uni(rng);
    double l2 = 0;
    for (unsigned it = 0; it < iters; ++it) {
        double proj = 0;
        for (std::size_t i = 0; i < n; ++i) proj += v2[i] * v1[i];
        for (std::size_t i = 0; i < n; ++i) v2[i] -= proj * v1[i];
        normalize(v2);
        matvec(v2, y);
        l2 = 0;
        for (std::size_t i = 0; i < n; ++i) l2 += v2[i] * y[i];
        std::swap(v2, y);
    }
    return {l1, l2};
}

std::uint32_t codegree(const GraphInstance& G, std::uint32_t u, std::uint32_t v) {
    const std::uint64_t* ru = G.row(u);
    const std::uint64_t* rv = G.row(v);
    std::uint32_t c = 0;
    for (std::size_t w = 0; w < G.words; ++w) c += std::popcount(ru[w] & rv[w]);
    return c;
}

static ASquaredStats a2_stats_impl(const GraphInstance& G, double c, bool parallel) {
    ASquaredStats st;
    st.c = c;
    const std::uint32_t n = G.n;
    double q = static_cast<double>(n);
    double dlo = q / 2.0 - c * std::sqrt(q), dhi = q / 2.0 + c * std::sqrt(q);
    double olo = q / 4.0 - c * std::sqrt(q), ohi = q / 4.0 + c * std::sqrt(q);
    st.diag_total = n;
    st.offdiag_total = static_cast<std::uint64_t>(n) * (n - 1);
    for (std::uint32_t u = 0; u < n; ++u) {
        double d = G.degrees[u];
        if (d >= dlo && d <= dhi) ++st.diag_band_hits;
        else st.exceptional_rows.push_back(u);
    }
    std::uint64_t hits = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : hits) if (parallel)
#endif
    for (std::int64_t u = 0; u < n; ++u) {
        for (std::uint32_t v = static_cast<std::uint32_t>(u) + 1; v < n; ++v) {
            double a2 = codegree(G, static_cast<std::uint32_t>(u), v);
            if (a2 >= olo && a2 <= ohi) hits += 2;  // ordered pairs
        }
    }
    st.offdiag_band_hits = hits;
    return st;
}

ASquaredStats a_squared_stats(const GraphInstance& G, double c, bool parallel) {
    return a2_stats_impl(G, c, parallel);
}

ASquaredStats a_squared_stats_serial(const GraphInstance& G, double c) {
    return a2_stats_impl(G, c, false);
}

std::uint64_t offdiag_out_of_band(const GraphInstance& G, double center, double halfwidth,
                                  const std::vector<std::uint32_t>& excluded_rows) {
    std::vector<bool> skip(G.n, false);
    for (auto u : excluded_rows) skip[u] = true;
    std::uint64_t out = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : out)
#endif
    for (std::int64_t u = 0; u < G.n; ++u) {
        if (skip[u]) continue;
        for (std::uint32_t v = static_cast<std::uint32_t>(u) + 1; v < G.n; ++v) {
            if (skip[v]) continue;
            double a2 = codegree(G, static_cast<std::uint32_t>(u), v);
            if (a2 < center - halfwidth || a2 > center + halfwidth) out += 2;
        }
    }
    return out;
}

HWReport hw_gap(const GraphInstance& G, const SpectrumReport& spectrum) {
    HWReport rep;
    const std::uint32_t n = G.n;
    const std::int64_t q = n;

    // rhs: || A^2 - (q/4)(I + J) ||_F^2 in exact integers scaled by 16:
    // diagonal target q/2 -> (4 deg - 2q)^2 / 16; off-diagonal (4 a2 - q)^2 / 16
    std::int64_t scaled = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : scaled)
#endif
    for (std::int64_t u = 0; u < n; ++u) {
        std::int64_t du = G.degrees[u];
        std::int64_t t = 4 * du - 2 * q;
        scaled += t * t;
        for (std::uint32_t v = static_cast<std::uint32_t>(u) + 1; v < n; ++v) {
            std::int64_t a2 = codegree(G, static_cast<std::uint32_t>(u), v);
            std::int64_t s = 4 * a2 - q;
            scaled += 2 * s * s;
        }
    }
    rep.rhs = static_cast<double>(scaled) / 16.0;

    // lhs: min over the q structurally distinct matchings pairing one
    // eigenvalue of A^2 with q(q+1)/4 and the rest with q/4
    double big = static_cast<double>(q) * (q + 1) / 4.0;
    double small = static_cast<double>(q) / 4.0;
    double base = 0;
    for (double l : spectrum.lambda) {
        double d = l * l - small;
        base += d * d;
    }
    double best = std::numeric_limits<double>::infinity();
    for (double l : spectrum.lambda) {
        double ds = l * l - small;
        double db = l * l - big;
        double cand = base - ds * ds + db * db;
        best = std::min(best, cand);
    }
    rep.lhs_min = best;
    return rep;
}

double min_lambda2_check(const GraphInstance& G, const SpectrumReport& spectrum) {
    if (spectrum.lambda.size() < 2) return 0.0;
    return std::fabs(spectrum.lambda[1]) / std::sqrt(static_cast<double>(G.n));
}

}  // namespace qr

#include "qr/discrepancy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qr {

VertexSet make_vertex_set(const GraphInstance& G, const std::vector<std::uint32_t>& verts) {
    VertexSet s(G.words, 0);
    for (auto v : verts) s[v >> 6] |= 1ull << (v & 63);
    return s;
}

std::uint32_t set_size(const VertexSet& s) {
    std::uint32_t n = 0;
    for (auto w : s) n += std::popcount(w);
    return n;
}

std::uint64_t e_st(const GraphInstance& G, const VertexSet& S, const VertexSet& T) {
    std::uint64_t total = 0;
    for (std::uint32_t u = 0; u < G.n; ++u) {
        if (!((S[u >> 6] >> (u & 63)) & 1u)) continue;
        const std::uint64_t* row = G.row(u);
        for (std::size_t w = 0; w < G.words; ++w) total += std::popcount(row[w] & T[w]);
    }
    return total;
}

std::uint64_t e_st_naive(const GraphInstance& G, const std::vector<std::uint32_t>& S,
                         const std::vector<std::uint32_t>& T) {
    std::uint64_t total = 0;
    for (auto u : S)
        for (auto v : T)
            if (G.adj(u, v)) ++total;
    return total;
}

namespace {

double ratio(double e, double ssz, double tsz, double qtheta) {
    return std::fabs(e - ssz * tsz / 2.0) / (qtheta * std::sqrt(ssz * tsz));
}

std::string describe_sets(const std::vector<std::uint32_t>& S, const std::vector<std::uint32_t>& T,
                          std::uint64_t e) {
    std::ostringstream os;
    os << "|S|=" << S.size() << ",|T|=" << T.size() << ",e=" << e;
    auto dump = [&](const char* name, const std::vector<std::uint32_t>& v) {
        if (v.size() > 32) return;
        os << "," << name << "={";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) os << " ";
            os << v[i];
        }
        os << "}";
    };
    dump("S", S);
    dump("T", T);
    return os.str();
}

std::vector<std::uint32_t> set_to_verts(const VertexSet& s, std::uint32_t n) {
    std::vector<std::uint32_t> v;
    for (std::uint32_t u = 0; u < n; ++u)
        if ((s[u >> 6] >> (u & 63)) & 1u) v.push_back(u);
    return v;
}

}  // namespace

DiscrepancyReport discrepancy_exhaustive(const GraphInstance& G, double theta) {
    if (G.n > 13) fail("TooLarge", "exhaustive discrepancy is capped at q <= 13");
    const std::uint32_t n = G.n;
    double qtheta = std::pow(static_cast<double>(n), theta);

    std::vector<std::uint32_t> adjmask(n, 0);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = 0; v < n; ++v)
            if (G.adj(u, v)) adjmask[u] |= 1u << v;

    DiscrepancyReport rep;
    rep.theta = theta;
    rep.mode = "exhaustive";

    std::vector<double> centered(n);
    std::vector<std::uint32_t> order(n);
    for (std::uint32_t tmask = 1; tmask < (1u << n); ++tmask) {
        double tsz = std::popcount(tmask);
        for (std::uint32_t u = 0; u < n; ++u)
            centered[u] = std::popcount(adjmask[u] & tmask) - tsz / 2.0;
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return centered[a] > centered[b]; });
        // For fixed |S| = s the extremal S is the top-s or bottom-s prefix of
        // the sorted centered counts, so every (S,T) pair is dominated.
        double top = 0, bottom = 0;
        for (std::uint32_t s = 1; s <= n; ++s) {
            top += centered[order[s - 1]];
            bottom += centered[order[n - s]];
            double dev = std::max(std::fabs(top), std::fabs(bottom));
            double r = dev / (qtheta * std::sqrt(static_cast<double>(s) * tsz));
            if (r > rep.c_hat) {
                rep.c_hat = r;
                bool use_top = std::fabs(top) >= std::fabs(bottom);
                std::vector<std::uint32_t> S;
                for (std::uint32_t i = 0; i < s; ++i)
                    S.push_back(use_top ? order[i] : order[n - 1 - i]);
                std::sort(S.begin(), S.end());
                std::vector<std::uint32_t> T;
                for (std::uint32_t v = 0; v < n; ++v)
                    if (tmask & (1u << v)) T.push_back(v);
                double e = (use_top ? top : bottom) + s * tsz / 2.0;
                rep.argmax = describe_sets(S, T, static_cast<std::uint64_t>(std::llround(e)));
            }
        }
    }
    return rep;
}

DiscrepancyReport discrepancy_sampled(const GraphInstance& G, double theta, std::uint64_t samples,
                                      std::uint64_t seed) {
    if (samples < 1) fail("TooLarge", "samples must be >= 1");
    const std::uint32_t n = G.n;
    double qtheta = std::pow(static_cast<double>(n), theta);
    const Field& F = G.provenance.field;
    CharTable chi = quadratic_character(F);

    DiscrepancyReport rep;
    rep.theta = theta;
    rep.mode = "sampled";
    rep.samples = samples;
    rep.seed = seed;

    VertexSet bestS, bestT;
    auto consider = [&](const VertexSet& S, const VertexSet& T) {
        std::uint32_t ssz = set_size(S), tsz = set_size(T);
        if (ssz == 0 || tsz == 0) return;
        double r = ratio(static_cast<double>(e_st(G, S, T)), ssz, tsz, qtheta);
        if (r > rep.c_hat) {
            rep.c_hat = r;
            bestS = S;
            bestT = T;
        }
    };

    // structured candidates
    std::vector<VertexSet> cands;
    for (std::uint32_t v = 0; v < n; ++v) {
        VertexSet s(G.words, 0);
        const std::uint64_t* row = G.row(v);
        std::copy(row, row + G.words, s.begin());
        cands.push_back(std::move(s));  // N(v)
    }
    {
        std::vector<std::uint32_t> squares, nonsquares;
        for (std::uint32_t v = 0; v < n; ++v)
            (chi.is_square[v] ? squares : nonsquares).push_back(v);
        cands.push_back(make_vertex_set(G, squares));
        // cosets r * squares for the first few non-squares r
        unsigned added = 0;
        for (std::uint32_t r = 1; r < n && added < 3; ++r) {
            if (chi.chi[r] >= 0) continue;
            std::vector<std::uint32_t> coset;
            for (auto s : squares) coset.push_back(F.mul(static_cast<elem>(r), s));
            cands.push_back(make_vertex_set(G, coset));
            ++added;
        }
        // the subfield when q is a square: fixed points of x -> x^{sqrt(q)}
        std::uint64_t q0 = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
        if (q0 * q0 == n) {
            std::vector<std::uint32_t> subfield;
            for (std::uint32_t v = 0; v < n; ++v)
                if (F.pow(v, q0) == v) subfield.push_back(v);
            cands.push_back(make_vertex_set(G, subfield));
        }
        // initial segments of the index order
        for (std::uint32_t len = 1; len <= n; len *= 2) {
            std::vector<std::uint32_t> seg(len);
            std::iota(seg.begin(), seg.end(), 0u);
            cands.push_back(make_vertex_set(G, seg));
            if (len == n) break;
        }
    }
    for (const auto& S : cands)
        for (const auto& T : cands) consider(S, T);

    // random pairs, sizes log-uniform in [1, q]
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::uint32_t> pool(n);
    auto random_set = [&]() {
        double lo = 0.0, hi = std::log(static_cast<double>(n));
        auto sz = static_cast<std::uint32_t>(std::llround(std::exp(lo + (hi - lo) * uni(rng))));
        sz = std::max<std::uint32_t>(1, std::min(sz, n));
        std::iota(pool.begin(), pool.end(), 0u);
        for (std::uint32_t i = 0; i < sz; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(rng() % (n - i));
            std::swap(pool[i], pool[j]);
        }
        return make_vertex_set(G, std::vector<std::uint32_t>(pool.begin(), pool.begin() + sz));
    };
    for (std::uint64_t it = 0; it < samples; ++it) {
        VertexSet S = random_set();
        VertexSet T = random_set();
        consider(S, T);
    }

    // hill climbing: 3 passes of single-element toggles from the argmax
    for (int pass = 0; pass < 3; ++pass) {
        for (std::uint32_t v = 0; v < n; ++v) {
            VertexSet S = bestS;
            S[v >> 6] ^= 1ull << (v & 63);
            consider(S, bestT);
            VertexSet T = bestT;
            T[v >> 6] ^= 1ull << (v & 63);
            consider(bestS, T);
        }
    }

    auto Sv = set_to_verts(bestS, n);
    auto Tv = set_to_verts(bestT, n);
    rep.argmax = describe_sets(Sv, Tv, e_st(G, bestS, bestT));
    return rep;
}

MixingCertificate mixing_certificate(const GraphInstance& G, const SpectrumReport& spectrum) {
    MixingCertificate c;
    double q = static_cast<double>(G.n);
    double lq = std::log(q);
    double sumdev = 0;
    for (auto d : G.degrees) {
        double dd = d - q / 2.0;
        sumdev += dd * dd;
    }
    c.alpha_hat = sumdev >= 1.0 ? std::log(sumdev) / lq : 0.0;
    double l1dev = std::fabs(spectrum.lambda1_dev);
    c.beta_hat = l1dev >= 1.0 ? std::log(l1dev) / lq : 0.0;
    double l2 = spectrum.lambda.size() > 1 ? std::fabs(spectrum.lambda[1]) : 0.0;
    c.gamma_hat = l2 >= 1.0 ? std::log(l2) / lq : 0.0;
    // Refinement: when all but O(1) vertices have degree q/2 + O(q^eta), theta
    // = max(eta, beta, gamma).  Drop the 3 worst deviations and measure eta on
    // the rest (eta is clamped to [1/2, 1)).
    std::vector<double> devs;
    devs.reserve(G.n);
    for (auto d : G.degrees) devs.push_back(std::fabs(d - q / 2.0));
    std::sort(devs.begin(), devs.end());
    double rest = devs.size() > 3 ? devs[devs.size() - 4] : 0.0;
    double eta_hat = rest >= 1.0 ? std::max(0.5, std::log(rest) / lq) : 0.5;
    double degree_term = std::min((1.0 + c.alpha_hat) / 4.0, eta_hat);
    c.theta_cert = std::max({degree_term, c.beta_hat, c.gamma_hat});
    return c;
}

namespace {

std::uint64_t count_cliques_from(const GraphInstance& G, VertexSet cand, unsigned depth,
                                 unsigned m) {
    if (depth == m) return set_size(cand);
    std::uint64_t total = 0;
    for (std::uint32_t w = 0; w < G.n; ++w) {
        if (!((cand[w >> 6] >> (w & 63)) & 1u)) continue;
        VertexSet next(G.words, 0);
        const std::uint64_t* row = G.row(w);
        for (std::size_t k = 0; k < G.words; ++k) next[k] = cand[k] & row[k];
        // keep only vertices above w
        next[w >> 6] &= ~((2ull << (w & 63)) - 1);
        for (std::size_t k = 0; k < (w >> 6); ++k) next[k] = 0;
        total += count_cliques_from(G, std::move(next), depth + 1, m);
    }
    return total;
}

}  // namespace

TupleCensus tuple_census(const GraphInstance& G, unsigned m, bool parallel) {
    if (m < 2 || m > 5) fail("TooLarge", "tuple census supports 2 <= m <= 5");
    if (G.n > 2000) fail("TooLarge", "tuple census is capped at q <= 2000");
    TupleCensus tc;
    tc.m = m;
    std::uint64_t count = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : count) if (parallel)
#endif
    for (std::int64_t v = 0; v < G.n; ++v) {
        VertexSet cand(G.words, 0);
        const std::uint64_t* row = G.row(static_cast<std::uint32_t>(v));
        for (std::size_t k = 0; k < G.words; ++k) cand[k] = row[k];
        cand[v >> 6] &= ~((2ull << (v & 63)) - 1);
        for (std::size_t k = 0; k < static_cast<std::size_t>(v >> 6); ++k) cand[k] = 0;
        count += count_cliques_from(G, std::move(cand), 2, m);
    }
    tc.count = count;
    double q = static_cast<double>(G.n);
    double denom = std::pow(2.0, m * (m - 1) / 2.0);
    double fact = 1;
    for (unsigned i = 2; i <= m; ++i) fact *= i;
    tc.predicted = std::pow(q, static_cast<double>(m)) / (denom * fact);
    tc.rel_err = std::fabs(static_cast<double>(tc.count) - tc.predicted) / tc.predicted;
    return tc;
}

}  // namespace qr

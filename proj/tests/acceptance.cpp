// Acceptance suite: one line per criterion, PASS/FAIL, exit 0 only when all
// pass.  The qrgraph binary path (for the end-to-end determinism criterion)
// arrives as argv[1].

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qr/charsum.hpp"
#include "qr/clique.hpp"
#include "qr/discrepancy.hpp"
#include "qr/ramsey.hpp"
#include "qr/spectral.hpp"

using namespace qr;

namespace {

int g_failures = 0;
std::string g_bin;

void report(int num, const char* name, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d %-34s %s%s%s\n", num, name, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Field field_for(std::uint64_t q) {
    std::uint64_t p = q;
    unsigned m = 1;
    for (std::uint64_t c = 2; c * c <= q; ++c)
        if (q % c == 0) {
            p = c;
            m = 0;
            for (std::uint64_t v = q; v > 1; v /= c) ++m;
            break;
        }
    return Field::make(p, m);
}

// Seeded random admissible polynomial of the given total degree, symmetric by
// construction (f + f-swapped), rejection sampled until admissible.
BivarPoly random_admissible(const Field& F, int degree, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::map<std::pair<int, int>, elem> terms;
        int i0 = static_cast<int>(rng() % (degree + 1));
        terms[{i0, degree - i0}] = 1 + static_cast<elem>(rng() % (F.q() - 1));
        int extra = 2 + static_cast<int>(rng() % 4);
        for (int k = 0; k < extra; ++k) {
            int i = static_cast<int>(rng() % (degree + 1));
            int j = static_cast<int>(rng() % (degree + 1 - i));
            terms[{i, j}] = static_cast<elem>(rng() % F.q());
        }
        BivarPoly cand = biv_from_terms(F, std::move(terms));
        cand = biv_add(F, cand, biv_swap_xy(cand));
        if (cand.is_zero() || cand.total_degree() != degree) continue;
        try {
            if (check_admissible(F, cand).admissible) return cand;
        } catch (const Error&) {
        }
    }
    fail("RejectionCap", "no admissible polynomial found");
}

std::string run_cli(const std::string& args, int* exit_code) {
    std::string cmd = g_bin + " " + args + " 2>/dev/null";
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        *exit_code = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

// ---------------------------------------------------------------- criteria

void c1_ell_golden() {
    double t0 = now_s();
    BoundReport b34 = solve_ell(0.75);
    BoundReport b12 = solve_ell(0.5);
    double dt = now_s() - t0;
    bool ok = std::fabs(b34.ell - 0.3031) <= 0.0005 && std::fabs(b34.base - 3.501) <= 0.005 &&
              std::fabs(b12.ell - 0.1436) <= 0.0005 && std::fabs(b12.base - 2.936) <= 0.005 &&
              dt < 1.0;
    std::ostringstream d;
    d << "ell(3/4)=" << format_double(b34.ell) << " base=" << format_double(b34.base)
      << " ell(1/2)=" << format_double(b12.ell) << " base=" << format_double(b12.base);
    report(1, "ell-solver golden values", ok, d.str());
}

void c2_ell_consistency() {
    bool ok = true;
    double worst = 0;
    for (int k = 0; k <= 9; ++k) {
        double theta = 0.50 + 0.05 * k;
        BoundReport b = solve_ell(theta);
        double res = std::fabs(ell_equation_lhs(b.ell, theta) - theta);
        worst = std::max(worst, res);
        if (res > 1e-9) ok = false;
    }
    report(2, "eq:ell self-consistency", ok, "max residual " + format_double(worst));
}

void c3_rate_monotone() {
    bool ok = true;
    double prev = rate_function(0.001);
    for (double x = 0.002; x <= 0.549 + 1e-12; x += 0.001) {
        double cur = rate_function(x);
        if (cur <= prev) {
            ok = false;
            break;
        }
        prev = cur;
    }
    report(3, "rate function strictly increasing", ok);
}

void c4_subfield_cliques() {
    double t0 = now_s();
    std::uint32_t o9 = max_clique(paley(Field::make(3, 2))).omega;
    std::uint32_t o25 = max_clique(paley(Field::make(5, 2))).omega;
    std::uint32_t o49 = max_clique(paley(Field::make(7, 2))).omega;
    double dt = now_s() - t0;
    bool ok = o9 == 3 && o25 == 5 && o49 == 7 && dt < 5.0;
    std::ostringstream d;
    d << "omega(P_9)=" << o9 << " omega(P_25)=" << o25 << " omega(P_49)=" << o49 << " in "
      << format_double(dt) << "s";
    report(4, "subfield cliques", ok, d.str());
}

void c5_weil_suite() {
    double t0 = now_s();
    int violations = 0, total = 0;
    for (std::uint64_t q : {101, 169, 243}) {
        Field F = field_for(q);
        std::mt19937_64 rng(q * 7919 + 1);
        int done = 0;
        while (done < 1000) {
            int deg = 1 + static_cast<int>(rng() % 5);
            UniPoly g;
            g.c.assign(deg + 1, 0);
            for (int i = 0; i < deg; ++i) g.c[i] = static_cast<elem>(rng() % F.q());
            g.c[deg] = 1;
            if (is_const_times_square_uni(F, g)) continue;
            elem a = 1 + static_cast<elem>(rng() % (F.q() - 1));
            CharSumReport r = weil_sum(F, g, a);
            if (std::fabs(static_cast<double>(r.value)) > r.bound + 1e-9) ++violations;
            ++done;
            ++total;
        }
    }
    double dt = now_s() - t0;
    bool ok = violations == 0 && total == 3000 && dt < 30.0;
    report(5, "Weil-bound suite", ok,
           std::to_string(violations) + " violations / 3000 in " + format_double(dt) + "s");
}

void c6_census() {
    double t0 = now_s();
    Field F = Field::make(997, 1);
    GraphInstance D = diophantine(F);
    TupleCensus t3 = tuple_census(D, 3, true);
    TupleCensus t2 = tuple_census(D, 2, true);
    double dt = now_s() - t0;
    bool ok = t3.rel_err <= 0.05 && t2.rel_err <= 0.05 && dt < 60.0;
    std::ostringstream d;
    d << "m=3 rel_err " << format_double(t3.rel_err) << ", m=2 rel_err "
      << format_double(t2.rel_err) << " in " << format_double(dt) << "s";
    report(6, "Diophantine tuple census D_997", ok, d.str());
}

void c7_spectral_gaps() {
    bool ok = true;
    std::ostringstream d;
    for (std::uint64_t q : {101, 229, 401}) {
        Field F = field_for(q);
        double cap = 3 * std::sqrt(static_cast<double>(q));
        for (int fam = 0; fam < 3; ++fam) {
            GraphInstance G = fam == 0 ? paley(F) : fam == 1 ? paley_sum(F) : diophantine(F);
            SpectrumReport s = eigenvalues(G);
            if (std::fabs(s.lambda[1]) > cap) {
                ok = false;
                d << "fam" << fam << "@q=" << q << " |l2|=" << format_double(std::fabs(s.lambda[1]))
                  << " ";
            }
            if (fam == 0 &&
                std::fabs(std::fabs(s.lambda[1]) - (1 + std::sqrt(double(q))) / 2) > 1e-6) {
                ok = false;
                d << "paley l2 mismatch @q=" << q << " ";
            }
        }
    }
    for (std::uint64_t q : {101, 211}) {
        Field F = field_for(q);
        std::mt19937_64 rng(q);
        double cap = 5 * std::pow(static_cast<double>(q), 0.75);
        for (int it = 0; it < 20; ++it) {
            BivarPoly f = random_admissible(F, 3, rng);
            SpectrumReport s = eigenvalues(build_graph(F, f, true));
            if (std::fabs(s.lambda[1]) > cap) {
                ok = false;
                d << "cubic@q=" << q << " |l2|=" << format_double(std::fabs(s.lambda[1])) << " ";
            }
        }
    }
    report(7, "spectral gaps", ok, d.str());
}

void c8_a_squared() {
    bool ok = true;
    std::ostringstream d;
    for (std::uint64_t q : {101, 401}) {
        Field F = field_for(q);
        ASquaredStats st = a_squared_stats(diophantine(F), 2.0, true);
        bool offdiag_ok = st.offdiag_band_hits * 100 >= st.offdiag_total * 95;
        bool diag_ok = st.diag_total - st.diag_band_hits <= 5;
        if (!offdiag_ok || !diag_ok) ok = false;
        d << "D_" << q << " offdiag " << st.offdiag_band_hits << "/" << st.offdiag_total
          << " diag-exceptions " << (st.diag_total - st.diag_band_hits) << "; ";
    }
    {
        Field F = Field::make(401, 1);
        BivarPoly f = parse_poly("2*x*y+3", F);
        GraphInstance G = build_graph(F, f, true);
        // rows whose specialization is constant or a constant times a square
        std::vector<std::uint32_t> excluded;
        for (elem u = 0; u < F.q(); ++u) {
            UniPoly s = specialize_y(F, f, u);
            if (s.is_zero() || is_const_times_square_uni(F, s))
                excluded.push_back(static_cast<std::uint32_t>(u));
        }
        std::uint64_t out = offdiag_out_of_band(G, 401.0 / 4, 10.0, excluded);
        if (out > 20) ok = false;
        d << "2xy+3@401 out-of-band " << out << " (excluded rows " << excluded.size() << ")";
    }
    report(8, "A^2 structure", ok, d.str());
}

void c9_hw() {
    bool ok = true;
    std::ostringstream d;
    double worst_ratio = 0;
    // scanned instances: the named families at several q
    for (std::uint64_t q : {101, 229, 401}) {
        Field F = field_for(q);
        for (int fam = 0; fam < 3; ++fam) {
            if (fam == 0 && q % 4 != 1) continue;
            GraphInstance G = fam == 0 ? paley(F) : fam == 1 ? paley_sum(F) : diophantine(F);
            HWReport h = hw_gap(G, eigenvalues(G));
            if (h.lhs_min > h.rhs + 1e-6 * static_cast<double>(q) * q) ok = false;
        }
    }
    for (std::uint64_t q : {101, 211}) {
        Field F = field_for(q);
        std::mt19937_64 rng(q + 17);
        for (int it = 0; it < 5; ++it) {
            BivarPoly f = random_admissible(F, 3, rng);
            GraphInstance G = build_graph(F, f, true);
            HWReport h = hw_gap(G, eigenvalues(G));
            double q3 = static_cast<double>(q) * q * q;
            worst_ratio = std::max(worst_ratio, h.rhs / q3);
            if (h.lhs_min > h.rhs + 1e-6 * static_cast<double>(q) * q) ok = false;
            if (h.rhs > 10.0 * q3) ok = false;
        }
    }
    report(9, "Hoffman-Wielandt invariant", ok,
           "max rhs/q^3 = " + format_double(worst_ratio));
}

void c10_discrepancy() {
    double t0 = now_s();
    Field F13 = Field::make(13, 1);
    DiscrepancyReport ex = discrepancy_exhaustive(paley(F13), 0.5);
    double dt = now_s() - t0;
    bool ok = ex.c_hat <= 2.0 && dt < 120.0;
    std::ostringstream d;
    d << "P_13 exact " << format_double(ex.c_hat) << " in " << format_double(dt) << "s";

    Field F101 = Field::make(101, 1);
    DiscrepancyReport p = discrepancy_sampled(paley(F101), 0.5, 10000, 42);
    DiscrepancyReport di = discrepancy_sampled(diophantine(F101), 0.5, 10000, 42);
    if (p.c_hat > 2.5 || di.c_hat > 2.5) ok = false;
    d << "; P_101 " << format_double(p.c_hat) << ", D_101 " << format_double(di.c_hat);

    std::mt19937_64 rng(4242);
    double worst = 0;
    for (int it = 0; it < 10; ++it) {
        BivarPoly f = random_admissible(F101, 3, rng);
        DiscrepancyReport r =
            discrepancy_sampled(build_graph(F101, f, true), 0.75, 10000, 42 + it);
        worst = std::max(worst, r.c_hat);
    }
    if (worst > 3.0) ok = false;
    d << "; cubic theta=3/4 max " << format_double(worst);
    report(10, "discrepancy bounds", ok, d.str());
}

void c11_floor() {
    bool ok = true;
    double worst = 10;
    std::ostringstream d;
    auto check = [&](const GraphInstance& G, std::uint64_t q) {
        SpectrumReport s = eigenvalues(G);
        double ratio = std::fabs(s.lambda[1]) / std::sqrt(static_cast<double>(q));
        worst = std::min(worst, ratio);
        if (ratio < 0.45) {
            ok = false;
            d << G.provenance.family << "@q=" << q << " ratio " << format_double(ratio) << " ";
        }
    };
    for (std::uint64_t q : {101, 229, 401}) {
        Field F = field_for(q);
        check(paley(F), q);
        check(diophantine(F), q);
        for (int deg : {2, 3}) {
            std::mt19937_64 rng(q * 31 + deg);
            UniPoly g;
            g.c.assign(deg + 1, 0);
            for (int i = 0; i < deg; ++i) g.c[i] = static_cast<elem>(rng() % F.q());
            g.c[deg] = 1;
            BivarPoly h = compose(F, parse_poly("x*y+1", F), g, ComposeVariant::plain);
            check(build_graph(F, h, true), q);
        }
    }
    report(11, "impossibility floor |l2|/sqrt(q)", ok, "min ratio " + format_double(worst));
}

void c12_oracles() {
    bool ok = true;
    // clique oracle for q <= 23
    for (std::uint64_t q : {5, 9, 13, 17, 23}) {
        Field F = field_for(q);
        std::vector<GraphInstance> gs;
        gs.push_back(diophantine(F));
        gs.push_back(paley_sum(F));
        if (q % 4 == 1) gs.push_back(paley(F));
        for (const auto& G : gs) {
            std::uint32_t brute = 0;
            for (std::uint32_t mask = 1; mask < (1u << G.n); ++mask) {
                std::vector<std::uint32_t> verts;
                for (std::uint32_t v = 0; v < G.n; ++v)
                    if (mask >> v & 1) verts.push_back(v);
                if (verts.size() <= brute) continue;
                bool clique = true;
                for (std::size_t i = 0; i < verts.size() && clique; ++i)
                    for (std::size_t j = i + 1; j < verts.size(); ++j)
                        if (!G.adj(verts[i], verts[j])) {
                            clique = false;
                            break;
                        }
                if (clique) brute = static_cast<std::uint32_t>(verts.size());
            }
            if (max_clique(G).omega != brute) ok = false;
        }
    }
    // e_st oracle for q <= 49
    std::mt19937_64 rng(4949);
    for (std::uint64_t q : {13, 29, 49}) {
        Field F = field_for(q);
        GraphInstance G = diophantine(F);
        for (int it = 0; it < 100; ++it) {
            std::vector<std::uint32_t> s, t;
            for (std::uint32_t v = 0; v < q; ++v) {
                if (rng() & 1) s.push_back(v);
                if (rng() & 1) t.push_back(v);
            }
            if (e_st(G, make_vertex_set(G, s), make_vertex_set(G, t)) != e_st_naive(G, s, t))
                ok = false;
        }
    }
    report(12, "oracle equivalence", ok);
}

void c13_average_clique() {
    Field F = Field::make(13, 1);
    elem r = 2;  // non-square mod 13
    bool ok = true;
    std::set<std::pair<elem, elem>> image;
    for (elem a = 1; a < 13 && ok; ++a)
        for (elem b = 1; b < 13; ++b) {
            elem ra = F.mul(r, a), rb = F.mul(r, b);
            image.insert({ra, rb});
            if (max_clique(gen_dio(F, ra, rb)).omega <
                independence_number(gen_dio(F, a, b)).omega) {
                ok = false;
                break;
            }
        }
    if (image.size() != 144) ok = false;  // f -> rf permutes the family
    report(13, "average-clique mechanism q=13", ok);
}

void c14_determinism() {
    bool ok = true;
    std::ostringstream d;
    int ec1 = 0, ec2 = 0;
    std::string a =
        run_cli("discrepancy --f \"x*y+1\" --p 101 --theta 0.5 --samples 2000 --seed 42", &ec1);
    std::string b =
        run_cli("discrepancy --f \"x*y+1\" --p 101 --theta 0.5 --samples 2000 --seed 42", &ec2);
    if (a.empty() || a != b || ec1 != 0 || ec2 != 0) {
        ok = false;
        d << "json differs ";
    }
    std::string ca = run_cli(
        "scan --family dio --q-list 13,17 --analyses spectrum,discrepancy --seed 9 --samples 500",
        &ec1);
    std::string cb = run_cli(
        "scan --family dio --q-list 13,17 --analyses spectrum,discrepancy --seed 9 --samples 500",
        &ec2);
    if (ca.empty() || ca != cb) {
        ok = false;
        d << "csv differs ";
    }
    std::string csv = "/tmp/qrgraph-acc.csv";
    run_cli("scan --family dio --q-list 13,29 --analyses clique --seed 3 --out " + csv, &ec1);
    std::string sa = run_cli("plot --input " + csv + " --kind omega_vs_logq", &ec1);
    std::string sb = run_cli("plot --input " + csv + " --kind omega_vs_logq", &ec2);
    if (sa.empty() || sa != sb) {
        ok = false;
        d << "svg differs";
    }
    report(14, "byte determinism", ok, d.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-qrgraph>\n");
        return 2;
    }
    g_bin = argv[1];
    try {
        c1_ell_golden();
        c2_ell_consistency();
        c3_rate_monotone();
        c4_subfield_cliques();
        c5_weil_suite();
        c6_census();
        c7_spectral_gaps();
        c8_a_squared();
        c9_hw();
        c10_discrepancy();
        c11_floor();
        c12_oracles();
        c13_average_clique();
        c14_determinism();
    } catch (const std::exception& e) {
        std::printf("acceptance suite aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%s\n", g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
    return g_failures == 0 ? 0 : 1;
}

// qrgraph: command-line surface over the quasi-random graph library.
//
// Subcommands: admissible, build, spectrum, discrepancy, clique, tuples,
// charsum, bounds, scan, plot.  Result documents go to stdout (or --out);
// errors are machine-readable JSON on stderr with exit code 1; `admissible`
// exits 2 for a well-formed non-admissible input.  Repeated runs with the same
// seed produce byte-identical output; a result cache (keyed by the canonical
// request string) serves repeat requests without recomputation.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "qr/charsum.hpp"
#include "qr/clique.hpp"
#include "qr/discrepancy.hpp"
#include "qr/ramsey.hpp"

using namespace qr;

namespace {

constexpr const char* kToolVersion = "qrgraph/1.0.0";

std::string fd(double x) { return format_double(x); }

// ---------------------------------------------------------------- cache

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Cache {
    std::filesystem::path dir;
    bool enabled = false;

    static Cache make(const std::string& flag_dir, bool no_cache) {
        Cache c;
        if (no_cache) return c;
        const char* env = std::getenv("QUASIRAND_CACHE_DIR");
        std::string d = env && *env ? env : flag_dir;
        if (d.empty()) return c;
        c.dir = d;
        std::error_code ec;
        std::filesystem::create_directories(c.dir, ec);
        c.enabled = !ec || std::filesystem::is_directory(c.dir);
        return c;
    }

    std::filesystem::path path_for(const std::string& request) const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(request)));
        return dir / (std::string(buf) + ".json");
    }

    std::optional<std::string> lookup(const std::string& request) const {
        if (!enabled) return std::nullopt;
        std::ifstream in(path_for(request), std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream body;
        body << in.rdbuf();
        const std::string& all = body.str();
        // entry layout: first line = request echo, rest = result document
        auto nl = all.find('\n');
        if (nl == std::string::npos || all.substr(0, nl) != request) return std::nullopt;
        return all.substr(nl + 1);
    }

    void store(const std::string& request, const std::string& document) const {
        if (!enabled) return;
        std::filesystem::path final_path = path_for(request);
        std::filesystem::path tmp = final_path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << request << "\n" << document;
        }
        std::error_code ec;
        std::filesystem::rename(tmp, final_path, ec);  // atomic publish
    }
};

// ---------------------------------------------------------------- plumbing

struct FieldArgs {
    std::uint64_t p = 0;
    unsigned m = 1;
};

void add_field_flags(CLI::App* cmd, FieldArgs& fa) {
    cmd->add_option("--p", fa.p, "field characteristic (odd prime)")->required();
    cmd->add_option("--m", fa.m, "extension degree (default 1)");
}

void emit(const std::string& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc;
        std::cout.flush();
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) fail("IoError", "cannot open output file " + out_path);
        out << doc;
    }
}

// Serve a cached document, or compute it and populate the cache.  The result
// document itself is byte-identical either way; the cache-hit marker goes to
// stderr so stdout stays deterministic.
template <typename Fn>
void with_cache(const Cache& cache, const std::string& request, const std::string& out_path,
                Fn compute) {
    if (auto hit = cache.lookup(request)) {
        std::cerr << "{\"cached\":true}\n";
        emit(*hit, out_path);
        return;
    }
    std::string doc = compute();
    cache.store(request, doc);
    emit(doc, out_path);
}

std::string witness_json(const std::optional<std::pair<elem, elem>>& w) {
    if (!w) return "null";
    return "[" + std::to_string(w->first) + "," + std::to_string(w->second) + "]";
}

std::string admissible_doc(const Field& F, const BivarPoly& f) {
    AdmissibilityReport r = check_admissible(F, f);
    std::string s = "{\"f\":\"" + render_poly(f, F) + "\",\"field\":" + F.to_json() +
                    ",\"undirected\":" + (r.undirected ? "true" : "false") +
                    ",\"kernel_square\":" + (r.kernel_square ? "true" : "false") +
                    ",\"admissible\":" + (r.admissible ? "true" : "false") +
                    ",\"witness\":" + witness_json(r.witness) + "}\n";
    return s;
}

std::string spectrum_doc(const Field& F, const GraphInstance& G) {
    SpectrumReport s = eigenvalues(G);
    MixingCertificate c = mixing_certificate(G, s);
    HWReport hw = hw_gap(G, s);
    std::ostringstream o;
    o << "{\"q\":" << F.q() << ",\"f\":\"" << G.provenance.f << "\",\"edges\":" << G.edges
      << ",\"lambda1\":" << fd(s.lambda[0]) << ",\"lambda2\":" << fd(s.lambda[1])
      << ",\"lambda1_dev\":" << fd(s.lambda1_dev)
      << ",\"lambda2_ratio_12\":" << fd(s.lambda2_ratio_12)
      << ",\"lambda2_ratio_34\":" << fd(s.lambda2_ratio_34)
      << ",\"trace_check\":" << fd(s.trace_check) << ",\"mixing\":{\"alpha_hat\":"
      << fd(c.alpha_hat) << ",\"beta_hat\":" << fd(c.beta_hat) << ",\"gamma_hat\":"
      << fd(c.gamma_hat) << ",\"theta_cert\":" << fd(c.theta_cert) << "},\"hw\":{\"lhs_min\":"
      << fd(hw.lhs_min) << ",\"rhs\":" << fd(hw.rhs) << "}}\n";
    return o.str();
}

std::string discrepancy_doc(const DiscrepancyReport& r) {
    std::ostringstream o;
    o << "{\"theta\":" << fd(r.theta) << ",\"c_hat\":" << fd(r.c_hat) << ",\"argmax\":\""
      << r.argmax << "\",\"mode\":\"" << r.mode << "\",\"samples\":" << r.samples
      << ",\"seed\":" << r.seed << "}\n";
    return o.str();
}

std::string clique_doc(const GraphInstance& G, std::uint64_t budget, bool with_alpha) {
    CliqueResult r = max_clique(G, budget);
    std::ostringstream o;
    o << "{\"omega\":" << r.omega << ",\"witness\":[";
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
        if (i) o << ",";
        o << r.witness[i];
    }
    o << "],\"nodes_explored\":" << r.nodes_explored
      << ",\"exact\":" << (r.exact ? "true" : "false");
    if (with_alpha) {
        CliqueResult a = independence_number(G, budget);
        o << ",\"alpha\":" << a.omega << ",\"alpha_exact\":" << (a.exact ? "true" : "false");
    }
    o << "}\n";
    return o.str();
}

std::string tuples_doc(const TupleCensus& t) {
    std::ostringstream o;
    o << "{\"m\":" << t.m << ",\"count\":" << t.count << ",\"predicted\":" << fd(t.predicted)
      << ",\"rel_err\":" << fd(t.rel_err) << "}\n";
    return o.str();
}

std::string charsum_doc(const CharSumReport& r, bool weil) {
    std::ostringstream o;
    o << "{\"value\":" << r.value << ",\"bound\":" << fd(r.bound) << ",\"ratio\":" << fd(r.ratio);
    if (weil) o << ",\"distinct_roots\":" << r.distinct_roots;
    o << "}\n";
    return o.str();
}

std::string bounds_doc(const BoundReport& b, bool with_plan) {
    std::ostringstream o;
    o << "{\"theta\":" << fd(b.theta) << ",\"ell\":" << fd(b.ell) << ",\"base\":" << fd(b.base)
      << ",\"residual\":" << fd(b.residual);
    if (with_plan) {
        o << ",\"q\":" << b.q << ",\"C\":" << fd(b.C) << ",\"m\":" << b.m << ",\"r\":" << b.r
          << ",\"s\":" << b.s << ",\"per_side_asymptotic\":" << fd(b.per_side_asymptotic)
          << ",\"total_bound\":" << fd(b.total_bound);
    }
    o << "}\n";
    return o.str();
}

// univariate parse: reuse the bivariate parser and reject y-terms
UniPoly parse_uni(const std::string& expr, const Field& F) {
    BivarPoly f = parse_poly(expr, F);
    if (f.degree_y() > 0) fail("SyntaxError", "expected a univariate polynomial in x");
    return specialize_y(F, f, 0);
}

// ---------------------------------------------------------------- scan

struct ScanRow {
    std::uint64_t q = 0;
    std::string f;
    std::string family;
    int d = 0;
    std::string e, lambda1, lambda2, c_hat_12, c_hat_34, theta_cert, omega, alpha,
        census_m3_relerr, error;
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += "\"";
    return out;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream o;
    o << "q,f,family,d,e,lambda1,lambda2,c_hat_12,c_hat_34,theta_cert,omega,alpha,"
         "census_m3_relerr,error\n";
    for (const auto& r : rows)
        o << r.q << "," << csv_escape(r.f) << "," << r.family << "," << r.d << "," << r.e << ","
          << r.lambda1 << "," << r.lambda2 << "," << r.c_hat_12 << "," << r.c_hat_34 << ","
          << r.theta_cert << "," << r.omega << "," << r.alpha << "," << r.census_m3_relerr << ","
          << csv_escape(r.error) << "\n";
    return o.str();
}

struct ScanJob {
    Field F;
    BivarPoly f;
    std::string family;
};

BivarPoly random_admissible_poly(const Field& F, int degree, std::mt19937_64& rng,
                                 int* rejections) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::map<std::pair<int, int>, elem> terms;
        // always give the polynomial its full total degree
        int i0 = static_cast<int>(rng() % (degree + 1));
        terms[{i0, degree - i0}] = 1 + static_cast<elem>(rng() % (F.q() - 1));
        int extra = 2 + static_cast<int>(rng() % 4);
        for (int k = 0; k < extra; ++k) {
            int i = static_cast<int>(rng() % (degree + 1));
            int j = static_cast<int>(rng() % (degree + 1 - i));
            terms[{i, j}] = static_cast<elem>(rng() % F.q());
        }
        // symmetrize so undirectedness holds: f(x,y) + f(y,x)
        BivarPoly cand = biv_from_terms(F, std::move(terms));
        cand = biv_add(F, cand, biv_swap_xy(cand));
        if (cand.is_zero() || cand.total_degree() != degree) {
            ++*rejections;
            continue;
        }
        try {
            if (check_admissible(F, cand).admissible) return cand;
        } catch (const Error&) {
        }
        ++*rejections;
    }
    fail("RejectionCap", "no admissible polynomial of degree " + std::to_string(degree) +
                             " found in 1000 draws");
}

std::vector<ScanJob> scan_jobs(const std::string& family, const std::vector<std::uint64_t>& qs,
                               int degree, std::uint64_t seed) {
    std::vector<ScanJob> jobs;
    for (std::uint64_t q : qs) {
        // factor q as p^m
        std::uint64_t p = q;
        unsigned m = 1;
        for (std::uint64_t c = 2; c * c <= q; ++c)
            if (q % c == 0) {
                p = c;
                m = 0;
                std::uint64_t t = q;
                while (t > 1) {
                    if (t % c) fail("NonPrimePower", std::to_string(q) + " is not a prime power");
                    t /= c;
                    ++m;
                }
                break;
            }
        Field F = Field::make(p, m);
        if (family == "paley") {
            jobs.push_back({F, parse_poly("x-y", F), "paley"});
        } else if (family == "dio") {
            jobs.push_back({F, parse_poly("x*y+1", F), "dio"});
        } else if (family == "gendio") {
            for (elem a = 1; a < F.q(); ++a)
                for (elem b = 1; b < F.q(); ++b) {
                    std::map<std::pair<int, int>, elem> t{{{1, 1}, a}, {{0, 0}, b}};
                    jobs.push_back({F, biv_from_terms(F, std::move(t)), "gendio"});
                }
        } else if (family == "H_d") {
            // f = xy + 1 composed with a seeded random monic g of the given degree
            std::mt19937_64 rng(seed ^ q);
            UniPoly g;
            g.c.assign(degree + 1, 0);
            for (int i = 0; i < degree; ++i) g.c[i] = static_cast<elem>(rng() % F.q());
            g.c[degree] = 1;
            BivarPoly h = compose(F, parse_poly("x*y+1", F), g, ComposeVariant::plain);
            jobs.push_back({F, h, "H_" + std::to_string(degree)});
        } else if (family == "random_admissible") {
            std::mt19937_64 rng(seed ^ q);
            int rejections = 0;
            BivarPoly f = random_admissible_poly(F, degree, rng, &rejections);
            jobs.push_back({F, f, "random_admissible"});
        } else {
            fail("BadFamily", "unknown family " + family);
        }
    }
    return jobs;
}

std::string run_scan(const std::string& family, const std::vector<std::uint64_t>& qs,
                     const std::vector<std::string>& analyses, int degree, std::uint64_t seed,
                     std::uint64_t samples) {
    auto want = [&](const char* a) {
        return std::find(analyses.begin(), analyses.end(), a) != analyses.end();
    };
    std::vector<ScanJob> jobs = scan_jobs(family, qs, degree, seed);
    std::vector<ScanRow> rows(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const ScanJob& job = jobs[i];
        ScanRow& row = rows[i];
        row.q = job.F.q();
        row.f = render_poly(job.f, job.F);
        row.family = job.family;
        row.d = job.f.total_degree();
        try {
            if (job.family == "paley" && job.F.q() % 4 != 1)
                fail("PaleyCongruence", "Paley graphs need q = 1 (mod 4), got q = " +
                                            std::to_string(job.F.q()));
            GraphInstance G = build_graph(job.F, job.f, true);
            row.e = std::to_string(G.edges);
            std::uint64_t row_seed = seed ^ static_cast<std::uint64_t>(i);
            if (want("spectrum")) {
                SpectrumReport s = eigenvalues(G);
                row.lambda1 = fd(s.lambda[0]);
                row.lambda2 = fd(s.lambda[1]);
                row.theta_cert = fd(mixing_certificate(G, s).theta_cert);
            }
            if (want("discrepancy")) {
                row.c_hat_12 = fd(discrepancy_sampled(G, 0.5, samples, row_seed).c_hat);
                row.c_hat_34 = fd(discrepancy_sampled(G, 0.75, samples, row_seed).c_hat);
            }
            if (want("clique")) {
                row.omega = std::to_string(max_clique(G).omega);
                row.alpha = std::to_string(independence_number(G).omega);
            }
            if (want("census")) {
                row.census_m3_relerr = fd(tuple_census(G, 3, true).rel_err);
            }
        } catch (const Error& e) {
            row.error = e.what();
        }
    }
    return scan_csv(rows);
}

// ---------------------------------------------------------------- plot

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("BadCsv", "cannot open " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        cells.push_back(cur);
        if (first) {
            t.header = cells;
            first = false;
        } else {
            t.rows.push_back(cells);
        }
    }
    if (t.header.empty()) fail("BadCsv", "empty csv " + path);
    return t;
}

constexpr double kPlotW = 720, kPlotH = 480, kMargin = 60;

std::string svg_header(const std::string& title) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotW << "\" height=\""
      << kPlotH << "\" viewBox=\"0 0 " << kPlotW << " " << kPlotH << "\">\n"
      << "<rect width=\"" << kPlotW << "\" height=\"" << kPlotH << "\" fill=\"white\"/>\n"
      << "<text x=\"" << kPlotW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kPlotH - kMargin << "\" x2=\""
      << kPlotW - kMargin << "\" y2=\"" << kPlotH - kMargin
      << "\" stroke=\"black\"/>\n<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
      << kMargin << "\" y2=\"" << kPlotH - kMargin << "\" stroke=\"black\"/>\n";
    return o.str();
}

double px(double x, double xmin, double xmax) {
    if (xmax <= xmin) return kMargin;
    return kMargin + (x - xmin) / (xmax - xmin) * (kPlotW - 2 * kMargin);
}
double py(double y, double ymin, double ymax) {
    if (ymax <= ymin) return kPlotH - kMargin;
    return kPlotH - kMargin - (y - ymin) / (ymax - ymin) * (kPlotH - 2 * kMargin);
}

std::string axis_labels(double xmin, double xmax, double ymin, double ymax,
                        const std::string& xlab, const std::string& ylab) {
    std::ostringstream o;
    o << "<text x=\"" << kMargin << "\" y=\"" << kPlotH - kMargin + 20
      << "\" font-size=\"11\">" << fd(xmin) << "</text>\n"
      << "<text x=\"" << kPlotW - kMargin << "\" y=\"" << kPlotH - kMargin + 20
      << "\" text-anchor=\"end\" font-size=\"11\">" << fd(xmax) << "</text>\n"
      << "<text x=\"" << kMargin - 6 << "\" y=\"" << kPlotH - kMargin
      << "\" text-anchor=\"end\" font-size=\"11\">" << fd(ymin) << "</text>\n"
      << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin
      << "\" text-anchor=\"end\" font-size=\"11\">" << fd(ymax) << "</text>\n"
      << "<text x=\"" << kPlotW / 2 << "\" y=\"" << kPlotH - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xlab << "</text>\n"
      << "<text x=\"16\" y=\"" << kPlotH / 2 << "\" font-size=\"13\" transform=\"rotate(-90 16 "
      << kPlotH / 2 << ")\" text-anchor=\"middle\">" << ylab << "</text>\n";
    return o.str();
}

std::string plot_spectrum_hist(const CsvTable& t) {
    std::ostringstream o;
    o << svg_header("spectrum histogram");
    int cq = t.col("q"), cf = t.col("f");
    if (cq < 0 || cf < 0) fail("BadCsv", "expected q and f columns");
    if (!t.rows.empty()) {
        std::uint64_t q = std::stoull(t.rows[0][cq]);
        std::uint64_t p = q;
        unsigned m = 1;
        for (std::uint64_t c = 2; c * c <= q; ++c)
            if (q % c == 0) {
                p = c;
                m = 0;
                for (std::uint64_t v = q; v > 1; v /= c) ++m;
                break;
            }
        Field F = Field::make(p, m);
        GraphInstance G = build_graph(F, parse_poly(t.rows[0][cf], F), true);
        SpectrumReport s = eigenvalues(G);
        double lo = s.lambda[0], hi = s.lambda[0];
        for (double l : s.lambda) {
            lo = std::min(lo, l);
            hi = std::max(hi, l);
        }
        const int nbins = 60;
        std::vector<int> bins(nbins, 0);
        for (double l : s.lambda) {
            int b = static_cast<int>((l - lo) / (hi - lo + 1e-12) * nbins);
            bins[std::min(b, nbins - 1)]++;
        }
        int peak = 1;
        for (int b : bins) peak = std::max(peak, b);
        for (int i = 0; i < nbins; ++i) {
            if (!bins[i]) continue;
            double x0 = px(i, 0, nbins), x1 = px(i + 1, 0, nbins);
            double y = py(bins[i], 0, peak);
            o << "<rect x=\"" << fd(x0) << "\" y=\"" << fd(y) << "\" width=\"" << fd(x1 - x0)
              << "\" height=\"" << fd(kPlotH - kMargin - y) << "\" fill=\"steelblue\"/>\n";
        }
        o << axis_labels(lo, hi, 0, peak, "eigenvalue", "count");
    } else {
        o << axis_labels(0, 1, 0, 1, "eigenvalue", "count");
    }
    o << "</svg>\n";
    return o.str();
}

std::string plot_scatter(const CsvTable& t, const std::string& kind) {
    bool omega_plot = kind == "omega_vs_logq";
    int cq = t.col("q");
    int cy1 = omega_plot ? t.col("omega") : t.col("c_hat_12");
    int cy2 = omega_plot ? -1 : t.col("c_hat_34");
    if (cq < 0 || cy1 < 0) fail("BadCsv", "missing required columns for " + kind);
    std::vector<std::pair<double, double>> pts1, pts2;
    double xmin = 1e300, xmax = -1e300, ymin = 0, ymax = 1;
    for (const auto& r : t.rows) {
        if (r[cq].empty() || r[cy1].empty()) continue;
        double x = std::stod(r[cq]);
        double y = std::stod(r[cy1]);
        pts1.push_back({x, y});
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymax = std::max(ymax, y);
        if (cy2 >= 0 && !r[cy2].empty()) {
            double y2 = std::stod(r[cy2]);
            pts2.push_back({x, y2});
            ymax = std::max(ymax, y2);
        }
    }
    if (pts1.empty()) {
        xmin = 3;
        xmax = 100;
    }
    std::ostringstream o;
    o << svg_header(omega_plot ? "clique number vs log q" : "c_hat vs q");
    if (omega_plot) {
        // reference curves log_b q for the four standard bases
        const std::pair<const char*, double> bases[] = {
            {"log4", 4.0}, {"log3.8", 3.8}, {"log3.501", 3.501}, {"log2.936", 2.936}};
        for (const auto& [lab, base] : bases)
            ymax = std::max(ymax, std::log(xmax) / std::log(base));
        ymax *= 1.05;
        int bi = 0;
        const char* colors[] = {"#c44", "#4a4", "#44c", "#a4a"};
        for (const auto& [lab, base] : bases) {
            o << "<polyline fill=\"none\" stroke=\"" << colors[bi] << "\" points=\"";
            for (int k = 0; k <= 100; ++k) {
                double x = xmin + (xmax - xmin) * k / 100.0;
                double y = std::log(std::max(x, 2.0)) / std::log(base);
                o << fd(px(x, xmin, xmax)) << "," << fd(py(y, ymin, ymax)) << " ";
            }
            o << "\"/>\n<text x=\"" << fd(kPlotW - kMargin + 2) << "\" y=\""
              << fd(py(std::log(std::max(xmax, 2.0)) / std::log(base), ymin, ymax))
              << "\" font-size=\"11\" fill=\"" << colors[bi] << "\">" << lab << "</text>\n";
            ++bi;
        }
    } else {
        ymax *= 1.1;
    }
    for (const auto& [x, y] : pts1)
        o << "<circle cx=\"" << fd(px(x, xmin, xmax)) << "\" cy=\"" << fd(py(y, ymin, ymax))
          << "\" r=\"3\" fill=\"steelblue\"/>\n";
    for (const auto& [x, y] : pts2)
        o << "<circle cx=\"" << fd(px(x, xmin, xmax)) << "\" cy=\"" << fd(py(y, ymin, ymax))
          << "\" r=\"3\" fill=\"#c44\"/>\n";
    o << axis_labels(xmin, xmax, ymin, ymax, "q", omega_plot ? "omega" : "c_hat");
    o << "</svg>\n";
    return o.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-random graph toolkit"};
    app.require_subcommand(1);

    std::string f_expr, g_expr, out_path, cache_dir, format = "json", family, q_list, analyses,
                mode;
    std::string plot_in, plot_kind;
    FieldArgs fa;
    double theta = 0.5, bigC = 1.0;
    std::uint64_t samples = 10000, seed = 0, budget = 0, qq = 0, aval = 1;
    unsigned tuple_m = 3;
    elem gd_a = 1, gd_b = 1;
    int degree = 3;
    bool no_cache = false, exhaustive = false, with_alpha = false;

    auto* c_adm = app.add_subcommand("admissible", "decide admissibility of f");
    c_adm->add_option("--f", f_expr)->required();
    add_field_flags(c_adm, fa);

    auto* c_build = app.add_subcommand("build", "build and export the graph of f");
    c_build->add_option("--f", f_expr)->required();
    add_field_flags(c_build, fa);
    c_build->add_option("--format", format, "dimacs|edgelist|json");

    auto* c_spec = app.add_subcommand("spectrum", "full spectrum and certificates");
    c_spec->add_option("--f", f_expr)->required();
    add_field_flags(c_spec, fa);

    auto* c_disc = app.add_subcommand("discrepancy", "QR(theta) discrepancy estimate");
    c_disc->add_option("--f", f_expr)->required();
    add_field_flags(c_disc, fa);
    c_disc->add_option("--theta", theta);
    c_disc->add_option("--samples", samples);
    auto* seed_opt = c_disc->add_option("--seed", seed);
    c_disc->add_flag("--exhaustive", exhaustive);

    auto* c_cliq = app.add_subcommand("clique", "clique number");
    c_cliq->add_option("--f", f_expr)->required();
    add_field_flags(c_cliq, fa);
    c_cliq->add_option("--budget", budget);
    c_cliq->add_flag("--alpha", with_alpha, "also compute the independence number");

    auto* c_tup = app.add_subcommand("tuples", "m-clique census");
    c_tup->add_option("--f", f_expr)->required();
    add_field_flags(c_tup, fa);
    c_tup->add_option("--size", tuple_m, "clique size m (2..5)");

    auto* c_cs = app.add_subcommand("charsum", "character-sum experiments");
    add_field_flags(c_cs, fa);
    c_cs->add_option("--g", g_expr, "univariate g for the complete Weil sum");
    c_cs->add_option("--a", aval, "multiplier a for the Weil sum");
    c_cs->add_option("--f", f_expr, "bivariate f for the incomplete 2-D sum over all of F_q");

    auto* c_bounds = app.add_subcommand("bounds", "ell(theta), log-base, lower-bound plan");
    c_bounds->add_option("--theta", theta)->required();
    auto* q_opt = c_bounds->add_option("--q", qq, "include the constructive plan for this q");
    c_bounds->add_option("--C", bigC);

    auto* c_scan = app.add_subcommand("scan", "batch scan of a family, CSV output");
    c_scan->add_option("--family", family, "paley|dio|gendio|H_d|random_admissible")->required();
    c_scan->add_option("--q-list", q_list, "comma-separated odd prime powers")->required();
    c_scan->add_option("--analyses", analyses, "comma-separated: spectrum,discrepancy,clique,census");
    c_scan->add_option("--seed", seed);
    c_scan->add_option("--samples", samples);
    c_scan->add_option("--degree", degree, "degree for H_d / random_admissible");

    auto* c_plot = app.add_subcommand("plot", "render a scan CSV as SVG");
    c_plot->add_option("--input", plot_in)->required();
    c_plot->add_option("--kind", plot_kind, "spectrum_hist|chat_vs_q|omega_vs_logq")->required();

    for (auto* c : {c_adm, c_build, c_spec, c_disc, c_cliq, c_tup, c_cs, c_bounds, c_scan, c_plot}) {
        c->add_option("--out", out_path, "write the document here instead of stdout");
        c->add_option("--cache-dir", cache_dir, "result cache directory");
        c->add_flag("--no-cache", no_cache);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        Cache cache = Cache::make(cache_dir, no_cache);
        auto field = [&] { return Field::make(fa.p, fa.m); };

        if (c_adm->parsed()) {
            Field F = field();
            BivarPoly f = parse_poly(f_expr, F);
            std::string doc = admissible_doc(F, f);
            emit(doc, out_path);
            return doc.find("\"admissible\":true") != std::string::npos ? 0 : 2;
        }
        if (c_build->parsed()) {
            Field F = field();
            std::string req = std::string(kToolVersion) + "|build|" + F.to_json() + "|" +
                              render_poly(parse_poly(f_expr, F), F) + "|" + format;
            with_cache(cache, req, out_path, [&] {
                GraphInstance G = build_graph(F, parse_poly(f_expr, F), true);
                ExportFormat fmt = format == "dimacs"     ? ExportFormat::dimacs
                                   : format == "edgelist" ? ExportFormat::edgelist
                                   : format == "json"     ? ExportFormat::json
                                                          : throw Error("BadFormat", format);
                std::ostringstream o;
                export_graph(G, fmt, o);
                return o.str();
            });
            return 0;
        }
        if (c_spec->parsed()) {
            Field F = field();
            std::string req = std::string(kToolVersion) + "|spectrum|" + F.to_json() + "|" +
                              render_poly(parse_poly(f_expr, F), F);
            with_cache(cache, req, out_path, [&] {
                return spectrum_doc(F, build_graph(F, parse_poly(f_expr, F), true));
            });
            return 0;
        }
        if (c_disc->parsed()) {
            if (!exhaustive && seed_opt->count() == 0)
                fail("SeedRequired", "--seed is mandatory for sampled discrepancy");
            Field F = field();
            std::string req = std::string(kToolVersion) + "|discrepancy|" + F.to_json() + "|" +
                              render_poly(parse_poly(f_expr, F), F) + "|" + fd(theta) + "|" +
                              (exhaustive ? "exhaustive"
                                          : std::to_string(samples) + "|" + std::to_string(seed));
            with_cache(cache, req, out_path, [&] {
                GraphInstance G = build_graph(F, parse_poly(f_expr, F), true);
                DiscrepancyReport r = exhaustive ? discrepancy_exhaustive(G, theta)
                                                 : discrepancy_sampled(G, theta, samples, seed);
                return discrepancy_doc(r);
            });
            return 0;
        }
        if (c_cliq->parsed()) {
            Field F = field();
            std::string req = std::string(kToolVersion) + "|clique|" + F.to_json() + "|" +
                              render_poly(parse_poly(f_expr, F), F) + "|" +
                              std::to_string(budget) + "|" + (with_alpha ? "alpha" : "omega");
            with_cache(cache, req, out_path, [&] {
                return clique_doc(build_graph(F, parse_poly(f_expr, F), true), budget, with_alpha);
            });
            return 0;
        }
        if (c_tup->parsed()) {
            Field F = field();
            std::string req = std::string(kToolVersion) + "|tuples|" + F.to_json() + "|" +
                              render_poly(parse_poly(f_expr, F), F) + "|" +
                              std::to_string(tuple_m);
            with_cache(cache, req, out_path, [&] {
                GraphInstance G = build_graph(F, parse_poly(f_expr, F), true);
                return tuples_doc(tuple_census(G, tuple_m, true));
            });
            return 0;
        }
        if (c_cs->parsed()) {
            Field F = field();
            if (!g_expr.empty()) {
                UniPoly g = parse_uni(g_expr, F);
                std::string req = std::string(kToolVersion) + "|weil|" + F.to_json() + "|" +
                                  g_expr + "|" + std::to_string(aval);
                with_cache(cache, req, out_path, [&] {
                    return charsum_doc(weil_sum(F, g, static_cast<elem>(aval % F.q())), true);
                });
            } else if (!f_expr.empty()) {
                BivarPoly f = parse_poly(f_expr, F);
                std::string req = std::string(kToolVersion) + "|charsum2d|" + F.to_json() + "|" +
                                  render_poly(f, F);
                with_cache(cache, req, out_path, [&] {
                    std::vector<elem> all;
                    for (elem u = 0; u < F.q(); ++u) all.push_back(u);
                    return charsum_doc(incomplete_2d_sum(F, f, all), false);
                });
            } else {
                fail("BadRequest", "charsum needs --g (Weil) or --f (incomplete 2-D)");
            }
            return 0;
        }
        if (c_bounds->parsed()) {
            bool with_plan = q_opt->count() > 0;
            std::string req = std::string(kToolVersion) + "|bounds|" + fd(theta) + "|" +
                              std::to_string(qq) + "|" + fd(bigC);
            with_cache(cache, req, out_path, [&] {
                BoundReport b = with_plan ? lower_bound_plan(qq, theta, bigC) : solve_ell(theta);
                return bounds_doc(b, with_plan);
            });
            return 0;
        }
        if (c_scan->parsed()) {
            std::vector<std::uint64_t> qs;
            std::stringstream ss(q_list);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) qs.push_back(std::stoull(tok));
            std::vector<std::string> an;
            std::stringstream sa(analyses);
            while (std::getline(sa, tok, ','))
                if (!tok.empty()) an.push_back(tok);
            emit(run_scan(family, qs, an, degree, seed, samples), out_path);
            return 0;
        }
        if (c_plot->parsed()) {
            CsvTable t = read_csv(plot_in);
            std::string svg;
            if (plot_kind == "spectrum_hist")
                svg = plot_spectrum_hist(t);
            else if (plot_kind == "chat_vs_q" || plot_kind == "omega_vs_logq")
                svg = plot_scatter(t, plot_kind);
            else
                fail("BadRequest", "unknown plot kind " + plot_kind);
            if (svg.size() > 1 << 20) fail("IoError", "SVG exceeds 1 MB");
            emit(svg, out_path);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "{\"error\":{\"code\":\"" << e.code() << "\",\"message\":\""
                  << std::string(e.what()).substr(e.code().size() + 2) << "\"}}\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":{\"code\":\"Internal\",\"message\":\"" << e.what() << "\"}}\n";
        return 1;
    }
    return 0;
}

// qrbench: compares the OpenMP-parallel kernels against their serial
// reference implementations and reports speedups.  The serial paths are the
// same code with the parallel flag off, so the timings also double as a
// correctness cross-check (results must match exactly).

#include <chrono>
#include <cstdio>
#include <functional>

#include "qr/charsum.hpp"
#include "qr/discrepancy.hpp"

using namespace qr;
using clk = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = clk::now();
    fn();
    auto t1 = clk::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, match ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t q = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1009;
    Field F = Field::make(q, 1);
    BivarPoly f = parse_poly("x*y+1", F);
    std::printf("q = %llu, f = x*y+1\n\n", static_cast<unsigned long long>(q));

    GraphInstance Gs, Gp;
    double t_build_s = time_ms([&] { Gs = build_graph(F, f, false); });
    double t_build_p = time_ms([&] { Gp = build_graph(F, f, true); });
    report("build_graph", t_build_s, t_build_p, Gs.bits == Gp.bits);

    ASquaredStats as, ap;
    double t_a2_s = time_ms([&] { as = a_squared_stats_serial(Gp, 2.0); });
    double t_a2_p = time_ms([&] { ap = a_squared_stats(Gp, 2.0, true); });
    report("a_squared_stats", t_a2_s, t_a2_p,
           as.diag_band_hits == ap.diag_band_hits &&
               as.offdiag_band_hits == ap.offdiag_band_hits);

    TupleCensus cs, cp;
    double t_c_s = time_ms([&] { cs = tuple_census(Gp, 3, false); });
    double t_c_p = time_ms([&] { cp = tuple_census(Gp, 3, true); });
    report("tuple_census m=3", t_c_s, t_c_p, cs.count == cp.count);

    UniPoly g{{1, 2, 3, 1}};
    CharSumReport ws{}, wp{};
    double t_w_s = time_ms([&] {
        for (int rep = 0; rep < 50; ++rep) ws = weil_sum_serial(F, g, 1 + rep % 7);
    });
    double t_w_p = time_ms([&] {
        for (int rep = 0; rep < 50; ++rep) wp = weil_sum(F, g, 1 + rep % 7, true);
    });
    report("weil_sum x50", t_w_s, t_w_p, ws.value == wp.value);

    std::vector<elem> C;
    for (elem u = 0; u < F.q(); ++u) C.push_back(u);
    CharSumReport is{}, ip{};
    double t_i_s = time_ms([&] { is = incomplete_2d_sum(F, f, C, false); });
    double t_i_p = time_ms([&] { ip = incomplete_2d_sum(F, f, C, true); });
    report("incomplete_2d_sum", t_i_s, t_i_p, is.value == ip.value);

    return 0;
}
